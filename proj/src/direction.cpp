#include "simsect/direction.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace simsect {

DirectionVector DirectionVector::validate_unit(std::vector<double> entries,
                                               double norm_tol) {
    if (entries.empty())
        throw invalid_input("EmptyVector: direction vector has no entries");

    double norm_sq = 0.0;
    for (double e : entries) {
        if (!std::isfinite(e))
            throw invalid_input("NotUnitNorm: non-finite entry");
        norm_sq += e * e;
    }
    const double norm = std::sqrt(norm_sq);
    if (norm < zero_entry_tol)
        throw invalid_input("AllZero: direction vector is identically zero");
    if (std::abs(norm - 1.0) > norm_tol)
        throw invalid_input("NotUnitNorm: |u| = " + std::to_string(norm) +
                            " deviates from 1 by more than " +
                            std::to_string(norm_tol));

    DirectionVector u;
    u.entries_ = std::move(entries);
    // skip the division when already at unit norm so construction is
    // idempotent at the bit level
    if (std::abs(norm - 1.0) > 1e-13)
        for (double& e : u.entries_) e /= norm;
    for (double e : u.entries_) {
        if (e > 0.0) ++u.m_plus_;
        else if (e < 0.0) ++u.m_minus_;
        u.sum_ += e;
    }
    return u;
}

bool DirectionVector::is_centered(double tol) const {
    return std::abs(sum_) <= tol;
}

bool DirectionVector::is_canonical() const {
    for (double e : entries_)
        if (std::abs(e) < zero_entry_tol) return false;
    return true;
}

DirectionVector canonicalize(const DirectionVector& u) {
    std::vector<double> kept;
    kept.reserve(u.entries().size());
    for (double e : u.entries())
        if (std::abs(e) >= DirectionVector::zero_entry_tol) kept.push_back(e);
    if (kept.empty())
        throw invalid_input("AllZero: canonicalization removed every entry");

    double norm = 0.0;
    for (double e : kept) norm += e * e;
    norm = std::sqrt(norm);

    DirectionVector out;
    out.entries_ = std::move(kept);
    if (std::abs(norm - 1.0) > 1e-13)
        for (double& e : out.entries_) e /= norm;
    for (double e : out.entries_) {
        if (e > 0.0) ++out.m_plus_;
        else ++out.m_minus_;
        out.sum_ += e;
    }
    return out;
}

DirectionVector facet_direction(int n) {
    if (n < 2)
        throw invalid_input("facet_direction requires n >= 2");
    const double scale = 1.0 / std::sqrt(double(n) * (n + 1));
    std::vector<double> entries(static_cast<std::size_t>(n) + 1, -scale);
    entries[0] = n * scale;
    return DirectionVector::validate_unit(std::move(entries));
}

namespace detail {

double log_factorial(int k) {
    static const double table[] = {
        // ln(0!) .. ln(20!) from exact integer factorials
        0.0,
        0.0,
        std::log(2.0),
        std::log(6.0),
        std::log(24.0),
        std::log(120.0),
        std::log(720.0),
        std::log(5040.0),
        std::log(40320.0),
        std::log(362880.0),
        std::log(3628800.0),
        std::log(39916800.0),
        std::log(479001600.0),
        std::log(6227020800.0),
        std::log(87178291200.0),
        std::log(1307674368000.0),
        std::log(20922789888000.0),
        std::log(355687428096000.0),
        std::log(6402373705728000.0),
        std::log(121645100408832000.0),
        std::log(2432902008176640000.0),
    };
    if (k <= 20) return table[k];
    return std::lgamma(double(k) + 1.0);
}

namespace {

// Signals instead of silently returning 0 or inf when exp() would leave the
// normal double range.
double checked_exp(double log_value, const char* what) {
    if (log_value > 700.0 || log_value < -700.0)
        throw numerical_error(std::string(what) +
                              ": value outside floating-point range");
    return std::exp(log_value);
}

// n! is exact in double up to 20!, so prefer the direct ratio there.
double exact_factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

} // namespace
} // namespace detail

double simplex_volume(int n) {
    if (n < 1)
        throw invalid_input("simplex_volume requires n >= 1");
    if (n <= 20)
        return std::sqrt(double(n) + 1.0) / detail::exact_factorial(n);
    return detail::checked_exp(0.5 * std::log(double(n) + 1.0) -
                                   detail::log_factorial(n),
                               "simplex_volume");
}

double facet_section_volume(int n) {
    if (n < 2)
        throw invalid_input("facet_section_volume requires n >= 2");
    const double log_ratio = (n - 1) * (std::log(double(n)) - std::log(double(n) + 1.0));
    if (n <= 20)
        return std::sqrt(double(n)) / detail::exact_factorial(n - 1) *
               std::exp(log_ratio);
    return detail::checked_exp(0.5 * std::log(double(n)) -
                                   detail::log_factorial(n - 1) + log_ratio,
                               "facet_section_volume");
}

double section_volume_from_density(int n, double g0) {
    if (n < 1)
        throw invalid_input("section_volume_from_density requires n >= 1");
    if (!(g0 >= 0.0))
        throw invalid_input("section_volume_from_density requires g0 >= 0");
    if (n <= 20)
        return std::sqrt(double(n) + 1.0) / detail::exact_factorial(n - 1) * g0;
    return detail::checked_exp(0.5 * std::log(double(n) + 1.0) -
                                   detail::log_factorial(n - 1),
                               "section_volume_from_density") *
           g0;
}

} // namespace simsect
