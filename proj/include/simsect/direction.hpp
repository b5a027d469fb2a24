#pragma once

#include <vector>

#include "simsect/errors.hpp"

namespace simsect {

/// A validated unit direction vector in R^{n+1} together with its sign census.
///
/// Entries are renormalized to unit norm on construction, so downstream
/// algebra may assume sum(u_j^2) == 1 to machine precision. A vector is
/// "canonical" when it has no zero entries; the contour and density code
/// requires canonical inputs (zero entries contribute nothing and would put
/// poles at infinity).
class DirectionVector {
public:
    static constexpr double default_norm_tol = 1e-9;
    static constexpr double zero_entry_tol   = 1e-14;
    static constexpr double centered_tol     = 1e-12;

    /// Validates and renormalizes. Throws invalid_input on EmptyVector,
    /// AllZero, or NotUnitNorm (norm deviating from 1 by more than norm_tol).
    static DirectionVector validate_unit(std::vector<double> entries,
                                         double norm_tol = default_norm_tol);

    const std::vector<double>& entries() const { return entries_; }
    double operator[](std::size_t j) const { return entries_[j]; }
    int dimension() const { return static_cast<int>(entries_.size()); } // n+1
    int m_plus() const { return m_plus_; }
    int m_minus() const { return m_minus_; }
    double sum() const { return sum_; }

    /// True when sum(u_j) == 0 within tolerance (the centered, a ⊥ 1 case).
    bool is_centered(double tol = centered_tol) const;
    /// True when no entry is zero (|u_j| >= zero_entry_tol for all j).
    bool is_canonical() const;

private:
    DirectionVector() = default;

    std::vector<double> entries_;
    int m_plus_ = 0;
    int m_minus_ = 0;
    double sum_ = 0.0;

    friend DirectionVector canonicalize(const DirectionVector& u);
};

/// Drops zero entries (|u_j| < zero_entry_tol), reducing the dimension, and
/// renormalizes. Idempotent.
DirectionVector canonicalize(const DirectionVector& u);

/// The unit normal of the central hyperplane parallel to a facet:
/// (n, -1, ..., -1)/sqrt(n(n+1)) in dimension n+1. Unit norm with zero sum.
DirectionVector facet_direction(int n);

/// vol_n of the regular n-simplex of side sqrt(2): sqrt(n+1)/n!.
double simplex_volume(int n);

/// vol_{n-1} of the central section parallel to a facet:
/// sqrt(n)/(n-1)! * (n/(n+1))^{n-1}.
double facet_section_volume(int n);

/// Converts a density at zero into a section volume:
/// sqrt(n+1)/(n-1)! * g0.
double section_volume_from_density(int n, double g0);

namespace detail {
/// ln(k!) exactly for small k, via lgamma above 20.
double log_factorial(int k);
} // namespace detail

} // namespace simsect
