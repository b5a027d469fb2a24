#include "simsect/charfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace simsect {

namespace {

constexpr double pole_floor = 1e-300;

void require_canonical(const DirectionVector& u, const char* op) {
    if (!u.is_canonical())
        throw invalid_input(std::string(op) +
                            " requires a canonical direction (no zero entries)");
}

// arctan(t)/t, even, with the removable singularity at 0 expanded in series.
double atan_over(double t) {
    const double a = std::abs(t);
    if (a < 1e-4) {
        const double t2 = t * t;
        return 1.0 - t2 / 3.0 + t2 * t2 / 5.0;
    }
    return std::atan(t) / t;
}

} // namespace

double arccot(double w) {
    // pi/2 - arctan is continuous through w = 0 with range (0, pi)
    return M_PI_2 - std::atan(w);
}

std::complex<double> eval_f(const DirectionVector& u, std::complex<double> t) {
    std::complex<double> acc(1.0, 0.0);
    const std::complex<double> i(0.0, 1.0);
    for (double uj : u.entries()) {
        if (uj == 0.0) continue; // zero entries contribute a factor of 1
        const std::complex<double> denom = 1.0 + i * (uj * t);
        if (std::abs(denom) < pole_floor)
            throw numerical_error("PoleHit: t at pole i/u_j");
        acc *= std::exp(i * (uj * t)) / denom;
    }
    return acc;
}

double log_modulus(const DirectionVector& u, double x, double y) {
    double acc = -y * u.sum();
    for (double uj : u.entries()) {
        if (uj == 0.0) continue;
        const double re = 1.0 - uj * y;
        const double im = uj * x;
        const double mag2 = re * re + im * im;
        if (mag2 < pole_floor)
            throw numerical_error("PoleHit: (x, y) at pole of F_u");
        acc -= 0.5 * std::log(mag2);
    }
    return acc;
}

double eval_modulus(const DirectionVector& u, double x, double y) {
    return std::exp(log_modulus(u, x, y));
}

double envelope_constant(const DirectionVector& u) {
    const auto& e = u.entries();
    if (e.size() < 2)
        throw invalid_input("FewerThanTwoEntries: envelope needs >= 2 entries");

    double log_prod = 0.0;
    std::vector<double> poles;
    poles.reserve(e.size());
    for (double uj : e) {
        log_prod += std::log(std::abs(uj));
        poles.push_back(1.0 / uj);
    }
    std::sort(poles.begin(), poles.end());

    // Half the minimum gap between distinct poles. Repeated entries collapse
    // to one pole; the resulting constant is then exact only away from that
    // pole (multiplicity >= 3 breaks the 1/(x^2+d^2) shape in its immediate
    // neighborhood), which the quadrature never visits.
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < poles.size(); ++k) {
        const double g = poles[k] - poles[k - 1];
        if (g > 1e-9) gap = std::min(gap, g);
    }
    double r = std::isfinite(gap) ? 0.5 * gap : 1.0;
    r = std::min(r, 1.0);

    const int extra = static_cast<int>(e.size()) - 2;
    return 2.0 * std::exp(-log_prod - extra * std::log(r));
}

double tail_envelope(const DirectionVector& u, double x, double y) {
    if (x == 0.0)
        throw invalid_input("tail_envelope requires x != 0");
    const double c = envelope_constant(u);
    double min_d2 = std::numeric_limits<double>::infinity();
    for (double uj : u.entries()) {
        if (uj == 0.0) continue;
        const double d = 1.0 / uj - y;
        min_d2 = std::min(min_d2, d * d);
    }
    return c * std::exp(-y * u.sum()) / (x * x + min_d2);
}

double eval_phase_lift(const DirectionVector& u, double x, double y) {
    require_canonical(u, "eval_phase_lift");
    if (!(x > 0.0))
        throw invalid_input("NonpositiveX: phase lift is defined for x > 0");
    double acc = x * u.sum();
    for (double uj : u.entries()) {
        const double d = 1.0 / uj - y;
        if (uj > 0.0)
            acc -= arccot(d / x);
        else
            acc += arccot(-d / x);
    }
    return acc;
}

double phase_lift_dy(const DirectionVector& u, double x, double y) {
    require_canonical(u, "phase_lift_dy");
    if (!(x > 0.0))
        throw invalid_input("NonpositiveX: phase lift is defined for x > 0");
    double acc = 0.0;
    for (double uj : u.entries()) {
        const double d = 1.0 / uj - y;
        acc -= x / (x * x + d * d);
    }
    return acc;
}

double eval_psi(const DirectionVector& u, double x, double y) {
    require_canonical(u, "eval_psi");
    if (!(y > -1.0 && y < 1.0))
        throw invalid_input("YOutOfRange: psi is defined for y in (-1, 1)");
    double acc = u.sum();
    for (double uj : u.entries()) {
        const double d = 1.0 / uj - y; // nonzero for |y| < 1 given |u_j| <= 1
        acc -= atan_over(x / d) / d;
    }
    return acc;
}

PhasePoint probe(const DirectionVector& u, double x, double y) {
    PhasePoint p;
    p.x = x;
    p.y = y;
    p.phi = eval_phase_lift(u, x, y);
    p.modulus = eval_modulus(u, x, y);
    return p;
}

} // namespace simsect
