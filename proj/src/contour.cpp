#include "simsect/contour.hpp"

#include <cmath>
#include <limits>

namespace simsect {

namespace {

void require_canonical(const DirectionVector& u, const char* op) {
    if (!u.is_canonical())
        throw invalid_input(std::string(op) +
                            " requires a canonical direction (no zero entries)");
}

} // namespace

ContourDomain domain(const DirectionVector& u) {
    require_canonical(u, "domain");
    ContourDomain d;
    if (u.is_centered()) {
        d.case_tag = SumCase::ZeroSum;
        d.right_endpoint = std::numeric_limits<double>::infinity();
    } else if (u.sum() > 0.0) {
        d.case_tag = SumCase::PositiveSum;
        d.right_endpoint = u.m_plus() * M_PI / u.sum();
    } else {
        d.case_tag = SumCase::NegativeSum;
        d.right_endpoint = u.m_minus() * M_PI / -u.sum();
    }
    return d;
}

ContourTracer::ContourTracer(DirectionVector u, double phase_tol)
    : u_(std::move(u)), phase_tol_(phase_tol) {
    require_canonical(u_, "ContourTracer");
    dom_ = simsect::domain(u_);
}

double ContourTracer::solve(double x) {
    if (!dom_.contains(x))
        throw invalid_input("XOutsideDomain: x not in E_u");
    if (x == 0.0) {
        last_residual_ = 0.0;
        return 0.0;
    }
    const double y = solve_positive(std::abs(x));
    last_x_ = std::abs(x);
    last_y_ = y;
    has_last_ = true;
    return y;
}

// Phi_u(x, .) is strictly decreasing with limits x*sum(u) + m_- pi at -inf
// and x*sum(u) - m_+ pi at +inf, so inside D_u a sign change always exists
// and geometric expansion of the bracket terminates.
double ContourTracer::solve_positive(double x) {
    const double seed = has_last_ ? last_y_ : 0.0;
    double phi_seed = eval_phase_lift(u_, x, seed);
    if (std::abs(phi_seed) <= phase_tol_) {
        last_residual_ = std::abs(phi_seed);
        return seed;
    }

    double lo, hi; // Phi(lo) > 0 > Phi(hi)
    double step = 0.25 + 0.5 * std::abs(seed);
    if (phi_seed > 0.0) {
        lo = seed;
        hi = seed + step;
        int iter = 0;
        while (eval_phase_lift(u_, x, hi) > 0.0) {
            lo = hi;
            step *= 2.0;
            hi += step;
            if (++iter > 200)
                throw numerical_error(
                    "BracketFailure: no sign change found above seed");
        }
    } else {
        hi = seed;
        lo = seed - step;
        int iter = 0;
        while (eval_phase_lift(u_, x, lo) < 0.0) {
            hi = lo;
            step *= 2.0;
            lo -= step;
            if (++iter > 200)
                throw numerical_error(
                    "BracketFailure: no sign change found below seed");
        }
    }

    double y = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double phi = eval_phase_lift(u_, x, y);
        if (std::abs(phi) <= phase_tol_) {
            last_residual_ = std::abs(phi);
            return y;
        }
        if (phi > 0.0)
            lo = y;
        else
            hi = y;
        const double dphi = phase_lift_dy(u_, x, y);
        const double newton = y - phi / dphi;
        y = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
        if (hi - lo < 4.0 * std::numeric_limits<double>::epsilon() *
                          (1.0 + std::abs(y))) {
            const double res = std::abs(eval_phase_lift(u_, x, y));
            if (res <= 16.0 * phase_tol_) {
                last_residual_ = res;
                return y;
            }
            throw numerical_error(
                "phase tolerance unreachable at bracket resolution");
        }
    }
    throw numerical_error("contour solve did not converge");
}

double ContourTracer::f_tilde(double x) {
    if (x == 0.0) return 1.0;
    const double y = solve(x);
    // On the contour arg F_u == residual mod 2pi, so Re F = |F| cos(residual)
    // = |F| to within residual^2/2 <= 5e-25 relative.
    return std::exp(log_modulus(u_, std::abs(x), y));
}

ContourSample ContourTracer::sample(double x) {
    ContourSample s;
    s.x = x;
    if (x == 0.0) {
        s.y = 0.0;
        s.y_prime = 0.0;
        s.f_tilde = 1.0;
        s.residual_phase = 0.0;
        return s;
    }
    s.y = solve(x);
    s.residual_phase = last_residual_;
    const double slope = y_prime(u_, std::abs(x), s.y);
    s.y_prime = (x > 0.0) ? slope : -slope; // even y_u has odd derivative
    s.f_tilde = std::exp(log_modulus(u_, std::abs(x), s.y));
    return s;
}

double solve_y(const DirectionVector& u, double x, double phase_tol) {
    ContourTracer t(u, phase_tol);
    return t.solve(x);
}

double y_v_closed(double x) {
    if (!(x > -M_PI && x < M_PI))
        throw invalid_input("XOutsideDomain: y_v is defined on (-pi, pi)");
    const double a = std::abs(x);
    if (a < 1e-3) {
        const double x2 = x * x;
        return x2 / 3.0 + x2 * x2 / 45.0;
    }
    return 1.0 - x * (std::cos(x) / std::sin(x));
}

double y_prime(const DirectionVector& u, double x, double y) {
    require_canonical(u, "y_prime");
    if (!(x > 0.0))
        throw invalid_input("NonpositiveX: y_prime is defined for x > 0");
    double num = 0.0;
    double den = 0.0;
    const double x2y2 = x * x + y * y;
    for (double uj : u.entries()) {
        const double d = 1.0 / uj - y;
        const double w = x * x + d * d;
        num += (-y + uj * x2y2) / w;
        den += x / w;
    }
    return num / den;
}

double eval_f_tilde(const DirectionVector& u, double x) {
    ContourTracer t(u);
    return t.f_tilde(x);
}

std::vector<ContourSample> trace(const DirectionVector& u,
                                 std::span<const double> grid) {
    std::vector<ContourSample> out;
    out.reserve(grid.size());
    ContourTracer t(u);
    for (double x : grid) out.push_back(t.sample(x));
    return out;
}

} // namespace simsect
