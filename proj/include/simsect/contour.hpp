#pragma once

#include <span>
#include <vector>

#include "simsect/charfun.hpp"
#include "simsect/direction.hpp"

namespace simsect {

enum class SumCase { PositiveSum, NegativeSum, ZeroSum };

/// The domain E_u of the zero-phase contour: a symmetric interval
/// (-right_endpoint, right_endpoint), infinite when sum(u) == 0.
struct ContourDomain {
    SumCase case_tag = SumCase::ZeroSum;
    double right_endpoint = 0.0; // +inf for ZeroSum

    bool finite() const { return case_tag != SumCase::ZeroSum; }
    bool contains(double x) const {
        return !finite() || (x > -right_endpoint && x < right_endpoint);
    }
};

ContourDomain domain(const DirectionVector& u);

/// One point of the contour trace: y = y_u(x), the slope, the (positive real)
/// integrand value F~_u(x), and the achieved |Phi_u| after root-finding.
struct ContourSample {
    double x = 0.0;
    double y = 0.0;
    double y_prime = 0.0;
    double f_tilde = 0.0;
    double residual_phase = 0.0;
};

/// Warm-started solver for y_u(x) bound to one direction. Successive calls
/// with nearby x reuse the previous solution as the bracket seed. Not
/// thread-safe; use one tracer per thread.
class ContourTracer {
public:
    static constexpr double default_phase_tol = 1e-12;

    explicit ContourTracer(DirectionVector u,
                           double phase_tol = default_phase_tol);

    const DirectionVector& direction() const { return u_; }
    const ContourDomain& domain() const { return dom_; }

    /// y_u(x) for x in E_u (even extension; y_u(0) = 0).
    double solve(double x);
    /// F~_u(x) = F_u(x + i y_u(x)), a positive real number.
    double f_tilde(double x);
    ContourSample sample(double x);

private:
    double solve_positive(double x);

    DirectionVector u_;
    ContourDomain dom_;
    double phase_tol_;
    double last_x_ = 0.0;
    double last_y_ = 0.0;
    bool has_last_ = false;
    double last_residual_ = 0.0;
};

/// Stateless solve of Phi_u(x, y) = 0 for y at this x (monotone bracketing
/// plus safeguarded Newton). Throws invalid_input ("XOutsideDomain") when
/// x is not in E_u.
double solve_y(const DirectionVector& u, double x,
               double phase_tol = ContourTracer::default_phase_tol);

/// Closed form y_v(x) = 1 - x cot x for the one-dimensional direction v=(1),
/// valid on (-pi, pi), with the removable singularity at 0 expanded in series.
double y_v_closed(double x);

/// Contour slope from the implicit differential equation
///   sum_j x/(x^2+d_j^2) * y' = sum_j (-y + u_j (x^2+y^2))/(x^2+d_j^2),
/// d_j = 1/u_j - y, evaluated at y = y_u(x). Requires x > 0.
double y_prime(const DirectionVector& u, double x, double y);

/// F~_u(x) computed through the log-modulus (the phase residual bounds the
/// relative imaginary contamination); cross-checked against eval_f in tests.
double eval_f_tilde(const DirectionVector& u, double x);

/// Batch trace over a grid with warm-started solves.
std::vector<ContourSample> trace(const DirectionVector& u,
                                 std::span<const double> grid);

} // namespace simsect
