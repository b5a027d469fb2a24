#pragma once

#include <complex>

#include "simsect/direction.hpp"

namespace simsect {

/// One probe of the characteristic function at x + iy: the real-valued phase
/// lift and the exact modulus.
struct PhasePoint {
    double x = 0.0;
    double y = 0.0;
    double phi = 0.0;     // phase lift, congruent to arg F_u(x+iy) mod 2pi
    double modulus = 0.0; // |F_u(x+iy)|
};

/// arccot as a continuous function R -> (0, pi).
double arccot(double w);

/// F_u(t) = prod_j exp(i u_j t)/(1 + i u_j t). Throws numerical_error
/// ("PoleHit") when t is numerically at a pole i/u_j.
std::complex<double> eval_f(const DirectionVector& u, std::complex<double> t);

/// log |F_u(x+iy)| = -y*sum(u) - 1/2 sum_j log(u_j^2 x^2 + (1 - u_j y)^2),
/// computed without complex products.
double log_modulus(const DirectionVector& u, double x, double y);

/// |F_u(x+iy)| via log_modulus.
double eval_modulus(const DirectionVector& u, double x, double y);

/// Certified upper bound C(u) exp(-y sum(u)) / (x^2 + min_j (1/u_j - y)^2)
/// on |F_u(x+iy)|. Requires at least two nonzero entries. The constant is
/// computed from the product of entry magnitudes and the minimum gap between
/// distinct pole positions 1/u_j; see envelope_constant.
double tail_envelope(const DirectionVector& u, double x, double y);

/// The constant C(u) used by tail_envelope.
double envelope_constant(const DirectionVector& u);

/// Phase lift Phi_u(x,y) = x*sum(u) - sum_{u_j>0} alpha_j + sum_{u_j<0} beta_j
/// with alpha_j = arccot((1/u_j - y)/x), beta_j = arccot((y - 1/u_j)/x).
/// Real-valued, strictly decreasing in y, congruent to arg F_u mod 2pi.
/// Requires x > 0 and canonical u.
double eval_phase_lift(const DirectionVector& u, double x, double y);

/// d/dy Phi_u(x,y) = -sum_j x/(x^2 + (1/u_j - y)^2) < 0.
double phase_lift_dy(const DirectionVector& u, double x, double y);

/// Smooth extension psi_u(x,y) of Phi_u(x,y)/x to all of R x (-1,1):
/// sum(u) - sum_j phi(x/(1/u_j - y))/(1/u_j - y) with phi(t) = arctan(t)/t.
double eval_psi(const DirectionVector& u, double x, double y);

/// Bundles phase lift and modulus at one point (x > 0).
PhasePoint probe(const DirectionVector& u, double x, double y);

} // namespace simsect
