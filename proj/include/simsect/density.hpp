#pragma once

#include <cstdint>
#include <string>

#include "simsect/direction.hpp"

namespace simsect {

/// Tolerances and budgets for the quadrature-based density methods.
struct IntegrationConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
    double tail_epsilon = 1e-10;   // certified truncation budget
    double endpoint_margin = 1e-6; // relative exclusion at finite endpoints
};

enum class DensityMethod { Contour, RealAxis, PartialFractions, MonteCarlo };

std::string method_name(DensityMethod m);

/// Method diagnostics attached to a DensityEstimate. Fields that do not
/// apply to a method are left at zero.
struct EstimateMeta {
    double truncation = 0.0;  // X_max (Case III / real axis) or x_cut (I/II)
    double tail_bound = 0.0;  // certified bound on the discarded tail
    long evaluations = 0;     // integrand evaluations
    int panels = 0;           // panels in the final partition
    long samples = 0;         // Monte Carlo draws
    long hits = 0;            // draws with |Z| <= bandwidth
    double bandwidth = 0.0;
    std::uint64_t seed = 0;
};

struct DensityEstimate {
    double value = 0.0;
    DensityMethod method = DensityMethod::Contour;
    double error_estimate = 0.0;
    EstimateMeta meta;
};

/// Serializes with the documented key names (value, method, error_estimate,
/// meta) and stable key order.
std::string to_json(const DensityEstimate& e);

/// G_u(0) by non-oscillatory quadrature of the positive integrand F~_u over
/// E_u: (1/2pi) int_{E_u} F~_u(s) ds. Finite-endpoint cases integrate up to
/// an endpoint margin and bound the remainder using the monotone decay of
/// F~_u; the zero-sum case truncates where the certified |x|^-(n+1) envelope
/// integral drops below tail_epsilon. Accepts any canonical direction,
/// including the single-entry (±1).
DensityEstimate density_contour(const DirectionVector& u,
                                const IntegrationConfig& cfg = {});

/// G_u(0) by direct oscillatory integration along the real axis,
/// (1/2pi) int_R F_u(t) dt, with symmetric truncation from the |F_u| <= C/t^2
/// tail bound and panels sized to the oscillation wavelength. Requires at
/// least two nonzero entries.
DensityEstimate density_realaxis(const DirectionVector& u,
                                 const IntegrationConfig& cfg = {});

/// Closed-form G_u(0) by partial fractions over the simple poles i/u_j.
/// Requires pairwise-distinct nonzero entries; throws on repeats or when the
/// expansion is ill-conditioned (coefficients above 1e8 or gaps below 1e-4).
double density_partial_fractions(const DirectionVector& u);

/// Simulation estimate of G_u(0): P(|Z| <= h)/(2h) over n_samples draws of
/// Z = sum u_j (Y_j - 1). Deterministic for a fixed seed.
DensityEstimate density_monte_carlo(const DirectionVector& u, long n_samples,
                                    double bandwidth, std::uint64_t seed);

/// Exact value e^{-1} of (1/2pi) int_{-pi}^{pi} F~_v, from the residue of
/// F_v at t = i.
double residue_reference();

/// vol_{n-1}(T(a)) = sqrt(n+1)/(n-1)! * G_a(0) for a centered unit direction
/// of dimension n+1. Throws invalid_input ("NotCentered") when sum(a) != 0.
double section_volume(const DirectionVector& a, int n,
                      const IntegrationConfig& cfg = {});

} // namespace simsect
