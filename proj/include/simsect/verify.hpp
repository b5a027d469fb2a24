#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "simsect/density.hpp"
#include "simsect/direction.hpp"

namespace simsect {

struct VerificationReport {
    std::string check_name;
    bool passed = false;
    double worst_residual = 0.0;
    std::string worst_location;
    std::string grid_spec;
    double tolerance = 0.0;
};

/// One JSON object per report (the JSON-lines payload of `verify`).
std::string to_json(const VerificationReport& r);

/// Merges per-direction reports of the same check into one: worst residual
/// wins, pass = all passed.
VerificationReport merge_reports(std::span<const VerificationReport> reports);

// --- individual checks -----------------------------------------------------

/// density >= 1/e - tol for every direction; for directions that
/// canonicalize to a single entry, additionally |density - 1/e| <= equality
/// tolerance.
VerificationReport check_lower_bound(std::span<const DirectionVector> corpus,
                                     const IntegrationConfig& cfg = {},
                                     double tol = 1e-9);

/// |density_contour - density_realaxis| <= tol for every direction.
VerificationReport check_contour_equivalence(
    std::span<const DirectionVector> corpus, const IntegrationConfig& cfg = {},
    double tol = 1e-6);

/// F~_u(x) >= F~_v(x) - tol on a grid in (-pi, pi).
VerificationReport check_pointwise(const DirectionVector& u,
                                   std::span<const double> grid,
                                   double tol = 1e-10);

/// -y_v(x) - tol <= y_u(x) <= y_v(x) + tol on a grid in (-pi, pi).
VerificationReport check_sandwich(const DirectionVector& u,
                                  std::span<const double> grid,
                                  double tol = 1e-10);

/// Contour slope from the implicit differential equation against central
/// finite differences of the root solve.
VerificationReport check_ode(const DirectionVector& u,
                             std::span<const double> grid, double tol = 1e-6);

/// Both squared-sum inequalities at (x, y_u(x)) with slack >= -tol, the
/// per-entry collapse identity
///   (x/u_j)^2 + (-y/u_j + x^2+y^2)^2 = (x^2+y^2)(x^2 + (1/u_j - y)^2),
/// and the collapsed right-hand-side sum, all to relative tol.
VerificationReport check_cauchy_schwarz(const DirectionVector& u,
                                        std::span<const double> grid,
                                        double tol = 1e-12);

/// (a) d/dx log F~_u matches its closed form to fd_tol; (b) that slope is
/// >= -(x^2 + y_v^2)/x - bound_tol on (0, pi); (c) for the single-entry
/// direction the slope equals -(x^2 + y_v^2)/x to bound_tol.
VerificationReport check_logderiv(const DirectionVector& u,
                                  std::span<const double> grid,
                                  double fd_tol = 1e-6,
                                  double bound_tol = 1e-8);

// --- corpus construction and the full suite --------------------------------

enum class CorpusKind { Mixed, Random, RandomCentered, Facet };

/// Deterministic direction corpus. Mixed = random centered + random general
/// + facet directions + constructed edge cases (near-degenerate entries,
/// near-axis vectors, all three sign cases of sum(u)).
std::vector<DirectionVector> build_corpus(CorpusKind kind, int count,
                                          int dim_min, int dim_max,
                                          std::uint64_t seed);

/// Uniform direction on the sphere in dimension dim (optionally projected to
/// the centered hyperplane first), from explicit mt19937_64 bits.
DirectionVector random_direction(std::uint64_t seed, int dim, bool centered);

struct SuiteOptions {
    std::vector<std::string> checks; // empty = all
    std::uint64_t seed = 42;
    CorpusKind corpus = CorpusKind::Mixed;
    int corpus_size = 200;
    int dim_min = 2;
    int dim_max = 12;
    int facet_n_max = 8;
    IntegrationConfig cfg;
    // when non-empty, replaces the generated corpus (e.g. `verify --dir ...`)
    std::vector<DirectionVector> explicit_corpus;
};

const std::vector<std::string>& all_check_names();

/// Runs the selected checks over seeded corpora; one merged report per check.
std::vector<VerificationReport> run_suite(const SuiteOptions& opt);

} // namespace simsect
