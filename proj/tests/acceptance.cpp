// Acceptance suite: every criterion prints exactly one PASS/FAIL line and the
// binary exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "simsect/charfun.hpp"
#include "simsect/contour.hpp"
#include "simsect/density.hpp"
#include "simsect/verify.hpp"

using namespace simsect;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name,
               const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome oc;
    try {
        oc = body();
    } catch (const std::exception& e) {
        oc.passed = false;
        oc.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (!oc.passed) ++failures;
    std::printf("%s criterion %2d: %s (%s) [%.2f s]\n",
                oc.passed ? "PASS" : "FAIL", id, name.c_str(),
                oc.detail.c_str(), seconds);
    std::fflush(stdout);
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

std::vector<double> interior(double lo, double hi, int count) {
    std::vector<double> g(static_cast<std::size_t>(count));
    const double step = (hi - lo) / count;
    for (int k = 0; k < count; ++k)
        g[static_cast<std::size_t>(k)] = lo + (k + 0.5) * step;
    return g;
}

// distinct-entry directions for the partial-fraction oracle
std::vector<DirectionVector> distinct_entry_corpus(int count,
                                                   std::uint64_t seed) {
    std::vector<DirectionVector> out;
    std::uint64_t s = seed;
    while (static_cast<int>(out.size()) < count) {
        const int dim = 2 + static_cast<int>(out.size()) % 7;
        const auto u = canonicalize(random_direction(s++, dim, false));
        double min_gap = 1e9;
        for (std::size_t i = 0; i < u.entries().size(); ++i)
            for (std::size_t j = i + 1; j < u.entries().size(); ++j)
                min_gap = std::min(
                    min_gap, std::abs(u.entries()[i] - u.entries()[j]));
        if (min_gap >= 1e-3) out.push_back(u);
    }
    return out;
}

std::vector<DirectionVector> sign_case_corpus(std::uint64_t seed) {
    std::vector<DirectionVector> out;
    for (int k = 0; k < 12; ++k) {
        auto u = canonicalize(random_direction(seed + k, 2 + k % 9, false));
        std::vector<double> pos = u.entries();
        if (u.sum() < 0.0)
            for (double& e : pos) e = -e;
        out.push_back(DirectionVector::validate_unit(pos));
        for (double& e : pos) e = -e;
        out.push_back(DirectionVector::validate_unit(pos));
    }
    for (int k = 0; k < 12; ++k)
        out.push_back(canonicalize(random_direction(seed + 100 + k, 2 + k % 9, true)));
    for (int n = 2; n <= 4; ++n) out.push_back(facet_direction(n));
    out.push_back(DirectionVector::validate_unit({0.8, 0.6}));
    out.push_back(DirectionVector::validate_unit({-0.8, -0.6}));
    out.push_back(DirectionVector::validate_unit(
        {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}));
    return out;
}

} // namespace

int main() {
    const double inv_e = std::exp(-1.0);

    criterion(1, "equality case: density_contour((1)) = 1/e to 1e-9, < 1 s",
              [&]() -> Outcome {
        const auto t0 = std::chrono::steady_clock::now();
        const double g =
            density_contour(DirectionVector::validate_unit({1.0})).value;
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        const double diff = std::abs(g - inv_e);
        return {diff <= 1e-9 && dt < 1.0, fmt("|diff| = %.3g", diff)};
    });

    criterion(2, "facet chain: section_volume matches the closed form, n = 2..10",
              [&]() -> Outcome {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (int n = 2; n <= 10; ++n) {
            const double got = section_volume(facet_direction(n), n);
            const double want = facet_section_volume(n);
            worst = std::max(worst, std::abs(got / want - 1.0));
        }
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        return {worst <= 1e-8 && dt < 10.0,
                fmt("worst relative error = %.3g", worst)};
    });

    criterion(3, "main bound: 200 random centered sections above (1/e)sqrt(n+1)/(n-1)!",
              [&]() -> Outcome {
        const auto t0 = std::chrono::steady_clock::now();
        double worst_margin = 1e300;
        for (int k = 0; k < 200; ++k) {
            const int n = 2 + k % 11; // simplex dimensions 2..12
            const auto a = random_direction(1000 + k, n + 1, true);
            const double vol = section_volume(a, n);
            const double bound =
                section_volume_from_density(n, 1.0) * inv_e;
            worst_margin = std::min(worst_margin, vol - bound);
        }
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        return {worst_margin >= -1e-9 && dt < 120.0,
                fmt("worst margin = %.3g, %.1f s", worst_margin, dt)};
    });

    criterion(4, "probability bound: 200 random densities above 1/e",
              [&]() -> Outcome {
        double worst_margin = 1e300;
        for (int k = 0; k < 200; ++k) {
            const int dim = 2 + k % 11;
            const auto u =
                canonicalize(random_direction(2000 + k, dim, false));
            worst_margin =
                std::min(worst_margin, density_contour(u).value - inv_e);
        }
        return {worst_margin >= -1e-9, fmt("worst margin = %.3g", worst_margin)};
    });

    criterion(5, "contour equivalence across the three sign cases",
              [&]() -> Outcome {
        const auto t0 = std::chrono::steady_clock::now();
        const auto corpus = sign_case_corpus(3000);
        double worst = 0.0;
        for (const auto& u : corpus) {
            const double gap = std::abs(density_contour(u).value -
                                        density_realaxis(u).value);
            worst = std::max(worst, gap);
        }
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        return {worst <= 1e-6 && dt < 120.0,
                fmt("worst |contour - realaxis| = %.3g, %.1f s", worst, dt)};
    });

    criterion(6, "oracle equivalence: partial fractions to 1e-8 and MC to 3 sigma",
              [&]() -> Outcome {
        const auto corpus = distinct_entry_corpus(50, 4000);
        double worst_pf = 0.0;
        double worst_sigma = 0.0;
        for (const auto& u : corpus) {
            const double c = density_contour(u).value;
            worst_pf =
                std::max(worst_pf, std::abs(c - density_partial_fractions(u)));
            const auto mc = density_monte_carlo(u, 1000000, 0.01, 6000);
            worst_sigma = std::max(
                worst_sigma, std::abs(mc.value - c) / mc.error_estimate);
        }
        return {worst_pf <= 1e-8 && worst_sigma <= 3.0,
                fmt("worst |contour - pf| = %.3g, worst MC z = %.2f", worst_pf,
                    worst_sigma)};
    });

    criterion(7, "pointwise theorem: F~_u >= F~_v on 1000-point grids, 50 directions",
              [&]() -> Outcome {
        const auto grid = interior(-M_PI, M_PI, 1000);
        double worst = -1e300;
        for (int k = 0; k < 50; ++k) {
            const int dim = 1 + k % 12;
            const auto u =
                canonicalize(random_direction(5000 + k, std::max(dim, 1),
                                              dim >= 2 && k % 2 == 0));
            const auto rep = check_pointwise(u, grid);
            worst = std::max(worst, rep.worst_residual);
        }
        return {worst <= 1e-10, fmt("worst F~_v - F~_u = %.3g", worst)};
    });

    criterion(8, "sandwich lemma: -y_v <= y_u <= y_v on the same grids",
              [&]() -> Outcome {
        const auto grid = interior(-M_PI, M_PI, 1000);
        double worst = -1e300;
        for (int k = 0; k < 50; ++k) {
            const int dim = 1 + k % 12;
            const auto u =
                canonicalize(random_direction(5000 + k, std::max(dim, 1),
                                              dim >= 2 && k % 2 == 0));
            const auto rep = check_sandwich(u, grid);
            worst = std::max(worst, rep.worst_residual);
        }
        return {worst <= 1e-10, fmt("worst |y_u| - y_v = %.3g", worst)};
    });

    criterion(9, "differential residuals, Cauchy-Schwarz slack, collapse identity",
              [&]() -> Outcome {
        std::vector<DirectionVector> dirs{
            DirectionVector::validate_unit({1.0}),
            DirectionVector::validate_unit({0.8, 0.6}), facet_direction(3),
            facet_direction(5)};
        for (int k = 0; k < 8; ++k)
            dirs.push_back(
                canonicalize(random_direction(7000 + k, 2 + k, k % 2 == 0)));
        const auto ode_grid = interior(0.02, 2.8, 200);
        const auto log_grid = interior(0.01, M_PI - 0.01, 500);
        double worst_ode = 0.0, worst_cs = -1e300, worst_log = -1e300;
        for (const auto& u : dirs) {
            worst_ode =
                std::max(worst_ode, check_ode(u, ode_grid).worst_residual);
            worst_cs = std::max(
                worst_cs,
                check_cauchy_schwarz(u, ode_grid).worst_residual);
            worst_log = std::max(
                worst_log, check_logderiv(u, log_grid).worst_residual);
        }
        const bool ok =
            worst_ode <= 1e-6 && worst_cs <= 1e-12 && worst_log <= 1.0;
        return {ok, fmt("ode = %.3g, cs = %.3g", worst_ode, worst_cs) +
                        fmt(", logderiv (normalized) = %.3g", worst_log)};
    });

    criterion(10, "asymptotic sharpness: e * density(a_facet(n)) decreases to 1",
              [&]() -> Outcome {
        double worst = 0.0;
        double prev = 1e300;
        bool monotone = true;
        for (int n = 2; n <= 30; ++n) {
            const double d =
                density_contour(facet_direction(n)).value * std::exp(1.0);
            const double closed =
                std::exp(1.0 - (n - 0.5) * std::log1p(1.0 / n));
            worst = std::max(worst, std::abs(d - closed));
            if (d >= prev + 1e-10 || d < 1.0) monotone = false;
            prev = d;
        }
        return {worst <= 1e-8 && monotone,
                fmt("worst |e*density - closed| = %.3g, monotone decrease to 1",
                    worst)};
    });

    std::printf("%s: %d of 10 criteria passed\n",
                failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                10 - failures);
    return failures == 0 ? 0 : 1;
}
