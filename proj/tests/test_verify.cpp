#include <cmath>
#include <random>

#include <doctest.h>
#include <json.hpp>

#include "simsect/contour.hpp"
#include "simsect/verify.hpp"

using namespace simsect;

namespace {

const DirectionVector v_ref = DirectionVector::validate_unit({1.0});
const DirectionVector u86 = DirectionVector::validate_unit({0.8, 0.6});

std::vector<double> interior(double lo, double hi, int count) {
    std::vector<double> g(static_cast<std::size_t>(count));
    const double step = (hi - lo) / count;
    for (int k = 0; k < count; ++k)
        g[static_cast<std::size_t>(k)] = lo + (k + 0.5) * step;
    return g;
}

} // namespace

TEST_CASE("lower bound check, including the equality direction") {
    const std::vector<DirectionVector> corpus{
        v_ref, u86, facet_direction(2), facet_direction(5),
        DirectionVector::validate_unit({0.999, std::sqrt(1.0 - 0.999 * 0.999)})};
    const auto rep = check_lower_bound(corpus);
    CHECK(rep.passed);
    CHECK(rep.check_name == "lower_bound");
    CHECK(rep.worst_residual <= 1e-9);
}

TEST_CASE("facet margins shrink toward the bound as n grows") {
    double prev = 1e9;
    for (int n = 2; n <= 8; ++n) {
        const double margin =
            density_contour(facet_direction(n)).value - std::exp(-1.0);
        CHECK(margin > 0.0);
        CHECK(margin < prev);
        prev = margin;
    }
}

TEST_CASE("contour equivalence check across sign cases") {
    const std::vector<DirectionVector> corpus{
        u86, DirectionVector::validate_unit({-0.8, -0.6}), facet_direction(4)};
    const auto rep = check_contour_equivalence(corpus);
    CHECK(rep.passed);
    CHECK(rep.worst_residual <= 1e-6);
}

TEST_CASE("pointwise domination of the reference integrand") {
    const auto grid = interior(-M_PI, M_PI, 1000);
    CHECK(check_pointwise(u86, grid).passed);
    CHECK(check_pointwise(v_ref, grid).passed); // equality case

    // at pi/2 the reference value is 2/(e pi)
    CHECK(eval_f_tilde(u86, M_PI_2) >= 0.23419932609727664 - 1e-12);
}

TEST_CASE("sandwich check") {
    const auto grid = interior(-M_PI, M_PI, 1000);
    CHECK(check_sandwich(v_ref, grid).passed);
    CHECK(check_sandwich(u86, grid).passed);
    CHECK(check_sandwich(
              DirectionVector::validate_unit({0.3, -0.7, -std::sqrt(0.42)}),
              grid)
              .passed);
}

TEST_CASE("ode and cauchy-schwarz checks") {
    const auto grid = interior(0.02, 2.8, 200);
    for (const auto& u : {v_ref, u86, facet_direction(3)}) {
        CHECK(check_ode(u, grid).passed);
        CHECK(check_cauchy_schwarz(u, grid).passed);
    }
}

TEST_CASE("per-entry collapse identity at random points") {
    std::mt19937_64 rng(99);
    auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * (double(rng() >> 11) * 0x1.0p-53);
    };
    for (int k = 0; k < 5000; ++k) {
        const double x = uniform(0.01, 4.0);
        const double y = uniform(-3.0, 3.0);
        const double uj = uniform(-1.0, 1.0);
        if (std::abs(uj) < 1e-3) continue;
        const double lhs = (x / uj) * (x / uj) +
                           std::pow(-y / uj + x * x + y * y, 2);
        const double d = 1.0 / uj - y;
        const double rhs = (x * x + y * y) * (x * x + d * d);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("log-derivative check and its frozen slope at pi/2") {
    const auto grid = interior(0.01, M_PI - 0.01, 500);
    CHECK(check_logderiv(v_ref, grid).passed);
    CHECK(check_logderiv(u86, grid).passed);

    // closed form -(x^2 + y_v^2)/x at x = pi/2 (y_v = 1)
    const double slope = -(M_PI_2 * M_PI_2 + 1.0) / M_PI_2;
    CHECK(slope == doctest::Approx(-2.2074160991624780).epsilon(1e-14));

    // both sides vanish toward the origin
    ContourTracer t(u86);
    const double x0 = 0.01;
    const double y0 = t.solve(x0);
    double s1 = 0.0, s2 = 0.0;
    for (double uj : u86.entries()) {
        const double d = 1.0 / uj - y0;
        const double w = x0 * x0 + d * d;
        s1 += x0 / w;
        s2 += (-y0 + uj * (x0 * x0 + y0 * y0)) / w;
    }
    CHECK(std::abs((s1 * s1 + s2 * s2) / s1) < 0.05);
}

TEST_CASE("corpus construction is deterministic and spans sign cases") {
    const auto c1 = build_corpus(CorpusKind::Mixed, 40, 2, 9, 11);
    const auto c2 = build_corpus(CorpusKind::Mixed, 40, 2, 9, 11);
    REQUIRE(c1.size() == c2.size());
    for (std::size_t k = 0; k < c1.size(); ++k)
        CHECK(c1[k].entries() == c2[k].entries());

    bool pos = false, neg = false, zero = false;
    for (const auto& u : c1) {
        if (u.is_centered()) zero = true;
        else if (u.sum() > 0) pos = true;
        else neg = true;
    }
    CHECK(pos);
    CHECK(neg);
    CHECK(zero);

    const auto facets = build_corpus(CorpusKind::Facet, 0, 2, 6, 1);
    CHECK(facets.size() == 5);
    for (const auto& a : facets) CHECK(a.is_centered());
}

TEST_CASE("random centered directions really are centered") {
    for (int k = 0; k < 30; ++k) {
        const auto u = random_direction(1234 + k, 2 + k % 11, true);
        CHECK(std::abs(u.sum()) <= 1e-12);
    }
}

TEST_CASE("report serialization and merge") {
    VerificationReport a{"demo", true, 0.5, "here", "grid", 1.0};
    VerificationReport b{"demo", false, 0.9, "there", "grid", 1.0};
    const std::vector<VerificationReport> parts{a, b};
    const auto merged = merge_reports(parts);
    CHECK_FALSE(merged.passed);
    CHECK(merged.worst_residual == 0.9);
    CHECK(merged.worst_location == "there");

    const auto j = nlohmann::json::parse(to_json(a));
    CHECK(j["check_name"] == "demo");
    CHECK(j["passed"] == true);
    CHECK(j["worst_residual"] == 0.5);
    CHECK(j.contains("grid_spec"));
    CHECK(j.contains("tolerance"));
}

TEST_CASE("suite runs a selected check deterministically") {
    SuiteOptions opt;
    opt.checks = {"pointwise", "sandwich"};
    opt.corpus_size = 3;
    opt.seed = 5;
    const auto r1 = run_suite(opt);
    const auto r2 = run_suite(opt);
    REQUIRE(r1.size() == 2);
    CHECK(r1[0].passed);
    CHECK(r1[1].passed);
    CHECK(r1[0].worst_residual == r2[0].worst_residual);
    CHECK(r1[1].worst_location == r2[1].worst_location);

    SuiteOptions bad;
    bad.checks = {"does_not_exist"};
    CHECK_THROWS_AS(run_suite(bad), invalid_input);
}
