#include <cmath>

#include <doctest.h>
#include <json.hpp>

#include "simsect/density.hpp"
#include "simsect/verify.hpp"

using namespace simsect;

namespace {

const DirectionVector v_ref = DirectionVector::validate_unit({1.0});
const DirectionVector u86 = DirectionVector::validate_unit({0.8, 0.6});

// 5(e^{-7/4} - e^{-7/3}), the partial-fraction value for (0.8, 0.6)
const double g86 = 5.0 * (std::exp(-1.75) - std::exp(-7.0 / 3.0));

} // namespace

TEST_CASE("residue reference") {
    CHECK(residue_reference() == doctest::Approx(0.36787944117144233).epsilon(1e-16));
}

TEST_CASE("contour density: equality case and frozen values") {
    const auto e1 = density_contour(v_ref);
    CHECK(std::abs(e1.value - residue_reference()) < 1e-9);
    CHECK(e1.error_estimate < 1e-8);
    CHECK(e1.meta.evaluations > 0);

    CHECK(density_contour(u86).value == doctest::Approx(g86).epsilon(1e-9));
    CHECK(density_contour(facet_direction(2)).value ==
          doctest::Approx(0.54433105395181736).epsilon(1e-9));

    // Case II mirrors Case I
    const auto neg = DirectionVector::validate_unit({-0.8, -0.6});
    CHECK(density_contour(neg).value == doctest::Approx(g86).epsilon(1e-9));
}

TEST_CASE("real-axis density agrees with the contour route") {
    for (const auto& u :
         {u86, facet_direction(3),
          DirectionVector::validate_unit({0.3, -0.7, -std::sqrt(0.42)}),
          DirectionVector::validate_unit(
              {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)})}) {
        const double a = density_contour(u).value;
        const double b = density_realaxis(u).value;
        CHECK(std::abs(a - b) <= 1e-6);
    }
    CHECK_THROWS_AS(density_realaxis(v_ref), invalid_input);
}

TEST_CASE("partial fractions closed form") {
    CHECK(density_partial_fractions(u86) == doctest::Approx(g86).epsilon(1e-14));
    CHECK(density_partial_fractions(u86) >= std::exp(-1.0));

    const auto rep = DirectionVector::validate_unit({0.6, 0.6, std::sqrt(0.28)});
    CHECK_THROWS_AS(density_partial_fractions(rep), invalid_input);

    const auto close = DirectionVector::validate_unit(
        {0.7, 0.700005, -std::sqrt(1.0 - 0.49 - 0.700005 * 0.700005)});
    CHECK_THROWS_AS(density_partial_fractions(close), numerical_error);

    CHECK_THROWS_AS(density_partial_fractions(v_ref), invalid_input);

    // quadrature vs closed form across sign cases
    for (int k = 0; k < 20; ++k) {
        const auto u = canonicalize(random_direction(7000 + k, 2 + k % 7, k % 2 == 0));
        double min_gap = 1e9;
        for (std::size_t i = 0; i < u.entries().size(); ++i)
            for (std::size_t j = i + 1; j < u.entries().size(); ++j)
                min_gap = std::min(min_gap,
                                   std::abs(u.entries()[i] - u.entries()[j]));
        if (min_gap < 1e-3) continue;
        CHECK(density_contour(u).value ==
              doctest::Approx(density_partial_fractions(u)).epsilon(1e-8));
    }
}

TEST_CASE("monte carlo estimator") {
    const auto e = density_monte_carlo(v_ref, 1000000, 0.01, 42);
    CHECK(e.error_estimate > 0.0);
    CHECK(std::abs(e.value - residue_reference()) <= 3.0 * e.error_estimate);

    const auto e2 = density_monte_carlo(u86, 1000000, 0.01, 42);
    CHECK(std::abs(e2.value - g86) <= 3.0 * e2.error_estimate);

    // bit-identical for a fixed seed
    const auto r1 = density_monte_carlo(u86, 200000, 0.01, 7);
    const auto r2 = density_monte_carlo(u86, 200000, 0.01, 7);
    CHECK(r1.value == r2.value);
    CHECK(r1.meta.hits == r2.meta.hits);

    CHECK_THROWS_AS(density_monte_carlo(u86, 100, 0.01, 1), invalid_input);
    CHECK_THROWS_AS(density_monte_carlo(u86, 100000, 0.0, 1), invalid_input);
}

TEST_CASE("section volume ties the chain together") {
    CHECK(section_volume(facet_direction(2), 2) ==
          doctest::Approx(0.94280904158206337).epsilon(1e-9));
    CHECK(section_volume(facet_direction(3), 3) ==
          doctest::Approx(0.48713928962874674).epsilon(1e-9));
    for (int n = 2; n <= 6; ++n) {
        const double ratio =
            section_volume(facet_direction(n), n) / facet_section_volume(n);
        CHECK(std::abs(ratio - 1.0) <= 1e-8);
    }

    const auto not_centered = DirectionVector::validate_unit({1.0, 0.0, 0.0});
    CHECK_THROWS_AS(section_volume(not_centered, 2), invalid_input);

    const auto a = random_direction(404, 5, true);
    const double lower = section_volume_from_density(4, 1.0) * std::exp(-1.0);
    CHECK(section_volume(a, 4) >= lower - 1e-9);
}

TEST_CASE("config validation") {
    IntegrationConfig cfg;
    cfg.abs_tol = 0.0;
    CHECK_THROWS_AS(density_contour(u86, cfg), invalid_input);
    IntegrationConfig cfg2;
    cfg2.endpoint_margin = 1.5;
    CHECK_THROWS_AS(density_contour(u86, cfg2), invalid_input);
}

TEST_CASE("estimate serialization keys") {
    const auto e = density_contour(u86);
    const auto j = nlohmann::json::parse(to_json(e));
    CHECK(j.contains("value"));
    CHECK(j["method"] == "contour");
    CHECK(j.contains("error_estimate"));
    CHECK(j["meta"].contains("truncation"));
    CHECK(j["meta"].contains("tail_bound"));

    const auto m = density_monte_carlo(u86, 10000, 0.05, 3);
    const auto jm = nlohmann::json::parse(to_json(m));
    CHECK(jm["meta"]["samples"] == 10000);
    CHECK(jm["meta"]["seed"] == 3);
}
