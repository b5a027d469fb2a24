#include "simsect/density.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include <json.hpp>

#include "simsect/charfun.hpp"
#include "simsect/contour.hpp"
#include "simsect/quadrature.hpp"

namespace simsect {

namespace {

void validate_config(const IntegrationConfig& cfg) {
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0) ||
        cfg.max_subdivisions <= 0 || !(cfg.tail_epsilon > 0.0) ||
        !(cfg.endpoint_margin > 0.0) || !(cfg.endpoint_margin < 1.0))
        throw invalid_input("BadParameters: IntegrationConfig fields must be "
                            "positive (endpoint_margin in (0,1))");
}

void require_canonical(const DirectionVector& u, const char* op) {
    if (!u.is_canonical())
        throw invalid_input(std::string(op) +
                            " requires a canonical direction (no zero entries)");
}

double log_inv_entry_product(const DirectionVector& u) {
    double acc = 0.0;
    for (double uj : u.entries()) acc -= std::log(std::abs(uj));
    return acc;
}

// Geometric edge ladder {0, h, 2h, ..., b} seeding the adaptive partition.
std::vector<double> geometric_edges(double b, double h0) {
    std::vector<double> edges{0.0};
    for (double e = std::min(h0, 0.5 * b); e < 0.75 * b; e *= 2.0)
        edges.push_back(e);
    edges.push_back(b);
    return edges;
}

} // namespace

std::string method_name(DensityMethod m) {
    switch (m) {
        case DensityMethod::Contour: return "contour";
        case DensityMethod::RealAxis: return "realaxis";
        case DensityMethod::PartialFractions: return "pf";
        case DensityMethod::MonteCarlo: return "mc";
    }
    return "unknown";
}

std::string to_json(const DensityEstimate& e) {
    nlohmann::ordered_json meta;
    switch (e.method) {
        case DensityMethod::Contour:
        case DensityMethod::RealAxis:
            meta["truncation"] = e.meta.truncation;
            meta["tail_bound"] = e.meta.tail_bound;
            meta["evaluations"] = e.meta.evaluations;
            meta["panels"] = e.meta.panels;
            break;
        case DensityMethod::MonteCarlo:
            meta["samples"] = e.meta.samples;
            meta["hits"] = e.meta.hits;
            meta["bandwidth"] = e.meta.bandwidth;
            meta["seed"] = e.meta.seed;
            break;
        case DensityMethod::PartialFractions:
            meta = nlohmann::ordered_json::object();
            break;
    }
    nlohmann::ordered_json j;
    j["value"] = e.value;
    j["method"] = method_name(e.method);
    j["error_estimate"] = e.error_estimate;
    j["meta"] = meta;
    return j.dump();
}

DensityEstimate density_contour(const DirectionVector& u,
                                const IntegrationConfig& cfg) {
    validate_config(cfg);
    require_canonical(u, "density_contour");

    ContourTracer tracer(u);
    const ContourDomain dom = tracer.domain();
    auto f = [&tracer](double x) { return tracer.f_tilde(x); };

    quad::Options opt;
    opt.abs_tol = 0.4 * M_PI * cfg.abs_tol;
    opt.rel_tol = 0.4 * cfg.rel_tol;
    opt.max_subdivisions = cfg.max_subdivisions;

    DensityEstimate est;
    est.method = DensityMethod::Contour;

    if (dom.finite()) {
        // Cases I/II: integrate to within endpoint_margin of the endpoint;
        // F~_u is strictly decreasing on (0, L), so the remainder is bounded
        // by the last value times the excluded length.
        const double L = dom.right_endpoint;
        const double x_cut = L * (1.0 - cfg.endpoint_margin);
        const auto r = quad::integrate_edges<double>(
            f, geometric_edges(x_cut, 0.5), opt);
        if (!r.converged)
            throw numerical_error("ToleranceNotMet: contour quadrature budget "
                                  "exhausted (Case I/II)");
        const double remainder = (L - x_cut) * tracer.f_tilde(x_cut) / M_PI;
        est.value = r.value / M_PI;
        est.error_estimate = r.error / M_PI + remainder;
        est.meta.truncation = x_cut;
        est.meta.tail_bound = remainder;
        est.meta.evaluations = r.evaluations;
        est.meta.panels = r.panels;
    } else {
        // Case III: |F_u(x + iy)| <= prod(1/|u_j|) / |x|^{n+1} along any
        // path, so the tail beyond X_max is certified once X_max satisfies
        // (1/pi) * prod(1/|u_j|) / (n X_max^n) <= tail_epsilon.
        const int dim = u.dimension();
        const int n = dim - 1;
        const double log_pinv = log_inv_entry_product(u);
        double pole_scale = 0.0;
        for (double uj : u.entries())
            pole_scale = std::max(pole_scale, 1.0 / std::abs(uj));
        const double x_head = std::max(10.0, 2.0 * pole_scale);

        double x_max = std::exp(
            (log_pinv - std::log(double(n) * M_PI * cfg.tail_epsilon)) / n);
        x_max = std::max(x_max, 2.0 * x_head);
        double tail_bound =
            std::exp(log_pinv - double(n) * std::log(x_max)) / (n * M_PI);
        // e^{-y sum(u)} was taken as 1; inflate by the worst case along the
        // contour (|y| grows at most linearly with slope < dim).
        const double inflation =
            std::exp(std::min(std::abs(u.sum()) * dim * x_max, 700.0));
        if (inflation > 2.0)
            throw numerical_error(
                "ToleranceNotMet: sum(u) too far from zero for the Case III "
                "tail bound; direction is not numerically centered");
        tail_bound *= inflation;

        const auto head = quad::integrate_edges<double>(
            f, geometric_edges(x_head, 0.5), opt);
        // the middle range maps to a bounded interval under x -> 1/x
        auto g = [&f](double s) { return f(1.0 / s) / (s * s); };
        std::vector<double> sedges{1.0 / x_max};
        for (double s = 1.0 / x_max * 4.0; s < 0.75 / x_head; s *= 4.0)
            sedges.push_back(s);
        sedges.push_back(1.0 / x_head);
        const auto mid = quad::integrate_edges<double>(g, sedges, opt);
        if (!head.converged || !mid.converged)
            throw numerical_error("ToleranceNotMet: contour quadrature budget "
                                  "exhausted (Case III)");

        est.value = (head.value + mid.value) / M_PI;
        est.error_estimate = (head.error + mid.error) / M_PI + tail_bound;
        est.meta.truncation = x_max;
        est.meta.tail_bound = tail_bound;
        est.meta.evaluations = head.evaluations + mid.evaluations;
        est.meta.panels = head.panels + mid.panels;
    }

    est.value = std::max(est.value, 0.0);
    return est;
}

DensityEstimate density_realaxis(const DirectionVector& u,
                                 const IntegrationConfig& cfg) {
    validate_config(cfg);
    require_canonical(u, "density_realaxis");
    const int dim = u.dimension();
    if (dim < 2)
        throw invalid_input(
            "FewerThanTwoEntries: the real-axis integral needs >= 2 nonzero "
            "entries (F_u is not absolutely integrable otherwise)");

    const int n = dim - 1;
    const double mu = u.sum();
    const double log_pinv = log_inv_entry_product(u);
    double abs_sum = 0.0;
    for (double uj : u.entries()) abs_sum += std::abs(uj);

    // Truncation point: |int_T^inf F_u| <= prod(1/|u_j|)/(n T^n), improved to
    // 2 prod(1/|u_j|)/(|mu| T^{n+1}) by integration by parts when mu != 0.
    const double budget = M_PI * cfg.tail_epsilon;
    double t_end = std::exp((log_pinv - std::log(double(n) * budget)) / n);
    double tail_bound =
        std::exp(log_pinv - double(n) * std::log(t_end)) / double(n);
    if (std::abs(mu) > 1e-12) {
        const double t_osc = std::exp(
            (std::log(2.0) + log_pinv - std::log(std::abs(mu) * budget)) /
            (n + 1));
        if (t_osc < t_end) {
            t_end = t_osc;
            tail_bound = 2.0 * std::exp(log_pinv -
                                        double(n + 1) * std::log(t_end)) /
                         std::abs(mu);
        }
    }
    t_end = std::max(t_end, 1.0);

    // Panel seeds capped at a quarter period of the local phase rate
    // |mu| + min(sum|u_j|, dim/(2t)).
    std::vector<double> pos{0.0};
    double t = std::min(0.5 / (1.0 + std::abs(mu) + abs_sum), 0.5 * t_end);
    pos.push_back(t);
    while (t < t_end) {
        const double rate =
            std::abs(mu) + std::min(abs_sum, dim / (2.0 * t));
        double stepw = 0.5 * M_PI / rate;
        if (t + 1.25 * stepw >= t_end) {
            t = t_end;
        } else {
            t += stepw;
        }
        pos.push_back(t);
    }
    std::vector<double> edges;
    edges.reserve(2 * pos.size() - 1);
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) edges.push_back(-*it);
    for (std::size_t k = 1; k < pos.size(); ++k) edges.push_back(pos[k]);

    quad::Options opt;
    opt.abs_tol = 2.0 * M_PI * cfg.abs_tol * 0.5;
    opt.rel_tol = 0.5 * cfg.rel_tol;
    opt.max_subdivisions = cfg.max_subdivisions;

    auto f = [&u](double s) { return eval_f(u, std::complex<double>(s, 0.0)); };
    const auto r = quad::integrate_edges<std::complex<double>>(f, edges, opt);
    if (!r.converged)
        throw numerical_error(
            "ToleranceNotMet: real-axis quadrature budget exhausted");

    const double imag_tol =
        std::max(100.0 * (r.error + tail_bound), 1e-9 * (1.0 + std::abs(r.value.real())));
    if (std::abs(r.value.imag()) > imag_tol)
        throw numerical_error("real-axis integral has a non-vanishing "
                              "imaginary part; conjugate symmetry violated");

    DensityEstimate est;
    est.method = DensityMethod::RealAxis;
    est.value = std::max(r.value.real() / (2.0 * M_PI), 0.0);
    est.error_estimate = r.error / (2.0 * M_PI) + tail_bound / M_PI;
    est.meta.truncation = t_end;
    est.meta.tail_bound = tail_bound / M_PI;
    est.meta.evaluations = r.evaluations;
    est.meta.panels = r.panels;
    return est;
}

double density_partial_fractions(const DirectionVector& u) {
    require_canonical(u, "density_partial_fractions");
    const auto& e = u.entries();
    const std::size_t m = e.size();
    if (m < 2)
        throw invalid_input(
            "FewerThanTwoEntries: partial fractions needs >= 2 entries");

    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k)
            min_gap = std::min(min_gap, std::abs(e[j] - e[k]));
    if (min_gap < 1e-12)
        throw invalid_input("RepeatedEntries: entries must be pairwise distinct");
    if (min_gap < 1e-4)
        throw numerical_error("IllConditioned: entry gap below 1e-4; fall "
                              "back to density_contour");

    // G_u(0) is the density of sum u_j Y_j at mu = sum(u_j). Each simple pole
    // contributes A_j e^{-s/u_j}/|u_j| on its own side of the origin:
    // positive entries cover s >= 0, negative entries cover s <= 0.
    const double mu = u.sum();
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const bool contributes =
            (mu > 0.0) ? (e[j] > 0.0)
                       : (mu < 0.0 ? (e[j] < 0.0) : (e[j] > 0.0));
        if (!contributes) continue;
        double a_j = 1.0;
        for (std::size_t k = 0; k < m; ++k) {
            if (k == j) continue;
            a_j *= e[j] / (e[j] - e[k]);
        }
        if (std::abs(a_j) > 1e8)
            throw numerical_error("IllConditioned: partial-fraction "
                                  "coefficient above 1e8");
        acc += a_j / std::abs(e[j]) * std::exp(-mu / e[j]);
    }
    return acc;
}

DensityEstimate density_monte_carlo(const DirectionVector& u, long n_samples,
                                    double bandwidth, std::uint64_t seed) {
    if (n_samples < 10000)
        throw invalid_input("BadParameters: need at least 1e4 samples");
    if (!(bandwidth > 0.0))
        throw invalid_input("BadParameters: bandwidth must be positive");

    // Exponential draws via inverse CDF on explicit mt19937_64 bits, so the
    // stream does not depend on the standard library's distribution choices.
    std::mt19937_64 rng(seed);
    auto draw_exp = [&rng]() {
        const double unif =
            double(rng() >> 11) * 0x1.0p-53; // [0, 1)
        return -std::log1p(-unif);
    };

    const auto& entries = u.entries();
    long hits = 0;
    for (long s = 0; s < n_samples; ++s) {
        double z = 0.0;
        for (double uj : entries) z += uj * (draw_exp() - 1.0);
        if (std::abs(z) <= bandwidth) ++hits;
    }

    const double p = double(hits) / double(n_samples);
    double se = std::sqrt(p * (1.0 - p) / double(n_samples));
    if (hits == 0) se = 1.0 / double(n_samples); // one-count floor

    DensityEstimate est;
    est.method = DensityMethod::MonteCarlo;
    est.value = p / (2.0 * bandwidth);
    est.error_estimate = se / (2.0 * bandwidth);
    est.meta.samples = n_samples;
    est.meta.hits = hits;
    est.meta.bandwidth = bandwidth;
    est.meta.seed = seed;
    return est;
}

double residue_reference() { return std::exp(-1.0); }

double section_volume(const DirectionVector& a, int n,
                      const IntegrationConfig& cfg) {
    if (a.dimension() != n + 1)
        throw invalid_input("section_volume: direction must have n+1 entries");
    if (!a.is_centered())
        throw invalid_input("NotCentered: central sections need sum(a) = 0");
    const DensityEstimate g = density_contour(canonicalize(a), cfg);
    return section_volume_from_density(n, g.value);
}

} // namespace simsect
