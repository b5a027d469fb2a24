#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "simsect/errors.hpp"

namespace simsect::quad {

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
};

template <class T>
struct Result {
    T value{};
    double error = 0.0; // estimated absolute error of value
    long evaluations = 0;
    int panels = 0;
    bool converged = false;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (positive half).
inline constexpr double xgk[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0,
};
inline constexpr double wgk[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801,
};
inline constexpr double wg[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776,
};

inline double mag(double v) { return std::abs(v); }
inline double mag(std::complex<double> v) { return std::abs(v); }

template <class T>
struct Panel {
    double a = 0.0, b = 0.0;
    T value{};
    double error = 0.0;

    bool operator<(const Panel& o) const { return error < o.error; }
};

// One G7/K15 evaluation on [a, b] with QUADPACK-style error scaling.
template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    T fv[15];
    fv[7] = f(c);
    for (int i = 0; i < 7; ++i) {
        const double dx = h * xgk[i];
        fv[i] = f(c - dx);
        fv[14 - i] = f(c + dx);
    }

    T resk = wgk[7] * fv[7];
    T resg = wg[3] * fv[7];
    double resabs = wgk[7] * mag(fv[7]);
    for (int i = 0; i < 7; ++i) {
        const T pair = fv[i] + fv[14 - i];
        resk += wgk[i] * pair;
        resabs += wgk[i] * (mag(fv[i]) + mag(fv[14 - i]));
        if (i % 2 == 1) resg += wg[i / 2] * pair;
    }

    const T mean = resk * 0.5;
    double resasc = wgk[7] * mag(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += wgk[i] * (mag(fv[i] - mean) + mag(fv[14 - i] - mean));

    Panel<T> p;
    p.a = a;
    p.b = b;
    p.value = resk * h;
    double err = mag(resk - resg) * h;
    resasc *= std::abs(h);
    resabs *= std::abs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    p.error = std::max(err, round_floor);
    return p;
}

} // namespace detail

/// Globally adaptive G7/K15 over an initial partition given by `edges`
/// (strictly increasing). Splits the worst panel until the summed error
/// estimate meets max(abs_tol, rel_tol*|value|) or the subdivision budget is
/// exhausted (result.converged = false; callers decide whether that is fatal).
template <class T, class F>
Result<T> integrate_edges(F&& f, std::span<const double> edges, const Options& opt) {
    if (edges.size() < 2)
        throw invalid_input("quadrature needs at least one interval");

    long evals = 0;
    auto wrapped = [&](double x) {
        ++evals;
        return f(x);
    };

    std::priority_queue<detail::Panel<T>> heap;
    T total{};
    double total_err = 0.0;
    for (std::size_t k = 1; k < edges.size(); ++k) {
        auto p = detail::gk15<T>(wrapped, edges[k - 1], edges[k]);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }

    int splits = 0;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * detail::mag(total)) &&
           splits < opt.max_subdivisions) {
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution; keep its estimate
            heap.push(worst);
            break;
        }
        total -= worst.value;
        total_err -= worst.error;
        auto left = detail::gk15<T>(wrapped, worst.a, mid);
        auto right = detail::gk15<T>(wrapped, mid, worst.b);
        total += left.value + right.value;
        total_err += left.error + right.error;
        heap.push(left);
        heap.push(right);
        ++splits;
    }

    Result<T> r;
    r.value = total;
    r.error = total_err;
    r.evaluations = evals;
    r.panels = static_cast<int>(heap.size());
    r.converged =
        total_err <= std::max(opt.abs_tol, opt.rel_tol * detail::mag(total));
    return r;
}

template <class T, class F>
Result<T> integrate(F&& f, double a, double b, const Options& opt) {
    const double edges[2] = {a, b};
    return integrate_edges<T>(std::forward<F>(f), edges, opt);
}

} // namespace simsect::quad
