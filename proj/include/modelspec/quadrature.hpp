#pragma once

// Adaptive Gauss-Kronrod on Boost.Math node/weight tables plus a composite
// Gauss-Legendre panel rule for integrals over shared sample grids.

#include "modelspec/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <queue>

#include <cmath>
#include <cstdio>
#include <span>
#include <vector>

namespace modelspec::quad {

struct Estimate {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
};

namespace detail {

// G7-K15 on one interval; error estimate |K15 - G7|.
template <class F>
Estimate gk15(const F& f, double a, double b) {
    using K15 = boost::math::quadrature::gauss_kronrod<double, 15>;
    using G7 = boost::math::quadrature::gauss<double, 7>;
    const auto& x = K15::abscissa();
    const auto& wk = K15::weights();
    const auto& wg = G7::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double f0 = f(c);
    double k = wk[0] * f0, g = wg[0] * f0, l1 = wk[0] * std::abs(f0);
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double fp = f(c + h * x[i]), fm = f(c - h * x[i]);
        k += wk[i] * (fp + fm);
        l1 += wk[i] * (std::abs(fp) + std::abs(fm));
        if (i % 2 == 0) g += wg[i / 2] * (fp + fm);
    }
    return {k * h, std::abs(k - g) * std::abs(h), l1 * std::abs(h)};
}

} // namespace detail

/// Globally adaptive G7-K15 on [a, b]: bisects the interval with the largest
/// error until the total meets `rel_tol` or `max_intervals` is reached.
/// No acceptance check; see integrate().
template <class F>
Estimate gauss_kronrod(const F& f, double a, double b, double rel_tol, std::size_t max_intervals = 4000) {
    if (a == b) return {};
    struct Piece {
        double a, b;
        Estimate e;
        bool operator<(const Piece& o) const { return e.error < o.e.error; }
    };
    std::priority_queue<Piece> heap;
    Estimate total = detail::gk15(f, a, b);
    heap.push({a, b, total});
    while (heap.size() < max_intervals) {
        if (total.error <= rel_tol * std::abs(total.value) || total.error <= 1e-15 * total.l1) break;
        const Piece top = heap.top();
        const double mid = 0.5 * (top.a + top.b);
        if (mid <= top.a || mid >= top.b) break;
        heap.pop();
        const auto left = detail::gk15(f, top.a, mid);
        const auto right = detail::gk15(f, mid, top.b);
        total.value += left.value + right.value - top.e.value;
        total.error += left.error + right.error - top.e.error;
        total.l1 += left.l1 + right.l1 - top.e.l1;
        heap.push({top.a, mid, left});
        heap.push({mid, top.b, right});
    }
    // Re-sum to shed the drift of the running updates.
    Estimate exact;
    while (!heap.empty()) {
        exact.value += heap.top().e.value;
        exact.error += heap.top().e.error;
        exact.l1 += heap.top().e.l1;
        heap.pop();
    }
    if (!std::isfinite(exact.value)) throw NumericalError("quadrature: non-finite integral");
    return exact;
}

namespace detail {

// Accept when the error estimate meets the relative target, or the integrand
// cancels to a value below rounding of its L1 norm.
inline void check(const Estimate& e, double rel_tol, double a, double b) {
    if (e.error > 10.0 * rel_tol * std::abs(e.value) && e.error > 1e-13 * e.l1) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "quadrature: tolerance not reached on [%.10g, %.10g], error estimate %.3g", a,
                      b, e.error);
        throw NumericalError(buf);
    }
}

} // namespace detail

/// Adaptive G7-K15 on [a, b] to relative tolerance `rel_tol`.
template <class F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-10) {
    const auto e = gauss_kronrod(f, a, b, rel_tol);
    detail::check(e, rel_tol, a, b);
    return e.value;
}

/// Integrate across fixed breakpoints (kinks of piecewise integrands); the
/// tolerance applies to the total.
template <class F>
double integrate_piecewise(const F& f, std::span<const double> breaks, double rel_tol = 1e-10) {
    Estimate total;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const auto e = gauss_kronrod(f, breaks[i], breaks[i + 1], rel_tol);
        total.value += e.value;
        total.error += e.error;
        total.l1 += e.l1;
    }
    if (breaks.size() >= 2) detail::check(total, rel_tol, breaks.front(), breaks.back());
    return total.value;
}

/// Nodes and weights of an 8-point Gauss-Legendre rule replicated on
/// `panels` equal sub-intervals of [a, b].
struct PanelRule {
    std::vector<double> x;
    std::vector<double> w;
};

inline PanelRule gauss_panels(double a, double b, std::size_t panels) {
    using GL = boost::math::quadrature::gauss<double, 8>;
    const auto& abs = GL::abscissa();
    const auto& wts = GL::weights();
    PanelRule rule;
    rule.x.reserve(panels * 8);
    rule.w.reserve(panels * 8);
    const double h = (b - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = a + (static_cast<double>(p) + 0.5) * h;
        for (std::size_t k = 0; k < abs.size(); ++k) {
            for (double sign : {-1.0, 1.0}) {
                rule.x.push_back(mid + sign * 0.5 * h * abs[k]);
                rule.w.push_back(0.5 * h * wts[k]);
            }
        }
    }
    return rule;
}

} // namespace modelspec::quad
