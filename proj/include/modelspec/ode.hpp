#pragma once

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems.
//
// The integrator reports every accepted step to a hook, which may stop the
// integration early (event detection is done by the caller on consecutive
// nodes). `step_exact` re-evaluates a single untruncated RK step from an
// accepted node; callers use it as a fifth-order dense output when they
// need to locate roots inside a step.

#include "modelspec/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace modelspec::ode {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
struct Node {
    double t = 0.0;
    State<N> y{};
    State<N> dy{};
};

struct Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    /// Per-component absolute tolerances; overrides `atol` when non-empty.
    std::vector<double> atol_each;
    double h_init = 0.0; // 0: pick from the interval length
    double h_max = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 2'000'000;
};

struct Report {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    bool stopped_by_hook = false;
    double t_final = 0.0;
};

namespace detail {

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
    State<N> out = y;
    for (const auto& [c, k] : terms) {
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
    }
    return out;
}

template <std::size_t N>
bool all_finite(const State<N>& y) {
    return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

} // namespace detail

template <std::size_t N>
struct StepOutcome {
    State<N> y;
    State<N> dy; // rhs at the end point (FSAL)
    State<N> err;
};

/// One Dormand-Prince step of size h from (t, y) with k1 = rhs(t, y).
template <std::size_t N, class Rhs>
StepOutcome<N> dopri_step(const Rhs& rhs, double t, const State<N>& y, const State<N>& k1, double h) {
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                     a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                     a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                     b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                     e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    using detail::axpy;
    const State<N> k2 = rhs(t + h / 5.0, axpy<N>(y, h, {{a21, &k1}}));
    const State<N> k3 = rhs(t + 3.0 * h / 10.0, axpy<N>(y, h, {{a31, &k1}, {a32, &k2}}));
    const State<N> k4 = rhs(t + 4.0 * h / 5.0, axpy<N>(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State<N> k5 =
        rhs(t + 8.0 * h / 9.0, axpy<N>(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State<N> k6 =
        rhs(t + h, axpy<N>(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));

    StepOutcome<N> out;
    out.y = axpy<N>(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    out.dy = rhs(t + h, out.y);
    for (std::size_t i = 0; i < N; ++i) {
        out.err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * out.dy[i]);
    }
    return out;
}

/// Value at t_prev + h reached by a single untruncated step from an accepted node.
template <std::size_t N, class Rhs>
State<N> step_exact(const Rhs& rhs, const Node<N>& from, double t) {
    if (t == from.t) return from.y;
    return dopri_step<N>(rhs, from.t, from.y, from.dy, t - from.t).y;
}

/// Integrate y' = rhs(t, y) from t0 to t_end (t_end > t0).
///
/// `hook(prev, cur)` is called on every accepted step and returns false to
/// stop. `h_cap(t)` bounds the step size locally (return +inf for none).
template <std::size_t N, class Rhs, class Hook, class StepCap>
Report integrate(const Rhs& rhs, double t0, const State<N>& y0, double t_end, const Options& opt, Hook&& hook,
                 StepCap&& h_cap) {
    if (!(t_end > t0)) throw InvalidArgument("ode: t_end must exceed t0");
    if (!detail::all_finite<N>(y0)) throw NumericalError("ode: non-finite initial state");
    if (!opt.atol_each.empty() && opt.atol_each.size() != N) throw InvalidArgument("ode: atol_each size mismatch");

    Node<N> cur{t0, y0, rhs(t0, y0)};
    if (!detail::all_finite<N>(cur.dy)) throw NumericalError("ode: non-finite derivative at t=" + std::to_string(t0));

    const double span = t_end - t0;
    double h = opt.h_init > 0.0 ? opt.h_init : span * 1e-3;
    h = std::min({h, opt.h_max, h_cap(t0)});

    Report rep;
    double err_prev = 1e-4;
    while (cur.t < t_end) {
        if (rep.accepted + rep.rejected >= opt.max_steps) {
            throw NumericalError("ode: step budget exhausted at t=" + std::to_string(cur.t));
        }
        h = std::min({h, opt.h_max, h_cap(cur.t)});
        bool last = false;
        if (cur.t + h >= t_end || (t_end - cur.t - h) < 1e-12 * span) {
            h = t_end - cur.t;
            last = true;
        }
        if (!(h > 0.0) || cur.t + h == cur.t) {
            throw NumericalError("ode: step size underflow at t=" + std::to_string(cur.t));
        }

        const auto step = dopri_step<N>(rhs, cur.t, cur.y, cur.dy, h);
        double err = 0.0;
        bool finite = detail::all_finite<N>(step.y) && detail::all_finite<N>(step.dy);
        if (finite) {
            for (std::size_t i = 0; i < N; ++i) {
                const double at = opt.atol_each.empty() ? opt.atol : opt.atol_each[i];
                const double sc = at + opt.rtol * std::max(std::abs(cur.y[i]), std::abs(step.y[i]));
                const double r = step.err[i] / sc;
                err += r * r;
            }
            err = std::sqrt(err / static_cast<double>(N));
            finite = std::isfinite(err);
        }
        if (!finite) {
            ++rep.rejected;
            h *= 0.25;
            continue;
        }

        if (err <= 1.0) {
            Node<N> next{last ? t_end : cur.t + h, step.y, step.dy};
            ++rep.accepted;
            const bool go_on = hook(cur, next);
            cur = next;
            if (!go_on) {
                rep.stopped_by_hook = true;
                break;
            }
            // PI controller (Hairer & Wanner constants for order 5).
            double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            fac = std::clamp(fac, 0.2, 5.0);
            h *= fac;
            err_prev = std::max(err, 1e-4);
        } else {
            ++rep.rejected;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
    rep.t_final = cur.t;
    return rep;
}

template <std::size_t N, class Rhs, class Hook>
Report integrate(const Rhs& rhs, double t0, const State<N>& y0, double t_end, const Options& opt, Hook&& hook) {
    return integrate<N>(rhs, t0, y0, t_end, opt, std::forward<Hook>(hook),
                        [](double) { return std::numeric_limits<double>::infinity(); });
}

/// Locate a sign change of component `idx` inside the accepted step [a.t, b.t]
/// by bisection on single-step evaluations, to absolute tolerance `tol` in t.
template <std::size_t N, class Rhs>
double bisect_root_in_step(const Rhs& rhs, const Node<N>& a, const Node<N>& b, std::size_t idx, double tol) {
    double lo = a.t, hi = b.t;
    const double s_lo = a.y[idx];
    if (s_lo == 0.0) return lo;
    if (b.y[idx] == 0.0) return hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double v = step_exact<N>(rhs, a, mid)[idx];
        if (v == 0.0) return mid;
        if ((v > 0.0) == (s_lo > 0.0)) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace modelspec::ode
