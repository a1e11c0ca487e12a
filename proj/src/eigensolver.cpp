#include "modelspec/eigensolver.hpp"

#include "modelspec/bounds.hpp"
#include "modelspec/errors.hpp"
#include "modelspec/quadrature.hpp"
#include "radial_shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <set>

namespace modelspec {

namespace {

void validate(const EigenProblem& pr) {
    detail::require(pr.p > 1.0 && std::isfinite(pr.p), "eigen problem: p must lie in (1, inf)");
    detail::require(pr.r0 > 0.0 && pr.r0 < pr.model.l(), "eigen problem: r0 must lie in (0, l)");
}

bool hits_zero(const detail::Shot& s, double r0) { return s.first_zero <= r0; }

} // namespace

EigenResult solve_radial(const EigenProblem& pr, double tol) {
    validate(pr);
    detail::require(tol >= 1e-12, "solve_radial: tol must be >= 1e-12");

    detail::ShotOptions probe;
    auto shoot = [&](double lambda) { return detail::shoot_radial(pr.model, pr.p, lambda, pr.r0, probe); };

    const auto g = grigoryan_mp(pr.model, pr.p, pr.r0);
    double lo = a_p(pr.p) * g.m_p;
    double hi = g.m_p;

    EigenResult res;
    res.p = pr.p;
    res.r0 = pr.r0;

    // The sandwich should already bracket; widen geometrically if it does not.
    auto s_hi = shoot(hi);
    auto s_lo = shoot(lo);
    while (!(hits_zero(s_hi, pr.r0) && !hits_zero(s_lo, pr.r0))) {
        if (res.bracket_expansions == 8) {
            throw NumericalError("solve_radial: no sign change in the eigenvalue bracket (bounds/ODE inconsistent)");
        }
        ++res.bracket_expansions;
        if (!hits_zero(s_hi, pr.r0)) {
            lo = hi;
            s_lo = s_hi;
            hi *= 2.0;
            s_hi = shoot(hi);
        } else {
            hi = lo;
            s_hi = s_lo;
            lo *= 0.5;
            s_lo = shoot(lo);
        }
    }

    // Bisect until the bracket meets tol and the profile at `lo` has resolved
    // its boundary zero.
    constexpr double kBoundaryResolution = 1e-10;
    constexpr int kMaxIterations = 200;
    while (res.iterations < kMaxIterations) {
        const bool narrow = (hi - lo) <= tol * hi;
        if (narrow && s_lo.end_phi <= kBoundaryResolution) break;
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        ++res.iterations;
        auto s = shoot(mid);
        if (hits_zero(s, pr.r0)) {
            hi = mid;
            s_hi = std::move(s);
        } else {
            lo = mid;
            s_lo = std::move(s);
        }
    }
    if (!std::isfinite(s_hi.first_zero)) {
        throw NumericalError("solve_radial: solution does not reach zero before l at the upper bracket");
    }

    res.lower = lo;
    res.upper = hi;
    res.lambda = 0.5 * (lo + hi);
    res.bracket_width = (hi - lo) / hi;
    res.first_zero = s_hi.first_zero;

    detail::ShotOptions rec = probe;
    rec.record = true;
    rec.h_max = pr.r0 / 256.0;
    auto prof = detail::shoot_radial(pr.model, pr.p, lo, pr.r0, rec);
    res.t = std::move(prof.t);
    res.phi = std::move(prof.phi);
    res.dphi = std::move(prof.dphi);
    res.flux = std::move(prof.flux);
    return res;
}

double rayleigh_quotient(const EigenProblem& pr, const RadialTrial& trial) {
    validate(pr);
    detail::require(static_cast<bool>(trial.value) && static_cast<bool>(trial.derivative),
                    "rayleigh_quotient: trial needs value and derivative");
    const double scale = std::max(1.0, std::abs(trial.value(0.0)));
    detail::require(std::abs(trial.value(pr.r0)) <= 1e-8 * scale, "rayleigh_quotient: trial must vanish at r0");

    std::set<double> cuts;
    for (double b : pr.model.warping().mesh_breaks(0.0, pr.r0)) cuts.insert(b);
    for (double b : trial.breaks) {
        if (b > 0.0 && b < pr.r0) cuts.insert(b);
    }
    const std::vector<double> breaks(cuts.begin(), cuts.end());

    const double p = pr.p;
    const auto& m = pr.model;
    const double num = quad::integrate_piecewise(
        [&](double t) { return std::pow(std::abs(trial.derivative(t)), p) * m.area_density(t); }, breaks, 1e-11);
    const double den = quad::integrate_piecewise(
        [&](double t) { return std::pow(std::abs(trial.value(t)), p) * m.area_density(t); }, breaks, 1e-11);
    if (!(den > 0.0)) throw InvalidArgument("rayleigh_quotient: trial function is identically zero");
    return num / den;
}

RadialTrial trial_from(const EigenResult& result) {
    auto h = std::make_shared<CubicHermite>(result.profile());
    return {[h](double t) { return h->value(t); }, [h](double t) { return h->derivative(t); }, {}};
}

RadialTrial closing_trial(int n, double l, double inner, double outer) {
    detail::require(0.0 < inner && inner < outer && outer < l, "closing_trial: need 0 < R_m < R_{m+1} < l");
    if (n == 2) {
        const double log_ratio = std::log((l - inner) / (l - outer));
        return {[=](double r) {
                    if (r < inner) return 1.0;
                    if (r > outer) return 0.0;
                    return std::log((l - r) / (l - outer)) / log_ratio;
                },
                [=](double r) {
                    if (r < inner || r > outer) return 0.0;
                    return -1.0 / ((l - r) * log_ratio);
                },
                {inner, outer}};
    }
    const double width = outer - inner;
    return {[=](double r) {
                if (r < inner) return 1.0;
                if (r > outer) return 0.0;
                return (outer - r) / width;
            },
            [=](double r) { return (r < inner || r > outer) ? 0.0 : -1.0 / width; },
            {inner, outer}};
}

ClosingReport closing_asymptotics(const ModelManifold& model, double p, std::span<const double> radii,
                                  double threshold, int trial_terms, double tol) {
    const int n = model.dimension();
    detail::require(model.warping().closes(), "closing_asymptotics: model does not close (f has no zero)");
    if (n == 2) detail::require(p > 1.0 && p <= 2.0, "closing_asymptotics: n = 2 needs 1 < p <= 2");
    else detail::require(p > 1.0 && p < 3.0, "closing_asymptotics: n >= 3 needs 1 < p < 3");
    detail::require(!radii.empty(), "closing_asymptotics: no radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        detail::require(radii[i] > 0.0 && radii[i] < model.l(), "closing_asymptotics: radii must lie in (0, l)");
        if (i > 0) detail::require(radii[i] > radii[i - 1], "closing_asymptotics: radii must be ascending");
    }
    detail::require(trial_terms >= 2, "closing_asymptotics: need at least two trial terms");

    ClosingReport rep;
    rep.p = p;
    rep.threshold = threshold;
    rep.radii.assign(radii.begin(), radii.end());
    for (double r : radii) {
        try {
            rep.lambdas.push_back(solve_radial({model, p, r}, tol).lambda);
            rep.errors.emplace_back();
        } catch (const std::exception& e) {
            rep.lambdas.push_back(std::numeric_limits<double>::quiet_NaN());
            rep.errors.emplace_back(e.what());
        }
    }
    rep.strictly_decreasing = std::all_of(rep.lambdas.begin(), rep.lambdas.end(), [](double v) { return std::isfinite(v); });
    for (std::size_t i = 1; i < rep.lambdas.size(); ++i) {
        rep.strictly_decreasing = rep.strictly_decreasing && rep.lambdas[i] < rep.lambdas[i - 1];
    }
    rep.below_threshold = std::isfinite(rep.lambdas.back()) && rep.lambdas.back() < threshold;

    const double l = model.l();
    auto gap = [n](int m) {
        if (n == 2) return 1.0 / std::tgamma(m + 1.0);
        return std::ldexp(1.0, -m);
    };
    int m = 1;
    while (gap(m) >= l) ++m;
    for (int k = 0; k < trial_terms; ++k, ++m) {
        const double inner = l - gap(m), outer = l - gap(m + 1);
        const double q = rayleigh_quotient({model, p, outer}, closing_trial(n, l, inner, outer));
        rep.trial_bounds.push_back({m, inner, outer, q});
    }
    rep.trial_bounds_decreasing = true;
    for (std::size_t i = 1; i < rep.trial_bounds.size(); ++i) {
        rep.trial_bounds_decreasing =
            rep.trial_bounds_decreasing && rep.trial_bounds[i].quotient < rep.trial_bounds[i - 1].quotient;
    }
    return rep;
}

} // namespace modelspec
