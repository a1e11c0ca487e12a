#include "modelspec/warping.hpp"

#include "modelspec/errors.hpp"
#include "modelspec/ode.hpp"
#include "modelspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace modelspec {

double WarpingFunction::second_derivative(double t) const { return -profile_(t) * value(t); }

double WarpingFunction::residual(double t) const {
    return std::abs(second_derivative_interpolated(t) + profile_(t) * value(t));
}

std::vector<double> WarpingFunction::mesh_breaks(double a, double b) const {
    std::vector<double> out{a};
    const auto t = nodes();
    auto it = std::upper_bound(t.begin(), t.end(), a);
    for (; it != t.end() && *it < b; ++it) out.push_back(*it);
    out.push_back(b);
    return out;
}

WarpingFunction warping_from_curvature(const CurvatureProfile& profile, double t_max, const WarpingOptions& opt) {
    detail::require(std::isfinite(t_max) && t_max > 0.0, "warping: t_max must be positive and finite");
    detail::require(t_max <= profile.domain_end(), "warping: t_max beyond the profile domain");
    detail::require(opt.start > 0.0 && opt.start < t_max, "warping: start offset must lie in (0, t_max)");

    auto k_at = [&profile](double t) {
        const double k = profile(t);
        if (!std::isfinite(k)) throw NumericalError("warping: non-finite curvature at t=" + std::to_string(t));
        return k;
    };
    auto rhs = [&](double t, const ode::State<2>& y) { return ode::State<2>{y[1], -k_at(t) * y[0]}; };
    auto cap = [&](double t) { return opt.h_max / std::max(1.0, std::sqrt(std::abs(k_at(t)))); };

    std::vector<double> ts{0.0}, fs{0.0}, fps{1.0}, fpps{0.0};
    auto push = [&](double t, double f, double fp) {
        ts.push_back(t);
        fs.push_back(f);
        fps.push_back(fp);
        fpps.push_back(-k_at(t) * f);
    };

    const double e = opt.start;
    const double k0 = k_at(0.0);
    ode::State<2> y{e - k0 * e * e * e / 6.0, 1.0 - k0 * e * e / 2.0};
    push(e, y[0], y[1]);

    std::vector<double> stops;
    for (double b : profile.breakpoints()) {
        if (b > e && b < t_max) stops.push_back(b);
    }
    stops.push_back(t_max);

    ode::Options o;
    o.rtol = opt.rtol;
    o.atol = opt.atol;
    o.max_steps = opt.max_steps;

    bool closed = false;
    double zero = t_max;
    double t0 = e;
    for (double t1 : stops) {
        auto hook = [&](const ode::Node<2>& a, const ode::Node<2>& b) {
            if (b.y[0] <= 0.0) {
                const double z = ode::bisect_root_in_step<2>(rhs, a, b, 0, 1e-15 * std::max(1.0, b.t));
                const double fpz = ode::step_exact<2>(rhs, a, z)[1];
                if (z > a.t) push(z, 0.0, fpz);
                else fs.back() = 0.0;
                zero = z;
                closed = true;
                return false;
            }
            push(b.t, b.y[0], b.y[1]);
            y = b.y;
            return true;
        };
        ode::integrate<2>(rhs, t0, y, t1, o, hook, cap);
        if (closed) break;
        t0 = t1;
    }

    CubicHermite f(ts, fs, fps);
    CubicHermite fp(std::move(ts), std::move(fps), std::move(fpps));
    return WarpingFunction(profile, std::move(f), std::move(fp), zero, closed, t_max);
}

double curvature_from_warping(const WarpingFunction& w, double t) {
    detail::require(t > 0.0 && t < w.zero(), "curvature_from_warping: t must lie in (0, l)");
    return -w.second_derivative(t) / w.value(t);
}

ModelManifold::ModelManifold(int n, WarpingFunction warping) : n_(n), w_(std::move(warping)), l_(w_.zero()) {
    detail::require(n >= 2, "model manifold: dimension must be >= 2");
}

double ModelManifold::area_density(double t) const {
    const double f = w_.value(t);
    return n_ == 2 ? f : std::pow(f, n_ - 1);
}

double sphere_area(int n) {
    detail::require(n >= 1, "sphere_area: n must be >= 1");
    const double h = 0.5 * n;
    return std::exp(std::log(2.0) + h * std::log(std::numbers::pi) - std::lgamma(h));
}

double ball_volume(const ModelManifold& m, double r) {
    detail::require(r >= 0.0 && r < m.l(), "ball_volume: radius must lie in [0, l)");
    if (r == 0.0) return 0.0;
    const auto breaks = m.warping().mesh_breaks(0.0, r);
    const double integral = quad::integrate_piecewise([&m](double t) { return m.area_density(t); }, breaks, 1e-12);
    return sphere_area(m.dimension()) * integral;
}

double boundary_area(const ModelManifold& m, double r) {
    detail::require(r > 0.0 && r < m.l(), "boundary_area: radius must lie in (0, l)");
    return sphere_area(m.dimension()) * m.area_density(r);
}

std::optional<double> stopping_time(const WarpingFunction& w) {
    const auto t = w.nodes();
    const auto fp = w.derivatives();
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (fp[i] > 1.0) {
            double lo = t[i - 1], hi = t[i];
            while (hi - lo > 1e-13) {
                const double mid = 0.5 * (lo + hi);
                if (w.derivative(mid) > 1.0) hi = mid;
                else lo = mid;
            }
            return lo;
        }
    }
    return std::nullopt;
}

SturmReport sturm_compare(const WarpingFunction& w1, const WarpingFunction& w2, double a, double b,
                          std::size_t grid_points, double tolerance) {
    detail::require(grid_points >= 256, "sturm_compare: grid needs at least 256 points");
    detail::require(a >= 0.0 && b > a, "sturm_compare: need 0 <= a < b");
    detail::require(b <= w1.t_max() && b <= w2.t_max(), "sturm_compare: interval exceeds a warping's mesh");

    SturmReport rep;
    rep.grid_points = grid_points;
    rep.tolerance = tolerance;
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        const double k1 = w1.profile()(t), k2 = w2.profile()(t);
        if (k1 > k2 + 1e-12 * (1.0 + std::abs(k2))) {
            throw InvalidArgument("sturm_compare: profiles not ordered (k1 > k2) at t=" + std::to_string(t));
        }
        const double margin = w1.value(t) - w2.value(t);
        rep.min_margin = std::min(rep.min_margin, margin);
        rep.max_violation = std::max(rep.max_violation, -margin);
    }
    rep.holds = rep.max_violation <= tolerance;
    return rep;
}

} // namespace modelspec
