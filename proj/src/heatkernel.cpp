#include "modelspec/heatkernel.hpp"

#include "modelspec/bounds.hpp"
#include "modelspec/errors.hpp"
#include "modelspec/quadrature.hpp"
#include "radial_shooting.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace modelspec {

namespace {

constexpr double kPanelWidth = 0.25; // in units of the shortest wavelength 1/sqrt(mu_M)

detail::ShotOptions counting_options() {
    detail::ShotOptions o;
    o.stop_at_first_zero = false;
    return o;
}

int count_nodes(const ModelManifold& m, double mu, double r0) {
    return detail::shoot_radial(m, 2.0, mu, r0, counting_options()).sign_changes;
}

double end_value(const ModelManifold& m, double mu, double r0) {
    return detail::shoot_radial(m, 2.0, mu, r0, counting_options()).end_phi;
}

std::size_t panel_count(double r0, double mu_max) {
    return std::max<std::size_t>(256, static_cast<std::size_t>(std::ceil(r0 * std::sqrt(mu_max) / kPanelWidth)));
}

// Isolates mu_j (the j-th radial eigenvalue) above `floor`, where node
// counts are known to be j - 1.
double isolate(const ModelManifold& m, double r0, int j, double floor, double step) {
    double lo = floor, hi = floor + step;
    int n_hi = count_nodes(m, hi, r0);
    for (int k = 0; n_hi < j; ++k) {
        if (k == 60) throw NumericalError("radial_spectrum: could not bracket mode " + std::to_string(j));
        lo = hi;
        hi = floor + step * std::ldexp(1.0, k + 1);
        n_hi = count_nodes(m, hi, r0);
    }
    if (count_nodes(m, lo, r0) != j - 1) {
        throw NumericalError("radial_spectrum: mode isolation failure (node count skips below mode " +
                             std::to_string(j) + ")");
    }
    for (int k = 0; n_hi != j; ++k) {
        if (k == 200) throw NumericalError("radial_spectrum: mode isolation failure at mode " + std::to_string(j));
        const double mid = 0.5 * (lo + hi);
        const int n_mid = count_nodes(m, mid, r0);
        if (n_mid >= j) {
            hi = mid;
            n_hi = n_mid;
        } else if (n_mid == j - 1) {
            lo = mid;
        } else {
            throw NumericalError("radial_spectrum: node count not monotone near mode " + std::to_string(j));
        }
    }

    // psi(r0) has sign (-1)^{j-1} at lo and (-1)^j at hi.
    auto g = [&](double mu) { return end_value(m, mu, r0); };
    const double g_lo = g(lo), g_hi = g(hi);
    if (g_lo == 0.0) return lo;
    if (g_hi == 0.0) return hi;
    if ((g_lo > 0.0) == (g_hi > 0.0)) {
        throw NumericalError("radial_spectrum: boundary value does not change sign across mode " + std::to_string(j));
    }
    std::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, g_lo, g_hi,
                                                          boost::math::tools::eps_tolerance<double>(46), iters);
    return 0.5 * (a + b);
}

RadialMode record_mode(const ModelManifold& m, double r0, double mu) {
    auto opt = counting_options();
    opt.record = true;
    opt.h_max = std::min(r0 / 256.0, 0.02 / std::sqrt(mu));
    auto shot = detail::shoot_radial(m, 2.0, mu, r0, opt);
    RadialMode mode;
    mode.mu = mu;
    // Interior sign changes, ignoring the boundary sample.
    for (std::size_t i = 1; i + 1 < shot.phi.size(); ++i) {
        if ((shot.phi[i - 1] > 0.0) != (shot.phi[i] > 0.0)) ++mode.nodes;
    }
    mode.psi = CubicHermite(std::move(shot.t), std::move(shot.phi), std::move(shot.dphi));
    return mode;
}

double weighted_inner(const ModelManifold& m, double r0, const CubicHermite& a, const CubicHermite& b,
                      std::size_t panels) {
    const auto rule = quad::gauss_panels(0.0, r0, panels);
    double s = 0.0;
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
        const double x = rule.x[q];
        s += rule.w[q] * m.area_density(x) * a.value(x) * b.value(x);
    }
    return sphere_area(m.dimension()) * s;
}

CubicHermite scaled(const CubicHermite& h, double c) {
    std::vector<double> y(h.values().begin(), h.values().end());
    std::vector<double> dy(h.derivatives().begin(), h.derivatives().end());
    for (auto& v : y) v *= c;
    for (auto& v : dy) v *= c;
    return {std::vector<double>(h.nodes().begin(), h.nodes().end()), std::move(y), std::move(dy)};
}

void require_time(const RadialSpectrum& spec, double t, const char* what) {
    if (!(t >= spec.t_min())) {
        throw InvalidArgument(std::string(what) + ": time " + std::to_string(t) +
                              " is below t_min = " + std::to_string(spec.t_min()) + " (truncation not trustworthy)");
    }
}

} // namespace

RadialSpectrum::RadialSpectrum(std::shared_ptr<const ModelManifold> model, double r0, std::vector<RadialMode> modes)
    : model_(std::move(model)), r0_(r0), modes_(std::move(modes)) {
    detail::require(!modes_.empty(), "RadialSpectrum: no modes");
    double peak = 0.0;
    for (const auto& md : modes_) peak = std::max(peak, std::abs(md.center) * md.max_abs);
    amplitude_ = static_cast<double>(modes_.size()) * peak;
    t_min_ = std::max(0.0, std::log(amplitude_ / kTailTarget) / modes_.back().mu);
}

double RadialSpectrum::tail_bound(double t) const { return std::exp(-modes_.back().mu * t) * amplitude_; }

RadialSpectrum radial_spectrum(const ModelManifold& model, double r0, int count) {
    detail::require(r0 > 0.0 && r0 < model.l(), "radial_spectrum: r0 must lie in (0, l)");
    detail::require(count >= 1, "radial_spectrum: need at least one mode");

    std::vector<RadialMode> modes;
    modes.reserve(static_cast<std::size_t>(count));
    double floor = 0.0;
    // The p = 2 Grigor'yan value bounds mu_1 from above.
    double step = grigoryan_mp(model, 2.0, r0).m_p;
    for (int j = 1; j <= count; ++j) {
        const double mu = isolate(model, r0, j, floor, step);
        if (!modes.empty() && !(mu > modes.back().mu)) {
            throw NumericalError("radial_spectrum: eigenvalues not strictly increasing at mode " + std::to_string(j));
        }
        auto mode = record_mode(model, r0, mu);
        if (mode.nodes != j - 1) {
            throw NumericalError("radial_spectrum: mode " + std::to_string(j) + " has " + std::to_string(mode.nodes) +
                                 " interior zeros, expected " + std::to_string(j - 1));
        }
        step = modes.empty() ? mu : 2.0 * (mu - modes.back().mu);
        floor = mu * (1.0 + 1e-12);
        modes.push_back(std::move(mode));
    }

    const std::size_t panels = panel_count(r0, modes.back().mu);
    for (auto& md : modes) {
        const double norm2 = weighted_inner(model, r0, md.psi, md.psi, panels);
        if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw NumericalError("radial_spectrum: normalisation failed");
        md.psi = scaled(md.psi, 1.0 / std::sqrt(norm2));
        md.center = md.psi.value(0.0);
        md.boundary = md.psi.value(r0);
        double peak = 0.0;
        for (double v : md.psi.values()) peak = std::max(peak, std::abs(v));
        md.max_abs = peak;
    }
    return {std::make_shared<const ModelManifold>(model), r0, std::move(modes)};
}

double kernel_center(const RadialSpectrum& spec, double r, double t) {
    detail::require(r >= 0.0 && r <= spec.r0(), "kernel_center: r must lie in [0, r0]");
    require_time(spec, t, "kernel_center");
    double h = 0.0;
    for (const auto& md : spec.modes()) h += std::exp(-md.mu * t) * md.center * md.psi.value(r);
    return h;
}

KernelEvaluation evaluate_kernel(const RadialSpectrum& spec, std::span<const double> r, std::span<const double> t) {
    detail::require(!r.empty() && !t.empty(), "evaluate_kernel: empty grid");
    for (std::size_t k = 0; k < r.size(); ++k) {
        detail::require(r[k] >= 0.0 && r[k] <= spec.r0(), "evaluate_kernel: r must lie in [0, r0]");
        if (k > 0) detail::require(r[k] > r[k - 1], "evaluate_kernel: r must be strictly ascending");
    }
    for (double ti : t) require_time(spec, ti, "evaluate_kernel");

    KernelEvaluation ev;
    ev.t_min = spec.t_min();
    ev.r.assign(r.begin(), r.end());
    ev.t.assign(t.begin(), t.end());
    ev.min_value = std::numeric_limits<double>::infinity();
    ev.max_increment = -std::numeric_limits<double>::infinity();
    for (double ti : t) {
        const double tail = spec.tail_bound(ti);
        std::vector<double> row;
        row.reserve(r.size());
        for (double rk : r) row.push_back(kernel_center(spec, rk, ti));
        for (std::size_t k = 0; k < row.size(); ++k) {
            ev.min_value = std::min(ev.min_value, row[k]);
            if (row[k] < -tail) ev.positive = false;
            else if (row[k] <= tail) ++ev.unresolved_positivity;
            if (k == 0) continue;
            const double inc = row[k] - row[k - 1];
            ev.max_increment = std::max(ev.max_increment, inc);
            if (inc > 2.0 * tail) ev.decreasing = false;
            else if (inc >= -2.0 * tail) ++ev.unresolved_decrease;
        }
        ev.tail.push_back(tail);
        ev.values.push_back(std::move(row));
    }
    return ev;
}

SemigroupCheck semigroup_residual(const RadialSpectrum& spec, double t, double s) {
    detail::require(t > s && s > 0.0, "semigroup_residual: need t > s > 0");
    require_time(spec, s, "semigroup_residual");
    require_time(spec, t - s, "semigroup_residual");

    const auto& m = spec.model();
    SemigroupCheck out;
    out.kernel = kernel_center(spec, 0.0, t);
    const auto breaks = m.warping().mesh_breaks(0.0, spec.r0());
    const double integral = quad::integrate_piecewise(
        [&](double r) { return kernel_center(spec, r, t - s) * kernel_center(spec, r, s) * m.area_density(r); },
        breaks, 1e-10);
    out.integral = sphere_area(m.dimension()) * integral;
    out.residual = std::abs(out.kernel - out.integral);
    out.relative = out.residual / std::abs(out.kernel);
    return out;
}

double orthonormality_deviation(const RadialSpectrum& spec) {
    const auto& m = spec.model();
    // An odd panel count never coincides with the normalisation rule.
    const std::size_t panels = 2 * panel_count(spec.r0(), spec.modes().back().mu) + 1;
    double worst = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        for (std::size_t j = i; j < spec.size(); ++j) {
            const double g = weighted_inner(m, spec.r0(), spec.mode(i).psi, spec.mode(j).psi, panels);
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

KernelComparison compare_kernels(const RadialSpectrum& plus, const RadialSpectrum& mid, const RadialSpectrum& minus,
                                 std::span<const double> r, std::span<const double> t, double slack) {
    const RadialSpectrum* all[] = {&plus, &mid, &minus};
    double kappa[3];
    for (int i = 0; i < 3; ++i) {
        const auto& prof = all[i]->model().warping().profile();
        detail::require(prof.kind() == ProfileKind::constant, "compare_kernels: models must have constant curvature");
        kappa[i] = prof.kappa();
        detail::require(all[i]->model().dimension() == mid.model().dimension(),
                        "compare_kernels: models must share the dimension");
        detail::require(std::abs(all[i]->r0() - mid.r0()) <= 1e-12 * mid.r0(), "compare_kernels: radii differ");
    }
    detail::require(kappa[0] >= kappa[1] && kappa[1] >= kappa[2],
                    "compare_kernels: need kappa_plus >= kappa_mid >= kappa_minus");
    detail::require(slack >= 0.0, "compare_kernels: slack must be >= 0");

    const auto ep = evaluate_kernel(plus, r, t);
    const auto em = evaluate_kernel(mid, r, t);
    const auto en = evaluate_kernel(minus, r, t);

    KernelComparison cmp;
    cmp.slack = slack;
    cmp.margin_upper = cmp.margin_lower = std::numeric_limits<double>::infinity();
    cmp.reversed_margin_upper = cmp.reversed_margin_lower = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t k = 0; k < r.size(); ++k) {
            const double hp = ep.values[i][k], hm = em.values[i][k], hn = en.values[i][k];
            cmp.margin_upper = std::min(cmp.margin_upper, hp - hm);
            cmp.margin_lower = std::min(cmp.margin_lower, hm - hn);
            cmp.reversed_margin_upper = std::min(cmp.reversed_margin_upper, hm - hp);
            cmp.reversed_margin_lower = std::min(cmp.reversed_margin_lower, hn - hm);
            ++cmp.grid_points;
        }
    }
    cmp.mu_plus = plus.mode(0).mu;
    cmp.mu_mid = mid.mode(0).mu;
    cmp.mu_minus = minus.mode(0).mu;
    cmp.kernels_ordered = cmp.margin_upper >= -slack && cmp.margin_lower >= -slack;
    cmp.eigenvalues_ordered = cmp.mu_plus <= cmp.mu_mid && cmp.mu_mid <= cmp.mu_minus;
    return cmp;
}

DecayEstimate lambda_from_decay(const RadialSpectrum& spec, double ta, double tb) {
    detail::require(tb > ta, "lambda_from_decay: need t_b > t_a");
    require_time(spec, ta, "lambda_from_decay");
    if (spec.size() >= 2) {
        const double gap = spec.mode(1).mu - spec.mode(0).mu;
        if (std::exp(-gap * ta) > 1e-6) {
            throw InvalidArgument("lambda_from_decay: window too early, e^{-(mu_2 - mu_1) t_a} = " +
                                  std::to_string(std::exp(-gap * ta)) + " exceeds 1e-6");
        }
    }
    const double tm = 0.5 * (ta + tb);
    const double ha = kernel_center(spec, 0.0, ta), hm = kernel_center(spec, 0.0, tm), hb = kernel_center(spec, 0.0, tb);
    for (double h : {ha, hm, hb}) {
        if (!(h > std::numeric_limits<double>::min()) || !std::isfinite(h)) {
            throw NumericalError("lambda_from_decay: kernel not positive and normal in the window (underflow?)");
        }
    }
    const double s1 = -(std::log(hm) - std::log(ha)) / (tm - ta);
    const double s2 = -(std::log(hb) - std::log(hm)) / (tb - tm);
    DecayEstimate est;
    est.mu = -(std::log(hb) - std::log(ha)) / (tb - ta);
    est.nonlinearity = std::abs(s1 - s2) / std::abs(est.mu);
    if (est.nonlinearity > 1e-3) {
        throw NumericalError("lambda_from_decay: log H is not linear on the window (second-mode contamination)");
    }
    return est;
}

} // namespace modelspec
