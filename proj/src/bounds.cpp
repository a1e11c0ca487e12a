#include "modelspec/bounds.hpp"

#include "modelspec/errors.hpp"
#include "modelspec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace modelspec {

namespace {

constexpr std::size_t kGrid = 512;
constexpr double kQuadTol = 1e-12;

// Cumulative integrals of f^{n-1} (from 0) and f^{(1-n)/(p-1)} (down from R).
class Objective {
public:
    Objective(const ModelManifold& m, double p, double R) : m_(m), p_(p), R_(R) {
        const double n1 = m.dimension() - 1.0;
        inner_exp_ = -n1 / (p - 1.0);
        r_.resize(kGrid);
        const double r_first = R / 1024.0;
        for (std::size_t i = 0; i < kGrid; ++i) {
            r_[i] = r_first + (R - r_first) * static_cast<double>(i) / static_cast<double>(kGrid - 1);
        }
        r_.back() = R;
        outer_.resize(kGrid);
        inner_.resize(kGrid);
        outer_[0] = outer(0.0, r_[0]);
        for (std::size_t i = 1; i < kGrid; ++i) outer_[i] = outer_[i - 1] + outer(r_[i - 1], r_[i]);
        inner_[kGrid - 1] = 0.0;
        for (std::size_t i = kGrid - 1; i-- > 0;) inner_[i] = inner_[i + 1] + inner(r_[i], r_[i + 1]);
    }

    [[nodiscard]] std::size_t size() const { return kGrid; }
    [[nodiscard]] double r(std::size_t i) const { return r_[i]; }
    [[nodiscard]] double at(std::size_t i) const { return combine(outer_[i], inner_[i]); }

    // Objective at an arbitrary r in [r_0, R], integrating from the nearest table entries.
    [[nodiscard]] double operator()(double r) const {
        auto it = std::upper_bound(r_.begin(), r_.end(), r);
        std::size_t j = it == r_.begin() ? 0 : static_cast<std::size_t>(it - r_.begin()) - 1;
        j = std::min(j, kGrid - 2);
        const double a = outer_[j] + outer(r_[j], r);
        const double b = inner_[j + 1] + inner(r, r_[j + 1]);
        return combine(a, b);
    }

private:
    [[nodiscard]] double combine(double a, double b) const { return a * std::pow(b, p_ - 1.0); }

    [[nodiscard]] double outer(double a, double b) const {
        if (a == b) return 0.0;
        const auto br = m_.warping().mesh_breaks(std::min(a, b), std::max(a, b));
        const double v = quad::integrate_piecewise([this](double t) { return m_.area_density(t); }, br, kQuadTol);
        return b > a ? v : -v;
    }

    [[nodiscard]] double inner(double a, double b) const {
        if (a == b) return 0.0;
        const auto br = m_.warping().mesh_breaks(std::min(a, b), std::max(a, b));
        const double v =
            quad::integrate_piecewise([this](double t) { return std::pow(m_.f(t), inner_exp_); }, br, kQuadTol);
        return b > a ? v : -v;
    }

    const ModelManifold& m_;
    double p_, R_;
    double inner_exp_ = 0.0;
    std::vector<double> r_, outer_, inner_;
};

} // namespace

double a_p(double p) {
    detail::require(p >= 1.0, "a_p: p must be >= 1");
    if (p == 1.0) return 1.0;
    return std::exp((p - 1.0) * std::log(p - 1.0) - p * std::log(p));
}

GrigoryanResult grigoryan_mp(const ModelManifold& model, double p, double R) {
    detail::require(p > 1.0 && std::isfinite(p), "grigoryan_mp: p must lie in (1, inf)");
    detail::require(R > 0.0 && R < model.l(), "grigoryan_mp: R must lie in (0, l)");

    const auto& w = model.warping();
    const auto t = w.nodes();
    const auto f = w.values();
    for (std::size_t i = 1; i < t.size() && t[i] < R; ++i) {
        if (!(f[i] > 0.0)) throw NumericalError("grigoryan_mp: warping function not positive inside (0, R)");
    }

    const Objective obj(model, p, R);
    std::size_t best = 0;
    double best_val = -1.0;
    for (std::size_t i = 0; i < obj.size(); ++i) {
        const double v = obj.at(i);
        if (!std::isfinite(v)) throw NumericalError("grigoryan_mp: non-finite objective on the scan grid");
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }

    // Golden-section refinement on the neighbouring grid cells.
    double a = obj.r(best == 0 ? 0 : best - 1);
    double b = obj.r(std::min(best + 1, obj.size() - 1));
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = obj(x1), f2 = obj(x2);
    while (b - a > 1e-10 * std::abs(b)) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = obj(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = obj(x1);
        }
    }
    double r_star = 0.5 * (a + b);
    double sup = obj(r_star);
    if (best_val > sup) {
        sup = best_val;
        r_star = obj.r(best);
    }
    if (!(sup > 0.0)) throw NumericalError("grigoryan_mp: supremum is not positive");
    return {1.0 / sup, r_star, sup};
}

double cheeger_lower_flat(int n, double p, double R) {
    detail::require(n >= 2, "cheeger_lower_flat: n must be >= 2");
    detail::require(p > 1.0 && R > 0.0, "cheeger_lower_flat: need p > 1 and R > 0");
    return std::pow(n / (R * p), p);
}

double cheeger_lower_general(double h, double p) {
    detail::require(h > 0.0 && p > 1.0, "cheeger_lower_general: need h > 0 and p > 1");
    return std::pow(h / p, p);
}

double c_npr(int n, double p, double R) {
    detail::require(n >= 2, "c_npr: n must be >= 2");
    detail::require(p > 1.0 && R > 0.0, "c_npr: need p > 1 and R > 0");
    const double nn = n;
    if (p == nn) {
        return std::pow(nn, nn) * std::exp(nn - 1.0) / (std::pow(nn - 1.0, nn - 1.0) * std::pow(R, nn));
    }
    const double num = std::pow(p, (p * p - p) / (p - nn));
    const double den = std::pow(nn, (nn * p - p) / (p - nn)) * std::pow(p - 1.0, p - 1.0) * std::pow(R, p);
    return num / den;
}

bool is_flat(const ModelManifold& model) {
    const auto& prof = model.warping().profile();
    return prof.kind() == ProfileKind::constant && prof.kappa() == 0.0;
}

BoundsReport bounds_report(const ModelManifold& model, double p, double R) {
    const auto g = grigoryan_mp(model, p, R);
    BoundsReport rep;
    rep.m_p = g.m_p;
    rep.a_p_m_p = a_p(p) * g.m_p;
    rep.argmax_r = g.argmax_r;
    if (is_flat(model)) {
        rep.cheeger_lower = cheeger_lower_flat(model.dimension(), p, R);
        rep.c_npr = c_npr(model.dimension(), p, R);
    }
    return rep;
}

} // namespace modelspec
