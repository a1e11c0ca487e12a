#include "radial_shooting.hpp"

#include "modelspec/errors.hpp"
#include "modelspec/ode.hpp"

#include <cmath>
#include <string>

namespace modelspec::detail {

std::pair<double, double> radial_start(int n, double p, double lambda, double eps) {
    // Integrating w' = -lambda t^{n-1} from 0 gives w = -lambda t^n / n, hence
    // phi' = -(lambda t / n)^{1/(p-1)} and phi = 1 - (p-1)/p (lambda/n)^{1/(p-1)} t^{p/(p-1)}.
    const double nn = n;
    const double w = -lambda * std::pow(eps, nn) / nn;
    const double q = 1.0 / (p - 1.0);
    const double phi = 1.0 - (p - 1.0) / p * std::pow(lambda / nn, q) * std::pow(eps, p * q);
    return {phi, w};
}

Shot shoot_radial(const ModelManifold& model, double p, double lambda, double r_end, const ShotOptions& opt) {
    const int n = model.dimension();
    const double q = 1.0 / (p - 1.0);
    const bool linear = p == 2.0;

    auto rhs = [&](double t, const ode::State<2>& y) {
        const double F = model.area_density(t);
        if (!(F > 0.0)) throw NumericalError("radial shooting: warping not positive at t=" + std::to_string(t));
        const double phi = y[0], w = y[1];
        if (linear) return ode::State<2>{w / F, -lambda * F * phi};
        const double dphi = std::copysign(std::pow(std::abs(w) / F, q), w);
        const double dw = -lambda * F * std::copysign(std::pow(std::abs(phi), p - 1.0), phi);
        return ode::State<2>{dphi, dw};
    };

    const auto [phi0, w0] = radial_start(n, p, lambda, opt.start);
    Shot shot;
    if (opt.record) {
        shot.t = {0.0, opt.start};
        shot.phi = {1.0, phi0};
        shot.dphi = {0.0, rhs(opt.start, {phi0, w0})[0]};
        shot.flux = {0.0, w0};
    }

    ode::Options o;
    o.rtol = opt.rtol;
    o.atol_each = {opt.atol_phi, 1e-6 * opt.rtol * std::abs(w0) + 1e-300};
    o.h_max = opt.h_max;
    o.max_steps = opt.max_steps;

    auto record = [&](double t, double phi, double dphi, double w) {
        if (!opt.record) return;
        shot.t.push_back(t);
        shot.phi.push_back(phi);
        shot.dphi.push_back(dphi);
        shot.flux.push_back(w);
    };

    auto hook = [&](const ode::Node<2>& a, const ode::Node<2>& b) {
        ++shot.steps;
        const bool crossed = (a.y[0] > 0.0 && b.y[0] <= 0.0) || (a.y[0] < 0.0 && b.y[0] >= 0.0);
        if (crossed) {
            ++shot.sign_changes;
            if (shot.sign_changes == 1 || opt.stop_at_first_zero) {
                const double z = ode::bisect_root_in_step<2>(rhs, a, b, 0, 1e-14 * std::max(1.0, b.t));
                if (shot.sign_changes == 1) shot.first_zero = z;
                if (opt.stop_at_first_zero) {
                    const auto yz = ode::step_exact<2>(rhs, a, z);
                    record(z, 0.0, rhs(z, yz)[0], yz[1]);
                    shot.end_phi = 0.0;
                    shot.end_flux = yz[1];
                    shot.end_t = z;
                    return false;
                }
            }
        }
        record(b.t, b.y[0], b.dy[0], b.y[1]);
        shot.end_phi = b.y[0];
        shot.end_flux = b.y[1];
        shot.end_t = b.t;
        return true;
    };

    ode::integrate<2>(rhs, opt.start, ode::State<2>{phi0, w0}, r_end, o, hook);
    return shot;
}

} // namespace modelspec::detail
