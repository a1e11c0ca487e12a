#pragma once

// Shooting on the radial flux system
//
//   phi' = sgn(w) (|w| / F)^{1/(p-1)},   w' = -lambda F sgn(phi) |phi|^{p-1},
//
// with F = f^{n-1}, w = |phi'|^{p-2} F phi', phi(0) = 1, w(0) = 0. At p = 2
// this is the Laplacian eigen-equation psi'' + (n-1)(f'/f) psi' + mu psi = 0.

#include "modelspec/warping.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace modelspec::detail {

struct ShotOptions {
    double rtol = 1e-12;
    double atol_phi = 1e-15;
    /// Start offset; (phi, w) there come from the leading-order expansion.
    double start = 1e-6;
    /// Cap on accepted step sizes (only matters for recorded profiles).
    double h_max = std::numeric_limits<double>::infinity();
    bool stop_at_first_zero = true;
    bool record = false;
    std::size_t max_steps = 2'000'000;
};

struct Shot {
    /// First zero of phi in (0, r_end], +inf when phi stays positive.
    double first_zero = std::numeric_limits<double>::infinity();
    /// Sign changes of phi on (0, r_end].
    int sign_changes = 0;
    double end_phi = 0.0;
    double end_flux = 0.0;
    double end_t = 0.0;
    std::size_t steps = 0;
    // Recorded nodes, starting with t = 0.
    std::vector<double> t, phi, dphi, flux;
};

/// Leading-order start values at t = eps: (phi, w).
std::pair<double, double> radial_start(int n, double p, double lambda, double eps);

Shot shoot_radial(const ModelManifold& model, double p, double lambda, double r_end, const ShotOptions& opt);

} // namespace modelspec::detail
