#pragma once

#include "modelspec/warping.hpp"

#include <optional>

namespace modelspec {

/// (p-1)^{p-1} p^{-p} for p > 1, and 1 at p = 1.
double a_p(double p);

struct GrigoryanResult {
    double m_p = 0.0;
    /// Location of the supremum in (0, R).
    double argmax_r = 0.0;
    /// The supremum itself, 1 / m_p.
    double sup_value = 0.0;
};

/// Upper bound m_p(B_R) = 1 / sup_r { int_0^r f^{n-1} (int_r^R f^{(1-n)/(p-1)})^{p-1} }.
///
/// The supremum is found on a 512-point grid starting at R/1024, then
/// refined by golden-section search; the two integrals come from cumulative
/// tables over that grid.
GrigoryanResult grigoryan_mp(const ModelManifold& model, double p, double R);

/// (n / (R p))^p, the Cheeger bound for a Euclidean ball (h = n/R).
double cheeger_lower_flat(int n, double p, double R);

/// (h / p)^p for a caller-supplied Cheeger constant h.
double cheeger_lower_general(double h, double p);

/// Closed form of m_p for the Euclidean ball of radius R.
double c_npr(int n, double p, double R);

struct BoundsReport {
    double m_p = 0.0;
    double a_p_m_p = 0.0;
    double argmax_r = 0.0;
    std::optional<double> cheeger_lower;
    std::optional<double> c_npr;
};

/// True for the constant-zero-curvature profile.
bool is_flat(const ModelManifold& model);

/// m_p and a_p m_p; Cheeger and closed-form values are filled for flat models only.
BoundsReport bounds_report(const ModelManifold& model, double p, double R);

} // namespace modelspec
