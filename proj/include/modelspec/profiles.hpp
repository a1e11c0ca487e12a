#pragma once

#include "modelspec/curvature_profile.hpp"
#include "modelspec/warping.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace modelspec {

struct NamedProfile {
    std::string name;
    CurvatureProfile profile;
    /// Right end of the recommended domain [0, end); +inf when unbounded.
    double recommended_end;
    std::string note;
};

/// Curvature lower bounds for geodesic balls on the ring torus with major
/// radius 1 and minor radius 1/2. Case 3 takes the base-point angle alpha
/// (default pi/2); alpha must be absent for cases 1 and 2.
NamedProfile torus_profile(int which, std::optional<double> alpha = std::nullopt);

/// Gaussian curvature 4 cos v / (2 + cos v) of that torus at meridian angle v.
double gaussian_curvature_torus(double v);

/// Constant-curvature space form; recommended domain ends at pi/sqrt(kappa) for kappa > 0.
NamedProfile space_form_profile(double kappa);

/// Resolves `flat`, `const:<kappa>`, `torus1`, `torus2`, `torus3[:alpha]`, `table:<path>`.
/// `default_alpha` applies to a bare `torus3`.
NamedProfile profile_by_name(std::string_view name, std::optional<double> default_alpha = std::nullopt);

/// Model of dimension n over the profile, with the warping integrated far
/// enough to hold balls of radius `reach` (up to the recommended end).
ModelManifold make_model(const NamedProfile& profile, int n, double reach);

} // namespace modelspec
