#include "modelspec/profiles.hpp"

#include "modelspec/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace modelspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_real(std::string_view text, std::string_view what) {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size() || !std::isfinite(v)) {
        throw InvalidArgument("profile '" + std::string(what) + "': cannot parse number '" + s + "'");
    }
    return v;
}

} // namespace

NamedProfile torus_profile(int which, std::optional<double> alpha) {
    constexpr double end = std::numbers::pi / 2.0;
    switch (which) {
    case 1:
        detail::require(!alpha, "torus case 1 takes no alpha");
        return {"torus1", CurvatureProfile::torus_case1(), end, "outer equator base point: 4cos2t/(2+cos2t)"};
    case 2:
        detail::require(!alpha, "torus case 2 takes no alpha");
        return {"torus2", CurvatureProfile::torus_case2(), end, "inner equator base point: -4"};
    case 3: {
        const double a = alpha.value_or(std::numbers::pi / 2.0);
        return {"torus3", CurvatureProfile::torus_case3(a), end,
                "base point at angle alpha: 4cos(alpha+2t)/(2+cos(alpha+2t)), then -4"};
    }
    default:
        throw InvalidArgument("torus profile: case must be 1, 2 or 3");
    }
}

double gaussian_curvature_torus(double v) { return 4.0 * std::cos(v) / (2.0 + std::cos(v)); }

NamedProfile space_form_profile(double kappa) {
    detail::require(std::isfinite(kappa), "space form: curvature must be finite");
    const double end = kappa > 0.0 ? std::numbers::pi / std::sqrt(kappa) : kInf;
    std::string name = kappa == 0.0 ? "flat" : "const:" + std::to_string(kappa);
    return {std::move(name), CurvatureProfile::constant(kappa), end, "space form of constant curvature"};
}

NamedProfile profile_by_name(std::string_view name, std::optional<double> default_alpha) {
    if (name == "flat") return space_form_profile(0.0);
    if (name == "torus1") return torus_profile(1);
    if (name == "torus2") return torus_profile(2);
    if (name == "torus3") return torus_profile(3, default_alpha);
    if (name.starts_with("torus3:")) return torus_profile(3, parse_real(name.substr(7), name));
    if (name.starts_with("const:")) {
        auto p = space_form_profile(parse_real(name.substr(6), name));
        p.name = std::string(name);
        return p;
    }
    if (name.starts_with("table:")) {
        const std::string path(name.substr(6));
        detail::require(!path.empty(), "profile 'table:' needs a file path");
        auto prof = CurvatureProfile::load_csv(path);
        const double end = prof.domain_end();
        return {std::string(name), std::move(prof), end, "tabulated from " + path};
    }
    throw InvalidArgument("unknown profile '" + std::string(name) +
                          "' (expected flat, const:<kappa>, torus1, torus2, torus3[:alpha], table:<path>)");
}

ModelManifold make_model(const NamedProfile& profile, int n, double reach) {
    detail::require(n >= 2, "model: dimension must be >= 2");
    detail::require(reach > 0.0 && std::isfinite(reach), "model: reach must be positive and finite");
    double end = profile.recommended_end;
    if (!std::isfinite(end)) end = 2.0 * reach + 1.0;
    else detail::require(reach <= end, "model: radius " + std::to_string(reach) + " exceeds the domain end " +
                                           std::to_string(end) + " of profile " + profile.name);
    return {n, warping_from_curvature(profile.profile, end)};
}

} // namespace modelspec
