#pragma once

#include <filesystem>
#include <istream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace modelspec {

enum class ProfileKind { constant, torus_case1, torus_case2, torus_case3, tabulated };

/// Radial curvature k(t) of a model space, t = distance to the base point.
///
/// Analytic profiles are evaluable on [0, domain_end]; tabulated profiles are
/// interpolated monotonically between samples and never extrapolated.
class CurvatureProfile {
public:
    static CurvatureProfile constant(double kappa);
    /// 4 cos 2t / (2 + cos 2t) on [0, pi/2).
    static CurvatureProfile torus_case1();
    /// Constant -4 on [0, pi/2).
    static CurvatureProfile torus_case2();
    /// 4 cos(alpha + 2t) / (2 + cos(alpha + 2t)) up to t = (pi - alpha)/2, then -4.
    static CurvatureProfile torus_case3(double alpha);
    /// Samples must start at t = 0, be strictly ascending, and number at least 4.
    static CurvatureProfile tabulated(std::vector<double> t, std::vector<double> k);

    /// Reads `t,k` CSV (header row required).
    static CurvatureProfile read_csv(std::istream& in);
    static CurvatureProfile load_csv(const std::filesystem::path& path);

    [[nodiscard]] double operator()(double t) const;

    [[nodiscard]] ProfileKind kind() const { return kind_; }
    [[nodiscard]] double kappa() const { return kappa_; }
    [[nodiscard]] double alpha() const { return alpha_; }
    /// +inf when unbounded.
    [[nodiscard]] double domain_end() const { return domain_end_; }
    [[nodiscard]] bool bounded() const { return domain_end_ < std::numeric_limits<double>::infinity(); }
    /// Interior points where k loses smoothness; integrators step onto them.
    [[nodiscard]] std::vector<double> breakpoints() const;
    [[nodiscard]] std::string describe() const;

private:
    struct Table;

    CurvatureProfile() = default;

    ProfileKind kind_ = ProfileKind::constant;
    double kappa_ = 0.0;
    double alpha_ = 0.0;
    double domain_end_ = std::numeric_limits<double>::infinity();
    std::shared_ptr<const Table> table_;
};

} // namespace modelspec
