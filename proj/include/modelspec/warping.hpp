#pragma once

#include "modelspec/curvature_profile.hpp"
#include "modelspec/hermite.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace modelspec {

struct WarpingOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    /// Integration starts here from the Taylor data f = e - k(0) e^3/6.
    double start = 1e-8;
    /// Mesh spacing cap (scaled down by sqrt|k| where curvature is large) so
    /// that the cubic Hermite dense output stays well below rtol.
    double h_max = 1.0 / 512.0;
    std::size_t max_steps = 2'000'000;
};

/// Solution of f'' + k f = 0, f(0) = 0, f'(0) = 1 on a dense mesh.
class WarpingFunction {
public:
    [[nodiscard]] double value(double t) const { return f_.value(t); }
    [[nodiscard]] double derivative(double t) const { return fp_.value(t); }
    /// f'' from the ODE relation, -k(t) f(t).
    [[nodiscard]] double second_derivative(double t) const;
    /// f'' as the derivative of the interpolated f'.
    [[nodiscard]] double second_derivative_interpolated(double t) const { return fp_.derivative(t); }
    /// |f'' + k f| with f'' taken from the interpolant.
    [[nodiscard]] double residual(double t) const;

    /// Right end of the mesh; equals zero() when the warping closes.
    [[nodiscard]] double t_max() const { return f_.back(); }
    /// First positive zero of f, or t_max() when f stays positive.
    [[nodiscard]] double zero() const { return zero_; }
    [[nodiscard]] bool closes() const { return closes_; }
    [[nodiscard]] double requested_t_max() const { return requested_t_max_; }

    [[nodiscard]] const CurvatureProfile& profile() const { return profile_; }
    [[nodiscard]] std::span<const double> nodes() const { return f_.nodes(); }
    [[nodiscard]] std::span<const double> values() const { return f_.values(); }
    [[nodiscard]] std::span<const double> derivatives() const { return fp_.values(); }

    /// a, every mesh node strictly inside (a, b), b. Integrals of functions of f
    /// are taken piecewise over these so the integrand is smooth per piece.
    [[nodiscard]] std::vector<double> mesh_breaks(double a, double b) const;

private:
    friend WarpingFunction warping_from_curvature(const CurvatureProfile&, double, const WarpingOptions&);

    WarpingFunction(CurvatureProfile profile, CubicHermite f, CubicHermite fp, double zero, bool closes,
                    double requested)
        : profile_(std::move(profile)), f_(std::move(f)), fp_(std::move(fp)), zero_(zero), closes_(closes),
          requested_t_max_(requested) {}

    CurvatureProfile profile_;
    CubicHermite f_;  // f with f' as slopes
    CubicHermite fp_; // f' with -k f as slopes
    double zero_;
    bool closes_;
    double requested_t_max_;
};

/// Integrates the warping IVP on [0, t_max]; stops at the first zero of f.
WarpingFunction warping_from_curvature(const CurvatureProfile& profile, double t_max, const WarpingOptions& opt = {});

/// -f''/f at t in (0, l); recovers k(t) through the stored ODE relation.
double curvature_from_warping(const WarpingFunction& w, double t);

/// Rotationally symmetric model [0, l) x_f S^{n-1}.
class ModelManifold {
public:
    ModelManifold(int n, WarpingFunction warping);

    [[nodiscard]] int dimension() const { return n_; }
    [[nodiscard]] const WarpingFunction& warping() const { return w_; }
    [[nodiscard]] double l() const { return l_; }
    [[nodiscard]] double f(double t) const { return w_.value(t); }
    /// f^{n-1}(t), the radial area density up to the factor w_n.
    [[nodiscard]] double area_density(double t) const;

private:
    int n_;
    WarpingFunction w_;
    double l_;
};

/// Area of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

double ball_volume(const ModelManifold& m, double r);
double boundary_area(const ModelManifold& m, double r);

/// First t where f' rises above 1 (none if it never does).
std::optional<double> stopping_time(const WarpingFunction& w);

struct SturmReport {
    std::size_t grid_points = 0;
    /// max over the grid of f2 - f1, clipped at zero.
    double max_violation = 0.0;
    /// min over the grid of f1 - f2.
    double min_margin = 0.0;
    double tolerance = 0.0;
    bool holds = false;
};

/// Checks f1 >= f2 on [a, b] for profiles with k1 <= k2 (re-verified on the grid).
SturmReport sturm_compare(const WarpingFunction& w1, const WarpingFunction& w2, double a, double b,
                          std::size_t grid_points = 256, double tolerance = 1e-7);

} // namespace modelspec
