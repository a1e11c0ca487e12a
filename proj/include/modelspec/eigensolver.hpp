#pragma once

#include "modelspec/hermite.hpp"
#include "modelspec/warping.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace modelspec {

/// First Dirichlet eigenproblem of the p-Laplacian on the geodesic ball B(r0)
/// of a model manifold, restricted to radial functions.
struct EigenProblem {
    const ModelManifold& model;
    double p;
    double r0;
};

struct EigenResult {
    double p = 0.0;
    double r0 = 0.0;
    double lambda = 0.0;
    /// Bracket [lower, upper] left by the bisection on lambda.
    double lower = 0.0;
    double upper = 0.0;
    /// Relative width (upper - lower) / upper.
    double bracket_width = 0.0;
    /// First zero of the shooting solution at `upper`.
    double first_zero = 0.0;
    int iterations = 0;
    /// Times the initial bracket had to be widened.
    int bracket_expansions = 0;

    /// Radial profile on [0, r0] at `lower`, normalised phi(0) = 1.
    std::vector<double> t, phi, dphi, flux;

    [[nodiscard]] CubicHermite profile() const { return {t, phi, dphi}; }
};

/// Smallest lambda whose shooting solution first vanishes at r0.
///
/// The bracket starts at [a_p m_p, m_p] and is refined by bisection on the
/// first-zero location until its relative width is <= tol and the
/// profile's boundary value is resolved.
EigenResult solve_radial(const EigenProblem& problem, double tol = 1e-8);

/// A radial trial function on [0, r0], piecewise C^1 with kinks at `breaks`.
struct RadialTrial {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    std::vector<double> breaks;
};

/// int |u'|^p f^{n-1} / int |u|^p f^{n-1} over [0, r0]; an upper bound for lambda_{1,p}.
double rayleigh_quotient(const EigenProblem& problem, const RadialTrial& trial);

/// Trial function from a solved profile.
RadialTrial trial_from(const EigenResult& result);

struct TrialBound {
    int m = 0;
    double inner_radius = 0.0; // R_m
    double outer_radius = 0.0; // R_{m+1}; the trial is supported in B(R_{m+1})
    double quotient = 0.0;
};

struct ClosingReport {
    double p = 0.0;
    double threshold = 0.0;
    std::vector<double> radii;
    /// NaN where the solve failed; see `errors`.
    std::vector<double> lambdas;
    std::vector<std::string> errors;
    bool strictly_decreasing = false;
    bool below_threshold = false;
    std::vector<TrialBound> trial_bounds;
    bool trial_bounds_decreasing = false;
};

/// Eigenvalues of balls exhausting a closing model (f(l) = 0), plus the
/// Rayleigh quotients of the cut-off functions y_m as an independent upper
/// bound sequence. For n = 2, R_m = l - 1/m!; for n >= 3, R_m = l - 2^{-m}.
ClosingReport closing_asymptotics(const ModelManifold& model, double p, std::span<const double> radii,
                                  double threshold, int trial_terms = 8, double tol = 1e-8);

/// The cut-off trial y_m for the given model dimension and closing point.
RadialTrial closing_trial(int n, double l, double inner_radius, double outer_radius);

} // namespace modelspec
