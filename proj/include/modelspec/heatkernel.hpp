#pragma once

#include "modelspec/hermite.hpp"
#include "modelspec/warping.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace modelspec {

struct RadialMode {
    double mu = 0.0;
    /// Normalised so that w_n * int_0^{r0} psi^2 f^{n-1} = 1 and psi(0) > 0.
    CubicHermite psi;
    double center = 0.0;
    /// psi(r0) after normalisation (Dirichlet residual).
    double boundary = 0.0;
    double max_abs = 0.0;
    /// Sign changes of psi on (0, r0).
    int nodes = 0;
};

/// First M radial Dirichlet eigenpairs of the Laplacian on B(r0).
class RadialSpectrum {
public:
    RadialSpectrum(std::shared_ptr<const ModelManifold> model, double r0, std::vector<RadialMode> modes);

    [[nodiscard]] const ModelManifold& model() const { return *model_; }
    [[nodiscard]] double r0() const { return r0_; }
    [[nodiscard]] std::size_t size() const { return modes_.size(); }
    [[nodiscard]] const RadialMode& mode(std::size_t j) const { return modes_.at(j); }
    [[nodiscard]] std::span<const RadialMode> modes() const { return modes_; }

    /// M * max_j |psi_j(0)| max|psi_j|, the amplitude used for the truncation tail.
    [[nodiscard]] double tail_amplitude() const { return amplitude_; }
    /// Bound on the discarded modes at time t: e^{-mu_M t} * tail_amplitude().
    [[nodiscard]] double tail_bound(double t) const;
    /// Smallest time with tail_bound(t) <= kTailTarget.
    [[nodiscard]] double t_min() const { return t_min_; }

    static constexpr double kTailTarget = 1e-10;

private:
    std::shared_ptr<const ModelManifold> model_;
    double r0_;
    std::vector<RadialMode> modes_;
    double amplitude_ = 0.0;
    double t_min_ = 0.0;
};

/// Shooting with node counting isolates each eigenvalue; a root finder on
/// psi(r0) then refines it to near machine precision.
RadialSpectrum radial_spectrum(const ModelManifold& model, double r0, int modes = 30);

/// H(center, r, t) = sum_j e^{-mu_j t} psi_j(0) psi_j(r); requires t >= t_min().
double kernel_center(const RadialSpectrum& spec, double r, double t);

struct KernelEvaluation {
    double t_min = 0.0;
    std::vector<double> r;
    std::vector<double> t;
    /// values[i][k] = H(center, r[k], t[i]).
    std::vector<std::vector<double>> values;
    /// Truncation bound per time.
    std::vector<double> tail;

    /// No value below -tail.
    bool positive = true;
    /// No consecutive pair with H(r[k+1]) - H(r[k]) > 2 tail.
    bool decreasing = true;
    /// Points (or pairs) whose sign is within the truncation bound.
    std::size_t unresolved_positivity = 0;
    std::size_t unresolved_decrease = 0;
    double min_value = 0.0;
    /// Largest H(r[k+1]) - H(r[k]) over the grid; negative when strictly decreasing.
    double max_increment = 0.0;
};

/// Evaluates the kernel on r x t (r strictly ascending in [0, r0], every t >= t_min)
/// and checks positivity and strict radial decrease.
KernelEvaluation evaluate_kernel(const RadialSpectrum& spec, std::span<const double> r, std::span<const double> t);

struct SemigroupCheck {
    double kernel = 0.0;    // H(center, center, t)
    double integral = 0.0;  // w_n int H(r, t-s) H(r, s) f^{n-1} dr
    double residual = 0.0;  // |kernel - integral|
    double relative = 0.0;  // residual / kernel
};

/// Chapman-Kolmogorov identity at the center; t > s > 0 with s, t-s >= t_min.
SemigroupCheck semigroup_residual(const RadialSpectrum& spec, double t, double s);

/// max_{i,j} |w_n int psi_i psi_j f^{n-1} - delta_ij|, on a quadrature rule
/// independent of the one used for normalisation.
double orthonormality_deviation(const RadialSpectrum& spec);

struct KernelComparison {
    std::size_t grid_points = 0;
    double slack = 0.0;
    /// min over the grid of H_plus - H_mid and H_mid - H_minus.
    double margin_upper = 0.0;
    double margin_lower = 0.0;
    /// The same pairs with the opposite orientation: H_mid - H_plus and H_minus - H_mid.
    double reversed_margin_upper = 0.0;
    double reversed_margin_lower = 0.0;
    double mu_plus = 0.0, mu_mid = 0.0, mu_minus = 0.0;
    bool kernels_ordered = false;
    bool eigenvalues_ordered = false;
    [[nodiscard]] bool holds() const { return kernels_ordered && eigenvalues_ordered; }
};

/// Compares center kernels of constant-curvature models kappa_plus >= kappa_mid >= kappa_minus
/// with common (n, r0). Larger curvature gives the larger kernel and the smaller mu_1.
KernelComparison compare_kernels(const RadialSpectrum& plus, const RadialSpectrum& mid, const RadialSpectrum& minus,
                                 std::span<const double> r, std::span<const double> t, double slack = 1e-8);

struct DecayEstimate {
    double mu = 0.0;
    /// Relative difference between the slopes on the two halves of the window.
    double nonlinearity = 0.0;
};

/// -d log H(center, center, t)/dt over [ta, tb].
DecayEstimate lambda_from_decay(const RadialSpectrum& spec, double ta, double tb);

} // namespace modelspec
