#include "modelspec/errors.hpp"
#include "modelspec/eigensolver.hpp"
#include "modelspec/heatkernel.hpp"
#include "modelspec/profiles.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace modelspec;
using std::numbers::pi;

namespace {
ModelManifold model(const char* name, int n, double reach) { return make_model(profile_by_name(name), n, reach); }
} // namespace

TEST_CASE("flat disk spectrum is the squared Bessel zeros") {
    const auto s = radial_spectrum(model("flat", 2, 2.0), 1.0, 3);
    REQUIRE(s.size() == 3);
    for (int j = 0; j < 3; ++j) {
        const double z = oracle::bessel_j0_zero(j + 1);
        CHECK(s.mode(static_cast<std::size_t>(j)).mu == doctest::Approx(z * z).epsilon(1e-10));
        CHECK(s.mode(static_cast<std::size_t>(j)).nodes == j);
        CHECK(std::abs(s.mode(static_cast<std::size_t>(j)).boundary) <= 1e-9);
        CHECK(s.mode(static_cast<std::size_t>(j)).center > 0.0);
    }
}

TEST_CASE("closed-form spectra") {
    const auto hemi = radial_spectrum(model("const:1", 2, pi), pi / 2, 1);
    CHECK(hemi.mode(0).mu == doctest::Approx(2.0).epsilon(1e-10));
    // psi = c cos t with 2 pi c^2 int_0^{pi/2} cos^2 t sin t = 1.
    const double c = std::sqrt(3.0 / (2.0 * pi));
    CHECK(hemi.mode(0).psi.value(0.7) == doctest::Approx(c * std::cos(0.7)).epsilon(1e-7));

    const auto ball = radial_spectrum(model("flat", 3, 2.0), 1.0, 2);
    CHECK(ball.mode(0).mu == doctest::Approx(pi * pi).epsilon(1e-10));
    CHECK(ball.mode(1).mu == doctest::Approx(4 * pi * pi).epsilon(1e-10));
}

TEST_CASE("spectrum invariants with thirty modes") {
    const auto m = model("const:-1", 2, 2.0);
    const auto s = radial_spectrum(m, 1.0, 30);
    for (std::size_t j = 0; j < s.size(); ++j) {
        CHECK(s.mode(j).nodes == static_cast<int>(j));
        if (j) CHECK(s.mode(j).mu > s.mode(j - 1).mu);
    }
    CHECK(orthonormality_deviation(s) <= 1e-6);
    CHECK(s.mode(0).mu == doctest::Approx(solve_radial({m, 2.0, 1.0}).lambda).epsilon(1e-8));
    CHECK(s.tail_bound(s.t_min()) == doctest::Approx(RadialSpectrum::kTailTarget).epsilon(1e-6));
}

TEST_CASE("kernel is positive and radially decreasing on trusted grids") {
    for (const char* name : {"flat", "const:1", "torus1"}) {
        const auto m = model(name, 2, 1.0);
        const auto s = radial_spectrum(m, 1.0, 30);
        std::vector<double> r, t{0.05, 0.1, 0.3, 1.0};
        for (int i = 0; i <= 30; ++i) r.push_back(0.9 * i / 30.0);
        const auto ev = evaluate_kernel(s, r, t);
        CAPTURE(name);
        CHECK(ev.positive);
        CHECK(ev.decreasing);
        CHECK(ev.unresolved_positivity == 0);
        CHECK(ev.unresolved_decrease == 0);
        CHECK(ev.max_increment < 0.0);
    }
}

TEST_CASE("kernel at long times is one exponential") {
    const auto s = radial_spectrum(model("flat", 2, 2.0), 1.0, 30);
    const double t = 3.0;
    const double single = std::exp(-s.mode(0).mu * t) * s.mode(0).center * s.mode(0).center;
    CHECK(kernel_center(s, 0.0, t) == doctest::Approx(single).epsilon(1e-12));
    CHECK_THROWS_AS(kernel_center(s, 0.0, s.t_min() / 2), InvalidArgument);
    CHECK_THROWS_AS(kernel_center(s, 1.5, 1.0), InvalidArgument);
}

TEST_CASE("semigroup identity at the center") {
    const auto flat = radial_spectrum(model("flat", 2, 2.0), 1.0, 30);
    CHECK(semigroup_residual(flat, 0.2, 0.1).relative <= 1e-4);
    const auto hemi = radial_spectrum(model("const:1", 2, pi), pi / 2, 30);
    CHECK(semigroup_residual(hemi, 0.4, 0.2).relative <= 1e-4);
    const auto one = radial_spectrum(model("flat", 2, 2.0), 1.0, 1);
    CHECK(semigroup_residual(one, 10.0, 5.0).relative <= 1e-9);
    CHECK_THROWS_AS(semigroup_residual(flat, 0.1, 0.2), InvalidArgument);
}

TEST_CASE("kernel comparison across constant curvature") {
    std::vector<double> t{0.05, 0.2, 1.0}, r;
    for (int i = 0; i <= 20; ++i) r.push_back(0.9 * i / 20.0);
    const auto sp = radial_spectrum(model("const:1", 2, pi), 1.0, 30);
    const auto sm = radial_spectrum(model("flat", 2, 2.0), 1.0, 30);
    const auto sn = radial_spectrum(model("const:-1", 2, 2.0), 1.0, 30);
    const auto c = compare_kernels(sp, sm, sn, r, t);
    CHECK(c.holds());
    CHECK(c.margin_upper > 0.0);
    CHECK(c.margin_lower > 0.0);
    CHECK(c.reversed_margin_upper < 0.0);
    CHECK(c.reversed_margin_lower < 0.0);

    const auto same = compare_kernels(sm, sm, sm, r, t);
    CHECK(same.holds());
    CHECK(std::abs(same.margin_upper) <= 1e-8);
    CHECK(std::abs(same.margin_lower) <= 1e-8);
    CHECK_THROWS_AS(compare_kernels(sn, sm, sp, r, t), InvalidArgument);
}

TEST_CASE("eigenvalue from long-time decay") {
    const auto flat = radial_spectrum(model("flat", 2, 2.0), 1.0, 30);
    CHECK(lambda_from_decay(flat, 0.6, 2.0).mu == doctest::Approx(flat.mode(0).mu).epsilon(0.01));
    const auto hemi = radial_spectrum(model("const:1", 2, pi), pi / 2, 30);
    CHECK(lambda_from_decay(hemi, 1.5, 4.0).mu == doctest::Approx(2.0).epsilon(0.01));
    const auto one = radial_spectrum(model("flat", 2, 2.0), 1.0, 1);
    CHECK(lambda_from_decay(one, 5.0, 8.0).mu == doctest::Approx(one.mode(0).mu).epsilon(1e-12));
    CHECK_THROWS_AS(lambda_from_decay(flat, 0.1, 2.0), InvalidArgument);
}
