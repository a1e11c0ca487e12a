#include "modelspec/errors.hpp"
#include "modelspec/profiles.hpp"
#include "modelspec/warping.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace modelspec;
using std::numbers::pi;

TEST_CASE("space-form warping functions match sin, t and sinh") {
    const auto sphere = warping_from_curvature(CurvatureProfile::constant(1.0), pi);
    const auto flat = warping_from_curvature(CurvatureProfile::constant(0.0), 3.0);
    const auto hyp = warping_from_curvature(CurvatureProfile::constant(-4.0), 2.0);
    for (double t : {0.1, 0.77, 1.3, 2.0}) {
        CHECK(sphere.value(t) == doctest::Approx(std::sin(t)).epsilon(1e-9));
        CHECK(sphere.derivative(t) == doctest::Approx(std::cos(t)).epsilon(1e-8).scale(1.0));
        CHECK(flat.value(t) == doctest::Approx(t).epsilon(1e-12));
        CHECK(hyp.value(t) == doctest::Approx(std::sinh(2.0 * t) / 2.0).epsilon(1e-9));
    }
    CHECK(sphere.closes());
    CHECK(sphere.zero() == doctest::Approx(pi).epsilon(1e-10));
    CHECK_FALSE(hyp.closes());
    CHECK(hyp.zero() == hyp.t_max());
}

TEST_CASE("curvature is recovered from the warping function") {
    const auto prof = torus_profile(1);
    const auto w = warping_from_curvature(prof.profile, prof.recommended_end);
    for (double t : {0.05, 0.4, 0.9, 1.4}) {
        CHECK(curvature_from_warping(w, t) == doctest::Approx(prof.profile(t)).epsilon(1e-8).scale(1.0));
        CHECK(w.residual(t) < 1e-6);
    }
    CHECK_THROWS_AS(curvature_from_warping(w, 0.0), InvalidArgument);
}

TEST_CASE("volumes and areas of model balls") {
    const ModelManifold flat2(2, warping_from_curvature(CurvatureProfile::constant(0.0), 5.0));
    const ModelManifold flat3(3, warping_from_curvature(CurvatureProfile::constant(0.0), 5.0));
    const ModelManifold sphere(2, warping_from_curvature(CurvatureProfile::constant(1.0), pi));
    CHECK(sphere_area(2) == doctest::Approx(2.0 * pi));
    CHECK(sphere_area(3) == doctest::Approx(4.0 * pi));
    CHECK(ball_volume(flat2, 1.5) == doctest::Approx(pi * 1.5 * 1.5).epsilon(1e-11));
    CHECK(ball_volume(flat3, 2.0) == doctest::Approx(4.0 / 3.0 * pi * 8.0).epsilon(1e-11));
    CHECK(boundary_area(flat3, 2.0) == doctest::Approx(4.0 * pi * 4.0).epsilon(1e-11));
    CHECK(ball_volume(sphere, 1.0) == doctest::Approx(2.0 * pi * (1.0 - std::cos(1.0))).epsilon(1e-9));
    CHECK(ball_volume(sphere, 0.0) == 0.0);
    CHECK_THROWS_AS(ball_volume(sphere, pi), InvalidArgument);
    CHECK_THROWS_AS(ModelManifold(1, warping_from_curvature(CurvatureProfile::constant(0.0), 1.0)), InvalidArgument);
}

TEST_CASE("stopping time of the outer-equator torus model") {
    const auto prof = torus_profile(1);
    const auto w = warping_from_curvature(prof.profile, prof.recommended_end);
    const auto t0 = stopping_time(w);
    REQUIRE(t0.has_value());
    CHECK(*t0 == doctest::Approx(1.097).epsilon(0.005 / 1.097));
    CHECK(w.derivative(*t0 - 1e-6) <= 1.0);
    CHECK(w.derivative(*t0 + 1e-6) > 1.0);
    CHECK_FALSE(stopping_time(warping_from_curvature(CurvatureProfile::constant(1.0), 3.0)).has_value());
}

TEST_CASE("torus case 3 is continuous at its junction") {
    for (double alpha : {pi / 4, pi / 2, 3 * pi / 4}) {
        const auto k = CurvatureProfile::torus_case3(alpha);
        const double j = (pi - alpha) / 2.0;
        CHECK(k(j) == doctest::Approx(-4.0).epsilon(1e-12));
        CHECK(k(j - 1e-9) == doctest::Approx(-4.0).epsilon(1e-6));
        CHECK(k(j + 1e-9) == -4.0);
    }
    CHECK_THROWS_AS(CurvatureProfile::torus_case3(0.0), InvalidArgument);
    CHECK_THROWS_AS(CurvatureProfile::torus_case1()(2.0), InvalidArgument);
}

TEST_CASE("torus profiles are ordered and bound the surface curvature from below") {
    const auto k1 = CurvatureProfile::torus_case1();
    const auto k2 = CurvatureProfile::torus_case2();
    for (double alpha : {pi / 4, pi / 2, 3 * pi / 4}) {
        const auto k3 = CurvatureProfile::torus_case3(alpha);
        for (int i = 0; i < 200; ++i) {
            const double t = 0.5 * pi * i / 200.0;
            CHECK(k2(t) <= k3(t) + 1e-15);
            CHECK(k3(t) <= k1(t) + 1e-15);
        }
    }
    // Along the meridian the angle moves at most 2t away from the outer equator.
    double worst = -1.0;
    for (int i = 0; i < 100; ++i) {
        const double t = 0.5 * pi * i / 100.0;
        for (int j = 0; j < 100; ++j) {
            const double v = -2.0 * t + 4.0 * t * j / 99.0;
            worst = std::max(worst, k1(t) - gaussian_curvature_torus(v));
        }
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("sturm comparison orders warping functions by curvature") {
    const auto w1 = warping_from_curvature(CurvatureProfile::torus_case1(), pi / 2);
    const auto w2 = warping_from_curvature(CurvatureProfile::torus_case2(), pi / 2);
    const auto w3 = warping_from_curvature(CurvatureProfile::torus_case3(pi / 2), pi / 2);
    const auto a = sturm_compare(w2, w3, 0.0, 0.95 * pi / 2);
    const auto b = sturm_compare(w3, w1, 0.0, 0.95 * pi / 2);
    CHECK(a.holds);
    CHECK(b.holds);
    CHECK(a.grid_points >= 256);
    CHECK(a.max_violation <= 1e-7);
    CHECK(b.min_margin >= -1e-7);
    CHECK_THROWS_AS(sturm_compare(w1, w2, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("tabulated profiles read from csv") {
    std::istringstream in("t,k\n0,1\n1,1\n2,1\n3.5,1\n");
    const auto prof = CurvatureProfile::read_csv(in);
    CHECK(prof.kind() == ProfileKind::tabulated);
    CHECK(prof.domain_end() == 3.5);
    CHECK(prof(2.7) == doctest::Approx(1.0));
    const auto w = warping_from_curvature(prof, 3.5);
    CHECK(w.value(1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-9));
    CHECK(w.zero() == doctest::Approx(pi).epsilon(1e-9));

    std::istringstream bad_header("x,k\n0,1\n");
    CHECK_THROWS_AS(CurvatureProfile::read_csv(bad_header), InvalidArgument);
    std::istringstream short_table("t,k\n0,1\n1,1\n");
    CHECK_THROWS_AS(CurvatureProfile::read_csv(short_table), InvalidArgument);
    CHECK_THROWS_AS(CurvatureProfile::tabulated({0.0, 2.0, 1.0, 3.0}, {1, 1, 1, 1}), InvalidArgument);
    CHECK_THROWS_AS(prof(3.6), InvalidArgument);
}

TEST_CASE("profile catalog resolves names") {
    CHECK(profile_by_name("flat").profile.kappa() == 0.0);
    CHECK(profile_by_name("const:-1").profile.kappa() == -1.0);
    CHECK(profile_by_name("const:4").recommended_end == doctest::Approx(pi / 2));
    CHECK(profile_by_name("torus3").profile.alpha() == doctest::Approx(pi / 2));
    CHECK(profile_by_name("torus3:0.5").profile.alpha() == doctest::Approx(0.5));
    CHECK(profile_by_name("torus2").recommended_end == doctest::Approx(pi / 2));
    CHECK_THROWS_AS(profile_by_name("donut"), InvalidArgument);
    CHECK_THROWS_AS(profile_by_name("const:abc"), InvalidArgument);
    CHECK_THROWS_AS(profile_by_name("table:/nonexistent.csv"), InvalidArgument);
    CHECK_THROWS_AS(torus_profile(1, 0.3), InvalidArgument);
    CHECK_THROWS_AS(make_model(profile_by_name("torus1"), 2, 2.0), InvalidArgument);
    const auto m = make_model(profile_by_name("flat"), 3, 1.0);
    CHECK(m.dimension() == 3);
    CHECK(m.l() > 1.0);
}
