#include "modelspec/errors.hpp"
#include "modelspec/bounds.hpp"
#include "modelspec/eigensolver.hpp"
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

TEST_CASE("flat disk eigenvalue equals the squared first Bessel zero") {
    const double j = oracle::bessel_j0_zero(1);
    const auto m = model("flat", 2, 2.0);
    const auto r = solve_radial({m, 2.0, 1.0});
    CHECK(r.lambda == doctest::Approx(j * j).epsilon(1e-8));
    CHECK(r.lower <= r.upper);
    CHECK(r.bracket_width <= 1e-8);
    CHECK(r.first_zero <= 1.0);
    CHECK(r.t.front() == 0.0);
    CHECK(r.t.back() == doctest::Approx(1.0));
    CHECK(std::abs(r.phi.back()) <= 1e-9);
}

TEST_CASE("flat three-ball and hemisphere closed forms") {
    CHECK(solve_radial({model("flat", 3, 2.0), 2.0, 1.0}).lambda == doctest::Approx(pi * pi).epsilon(1e-8));
    const auto s = model("const:1", 2, pi);
    const auto h = solve_radial({s, 2.0, pi / 2});
    CHECK(h.lambda == doctest::Approx(2.0).epsilon(1e-8));
    // The eigenfunction is cos t.
    const auto prof = h.profile();
    for (double t : {0.3, 0.9, 1.4}) CHECK(prof.value(t) == doctest::Approx(std::cos(t)).epsilon(1e-6));
}

TEST_CASE("sphere caps match the Legendre oracle") {
    const auto s = model("const:1", 2, pi);
    // Frozen oracle values for angular radii 3pi/4, pi - 0.3, pi - 0.05.
    const double frozen[] = {0.677558839703, 0.319241435582, 0.152899600892};
    const double radii[] = {3 * pi / 4, pi - 0.3, pi - 0.05};
    for (int i = 0; i < 3; ++i) {
        CAPTURE(radii[i]);
        const double ref = oracle::sphere_cap_eigenvalue(radii[i]);
        CHECK(ref == doctest::Approx(frozen[i]).epsilon(1e-10));
        CHECK(solve_radial({s, 2.0, radii[i]}).lambda == doctest::Approx(ref).epsilon(1e-7));
    }
}

TEST_CASE("flat eigenvalues scale like r0^{-p}") {
    for (int n : {2, 3}) {
        const auto m = model("flat", n, 4.0);
        for (double p : {1.3, 1.8, 2.6}) {
            const double l1 = solve_radial({m, p, 1.0}).lambda;
            const double l2 = solve_radial({m, p, 2.0}).lambda;
            CAPTURE(n);
            CAPTURE(p);
            CHECK(l2 == doctest::Approx(l1 / std::pow(2.0, p)).epsilon(1e-7));
        }
    }
}

TEST_CASE("rayleigh quotient of the computed profile reproduces lambda") {
    const auto m = make_model(torus_profile(3), 2, pi / 2);
    for (double p : {1.5, 2.0, 2.5}) {
        const EigenProblem pr{m, p, 1.0};
        const auto r = solve_radial(pr);
        CAPTURE(p);
        CHECK(rayleigh_quotient(pr, trial_from(r)) == doctest::Approx(r.lambda).epsilon(1e-5));
        // Any other admissible function gives a larger quotient.
        const RadialTrial bump{[](double t) { return 1.0 - t * t; }, [](double t) { return -2.0 * t; }, {}};
        CHECK(rayleigh_quotient(pr, bump) > r.lambda);
    }
}

TEST_CASE("eigenvalues sit between the Grigor'yan bounds") {
    for (const char* name : {"flat", "const:1", "const:-1", "torus1", "torus2", "torus3"}) {
        const auto m = make_model(profile_by_name(name), 2, std::min(1.5, profile_by_name(name).recommended_end));
        for (double p : {1.1, 2.0, 2.9}) {
            const auto g = grigoryan_mp(m, p, 0.7);
            const double l = solve_radial({m, p, 0.7}).lambda;
            CAPTURE(name);
            CAPTURE(p);
            CHECK(a_p(p) * g.m_p <= l);
            CHECK(l <= g.m_p);
        }
    }
}

TEST_CASE("curvature orders eigenvalues") {
    for (int n : {2, 3}) {
        for (double p : {1.5, 2.0, 2.5}) {
            const double a = solve_radial({model("const:1", n, pi), p, 1.0}).lambda;
            const double b = solve_radial({model("flat", n, 2.0), p, 1.0}).lambda;
            const double c = solve_radial({model("const:-1", n, 2.0), p, 1.0}).lambda;
            CHECK(a < b);
            CHECK(b < c);
        }
    }
}

TEST_CASE("closing models: eigenvalues and cut-off quotients decrease") {
    const auto s = model("const:1", 2, pi);
    const double radii[] = {pi / 2, 3 * pi / 4, pi - 0.3, pi - 0.05};
    for (double p : {1.5, 2.0}) {
        const auto rep = closing_asymptotics(s, p, radii, 0.1);
        CAPTURE(p);
        CHECK(rep.strictly_decreasing);
        CHECK(rep.trial_bounds_decreasing);
        REQUIRE(rep.trial_bounds.size() == 8);
        for (const auto& tb : rep.trial_bounds) CHECK(tb.quotient > 0.0);
        for (const auto& e : rep.errors) CHECK(e.empty());
    }
    // n = 2, p = 2: the cut-off quotient is 1 / ln(m + 1) up to the sphere's curvature.
    const auto rep = closing_asymptotics(s, 2.0, radii, 0.1);
    CHECK(rep.trial_bounds.back().quotient < rep.trial_bounds.front().quotient);
    CHECK_THROWS_AS(closing_asymptotics(s, 2.5, radii, 0.1), InvalidArgument);
    CHECK_THROWS_AS(closing_asymptotics(model("flat", 2, 2.0), 2.0, radii, 0.1), InvalidArgument);
}

TEST_CASE("invalid eigen problems") {
    const auto m = model("flat", 2, 2.0);
    CHECK_THROWS_AS(solve_radial({m, 1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(solve_radial({m, 2.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(solve_radial({m, 2.0, 10.0}), InvalidArgument);
    CHECK_THROWS_AS(solve_radial({m, 2.0, 1.0}, 1e-14), InvalidArgument);
    const RadialTrial zero{[](double) { return 0.0; }, [](double) { return 0.0; }, {}};
    CHECK_THROWS_AS(rayleigh_quotient({m, 2.0, 1.0}, zero), InvalidArgument);
    const RadialTrial open{[](double) { return 1.0; }, [](double) { return 0.0; }, {}};
    CHECK_THROWS_AS(rayleigh_quotient({m, 2.0, 1.0}, open), InvalidArgument);
}
