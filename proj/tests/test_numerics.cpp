#include "modelspec/errors.hpp"
#include "modelspec/hermite.hpp"
#include "modelspec/ode.hpp"
#include "modelspec/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace modelspec;

TEST_CASE("dormand-prince integrates the harmonic oscillator to tolerance") {
    auto rhs = [](double, const ode::State<2>& y) { return ode::State<2>{y[1], -y[0]}; };
    ode::Options opt;
    opt.rtol = 1e-11;
    opt.atol = 1e-13;
    ode::State<2> last{};
    auto rep = ode::integrate<2>(rhs, 0.0, {0.0, 1.0}, 10.0, opt, [&](const auto&, const auto& b) {
        last = b.y;
        return true;
    });
    CHECK_FALSE(rep.stopped_by_hook);
    CHECK(rep.t_final == 10.0);
    CHECK(last[0] == doctest::Approx(std::sin(10.0)).epsilon(1e-9));
    CHECK(last[1] == doctest::Approx(std::cos(10.0)).epsilon(1e-9));
}

TEST_CASE("hook can stop integration and roots are located inside a step") {
    auto rhs = [](double, const ode::State<2>& y) { return ode::State<2>{y[1], -y[0]}; };
    ode::Options opt;
    double root = -1.0;
    auto rep = ode::integrate<2>(rhs, 0.1, {std::sin(0.1), std::cos(0.1)}, 10.0, opt, [&](const auto& a, const auto& b) {
        if (a.y[0] > 0.0 && b.y[0] <= 0.0) {
            root = ode::bisect_root_in_step<2>(rhs, a, b, 0, 1e-14);
            return false;
        }
        return true;
    });
    CHECK(rep.stopped_by_hook);
    CHECK(root == doctest::Approx(std::numbers::pi).epsilon(1e-10));
}

TEST_CASE("step budget exhaustion is a numerical error") {
    auto rhs = [](double, const ode::State<1>& y) { return ode::State<1>{y[0]}; };
    ode::Options opt;
    opt.max_steps = 3;
    opt.h_max = 1e-3;
    CHECK_THROWS_AS(ode::integrate<1>(rhs, 0.0, {1.0}, 1.0, opt, [](const auto&, const auto&) { return true; }),
                    NumericalError);
    CHECK_THROWS_AS(ode::integrate<1>(rhs, 1.0, {1.0}, 0.0, opt, [](const auto&, const auto&) { return true; }),
                    InvalidArgument);
}

TEST_CASE("cubic hermite reproduces cubics exactly") {
    auto p = [](double t) { return 2.0 * t * t * t - t * t + 3.0 * t - 1.0; };
    auto dp = [](double t) { return 6.0 * t * t - 2.0 * t + 3.0; };
    std::vector<double> t{0.0, 0.3, 1.1, 2.0}, y, dy;
    for (double v : t) {
        y.push_back(p(v));
        dy.push_back(dp(v));
    }
    CubicHermite h(t, y, dy);
    for (double v : {0.0, 0.1, 0.7, 1.5, 2.0}) {
        CHECK(h.value(v) == doctest::Approx(p(v)).epsilon(1e-13));
        CHECK(h.derivative(v) == doctest::Approx(dp(v)).epsilon(1e-13));
    }
    CHECK_THROWS(CubicHermite({0.0}, {1.0}, {0.0}));
}

TEST_CASE("adaptive quadrature on smooth, short and peaked integrands") {
    CHECK(quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(quad::integrate([](double x) { return x; }, 0.0, 1e-8, 1e-12) == doctest::Approx(5e-17).epsilon(1e-12));
    const double peak = quad::integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-10);
    CHECK(peak == doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-9));
    const std::vector<double> breaks{0.0, 0.5, 1.0};
    CHECK(quad::integrate_piecewise([](double x) { return std::abs(x - 0.5); }, breaks, 1e-12) ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("gauss panels integrate high-degree polynomials exactly") {
    const auto rule = quad::gauss_panels(0.0, 2.0, 3);
    CHECK(rule.x.size() == 24);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) s += rule.w[i] * std::pow(rule.x[i], 15);
    CHECK(s == doctest::Approx(std::pow(2.0, 16) / 16.0).epsilon(1e-13));
}
