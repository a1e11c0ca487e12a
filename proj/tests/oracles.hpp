#pragma once

// Reference values computed independently of the library: special-function
// series evaluated in long double and located by plain bisection.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline long double bisect(const std::function<long double(long double)>& f, long double lo, long double hi) {
    long double flo = f(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-18L * hi; ++i) {
        const long double mid = 0.5L * (lo + hi);
        const long double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5L * (lo + hi);
}

/// Power series of the Bessel function J0.
inline long double bessel_j0(long double x) {
    const long double q = -0.25L * x * x;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum) && k > 10) break;
    }
    return sum;
}

/// k-th positive zero of J0 (k = 1, 2, 3, ...), bracketed from a coarse scan.
inline double bessel_j0_zero(int k) {
    int found = 0;
    long double a = 0.5L, fa = bessel_j0(a);
    for (long double b = a + 0.05L;; b += 0.05L) {
        const long double fb = bessel_j0(b);
        if ((fa > 0) != (fb > 0) && ++found == k) return static_cast<double>(bisect(bessel_j0, a, b));
        a = b;
        fa = fb;
    }
}

/// Legendre function P_nu(cos theta) via 2F1(-nu, nu+1; 1; sin^2(theta/2)).
inline long double legendre_p(long double nu, long double theta) {
    const long double z = std::pow(std::sin(0.5L * theta), 2.0L);
    long double term = 1.0L, sum = 1.0L;
    for (int k = 0; k < 2'000'000; ++k) {
        const long double kk = k;
        term *= (kk - nu) * (kk + nu + 1.0L) / ((kk + 1.0L) * (kk + 1.0L)) * z;
        sum += term;
        if (std::fabs(term) < 1e-21L && k > 20) break;
    }
    return sum;
}

/// First Dirichlet eigenvalue nu(nu+1) of the geodesic cap of angular radius
/// theta on the unit 2-sphere: the smallest nu > 0 with P_nu(cos theta) = 0.
inline double sphere_cap_eigenvalue(double theta) {
    auto f = [theta](long double nu) { return legendre_p(nu, theta); };
    long double a = 1e-3L, fa = f(a);
    for (long double b = a + 0.01L;; b += 0.01L) {
        const long double fb = f(b);
        if ((fa > 0) != (fb > 0)) {
            const long double nu = bisect(f, a, b);
            return static_cast<double>(nu * (nu + 1.0L));
        }
        a = b;
        fa = fb;
    }
}

} // namespace oracle
