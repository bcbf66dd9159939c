#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library code paths being checked.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace efimovkit::testing {

// ln Gamma(z) from the Euler product
//   Gamma(z) = lim n! n^z / (z (z+1) ... (z+n))
// rewritten as z ln n - ln z - sum_{k=1}^{n} ln(1 + z/k), accumulated in long
// double with Kahan compensation, then Richardson-extrapolated in 1/n over
// n, 2n, 4n, 8n. Valid for Re z > 0 (sum of principal logs, continuous
// branch).
inline std::complex<double> euler_product_log_gamma(std::complex<double> zd, long n0 = 20000) {
    using cld = std::complex<long double>;
    const cld z(zd.real(), zd.imag());
    auto partial = [&](long n) {
        cld sum = 0.0L;
        cld comp = 0.0L;
        for (long k = 1; k <= n; ++k) {
            const cld term = std::log(1.0L + z / static_cast<long double>(k));
            const cld y = term - comp;
            const cld t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        return z * std::log(static_cast<long double>(n)) - std::log(z) - sum;
    };
    // Table of Richardson levels eliminating 1/n, 1/n^2, 1/n^3.
    cld level0[4];
    for (int i = 0; i < 4; ++i) level0[i] = partial(n0 << i);
    cld level1[3];
    for (int i = 0; i < 3; ++i) level1[i] = 2.0L * level0[i + 1] - level0[i];
    cld level2[2];
    for (int i = 0; i < 2; ++i) level2[i] = (4.0L * level1[i + 1] - level1[i]) / 3.0L;
    const cld level3 = (8.0L * level2[1] - level2[0]) / 7.0L;
    return {static_cast<double>(level3.real()), static_cast<double>(level3.imag())};
}

// Central finite difference of f at x with step h.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Brute-force bisection, used as a check against the Brent implementation.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int steps = 200) {
    double flo = f(lo);
    for (int i = 0; i < steps; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Shallowest bound state of a square well with phase x = k0 R (one bound
// state assumed): solve k' cot(k' R) = -kappa by bisection in kappa R, away
// from the cot poles.
inline double square_well_binding(double x, double R, double mu) {
    const double pi = std::acos(-1.0);
    auto cond = [x](double kr) {
        const double y = std::sqrt(x * x - kr * kr);
        return y / std::tan(y) + kr;
    };
    const double hi = std::sqrt(x * x - pi * pi / 4.0) * (1.0 - 1e-15);
    const double lo = x > pi ? std::sqrt(x * x - pi * pi) * (1.0 + 1e-12) : 0.0;
    const double kappa = bisect(cond, lo, hi) / R;
    return -kappa * kappa / (2.0 * mu);
}

}  // namespace efimovkit::testing
