#include "efimovkit/numkit.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "efimovkit/error.hpp"

namespace efimovkit::numkit {

namespace {

// B_{2k} / (2k (2k-1)) for k = 1..10.
constexpr std::array<double, 10> kStirlingCoefficients = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

// Stirling's series is used once Re(w) reaches this value; the truncation
// error of the ten-term tail is then below 1e-18.
constexpr double kAsymptoticThreshold = 10.0;

ComplexValue stirling(ComplexValue w) {
    const ComplexValue inv = 1.0 / w;
    const ComplexValue inv2 = inv * inv;
    ComplexValue series = 0.0;
    for (auto it = kStirlingCoefficients.rbegin(); it != kStirlingCoefficients.rend(); ++it) {
        series = series * inv2 + *it;
    }
    series *= inv;
    const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
    return (w - 0.5) * std::log(w) - w + half_log_two_pi + series;
}

// Valid for Im(z) >= 0 away from the negative real axis. Every shifted
// argument z + k stays in the closed upper half-plane, so the sum of
// principal logarithms is continuous and reproduces the analytic branch.
ComplexValue log_gamma_upper(ComplexValue z) {
    ComplexValue shift_sum = 0.0;
    ComplexValue w = z;
    while (w.real() < kAsymptoticThreshold) {
        shift_sum += std::log(w);
        w += 1.0;
    }
    return stirling(w) - shift_sum;
}

}  // namespace

ComplexValue log_gamma(ComplexValue z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("log_gamma: non-finite argument");
    }
    if (z.imag() == 0.0) {
        const double x = z.real();
        if (x <= 0.0 && x == std::floor(x)) {
            std::ostringstream msg;
            msg << "log_gamma: pole at z = " << x;
            throw PoleError(msg.str());
        }
        if (x > 0.0) {
            return {log_gamma_upper({x, 0.0}).real(), 0.0};
        }
        // Reflection on the negative real axis: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        const double s = std::sin(std::numbers::pi * x);
        const double log_abs = std::log(std::numbers::pi / std::abs(s)) -
                               log_gamma_upper({1.0 - x, 0.0}).real();
        return {log_abs, s < 0.0 ? std::numbers::pi : 0.0};
    }
    if (z.imag() < 0.0) {
        return std::conj(log_gamma_upper(std::conj(z)));
    }
    return log_gamma_upper(z);
}

double arg_gamma(ComplexValue z) { return log_gamma(z).imag(); }

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 RootOptions opts) {
    if (!(lo < hi)) {
        throw DomainError("find_root: require lo < hi");
    }
    if (!(opts.tol > 0.0)) {
        throw DomainError("find_root: require tol > 0");
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();

    double a = lo;
    double b = hi;
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream msg;
        msg << "find_root: no sign change on [" << lo << ", " << hi << "]";
        throw NoSignChangeError(msg.str());
    }

    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = std::max(0.5 * opts.tol, 2.0 * eps * std::abs(b));
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) {
            return b;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // Inverse quadratic interpolation, or secant when only two points.
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            }
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    std::ostringstream msg;
    msg << "find_root: no convergence after " << opts.max_iterations << " iterations";
    throw NonConvergenceError(msg.str(), opts.max_iterations);
}

std::vector<double> seeded_gaussian_noise(std::uint64_t seed, std::size_t n,
                                          double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw DomainError("seeded_gaussian_noise: sigma must be finite and >= 0");
    }
    std::vector<double> out(n, 0.0);
    if (n == 0 || sigma == 0.0) {
        return out;
    }
    std::mt19937_64 engine(seed);
    constexpr double two_pow_minus_53 = 0x1.0p-53;
    std::size_t i = 0;
    while (i < n) {
        const double u1 = static_cast<double>((engine() >> 11) + 1) * two_pow_minus_53;
        const double u2 = static_cast<double>(engine() >> 11) * two_pow_minus_53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        out[i++] = sigma * radius * std::cos(angle);
        if (i < n) {
            out[i++] = sigma * radius * std::sin(angle);
        }
    }
    return out;
}

}  // namespace efimovkit::numkit
