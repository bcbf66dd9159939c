#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace efimovkit::numkit {

using ComplexValue = std::complex<double>;

/// Principal logarithm of the gamma function, continued analytically off the
/// real axis (the branch cut lies on the negative real axis). The imaginary
/// part is a smooth arg Gamma(z) with no 2*pi jumps along vertical lines in the
/// right half-plane. On the negative real axis the imaginary part is 0 or pi
/// according to the sign of Gamma(x).
///
/// Throws PoleError for z in {0, -1, -2, ...} and DomainError for non-finite
/// input.
ComplexValue log_gamma(ComplexValue z);

/// arg Gamma(z), continuous along vertical lines; equal to imag(log_gamma(z)).
double arg_gamma(ComplexValue z);

struct RootOptions {
    double tol = 1e-12;     // bracket-width target
    int max_iterations = 200;
};

/// Brent's method on a sign-changing bracket [lo, hi]. Returns a point whose
/// enclosing bracket is no wider than tol (or an exact zero).
///
/// Throws NoSignChangeError if f(lo) and f(hi) share a strict sign,
/// DomainError for lo >= hi or tol <= 0, and NonConvergenceError when the
/// iteration cap is exhausted.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 RootOptions opts = {});

inline double find_root(const std::function<double(double)>& f, double lo,
                        double hi, double tol) {
    return find_root(f, lo, hi, RootOptions{tol, 200});
}

/// Reproducible N(0, sigma^2) samples.
///
/// Algorithm: std::mt19937_64 seeded with `seed` (its output sequence is fixed
/// by the C++ standard), 53-bit uniforms u = (bits >> 11) * 2^-53 mapped to
/// (0, 1], then the Box-Muller transform; both variates of each pair are
/// emitted, cosine branch first.
std::vector<double> seeded_gaussian_noise(std::uint64_t seed, std::size_t n,
                                          double sigma);

}  // namespace efimovkit::numkit
