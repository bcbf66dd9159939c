#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace efimovkit::dipole {

// Strength of the attractive -a/(2 r^2) potential (atomic units) together with
// its index alpha = sqrt(a - 1/4). Construct through from_strength or
// from_alpha; both enforce the supercritical condition.
class DipoleParameters {
public:
    static DipoleParameters from_strength(double strength_a);
    static DipoleParameters from_alpha(double alpha);

    double strength_a() const noexcept { return strength_a_; }
    double alpha() const noexcept { return alpha_; }

private:
    DipoleParameters(double strength_a, double alpha)
        : strength_a_(strength_a), alpha_(alpha) {}

    double strength_a_;
    double alpha_;
};

struct LadderEntry {
    std::size_t n;
    double kappa;    // binding momentum, inverse length
    double epsilon;  // -kappa^2 / 2, atomic units
};

struct BoundLadder {
    double alpha = 0.0;
    std::vector<LadderEntry> entries;
    // First index that was dropped because its energy left the normal
    // floating-point range; empty when every requested entry is present.
    std::optional<std::size_t> truncated_at;
};

// Throws SubcriticalError when strength_a <= 1/4.
double alpha_from_strength(double strength_a);

// Closed-form inversion of the bound-state condition
//   alpha ln(2 / kappa) - arg Gamma(1 - i alpha) = (n + 1/2) pi.
// `reference_scale` is the "2" inside the logarithm; changing it rescales every
// kappa_n by the same factor.
double kappa_n(double alpha, std::size_t n, double reference_scale = 2.0);

// Left side minus right side of the bound-state condition for a given kappa.
// Zero (to rounding) for every kappa returned by kappa_n.
double condition_residual(double alpha, std::size_t n, double kappa,
                          double reference_scale = 2.0);

// Entries n = 0..n_max with epsilon_n = -kappa_n^2 / 2. Entries whose energy
// would underflow the normal double range are dropped and the first dropped
// index is reported in truncated_at.
BoundLadder build_ladder(double alpha, std::size_t n_max,
                         double reference_scale = 2.0);

// exp(-2 pi / alpha), the ratio of consecutive ladder energies.
double energy_ratio(double alpha);

// epsilon_0 * exp(-2 n pi / alpha) for n = 0..count-1, stopping early (and
// reporting the index) once a value would underflow. Shared with the
// three-body ladder.
struct GeometricSeries {
    std::vector<double> energies;
    std::optional<std::size_t> truncated_at;
};
GeometricSeries geometric_energies(double epsilon0, double alpha, std::size_t count);

}  // namespace efimovkit::dipole
