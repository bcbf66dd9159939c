#pragma once

#include <optional>

namespace efimovkit::twobody {

// Attractive square well of depth V0 and range Rw for reduced mass mu, in
// units with hbar = 1.
class SquareWell {
public:
    // Throws DomainError unless all three quantities are finite and > 0.
    SquareWell(double depth_V0, double range_Rw, double reduced_mass_mu);

    double depth() const noexcept { return depth_; }
    double range() const noexcept { return range_; }
    double reduced_mass() const noexcept { return mass_; }

    // Interior wave number k0 = sqrt(2 mu V0).
    double k0() const noexcept;
    // Dimensionless well strength k0 * Rw.
    double phase() const noexcept { return k0() * range_; }

    SquareWell with_depth(double depth_V0) const { return {depth_V0, range_, mass_}; }

    // Depth that gives the requested k0 * Rw for this range and mass.
    double depth_for_phase(double k0_Rw) const;

private:
    double depth_;
    double range_;
    double mass_;
};

struct ScatteringLengthResult {
    std::optional<double> a;  // empty at unitarity
    int bound_state_count = 0;

    bool unitary() const noexcept { return !a.has_value(); }
};

inline constexpr double kDefaultUnitarityTolerance = 1e-12;

// a = Rw (1 - tan(k0 Rw) / (k0 Rw)) from matching u(r) ~ (1 - r/a) at the
// well edge. `a` is left empty when |cos(k0 Rw)| < unitarity_tolerance.
ScatteringLengthResult scattering_length(
    const SquareWell& well, double unitarity_tolerance = kDefaultUnitarityTolerance);

// floor(k0 Rw / pi + 1/2).
int bound_state_count(const SquareWell& well);

// Shallowest s-wave bound-state energy -kappa^2 / (2 mu), or nothing when the
// well binds no state (k0 Rw < pi/2).
std::optional<double> binding_energy(const SquareWell& well);

// Adjusts the depth of `templ` so that its scattering length equals target_a.
// Branch m searches k0 Rw in (m pi, (m + 1) pi]: negative targets (and, for
// m >= 1, targets below Rw) land below the divergence at (m + 1/2) pi,
// targets >= Rw above it.
//
// Throws UnreachableTargetError for branch 0 with 0 < target_a < Rw, and
// DomainError for a zero or non-finite target or a negative branch.
SquareWell tune_to_scattering_length(const SquareWell& templ, double target_a, int branch);

// 4 pi a^2 / (1 + k^2 a^2).
double low_energy_cross_section(double a, double k);

}  // namespace efimovkit::twobody
