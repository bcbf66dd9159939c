#include "efimovkit/efimov.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "efimovkit/dipole_ladder.hpp"
#include "efimovkit/error.hpp"

namespace efimovkit::efimov {

namespace {

// Relative width of the snapping band around integer values of ln(|a|/r0)/pi.
constexpr double kSnapTolerance = 64.0 * std::numeric_limits<double>::epsilon();

}  // namespace

StateCount count_states(double a, double r0) {
    if (!std::isfinite(r0) || !(r0 > 0.0)) {
        throw DomainError("efimov count: r0 must be finite and > 0");
    }
    if (std::isnan(a)) {
        throw DomainError("efimov count: scattering length is NaN");
    }
    if (std::isinf(a)) {
        return StateCount::infinite();
    }
    const double ratio = std::abs(a) / r0;
    if (!(ratio > 1.0)) {
        return {};
    }
    const double windows = std::log(ratio) / std::numbers::pi;
    const double nearest = std::round(windows);
    const double snapped =
        std::abs(windows - nearest) <= kSnapTolerance * std::max(1.0, nearest) ? nearest : windows;
    return {false, static_cast<int>(std::floor(snapped))};
}

EfimovWindow make_window(double a, double r0) { return {a, r0, count_states(a, r0)}; }

EfimovLadder build_efimov_ladder(double alpha_eff, double ground_energy, int count) {
    if (!std::isfinite(alpha_eff) || !(alpha_eff > 0.0)) {
        throw DomainError("efimov ladder: alpha_eff must be finite and > 0");
    }
    if (!std::isfinite(ground_energy) || !(ground_energy < 0.0)) {
        throw DomainError("efimov ladder: ground energy must be finite and < 0");
    }
    if (count < 1) {
        throw DomainError("efimov ladder: count must be >= 1");
    }
    const auto series = dipole::geometric_energies(ground_energy, alpha_eff,
                                                   static_cast<std::size_t>(count));
    EfimovLadder ladder;
    ladder.alpha_eff = alpha_eff;
    ladder.ground_energy = ground_energy;
    ladder.truncated_at = series.truncated_at;
    ladder.entries.reserve(series.energies.size());
    for (std::size_t n = 0; n < series.energies.size(); ++n) {
        ladder.entries.push_back({n, series.energies[n]});
    }
    return ladder;
}

ThresholdPartition classify_states_vs_threshold(const EfimovLadder& ladder,
                                                double two_body_threshold) {
    if (!std::isfinite(two_body_threshold) || !(two_body_threshold < 0.0)) {
        throw DomainError("efimov partition: two-body threshold must be finite and < 0");
    }
    ThresholdPartition out;
    for (const auto& entry : ladder.entries) {
        (entry.energy < two_body_threshold ? out.bound : out.embedded).push_back(entry);
    }
    return out;
}

}  // namespace efimovkit::efimov
