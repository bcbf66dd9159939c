#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace efimovkit::efimov {

// Efimov states exist only for zero total orbital angular momentum; any
// L(L+1)/R^2 barrier overwhelms the attractive 1/R^2 channel. Nothing here
// computes L: ladders carry this value as a labelled assumption.
inline constexpr int kAssumedTotalAngularMomentum = 0;

// Number of three-body states in the 1/R^2 window, or unbounded for
// |a| -> infinity.
struct StateCount {
    bool unbounded = false;
    int count = 0;

    static StateCount infinite() { return {true, 0}; }
    bool operator==(const StateCount&) const = default;
};

// max(0, floor(ln(|a| / r0) / pi)). An infinite `a` is the unbounded marker.
// The logarithm is snapped to the nearest integer when it lies within a few
// ulps of one, so that |a| = r0 e^{k pi} counts exactly k.
//
// Throws DomainError for r0 <= 0, non-finite r0 or NaN a.
StateCount count_states(double a, double r0);

struct EfimovWindow {
    double a;
    double r0;
    StateCount predicted;
};

EfimovWindow make_window(double a, double r0);

struct EfimovEntry {
    std::size_t n;
    double energy;
};

struct EfimovLadder {
    double alpha_eff = 0.0;
    double ground_energy = 0.0;
    int total_angular_momentum = kAssumedTotalAngularMomentum;
    std::vector<EfimovEntry> entries;
    std::optional<std::size_t> truncated_at;
};

// ground_energy * exp(-2 n pi / alpha_eff) for n = 0..count-1.
//
// Throws DomainError unless alpha_eff > 0, ground_energy < 0 and count >= 1.
EfimovLadder build_efimov_ladder(double alpha_eff, double ground_energy, int count);

struct ThresholdPartition {
    std::vector<EfimovEntry> bound;     // energy < threshold
    std::vector<EfimovEntry> embedded;  // threshold <= energy < 0
};

// Splits the ladder at the two-body threshold. Embedded states sit in the
// atom-dimer continuum and show up as resonances in elastic scattering.
//
// Throws DomainError unless two_body_threshold < 0.
ThresholdPartition classify_states_vs_threshold(const EfimovLadder& ladder,
                                                double two_body_threshold);

}  // namespace efimovkit::efimov
