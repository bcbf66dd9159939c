#include "efimovkit/twobody.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "efimovkit/error.hpp"
#include "efimovkit/numkit.hpp"

namespace efimovkit::twobody {

namespace {

constexpr double kPi = std::numbers::pi;

// Bracket tolerance floor; the root finder then converges to a few ulps of
// the root.
const numkit::RootOptions kRelativePrecision{std::numeric_limits<double>::min(), 400};

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

// tan(x)/x - 1 without the cancellation of the direct form at small x.
double tan_over_x_minus_one(double x) {
    if (std::abs(x) < 0.05) {
        const double s = x * x;
        return s * (1.0 / 3 + s * (2.0 / 15 + s * (17.0 / 315 + s * (62.0 / 2835 +
               s * (1382.0 / 155925 + s * (21844.0 / 6081075))))));
    }
    return std::tan(x) / x - 1.0;
}

}  // namespace

SquareWell::SquareWell(double depth_V0, double range_Rw, double reduced_mass_mu)
    : depth_(depth_V0), range_(range_Rw), mass_(reduced_mass_mu) {
    if (!positive_finite(depth_) || !positive_finite(range_) || !positive_finite(mass_)) {
        throw DomainError("square well: depth, range and reduced mass must be finite and > 0");
    }
    if (!std::isfinite(k0())) {
        throw DomainError("square well: k0 = sqrt(2 mu V0) is not finite");
    }
}

double SquareWell::k0() const noexcept { return std::sqrt(2.0 * mass_ * depth_); }

double SquareWell::depth_for_phase(double k0_Rw) const {
    const double k = k0_Rw / range_;
    return k * k / (2.0 * mass_);
}

int bound_state_count(const SquareWell& well) {
    return static_cast<int>(std::floor(well.phase() / kPi + 0.5));
}

ScatteringLengthResult scattering_length(const SquareWell& well, double unitarity_tolerance) {
    const double x = well.phase();
    ScatteringLengthResult result;
    result.bound_state_count = bound_state_count(well);
    if (std::abs(std::cos(x)) < unitarity_tolerance) {
        return result;
    }
    result.a = -well.range() * tan_over_x_minus_one(x);
    return result;
}

std::optional<double> binding_energy(const SquareWell& well) {
    const int count = bound_state_count(well);
    if (count == 0) {
        return std::nullopt;
    }
    const double x = well.phase();
    // With t = kappa Rw and y = k' Rw = sqrt(x^2 - t^2), the matching
    // condition y cot y = -t is multiplied through by sin y to remove its
    // poles. Solving in t rather than y keeps near-threshold states accurate:
    // there x - y ~ t^2 falls below the resolution of y. The shallowest state
    // has y in [(N - 1/2) pi, min(N pi, x)].
    auto matching = [x](double t) {
        const double y = std::sqrt(std::max(0.0, (x - t) * (x + t)));
        return y * std::cos(y) + t * std::sin(y);
    };
    const double y_lo = (count - 0.5) * kPi;
    const double y_hi = std::min(count * kPi, x);
    const double t_hi = std::sqrt(std::max(0.0, (x - y_lo) * (x + y_lo)));
    const double t_lo = std::sqrt(std::max(0.0, (x - y_hi) * (x + y_hi)));
    double t = t_hi;
    if (t_hi > t_lo) {
        t = numkit::find_root(matching, t_lo, t_hi, kRelativePrecision);
    }
    const double kappa = t / well.range();
    return -kappa * kappa / (2.0 * well.reduced_mass());
}

SquareWell tune_to_scattering_length(const SquareWell& templ, double target_a, int branch) {
    if (!std::isfinite(target_a) || target_a == 0.0) {
        throw DomainError("tune: target scattering length must be finite and nonzero");
    }
    if (branch < 0) {
        throw DomainError("tune: branch index must be >= 0");
    }
    const double R = templ.range();
    const double m = static_cast<double>(branch);
    const double divergence = (m + 0.5) * kPi;
    // Largest scattering length reachable below the divergence: the limit at
    // x = m pi, which is 0 for the first branch and Rw otherwise.
    const double below_max = branch == 0 ? 0.0 : R;

    double lo;
    double hi;
    if (target_a >= R) {
        lo = divergence;
        hi = (m + 1.0) * kPi;
    } else if (target_a < below_max) {
        lo = m * kPi;
        hi = divergence;
    } else {
        std::ostringstream msg;
        msg << "tune: target a = " << target_a << " is unreachable on branch " << branch
            << " (branch 0 only yields a < 0 or a >= Rw = " << R << ")";
        throw UnreachableTargetError(msg.str());
    }

    // cos(x) (a(x) - target): same zeros as a(x) - target, no poles, and
    // nonzero at x = 0.
    auto mismatch = [R, target_a](double x) {
        const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
        return (R - target_a) * std::cos(x) - R * sinc;
    };
    // a = Rw exactly sits on the bracket end, where tan x = 0.
    const double x = target_a == R ? hi : numkit::find_root(mismatch, lo, hi, kRelativePrecision);
    return templ.with_depth(templ.depth_for_phase(x));
}

double low_energy_cross_section(double a, double k) {
    if (!std::isfinite(a)) {
        throw DomainError("cross section: scattering length must be finite");
    }
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw DomainError("cross section: wave number must be finite and >= 0");
    }
    const double ka = k * a;
    return 4.0 * kPi * a * a / (1.0 + ka * ka);
}

}  // namespace efimovkit::twobody
