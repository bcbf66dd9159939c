#include "efimovkit/dipole_ladder.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "efimovkit/error.hpp"
#include "efimovkit/numkit.hpp"

namespace efimovkit::dipole {

namespace {

constexpr double kCriticalStrength = 0.25;

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("dipole ladder: alpha must be finite and > 0");
    }
}

void require_scale(double reference_scale) {
    if (!(reference_scale > 0.0) || !std::isfinite(reference_scale)) {
        throw DomainError("dipole ladder: reference scale must be finite and > 0");
    }
}

bool is_normal_energy(double e) {
    return std::isfinite(e) && std::abs(e) >= std::numeric_limits<double>::min();
}

double kappa_for_phase(double alpha, std::size_t n, double reference_scale, double phase) {
    const double quantum = (static_cast<double>(n) + 0.5) * std::numbers::pi;
    return reference_scale * std::exp(-(quantum + phase) / alpha);
}

}  // namespace

DipoleParameters DipoleParameters::from_strength(double strength_a) {
    return {strength_a, alpha_from_strength(strength_a)};
}

DipoleParameters DipoleParameters::from_alpha(double alpha) {
    require_alpha(alpha);
    return {alpha * alpha + kCriticalStrength, alpha};
}

double alpha_from_strength(double strength_a) {
    if (!std::isfinite(strength_a)) {
        throw DomainError("dipole strength must be finite");
    }
    if (!(strength_a > kCriticalStrength)) {
        std::ostringstream msg;
        msg << "subcritical dipole strength a = " << strength_a
            << " (need a > 1/4 for an infinite ladder)";
        throw SubcriticalError(msg.str());
    }
    return std::sqrt(strength_a - kCriticalStrength);
}

double kappa_n(double alpha, std::size_t n, double reference_scale) {
    require_alpha(alpha);
    require_scale(reference_scale);
    return kappa_for_phase(alpha, n, reference_scale, numkit::arg_gamma({1.0, -alpha}));
}

double condition_residual(double alpha, std::size_t n, double kappa,
                          double reference_scale) {
    require_alpha(alpha);
    require_scale(reference_scale);
    const double phase = numkit::arg_gamma({1.0, -alpha});
    const double quantum = (static_cast<double>(n) + 0.5) * std::numbers::pi;
    return alpha * std::log(reference_scale / kappa) - phase - quantum;
}

double energy_ratio(double alpha) {
    require_alpha(alpha);
    return std::exp(-2.0 * std::numbers::pi / alpha);
}

BoundLadder build_ladder(double alpha, std::size_t n_max, double reference_scale) {
    require_alpha(alpha);
    require_scale(reference_scale);
    BoundLadder ladder;
    ladder.alpha = alpha;
    ladder.entries.reserve(n_max + 1);
    const double phase = numkit::arg_gamma({1.0, -alpha});
    for (std::size_t n = 0; n <= n_max; ++n) {
        const double kappa = kappa_for_phase(alpha, n, reference_scale, phase);
        const double epsilon = -0.5 * kappa * kappa;
        if (!is_normal_energy(epsilon)) {
            ladder.truncated_at = n;
            break;
        }
        ladder.entries.push_back({n, kappa, epsilon});
    }
    return ladder;
}

GeometricSeries geometric_energies(double epsilon0, double alpha, std::size_t count) {
    require_alpha(alpha);
    GeometricSeries series;
    series.energies.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        const double e =
            epsilon0 * std::exp(-2.0 * static_cast<double>(n) * std::numbers::pi / alpha);
        if (!is_normal_energy(e)) {
            series.truncated_at = n;
            break;
        }
        series.energies.push_back(e);
    }
    return series;
}

}  // namespace efimovkit::dipole
