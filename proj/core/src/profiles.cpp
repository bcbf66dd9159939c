#include "efimovkit/profiles.hpp"

#include <cmath>
#include <sstream>

#include "efimovkit/error.hpp"
#include "efimovkit/numkit.hpp"

namespace efimovkit::profiles {

namespace {

void require_width_and_scale(double E_r, double Gamma, double sigma0) {
    if (!std::isfinite(E_r)) {
        throw DomainError("profile: E_r must be finite");
    }
    if (!std::isfinite(Gamma) || !(Gamma > 0.0)) {
        throw DomainError("profile: Gamma must be finite and > 0");
    }
    if (!std::isfinite(sigma0) || !(sigma0 > 0.0)) {
        throw DomainError("profile: sigma0 must be finite and > 0");
    }
}

}  // namespace

BreitWignerParameters BreitWignerParameters::from_amplitude(double E_r, double Gamma, double A) {
    if (!std::isfinite(Gamma) || !(Gamma > 0.0)) {
        throw DomainError("profile: Gamma must be finite and > 0");
    }
    BreitWignerParameters p{E_r, Gamma, A / (0.25 * Gamma * Gamma)};
    validate(p);
    return p;
}

void validate(const BreitWignerParameters& p) { require_width_and_scale(p.E_r, p.Gamma, p.sigma0); }

void validate(const FanoParameters& p) {
    require_width_and_scale(p.E_r, p.Gamma, p.sigma0);
    if (!std::isfinite(p.q)) {
        throw DomainError("profile: q must be finite (use Breit-Wigner for the q -> infinity limit)");
    }
}

double reduced_energy(double E, double E_r, double Gamma) {
    if (!(Gamma > 0.0)) {
        throw DomainError("reduced energy: Gamma must be > 0");
    }
    return (E - E_r) / (0.5 * Gamma);
}

double breit_wigner(double E, const BreitWignerParameters& p) {
    validate(p);
    const double eps = reduced_energy(E, p.E_r, p.Gamma);
    return p.sigma0 / (1.0 + eps * eps);
}

double fano(double E, const FanoParameters& p) {
    validate(p);
    const double eps = reduced_energy(E, p.E_r, p.Gamma);
    const double shifted = p.q + eps;
    return p.sigma0 * shifted * shifted / (1.0 + eps * eps);
}

double evaluate(double E, const ProfileParameters& p) {
    return std::visit([E](const auto& params) {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, FanoParameters>) {
            return fano(E, params);
        } else {
            return breit_wigner(E, params);
        }
    }, p);
}

CrossSectionCurve::CrossSectionCurve(std::vector<Sample> samples, std::size_t clamped_count)
    : samples_(std::move(samples)), clamped_(clamped_count) {
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const auto& s = samples_[i];
        if (!std::isfinite(s.E)) {
            throw GridError("curve: non-finite energy");
        }
        if (i > 0 && !(s.E > samples_[i - 1].E)) {
            std::ostringstream msg;
            msg << "curve: energies must be strictly increasing (row " << i << ")";
            throw GridError(msg.str());
        }
        if (!std::isfinite(s.sigma) || s.sigma < 0.0) {
            std::ostringstream msg;
            msg << "curve: sigma must be finite and >= 0 (row " << i << ")";
            throw DomainError(msg.str());
        }
    }
}

std::vector<double> CrossSectionCurve::energies() const {
    std::vector<double> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(s.E);
    return out;
}

std::vector<double> CrossSectionCurve::sigmas() const {
    std::vector<double> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(s.sigma);
    return out;
}

void CrossSectionCurve::require_fit_size() const {
    if (samples_.size() < kMinimumCurveSamples) {
        std::ostringstream msg;
        msg << "curve: need at least " << kMinimumCurveSamples << " samples, got " << samples_.size();
        throw GridError(msg.str());
    }
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw GridError("grid: need finite lo < hi");
    }
    if (n < 2) {
        throw GridError("grid: need at least two points");
    }
    std::vector<double> grid(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = lo + step * static_cast<double>(i);
    }
    grid.back() = hi;
    return grid;
}

CrossSectionCurve synthesize(const ProfileParameters& p, std::span<const double> grid,
                             double noise_sigma_relative, std::uint64_t seed) {
    std::visit([](const auto& params) { validate(params); }, p);
    if (grid.size() < kMinimumCurveSamples) {
        std::ostringstream msg;
        msg << "synthesize: grid too small (" << grid.size() << " points, need "
            << kMinimumCurveSamples << ")";
        throw GridError(msg.str());
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw GridError("synthesize: grid must be strictly increasing");
        }
    }
    if (!std::isfinite(noise_sigma_relative) || noise_sigma_relative < 0.0) {
        throw DomainError("synthesize: relative noise must be finite and >= 0");
    }
    const auto noise = numkit::seeded_gaussian_noise(seed, grid.size(), noise_sigma_relative);
    std::vector<Sample> samples;
    samples.reserve(grid.size());
    std::size_t clamped = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double sigma = evaluate(grid[i], p);
        if (noise_sigma_relative > 0.0) {
            sigma *= 1.0 + noise[i];
        }
        if (sigma < 0.0) {
            sigma = 0.0;
            ++clamped;
        }
        samples.push_back({grid[i], sigma});
    }
    return CrossSectionCurve(std::move(samples), clamped);
}

}  // namespace efimovkit::profiles
