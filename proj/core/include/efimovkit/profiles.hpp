#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace efimovkit::profiles {

/// Symmetric Lorentzian sigma0 / (1 + eps^2).
struct BreitWignerParameters {
    double E_r = 0.0;
    double Gamma = 1.0;
    double sigma0 = 1.0;

    /// Same profile written as A / ((E - E_r)^2 + (Gamma/2)^2).
    double amplitude_A() const noexcept { return sigma0 * 0.25 * Gamma * Gamma; }
    static BreitWignerParameters from_amplitude(double E_r, double Gamma, double A);
};

/// Asymmetric interference profile sigma0 (q + eps)^2 / (1 + eps^2). The
/// q -> infinity Lorentzian limit is not representable; use Breit-Wigner.
struct FanoParameters {
    double E_r = 0.0;
    double Gamma = 1.0;
    double q = 0.0;
    double sigma0 = 1.0;
};

using ProfileParameters = std::variant<FanoParameters, BreitWignerParameters>;

/// Throws DomainError unless Gamma > 0, sigma0 > 0 and every field is finite.
void validate(const BreitWignerParameters& p);
void validate(const FanoParameters& p);

/// (E - E_r) / (Gamma / 2). Throws DomainError for Gamma <= 0.
double reduced_energy(double E, double E_r, double Gamma);

double breit_wigner(double E, const BreitWignerParameters& p);
double fano(double E, const FanoParameters& p);
double evaluate(double E, const ProfileParameters& p);

inline constexpr std::size_t kMinimumCurveSamples = 8;

struct Sample {
    double E;
    double sigma;
};

/// Sampled cross section, E strictly increasing and sigma >= 0.
class CrossSectionCurve {
public:
    CrossSectionCurve() = default;
    /// Throws GridError for non-increasing E and DomainError for a negative
    /// or non-finite sigma.
    explicit CrossSectionCurve(std::vector<Sample> samples, std::size_t clamped_count = 0);

    std::span<const Sample> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    const Sample& operator[](std::size_t i) const { return samples_[i]; }

    /// Number of noisy samples that went negative and were clamped to zero.
    std::size_t clamped_count() const noexcept { return clamped_; }

    std::vector<double> energies() const;
    std::vector<double> sigmas() const;

    /// Throws GridError when fewer than kMinimumCurveSamples samples exist.
    void require_fit_size() const;

private:
    std::vector<Sample> samples_;
    std::size_t clamped_ = 0;
};

/// n evenly spaced energies from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

/// Evaluates the profile on `grid`, multiplies each value by
/// (1 + noise_sigma_relative * z_i) with z_i from seeded_gaussian_noise(seed),
/// and clamps negative results to zero.
///
/// Throws GridError for fewer than 8 points or a non-increasing grid.
CrossSectionCurve synthesize(const ProfileParameters& p, std::span<const double> grid,
                             double noise_sigma_relative, std::uint64_t seed);

}  // namespace efimovkit::profiles
