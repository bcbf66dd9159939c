#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "efimovkit/profiles.hpp"

namespace efimovkit::fit {

enum class Model { fano, breit_wigner };

std::string_view to_string(Model m);

struct FitSettings {
    double relative_sse_tolerance = 1e-12;
    // Stop when every component of d(sse)/d(theta) is below this.
    double gradient_tolerance = 1e-10;
    int max_iterations = 200;
    // |q| is clamped here so the Lorentzian direction stays bounded.
    double q_cap = 1e6;
    // |q| reported by the initial guess for a peak with no dip.
    double guess_q_cap = 1e3;
};

struct FitReport {
    Model model = Model::fano;
    profiles::ProfileParameters params;
    double sse = 0.0;
    int iterations = 0;
    bool converged = false;
    // Fano fit finished with |q| pinned at the cap: the data are Lorentzian.
    bool lorentzian_limit = false;
    profiles::ProfileParameters initial_guess;
};

/// Starting point read off the curve's geometry. The dip of a Fano profile
/// sits at E_r - q Gamma/2 and its peak at E_r + Gamma/(2q), so the distance
/// between the two fixes Gamma for each trial q; a log-spaced scan over |q|
/// picks the trial with the smallest sse (sigma0 solved linearly). The sign
/// of q is positive when the dip precedes the peak. A peak without an
/// interior dip yields |q| = guess_q_cap; a dip without a peak yields q = 0.
///
/// Throws DegenerateCurveError when the curve has neither an interior
/// maximum nor an interior minimum, GridError when it is shorter than 8
/// samples.
profiles::FanoParameters initial_guess_fano(const profiles::CrossSectionCurve& curve,
                                            const FitSettings& settings = {});

/// Peak position, height and full width at half maximum. A curve without an
/// interior maximum but with an interior minimum falls back to a centred
/// guess; a monotone curve throws DegenerateCurveError.
profiles::BreitWignerParameters initial_guess_breit_wigner(const profiles::CrossSectionCurve& curve);

/// Damped Gauss-Newton (Levenberg-Marquardt with Marquardt diagonal scaling)
/// minimisation of sum_i (model(E_i) - sigma_i)^2 over
/// theta = (E_r, ln Gamma, q, ln(sigma0 (1 + q^2))) for Fano or
/// (E_r, ln Gamma, ln sigma0) for Breit-Wigner. The Fano scale coordinate is
/// the log of the profile maximum, which keeps the large-q Lorentzian limit
/// a straight valley instead of the curved sigma0 q^2 = const one. Non-convergence is reported through `converged`, never
/// thrown.
///
/// Throws DomainError if `guess` holds the other model's parameters.
FitReport fit(const profiles::CrossSectionCurve& curve, Model model,
              std::optional<profiles::ProfileParameters> guess = std::nullopt,
              const FitSettings& settings = {});

/// (fano report, breit-wigner report).
std::pair<FitReport, FitReport> compare_models(const profiles::CrossSectionCurve& curve,
                                               const FitSettings& settings = {});

double sum_squared_residuals(const profiles::CrossSectionCurve& curve,
                             const profiles::ProfileParameters& params);

// Internal parameterisation, exposed for derivative checks.
inline constexpr std::size_t kMaxParameters = 4;
using Theta = std::array<double, kMaxParameters>;

std::size_t parameter_count(Model m);
Theta to_theta(const profiles::ProfileParameters& params);
profiles::ProfileParameters from_theta(Model m, const Theta& theta);
double model_value(Model m, const Theta& theta, double E);
/// Analytic d(model)/d(theta) at E; unused trailing slots are zero.
Theta model_gradient(Model m, const Theta& theta, double E);

}  // namespace efimovkit::fit
