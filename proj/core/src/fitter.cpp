#include "efimovkit/fitter.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "efimovkit/error.hpp"

namespace efimovkit::fit {

namespace {

using profiles::BreitWignerParameters;
using profiles::CrossSectionCurve;
using profiles::FanoParameters;
using profiles::ProfileParameters;

constexpr double kLambdaInitial = 1e-3;
constexpr double kLambdaMin = 1e-15;
constexpr double kLambdaMax = 1e16;
constexpr double kLambdaDown = 3.0;
constexpr double kLambdaUp = 4.0;

struct Extrema {
    std::size_t i_max = 0;
    std::size_t i_min = 0;
    bool interior_max = false;
    bool interior_min = false;
};

Extrema find_extrema(const CrossSectionCurve& curve) {
    Extrema x;
    const auto s = curve.samples();
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i].sigma > s[x.i_max].sigma) x.i_max = i;
        if (s[i].sigma < s[x.i_min].sigma) x.i_min = i;
    }
    const std::size_t last = s.size() - 1;
    x.interior_max = x.i_max != 0 && x.i_max != last;
    x.interior_min = x.i_min != 0 && x.i_min != last;
    return x;
}

// Energy at which sigma first crosses `level` walking outward from `start` in
// direction `step` (+1 or -1), linearly interpolated.
std::optional<double> crossing(const CrossSectionCurve& curve, std::size_t start, int step,
                               double level) {
    const auto s = curve.samples();
    const bool above = s[start].sigma > level;
    std::size_t i = start;
    while (true) {
        if (step < 0 && i == 0) return std::nullopt;
        if (step > 0 && i + 1 == s.size()) return std::nullopt;
        const std::size_t j = step > 0 ? i + 1 : i - 1;
        if ((s[j].sigma > level) != above) {
            const double t = (level - s[i].sigma) / (s[j].sigma - s[i].sigma);
            return s[i].E + t * (s[j].E - s[i].E);
        }
        i = j;
    }
}

// Full width of the feature at `center` measured at `level`.
double width_at_level(const CrossSectionCurve& curve, std::size_t center, double level) {
    const double Ec = curve[center].E;
    const auto left = crossing(curve, center, -1, level);
    const auto right = crossing(curve, center, +1, level);
    if (left && right) return *right - *left;
    if (left) return 2.0 * (Ec - *left);
    if (right) return 2.0 * (*right - Ec);
    return 0.1 * (curve[curve.size() - 1].E - curve[0].E);
}

// Least-squares scale for a fixed unit-sigma0 shape.
double best_scale(const CrossSectionCurve& curve, const FanoParameters& unit) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& s : curve.samples()) {
        const double eps = profiles::reduced_energy(s.E, unit.E_r, unit.Gamma);
        const double shape = (unit.q + eps) * (unit.q + eps) / (1.0 + eps * eps);
        num += shape * s.sigma;
        den += shape * shape;
    }
    return den > 0.0 && num > 0.0 ? num / den : 0.0;
}

double sse_of(const CrossSectionCurve& curve, Model m, const Theta& theta) {
    double sse = 0.0;
    for (const auto& s : curve.samples()) {
        const double r = model_value(m, theta, s.E) - s.sigma;
        sse += r * r;
    }
    return sse;
}

bool matches(Model m, const ProfileParameters& p) {
    return (m == Model::fano) == std::holds_alternative<FanoParameters>(p);
}

void clamp_q(Model m, Theta& theta, double cap) {
    if (m == Model::fano) theta[2] = std::clamp(theta[2], -cap, cap);
}

}  // namespace

std::string_view to_string(Model m) {
    return m == Model::fano ? "fano" : "breit_wigner";
}

std::size_t parameter_count(Model m) { return m == Model::fano ? 4 : 3; }

Theta to_theta(const ProfileParameters& params) {
    if (const auto* f = std::get_if<FanoParameters>(&params)) {
        profiles::validate(*f);
        return {f->E_r, std::log(f->Gamma), f->q, std::log(f->sigma0) + std::log1p(f->q * f->q)};
    }
    const auto& b = std::get<BreitWignerParameters>(params);
    profiles::validate(b);
    return {b.E_r, std::log(b.Gamma), std::log(b.sigma0), 0.0};
}

ProfileParameters from_theta(Model m, const Theta& theta) {
    if (m == Model::fano) {
        const double q = theta[2];
        return FanoParameters{theta[0], std::exp(theta[1]), q,
                              std::exp(theta[3] - std::log1p(q * q))};
    }
    return BreitWignerParameters{theta[0], std::exp(theta[1]), std::exp(theta[2])};
}

double model_value(Model m, const Theta& theta, double E) {
    const double Gamma = std::exp(theta[1]);
    const double eps = (E - theta[0]) / (0.5 * Gamma);
    const double lorentz = 1.0 / (1.0 + eps * eps);
    if (m == Model::fano) {
        const double q = theta[2];
        const double shifted = q + eps;
        return std::exp(theta[3]) * shifted * shifted * lorentz / (1.0 + q * q);
    }
    return std::exp(theta[2]) * lorentz;
}

Theta model_gradient(Model m, const Theta& theta, double E) {
    const double Gamma = std::exp(theta[1]);
    const double eps = (E - theta[0]) / (0.5 * Gamma);
    const double lorentz = 1.0 / (1.0 + eps * eps);
    // d eps / d E_r = -2 / Gamma, d eps / d ln Gamma = -eps.
    const double deps_dEr = -2.0 / Gamma;
    const double deps_dlnG = -eps;
    if (m == Model::fano) {
        const double q = theta[2];
        const double inv_q2 = 1.0 / (1.0 + q * q);
        const double peak = std::exp(theta[3]);
        const double shifted = q + eps;
        const double value = peak * shifted * shifted * lorentz * inv_q2;
        const double df_deps = 2.0 * peak * inv_q2 * shifted * (1.0 - q * eps) * lorentz * lorentz;
        const double df_dq = 2.0 * peak * inv_q2 * inv_q2 * shifted * (1.0 - q * eps) * lorentz;
        return {df_deps * deps_dEr, df_deps * deps_dlnG, df_dq, value};
    }
    const double sigma0 = std::exp(theta[2]);
    const double value = sigma0 * lorentz;
    const double df_deps = -2.0 * sigma0 * eps * lorentz * lorentz;
    return {df_deps * deps_dEr, df_deps * deps_dlnG, value, 0.0};
}

double sum_squared_residuals(const CrossSectionCurve& curve, const ProfileParameters& params) {
    const Model m = std::holds_alternative<FanoParameters>(params) ? Model::fano : Model::breit_wigner;
    return sse_of(curve, m, to_theta(params));
}

FanoParameters initial_guess_fano(const CrossSectionCurve& curve, const FitSettings& settings) {
    curve.require_fit_size();
    const Extrema x = find_extrema(curve);
    if (!x.interior_max && !x.interior_min) {
        throw DegenerateCurveError("fano guess: curve has no interior extremum (monotone data)");
    }
    const double peak = curve[x.i_max].sigma;

    if (x.interior_max && !x.interior_min) {
        const double q = settings.guess_q_cap;
        const double Gamma = width_at_level(curve, x.i_max, 0.5 * peak);
        return {curve[x.i_max].E, Gamma, q, peak / (1.0 + q * q)};
    }
    if (!x.interior_max) {
        // Window resonance: symmetric dip rising to sigma0 far from E_r.
        const double trough = curve[x.i_min].sigma;
        const double Gamma = width_at_level(curve, x.i_min, 0.5 * (peak + trough));
        return {curve[x.i_min].E, Gamma, 0.0, peak};
    }

    const double E_dip = curve[x.i_min].E;
    const double E_peak = curve[x.i_max].E;
    const double separation = E_peak - E_dip;
    const double sign = separation > 0.0 ? 1.0 : -1.0;

    constexpr int kScanPoints = 241;
    const double log_lo = std::log(1e-2);
    const double log_hi = std::log(settings.guess_q_cap);
    FanoParameters best{};
    double best_sse = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kScanPoints; ++k) {
        const double abs_q = std::exp(log_lo + (log_hi - log_lo) * k / (kScanPoints - 1));
        const double q = sign * abs_q;
        const double Gamma = 2.0 * std::abs(separation) / (abs_q + 1.0 / abs_q);
        FanoParameters trial{E_dip + 0.5 * q * Gamma, Gamma, q, 1.0};
        trial.sigma0 = best_scale(curve, trial);
        if (!(trial.sigma0 > 0.0)) continue;
        const double sse = sum_squared_residuals(curve, trial);
        if (sse < best_sse) {
            best_sse = sse;
            best = trial;
        }
    }
    if (!std::isfinite(best_sse)) {
        throw DegenerateCurveError("fano guess: no admissible starting point");
    }
    return best;
}

BreitWignerParameters initial_guess_breit_wigner(const CrossSectionCurve& curve) {
    curve.require_fit_size();
    const Extrema x = find_extrema(curve);
    if (!x.interior_max && !x.interior_min) {
        throw DegenerateCurveError("breit-wigner guess: curve has no interior extremum (monotone data)");
    }
    const double peak = curve[x.i_max].sigma;
    if (x.interior_max) {
        return {curve[x.i_max].E, width_at_level(curve, x.i_max, 0.5 * peak), peak};
    }
    const double span = curve[curve.size() - 1].E - curve[0].E;
    return {curve[x.i_min].E, 0.25 * span, peak};
}

FitReport fit(const CrossSectionCurve& curve, Model model,
              std::optional<ProfileParameters> guess, const FitSettings& settings) {
    curve.require_fit_size();
    if (guess && !matches(model, *guess)) {
        throw DomainError("fit: initial guess does not match the requested model");
    }
    const ProfileParameters start =
        guess ? *guess
              : (model == Model::fano ? ProfileParameters{initial_guess_fano(curve, settings)}
                                      : ProfileParameters{initial_guess_breit_wigner(curve)});

    const std::size_t p = parameter_count(model);
    const std::size_t n = curve.size();
    const auto samples = curve.samples();

    Theta theta = to_theta(start);
    clamp_q(model, theta, settings.q_cap);

    Eigen::MatrixXd J(n, p);
    Eigen::VectorXd r(n);
    auto linearise = [&](const Theta& t) {
        for (std::size_t i = 0; i < n; ++i) {
            const Theta g = model_gradient(model, t, samples[i].E);
            for (std::size_t k = 0; k < p; ++k) J(i, k) = g[k];
            r(i) = model_value(model, t, samples[i].E) - samples[i].sigma;
        }
    };

    FitReport report;
    report.model = model;
    report.initial_guess = start;

    linearise(theta);
    double sse = r.squaredNorm();
    double lambda = kLambdaInitial;
    bool converged = false;
    int iter = 0;
    Eigen::MatrixXd augmented(n + p, p);
    Eigen::VectorXd rhs(n + p);
    for (; iter < settings.max_iterations; ++iter) {
        const Eigen::VectorXd gradient = 2.0 * J.transpose() * r;
        if (gradient.cwiseAbs().maxCoeff() < settings.gradient_tolerance) {
            converged = true;
            break;
        }
        const Eigen::VectorXd diag = J.colwise().squaredNorm().transpose();
        const double diag_floor = 1e-12 * std::max(diag.maxCoeff(), 1e-300);

        bool accepted = false;
        bool stalled = false;
        Theta candidate = theta;
        double candidate_sse = sse;
        while (!accepted) {
            augmented.topRows(n) = J;
            augmented.bottomRows(p).setZero();
            for (std::size_t k = 0; k < p; ++k) {
                augmented(n + k, k) = std::sqrt(lambda * std::max(diag(k), diag_floor));
            }
            rhs.head(n) = -r;
            rhs.tail(p).setZero();
            const Eigen::VectorXd step = augmented.colPivHouseholderQr().solve(rhs);

            candidate = theta;
            for (std::size_t k = 0; k < p; ++k) candidate[k] += step(k);
            clamp_q(model, candidate, settings.q_cap);
            candidate_sse = sse_of(curve, model, candidate);
            if (std::isfinite(candidate_sse) && candidate_sse < sse) {
                accepted = true;
                lambda = std::max(lambda / kLambdaDown, kLambdaMin);
            } else if (lambda >= kLambdaMax) {
                stalled = true;
                break;
            } else {
                lambda = std::min(lambda * kLambdaUp, kLambdaMax);
            }
        }
        if (stalled) {
            // No representable step lowers sse: the iterate is a minimum to
            // working precision.
            converged = true;
            break;
        }
        const double relative_drop = (sse - candidate_sse) / std::max(sse, 1e-300);
        theta = candidate;
        sse = candidate_sse;
        linearise(theta);
        if (relative_drop < settings.relative_sse_tolerance) {
            converged = true;
            ++iter;
            break;
        }
    }

    report.params = from_theta(model, theta);
    report.sse = sse;
    report.iterations = iter;
    report.converged = converged;
    report.lorentzian_limit =
        model == Model::fano && std::abs(theta[2]) >= settings.q_cap * (1.0 - 1e-12);
    return report;
}

std::pair<FitReport, FitReport> compare_models(const CrossSectionCurve& curve,
                                               const FitSettings& settings) {
    return {fit(curve, Model::fano, std::nullopt, settings),
            fit(curve, Model::breit_wigner, std::nullopt, settings)};
}

}  // namespace efimovkit::fit
