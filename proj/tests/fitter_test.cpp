#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "efimovkit/error.hpp"
#include "efimovkit/fitter.hpp"
#include "support/oracles.hpp"

namespace efimovkit::fit {
namespace {

using profiles::BreitWignerParameters;
using profiles::CrossSectionCurve;
using profiles::FanoParameters;

const FanoParameters kAsymmetric{1.63, 0.25, 4.0, 1.0};

CrossSectionCurve asymmetric_curve(double noise = 0.0, std::uint64_t seed = 0) {
    return profiles::synthesize(kAsymmetric, profiles::linear_grid(0.5, 3.5, 200), noise, seed);
}

double rel(double got, double want) { return std::abs(got / want - 1.0); }

double sum_sigma_squared(const CrossSectionCurve& c) {
    double s = 0.0;
    for (const auto& x : c.samples()) s += x.sigma * x.sigma;
    return s;
}

CrossSectionCurve transformed(const CrossSectionCurve& c, double scale, double shift) {
    std::vector<profiles::Sample> out;
    for (const auto& s : c.samples()) out.push_back({s.E + shift, s.sigma * scale});
    return CrossSectionCurve(std::move(out));
}

TEST(InitialGuess, AsymmetricWithinQuarter) {
    const auto g = initial_guess_fano(asymmetric_curve());
    EXPECT_LT(rel(g.E_r, kAsymmetric.E_r), 0.25);
    EXPECT_LT(rel(g.Gamma, kAsymmetric.Gamma), 0.25);
    EXPECT_LT(rel(g.q, kAsymmetric.q), 0.25);
    EXPECT_LT(rel(g.sigma0, kAsymmetric.sigma0), 0.25);
}

TEST(InitialGuess, LorentzianGivesCappedQ) {
    const auto c = profiles::synthesize(BreitWignerParameters{2.0, 0.3, 1.0},
                                        profiles::linear_grid(0.0, 4.0, 200), 0.0, 0);
    FitSettings s;
    const auto g = initial_guess_fano(c, s);
    EXPECT_EQ(std::abs(g.q), s.guess_q_cap);
    EXPECT_NEAR(g.E_r, 2.0, 0.02);
    EXPECT_NEAR(g.Gamma, 0.3, 0.03);
}

TEST(InitialGuess, NegativeQWhenPeakPrecedesDip) {
    const FanoParameters p{2.0, 0.3, -2.5, 1.0};
    const auto g = initial_guess_fano(profiles::synthesize(p, profiles::linear_grid(0.0, 4.0, 200), 0.0, 0));
    EXPECT_LT(g.q, 0.0);
    EXPECT_LT(rel(g.q, p.q), 0.25);
}

TEST(InitialGuess, DegenerateAndShortCurves) {
    std::vector<profiles::Sample> rising;
    for (int i = 0; i < 20; ++i) rising.push_back({0.1 * i, 1.0 + i});
    const CrossSectionCurve monotone(rising);
    EXPECT_THROW(initial_guess_fano(monotone), DegenerateCurveError);
    EXPECT_THROW(initial_guess_breit_wigner(monotone), DegenerateCurveError);
    EXPECT_THROW(fit(monotone, Model::fano), DegenerateCurveError);
    const CrossSectionCurve tiny({{0.0, 1.0}, {1.0, 2.0}, {2.0, 1.0}});
    EXPECT_THROW(fit(tiny, Model::fano), GridError);
}

TEST(Fit, AsymmetricNoiselessRoundTrip) {
    const auto report = fit(asymmetric_curve(), Model::fano);
    ASSERT_TRUE(report.converged);
    const auto& p = std::get<FanoParameters>(report.params);
    EXPECT_LT(rel(p.E_r, kAsymmetric.E_r), 1e-6);
    EXPECT_LT(rel(p.Gamma, kAsymmetric.Gamma), 1e-6);
    EXPECT_LT(rel(p.q, kAsymmetric.q), 1e-6);
    EXPECT_LT(rel(p.sigma0, kAsymmetric.sigma0), 1e-6);
    EXPECT_FALSE(report.lorentzian_limit);
    EXPECT_LE(report.iterations, 200);
}

TEST(Fit, AsymmetricNoisySeedSeven) {
    const auto report = fit(asymmetric_curve(0.01, 7), Model::fano);
    ASSERT_TRUE(report.converged);
    const auto& p = std::get<FanoParameters>(report.params);
    EXPECT_LT(rel(p.E_r, kAsymmetric.E_r), 0.02);
    EXPECT_LT(rel(p.Gamma, kAsymmetric.Gamma), 0.02);
    EXPECT_LT(rel(p.q, kAsymmetric.q), 0.02);
}

TEST(Fit, LorentzianDataDrivesQToLargeValues) {
    const auto c = profiles::synthesize(BreitWignerParameters{2.0, 0.3, 1.0},
                                        profiles::linear_grid(2.0 - 2.4, 2.0 + 2.4, 200), 0.0, 0);
    const auto report = fit(c, Model::fano);
    EXPECT_TRUE(report.converged);
    EXPECT_GT(std::abs(std::get<FanoParameters>(report.params).q), 1e3);
    EXPECT_LT(report.sse, 1e-8 * sum_sigma_squared(c));
    EXPECT_TRUE(report.lorentzian_limit);
}

TEST(Fit, RecoversNegativeQ) {
    const FanoParameters truth{2.0, 0.3, -2.5, 1.2};
    const auto c = profiles::synthesize(truth, profiles::linear_grid(0.0, 4.0, 200), 0.0, 0);
    const auto p = std::get<FanoParameters>(fit(c, Model::fano).params);
    EXPECT_LT(rel(p.q, truth.q), 1e-8);
    EXPECT_LT(rel(p.Gamma, truth.Gamma), 1e-8);
}

TEST(Fit, BreitWignerOnBreitWignerData) {
    const BreitWignerParameters truth{-1.0, 0.7, 3.0};
    const auto c = profiles::synthesize(truth, profiles::linear_grid(-6.0, 4.0, 150), 0.0, 0);
    const auto report = fit(c, Model::breit_wigner);
    ASSERT_TRUE(report.converged);
    const auto& p = std::get<BreitWignerParameters>(report.params);
    EXPECT_LT(std::abs(p.E_r - truth.E_r), 1e-9);
    EXPECT_LT(rel(p.Gamma, truth.Gamma), 1e-9);
    EXPECT_LT(rel(p.sigma0, truth.sigma0), 1e-9);
}

TEST(Fit, RoundTripIdentifiability) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> Er(1.0, 3.0), G(0.1, 0.5), Q(0.5, 8.0), S(0.5, 2.0);
    for (int i = 0; i < 100; ++i) {
        const FanoParameters truth{Er(rng), G(rng), Q(rng), S(rng)};
        const auto grid = profiles::linear_grid(truth.E_r - 8 * truth.Gamma, truth.E_r + 8 * truth.Gamma, 200);
        const auto report = fit(profiles::synthesize(truth, grid, 0.0, 0), Model::fano);
        const auto& p = std::get<FanoParameters>(report.params);
        EXPECT_TRUE(report.converged) << i;
        EXPECT_LT(rel(p.E_r, truth.E_r), 1e-6) << i;
        EXPECT_LT(rel(p.Gamma, truth.Gamma), 1e-6) << i;
        EXPECT_LT(rel(p.q, truth.q), 1e-6) << i;
        EXPECT_LT(rel(p.sigma0, truth.sigma0), 1e-6) << i;
    }
}

TEST(Fit, ResidualOptimality) {
    for (std::uint64_t seed : {3u, 7u, 11u}) {
        const auto c = asymmetric_curve(0.01, seed);
        const auto report = fit(c, Model::fano);
        const auto best = std::get<FanoParameters>(report.params);
        for (int k = 0; k < 4; ++k) {
            for (double factor : {0.99, 1.01}) {
                FanoParameters p = best;
                double* field[] = {&p.E_r, &p.Gamma, &p.q, &p.sigma0};
                *field[k] *= factor;
                EXPECT_GE(sum_squared_residuals(c, p), report.sse) << "param " << k << " x" << factor;
            }
        }
    }
}

TEST(Fit, ScaleEquivariance) {
    const auto base_curve = asymmetric_curve(0.01, 7);
    const auto base = fit(base_curve, Model::fano);
    for (double c : {0.37, 2.0, 41.5}) {
        const auto scaled = fit(transformed(base_curve, c, 0.0), Model::fano);
        const auto& p0 = std::get<FanoParameters>(base.params);
        const auto& p1 = std::get<FanoParameters>(scaled.params);
        EXPECT_LT(rel(p1.E_r, p0.E_r), 1e-9) << c;
        EXPECT_LT(rel(p1.Gamma, p0.Gamma), 1e-9) << c;
        EXPECT_LT(rel(p1.q, p0.q), 1e-9) << c;
        EXPECT_LT(rel(p1.sigma0, c * p0.sigma0), 1e-9) << c;
        EXPECT_LT(rel(scaled.sse, c * c * base.sse), 1e-9) << c;
    }
}

TEST(Fit, EnergyShiftEquivariance) {
    const auto base_curve = asymmetric_curve(0.01, 7);
    const auto base = fit(base_curve, Model::fano);
    for (double d : {-0.4, 0.75, 10.0}) {
        const auto shifted = fit(transformed(base_curve, 1.0, d), Model::fano);
        const auto& p0 = std::get<FanoParameters>(base.params);
        const auto& p1 = std::get<FanoParameters>(shifted.params);
        EXPECT_NEAR(p1.E_r, p0.E_r + d, 1e-9 * std::abs(p0.E_r + d)) << d;
        EXPECT_LT(rel(p1.Gamma, p0.Gamma), 1e-9) << d;
        EXPECT_LT(rel(p1.q, p0.q), 1e-9) << d;
        EXPECT_LT(rel(p1.sigma0, p0.sigma0), 1e-9) << d;
    }
}

TEST(Fit, Deterministic) {
    const auto c = asymmetric_curve(0.01, 5);
    const auto a = fit(c, Model::fano);
    const auto b = fit(c, Model::fano);
    const auto& pa = std::get<FanoParameters>(a.params);
    const auto& pb = std::get<FanoParameters>(b.params);
    EXPECT_EQ(pa.E_r, pb.E_r);
    EXPECT_EQ(pa.Gamma, pb.Gamma);
    EXPECT_EQ(pa.q, pb.q);
    EXPECT_EQ(pa.sigma0, pb.sigma0);
    EXPECT_EQ(a.sse, b.sse);
    EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Fit, IterationCapReportsBestSoFar) {
    FitSettings s;
    s.max_iterations = 1;
    const auto c = asymmetric_curve(0.01, 7);
    const auto report = fit(c, Model::fano, FanoParameters{1.5, 0.4, 2.0, 1.5}, s);
    EXPECT_FALSE(report.converged);
    EXPECT_EQ(report.iterations, 1);
    EXPECT_LT(report.sse, sum_squared_residuals(c, FanoParameters{1.5, 0.4, 2.0, 1.5}));
    EXPECT_NEAR(report.sse, sum_squared_residuals(c, report.params), 1e-12 * report.sse);
}

TEST(Fit, GuessModelMismatch) {
    EXPECT_THROW(fit(asymmetric_curve(), Model::breit_wigner, FanoParameters{1.6, 0.2, 3.0, 1.0}), DomainError);
    const auto r = fit(asymmetric_curve(), Model::fano, FanoParameters{1.6, 0.3, 3.0, 1.2});
    EXPECT_TRUE(std::holds_alternative<FanoParameters>(r.initial_guess));
    EXPECT_EQ(std::get<FanoParameters>(r.initial_guess).q, 3.0);
}

TEST(CompareModels, AsymmetricContrast) {
    const auto [fano_fit, bw_fit] = compare_models(asymmetric_curve());
    EXPECT_EQ(fano_fit.model, Model::fano);
    EXPECT_EQ(bw_fit.model, Model::breit_wigner);
    EXPECT_GT(bw_fit.sse, 10.0 * fano_fit.sse);
    EXPECT_GT(bw_fit.sse, 1.0);
}

TEST(CompareModels, LorentzianNestsInBoth) {
    const auto c = profiles::synthesize(BreitWignerParameters{2.0, 0.3, 1.0},
                                        profiles::linear_grid(0.0, 4.0, 200), 0.0, 0);
    const auto [f, b] = compare_models(c);
    EXPECT_LT(f.sse, 1e-8 * sum_sigma_squared(c));
    EXPECT_LT(b.sse, 1e-20 * sum_sigma_squared(c));
}

TEST(CompareModels, WindowResonanceDefeatsBreitWigner) {
    const auto c = profiles::synthesize(FanoParameters{2.0, 0.3, 0.0, 1.0},
                                        profiles::linear_grid(0.0, 4.0, 200), 0.0, 0);
    const auto [f, b] = compare_models(c);
    EXPECT_LT(f.sse, 1e-20 * sum_sigma_squared(c));
    EXPECT_GT(b.sse, 0.01 * sum_sigma_squared(c));
}

TEST(Derivatives, MatchCentralDifferences) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> E(0.0, 4.0);
    const Theta fano_theta = to_theta(FanoParameters{1.63, 0.25, 4.0, 1.0});
    const Theta fano_neg = to_theta(FanoParameters{2.1, 0.6, -1.3, 0.4});
    const Theta bw_theta = to_theta(BreitWignerParameters{1.7, 0.3, 16.0});
    for (const auto& [model, theta] : {std::pair{Model::fano, fano_theta}, std::pair{Model::fano, fano_neg},
                                       std::pair{Model::breit_wigner, bw_theta}}) {
        for (int i = 0; i < 100; ++i) {
            const double e = E(rng);
            const Theta analytic = model_gradient(model, theta, e);
            double scale = 0.0;
            for (double g : analytic) scale = std::max(scale, std::abs(g));
            for (std::size_t k = 0; k < parameter_count(model); ++k) {
                auto f = [&, k](double v) {
                    Theta t = theta;
                    t[k] = v;
                    return model_value(model, t, e);
                };
                const double h = 1e-5 * std::max(1.0, std::abs(theta[k]));
                const double numeric = testing::central_difference(f, theta[k], h);
                EXPECT_LE(std::abs(analytic[k] - numeric), 1e-6 * std::max(std::abs(numeric), scale))
                    << to_string(model) << " k=" << k << " E=" << e;
            }
        }
    }
}

TEST(Parameterisation, RoundTrip) {
    const FanoParameters p{1.63, 0.25, -4.0, 1.7};
    const auto back = std::get<FanoParameters>(from_theta(Model::fano, to_theta(p)));
    EXPECT_NEAR(back.E_r, p.E_r, 1e-15);
    EXPECT_NEAR(back.Gamma, p.Gamma, 1e-15);
    EXPECT_EQ(back.q, p.q);
    EXPECT_NEAR(back.sigma0, p.sigma0, 1e-14);
    for (double e : {0.5, 1.63, 3.0}) {
        EXPECT_NEAR(model_value(Model::fano, to_theta(p), e), profiles::fano(e, p), 1e-13);
    }
}

}  // namespace
}  // namespace efimovkit::fit
