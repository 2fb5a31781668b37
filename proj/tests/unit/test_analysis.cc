// Copyright 2026 The ddlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "ddlab/analysis.h"
#include "ddlab/csv.h"
#include "ddlab/error.h"
#include "oracles.h"

namespace {

using namespace ddlab;

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> v;
    for (double n = lo; n <= hi + 1e-9; n += step) v.push_back(n);
    return v;
}

// Written out independently of the library's model code.
double model_oracle(double n, double lambda, double alpha, double gamma, double f0, double fn, double nmax,
                    bool self_consistent) {
    auto f = [&](double x) { return std::exp(-x / lambda) * std::cos(x * gamma) + std::exp(-x / alpha); };
    double c = (fn - f0) / (f(nmax) - (self_consistent ? 2 : 1));
    double c0 = f0 - (self_consistent ? 2 : 1) * c;
    return c * f(n) + c0;
}

TEST(Model, EvaluateMatchesOracle) {
    for (auto v : {FitVariant::SELF_CONSISTENT, FitVariant::AS_WRITTEN}) {
        auto m = FitResult::from_parameters(v, 0.965, 0.556, 592, 28.9, 910, 0.73);
        bool sc = v == FitVariant::SELF_CONSISTENT;
        for (double n : {0.0, 17.0, 300.0, 592.0})
            EXPECT_NEAR(m.evaluate(n), model_oracle(n, 28.9, 910, 0.73, 0.965, 0.556, 592, sc), 1e-12);
        EXPECT_NEAR(m.evaluate(592), 0.556, 1e-12);
    }
    auto sc = FitResult::from_parameters(FitVariant::SELF_CONSISTENT, 0.965, 0.556, 592, 28.9, 910, 0.73);
    EXPECT_NEAR(sc.evaluate(0), 0.965, 1e-12);
    auto aw = FitResult::from_parameters(FitVariant::AS_WRITTEN, 0.965, 0.556, 592, 28.9, 910, 0.73);
    EXPECT_NEAR(aw.evaluate(0), 0.965 + aw.c, 1e-12);
}

TEST(FitDecay, NoiseFreeSelfConsistency) {
    auto truth = FitResult::from_parameters(FitVariant::SELF_CONSISTENT, 0.96, 0.58, 300, 35, 700, 0.6);
    auto curve = synthesize_curve(truth, grid(0, 300, 2), 0);
    auto fit = fit_decay(curve);
    EXPECT_NEAR(fit.lambda / 35, 1, 1e-6);
    EXPECT_NEAR(fit.alpha / 700, 1, 1e-6);
    EXPECT_NEAR(fit.gamma / 0.6, 1, 1e-6);
    EXPECT_NEAR(fit.F0 / 0.96, 1, 1e-6);
    EXPECT_NEAR(fit.F_Nmax / 0.58, 1, 1e-6);
    EXPECT_LT(fit.residual_rms, 1e-8);
    EXPECT_FALSE(fit.alpha_infinite);
    EXPECT_FALSE(fit.gamma_zero);
}

TEST(FitDecay, AsWrittenSelfConsistency) {
    auto truth = FitResult::from_parameters(FitVariant::AS_WRITTEN, 0.7, 0.6, 200, 40, 400, 0.3);
    // F(0) = F0 + c here, which must stay below 1 or the synthetic curve clips
    auto curve = synthesize_curve(truth, grid(0, 200, 1), 0);
    auto fit = fit_decay(curve, FitVariant::AS_WRITTEN);
    EXPECT_NEAR(fit.lambda / 40, 1, 1e-6);
    EXPECT_NEAR(fit.alpha / 400, 1, 1e-6);
    EXPECT_NEAR(fit.gamma / 0.3, 1, 1e-6);
}

TEST(FitDecay, RecoversTabulatedFreeDecayUnderShotNoise) {
    auto truth = FitResult::from_parameters(FitVariant::SELF_CONSISTENT, 0.965, 0.556, 592, 28.9, 910, 0.73);
    RandomStream rng({2024});
    int ok = 0;
    for (int t = 0; t < 10; ++t) {
        auto fit = fit_decay(synthesize_curve(truth, grid(0, 592, 4), 8192, &rng));
        ok += std::abs(fit.lambda - 28.9) < 2.89;
    }
    EXPECT_GE(ok, 9);
}

TEST(FitDecay, PureExponentialSetsFlags) {
    FitResult truth = FitResult::from_parameters(FitVariant::SELF_CONSISTENT, 0.97, 0.55, 400, 60,
                                                 std::numeric_limits<double>::infinity(), 0);
    for (int shots : {0, 8192}) {
        RandomStream rng({7});
        auto fit = fit_decay(synthesize_curve(truth, grid(0, 400, 4), shots, shots ? &rng : nullptr));
        EXPECT_TRUE(fit.gamma_zero) << shots;
        EXPECT_TRUE(fit.alpha_infinite) << shots;
        EXPECT_NEAR(fit.lambda, 60, 3) << shots;
        EXPECT_EQ(fit.gamma, 0.0);
        EXPECT_TRUE(std::isinf(fit.alpha));
    }
}

TEST(FitDecay, ConstantCurveIsDegenerate) {
    FidelityCurve c;
    for (double n : grid(0, 50, 5)) c.points.push_back({n, 0.8, 0, 1});
    auto fit = fit_decay(c);
    EXPECT_TRUE(fit.lambda_infinite);
    EXPECT_EQ(fit.residual_rms, 0.0);
    EXPECT_NEAR(fit.evaluate(25), 0.8, 1e-15);
}

TEST(FitDecay, RejectsBadCurves) {
    FidelityCurve c;
    for (double n : grid(0, 4, 1)) c.points.push_back({n, 0.9, 0, 1});
    EXPECT_THROW(fit_decay(c), InvalidInput);
    c.points.push_back({4, 0.8, 0, 1});
    EXPECT_THROW(fit_decay(c), InvalidInput);
    c.points.back() = {5, 1.2, 0, 1};
    EXPECT_THROW(fit_decay(c), InvalidInput);
}

TEST(Synthesize, HalfwidthAndDeterminism) {
    auto truth = FitResult::from_parameters(FitVariant::SELF_CONSISTENT, 0.9, 0.6, 100, 30, 500, 0);
    RandomStream a({1}), b({1});
    auto ca = synthesize_curve(truth, grid(0, 100, 10), 1000, &a);
    auto cb = synthesize_curve(truth, grid(0, 100, 10), 1000, &b);
    for (std::size_t i = 0; i < ca.points.size(); ++i) {
        EXPECT_EQ(ca.points[i].fidelity, cb.points[i].fidelity);
        double f = ca.points[i].fidelity;
        EXPECT_NEAR(ca.points[i].ci_halfwidth, 2 * std::sqrt(std::max(f * (1 - f), 1e-3) / 1000), 1e-12);
        EXPECT_NEAR(f * 1000, std::round(f * 1000), 1e-9);
    }
}

FitResult table_free() {
    return FitResult::from_parameters(FitVariant::SELF_CONSISTENT, 0.965, 0.556, 592, 28.9, 910, 0.73, 2.4, 0,
                                      0.02);
}
FitResult table_dd() {
    return FitResult::from_parameters(FitVariant::SELF_CONSISTENT, 0.965, 0.531, 592, 88.4,
                                      std::numeric_limits<double>::infinity(), 0, 0.8);
}

TEST(Intersection, TabulatedCurvesCrossNearOneHundred) {
    RandomStream rng({5});
    auto r = intersection_time(table_free(), table_dd(), 1000, rng);
    ASSERT_TRUE(r.found) << r.diagnostic;
    EXPECT_NEAR(r.t_int, 108, 10);
    EXPECT_GT(r.two_sigma, 0);
    // root really is a sign change of the difference
    double d1 = table_dd().evaluate(r.t_int - 0.5) - table_free().evaluate(r.t_int - 0.5);
    double d2 = table_dd().evaluate(r.t_int + 0.5) - table_free().evaluate(r.t_int + 0.5);
    EXPECT_LT(d1 * d2, 0);
}

TEST(Intersection, DdAboveFreeHasNoCrossing) {
    auto dd = FitResult::from_parameters(FitVariant::SELF_CONSISTENT, 0.99, 0.97, 592, 5000,
                                         std::numeric_limits<double>::infinity(), 0);
    RandomStream rng({5});
    auto r = intersection_time(table_free(), dd, 100, rng);
    EXPECT_FALSE(r.found);
    EXPECT_FALSE(r.diagnostic.empty());
}

TEST(Intersection, IdenticalFitsAreDegenerate) {
    RandomStream rng({5});
    auto r = intersection_time(table_free(), table_free(), 100, rng);
    EXPECT_FALSE(r.found);
    EXPECT_NE(r.diagnostic.find("coincide"), std::string::npos);
}

TEST(Intersection, InvariantUnderCommonOffset) {
    auto shift = [](FitResult f, double d) {
        f.F0 += d;
        f.F_Nmax += d;
        f.apply_constraint();
        return f;
    };
    RandomStream r1({9}), r2({9});
    auto a = intersection_time(table_free(), table_dd(), 200, r1);
    auto b = intersection_time(shift(table_free(), -0.03), shift(table_dd(), -0.03), 200, r2);
    ASSERT_TRUE(a.found && b.found);
    EXPECT_NEAR(a.t_int, b.t_int, 1e-6);
}

TEST(LinearFit, ExactLine) {
    auto lf = linear_fit({0, 1, 2, 3}, {1, 3, 5, 7});
    EXPECT_NEAR(lf.slope, 2, 1e-14);
    EXPECT_NEAR(lf.intercept, 1, 1e-14);
    EXPECT_NEAR(lf.slope_se, 0, 1e-12);
    EXPECT_THROW(linear_fit({1}, {1}), InvalidInput);
    EXPECT_THROW(linear_fit({2, 2, 2}, {1, 2, 3}), InvalidInput);
    EXPECT_THROW(linear_fit({1, 2}, {1}), InvalidInput);
}

struct IntervalRow {
    double tau, lambda, t_int;
};

std::vector<IntervalRow> xy4_interval_rows() {
    std::ifstream in(std::string(DDLAB_SOURCE_DIR) + "/fixtures/fits/ibmqx5_pulse_interval.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    auto rows = parse_csv(ss.str());
    std::vector<IntervalRow> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r][0] != "XY4") continue;
        out.push_back({parse_double_field(rows[r][1], "tau"), parse_double_field(rows[r][2], "lambda"),
                       parse_double_field(rows[r][8], "t_int")});
    }
    return out;
}

TEST(LinearFit, IntersectionTimeVersusInterval) {
    auto rows = xy4_interval_rows();
    ASSERT_EQ(rows.size(), 6u);
    std::vector<double> x, y;
    for (auto &r : rows) {
        x.push_back(r.tau);
        y.push_back(r.t_int);
    }
    auto lf = linear_fit(x, y);
    EXPECT_NEAR(lf.slope, -3.5, 0.5);
    EXPECT_NEAR(lf.intercept, 108, 3);
    double s, i;
    oracle::ols(x, y, s, i);
    EXPECT_NEAR(lf.slope, s, 1e-12);
    EXPECT_NEAR(lf.intercept, i, 1e-12);
}

TEST(LinearFit, DecayConstantVersusInterval) {
    auto rows = xy4_interval_rows();
    std::vector<double> x, y;
    for (auto &r : rows) {
        x.push_back(r.tau);
        y.push_back(r.lambda);
    }
    auto lf = linear_fit(x, y);
    EXPECT_NEAR(lf.slope, -4.3, 0.5);
    EXPECT_NEAR(lf.intercept, 88.0, 2);
}

TEST(BoundAnalysis, ThreePointRegressionIsExactOls) {
    BoundGrid g;
    g.taus = {1, 2, 4};
    g.n_values = {8};
    g.fidelity = {{0.9999, 0.9991, 0.9850}};
    for (auto m : {BoundMeasure::SQRT_ONE_MINUS_F, BoundMeasure::ONE_MINUS_SQRT_F}) {
        auto ba = bound_analysis(g, 1e-6, 90, m);
        ASSERT_EQ(ba.rows.size(), 1u);
        std::vector<double> x, y;
        for (int k = 0; k < 3; ++k) {
            double f = g.fidelity[0][k];
            x.push_back(std::log(g.taus[k]));
            y.push_back(std::log(m == BoundMeasure::SQRT_ONE_MINUS_F ? std::sqrt(1 - f) : 1 - std::sqrt(f)));
        }
        double s, i;
        oracle::ols(x, y, s, i);
        EXPECT_NEAR(ba.rows[0].slope_a, s, 1e-12);
        EXPECT_NEAR(ba.rows[0].intercept, i, 1e-12);
        EXPECT_EQ(ba.rows[0].points_used, 3);
    }
}

TEST(BoundAnalysis, UnitFidelityExcludedAndCounted) {
    BoundGrid g;
    g.taus = {1, 2, 3};
    g.n_values = {4, 8};
    g.fidelity = {{1.0, 0.999, 0.998}, {0.99, 0.98, 0.97}};
    auto ba = bound_analysis(g, 1e-6, 90);
    EXPECT_EQ(ba.excluded_unit_fidelity, 1);
    EXPECT_EQ(ba.grid_points, 6);
    ASSERT_EQ(ba.rows.size(), 2u);
    EXPECT_EQ(ba.rows[0].points_used, 2);
    ASSERT_TRUE(ba.intercept_vs_log_n.has_value());
    BoundGrid small = g;
    small.taus = {1, 2};
    for (auto &r : small.fidelity) r.resize(2);
    EXPECT_THROW(bound_analysis(small, 1e-6, 90), InvalidInput);
}

TEST(BoundAnalysis, RatioScalesInverselyWithConstant) {
    BoundGrid g;
    g.taus = {1, 2, 3};
    g.n_values = {4};
    g.fidelity = {{0.999, 0.998, 0.997}};
    auto a = bound_analysis(g, 1e-6, 90), b = bound_analysis(g, 2e-6, 90);
    EXPECT_NEAR(a.worst_bound_ratio, 2 * b.worst_bound_ratio, 1e-12 * a.worst_bound_ratio);
}

TEST(BoundAnalysis, InequalityHoldsForIdealXy4) {
    RandomStream rng({11, stream_tag::kBath});
    auto bath = SpinBathModel::random(1, 1e-4, 2e-4, rng);
    bath.system_detuning = 1e-4;
    auto profile = timing_profile("ibmqx5");
    auto grid = simulate_bound_grid(bath, {SequenceFamily::XY4}, profile, {1, 2, 3}, {4, 8, 16}, type2_states(5));
    double c = bound_constant(bath, 4);
    EXPECT_GT(c, 0);
    auto ba = bound_analysis(grid, c, profile.identity_slot_ns);
    EXPECT_TRUE(ba.inequality_holds) << ba.worst_bound_ratio;
}

TEST(BoundConstant, MatchesNormFormula) {
    SpinBathModel bath = SpinBathModel::pure_dephasing(2e-4, 1e-3);
    bath.system_detuning = 3e-4;
    // ‖H_SB‖ = g; H0 = -δ/2 Z⊗I - ω/2 I⊗Z is traceless with norm (δ+ω)/2
    double want = 3.0 / 4 * 2e-4 * (2 * (3e-4 + 1e-3) / 2 + 2e-4);
    EXPECT_NEAR(bound_constant(bath, 4), want, 1e-18);
    EXPECT_EQ(bound_constant(bath, 1), 0.0);
    EXPECT_THROW(bound_constant(bath, 0), InvalidInput);
}

}  // namespace
