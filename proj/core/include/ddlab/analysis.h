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

#ifndef DDLAB_ANALYSIS_H
#define DDLAB_ANALYSIS_H

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddlab/experiments.h"
#include "ddlab/random.h"

namespace ddlab {

struct CurvePoint {
    double n = 0;
    double fidelity = 0;
    double ci_halfwidth = 0;  // 2σ
    int samples = 1;
};

/// Fidelity versus pulse count. N strictly increasing, fidelities in [0, 1].
struct FidelityCurve {
    std::vector<CurvePoint> points;

    void validate() const;
};

enum class FitVariant { AS_WRITTEN, SELF_CONSISTENT };

std::string_view fit_variant_name(FitVariant v);
FitVariant parse_fit_variant(std::string_view s);

/// f(N) = e^{−N/λ} cos(Nγ) + e^{−N/α}, written with u = 1/λ and v = 1/α so
/// that infinite decay constants are the boundary value 0.
double decay_shape(double n, double inv_lambda, double gamma, double inv_alpha);

/// F(N) = c·f(N) + c0 with c, c0 pinned by (F0, F_Nmax):
///   SELF_CONSISTENT  c = (F_Nmax − F0)/(f(N_max) − 2), c0 = F0 − 2c
///   AS_WRITTEN       c = (F_Nmax − F0)/(f(N_max) − 1), c0 = F0 − c
struct FitResult {
    FitVariant variant = FitVariant::SELF_CONSISTENT;
    double F0 = 1;
    double F_Nmax = 1;
    double n_max = 0;
    double lambda = 0;  // +inf when lambda_infinite
    double alpha = 0;   // +inf when alpha_infinite
    double gamma = 0;
    double c = 0;
    double c0 = 1;
    double residual_rms = 0;
    /// Over (λ, 1/α, γ).
    std::array<std::array<double, 3>, 3> covariance{};
    bool alpha_infinite = false;
    bool gamma_zero = false;
    bool lambda_infinite = false;
    /// Which nested model the selection step kept: "full", "gamma_zero",
    /// "alpha_infinite", "exponential" or "constant".
    std::string model = "full";

    double inverse_lambda() const;
    double inverse_alpha() const;
    double evaluate(double n) const;
    /// Recomputes c and c0 from the endpoints and shape parameters.
    void apply_constraint();

    /// A result rebuilt from tabulated values. The uncertainties are 2σ,
    /// as in the source tables; α = +inf marks an infinite constant.
    static FitResult from_parameters(FitVariant variant, double F0, double F_Nmax, double n_max, double lambda,
                                     double alpha, double gamma, double lambda_2sigma = 0, double alpha_2sigma = 0,
                                     double gamma_2sigma = 0);
};

struct FitOptions {
    /// After the pinned-endpoint multi-start, refine F0 and F_Nmax as well.
    bool refine_endpoints = true;
    /// Choose among the nested models (γ = 0, 1/α = 0) by BIC.
    bool model_selection = true;
    /// Weight residuals by 1/σ, σ = CI halfwidth / 2 (only when every point
    /// has a positive halfwidth). Off by default: the model is often
    /// misspecified and the weights then amplify the misfit where σ is small.
    bool weighted = false;
    int max_iterations = 200;
};

/// Throws InvalidInput for fewer than 6 points and FitError when no start
/// converges.
FitResult fit_decay(const FidelityCurve &curve, FitVariant variant = FitVariant::SELF_CONSISTENT,
                    const FitOptions &options = {});

/// Synthetic curve from a fit's model, optionally with per-point
/// Binomial(shots, F)/shots noise (shots = 0: exact). CI halfwidths are the
/// binomial 2σ.
FidelityCurve synthesize_curve(const FitResult &model, const std::vector<double> &n_values, int shots,
                               RandomStream *rng = nullptr);

struct IntersectionResult {
    bool found = false;
    double t_int = 0;
    double two_sigma = 0;
    int resamples_with_crossing = 0;
    std::string diagnostic;
};

/// First root of F_DD(N) − F_free(N) for N > n_transient up to the larger
/// N_max, by scanning and bisection. The spread comes from Gaussian
/// resampling of (λ, 1/α, γ) with each fit's covariance.
IntersectionResult intersection_time(const FitResult &fit_free, const FitResult &fit_dd, int resamples,
                                     RandomStream &rng, double n_transient = 5);

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double slope_se = 0;
    double intercept_se = 0;
};

/// Ordinary least squares. Throws InvalidInput for fewer than 2 points or
/// constant x.
LinearFit linear_fit(const std::vector<double> &x, const std::vector<double> &y);

enum class BoundMeasure { SQRT_ONE_MINUS_F, ONE_MINUS_SQRT_F };

std::string_view bound_measure_name(BoundMeasure m);
BoundMeasure parse_bound_measure(std::string_view s);

struct BoundRow {
    int n = 0;
    double slope_a = 0;
    double intercept = 0;
    double slope_se = 0;
    int points_used = 0;
};

struct BoundAnalysis {
    BoundMeasure measure = BoundMeasure::SQRT_ONE_MINUS_F;
    std::vector<BoundRow> rows;
    /// OLS of the per-N intercepts on log N (needs two or more rows).
    std::optional<LinearFit> intercept_vs_log_n;
    double c = 0;  // rad/ns², see bound_constant
    int excluded_unit_fidelity = 0;
    int grid_points = 0;
    /// max over the grid of (1 − √F) / (2cτ²N), τ in ns; ≤ 1 means the
    /// inequality holds everywhere.
    double worst_bound_ratio = 0;
    /// Same with √(1 − F) on the left.
    double worst_bound_ratio_sqrt = 0;
    bool inequality_holds = false;
};

/// c = (n_c − 1)/4 · ‖H_SB‖ · (2‖H_0 − tr(H_0)/d‖ + ‖H_SB‖), H_0 = H_S + H_B,
/// for a sequence whose label product is the identity every n_c labels.
/// Valid at N a multiple of n_c.
double bound_constant(const SpinBathModel &bath, int cycle_length);

/// Per-N regression of log(measure) on log τ (τ in slot units), and the
/// hard inequality 1 − √F ≤ 2cτ²N. F = 1 points are dropped and counted.
BoundAnalysis bound_analysis(const BoundGrid &grid, double c, double slot_ns,
                             BoundMeasure measure = BoundMeasure::SQRT_ONE_MINUS_F);

}  // namespace ddlab

#endif
