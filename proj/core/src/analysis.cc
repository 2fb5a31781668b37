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

#include "ddlab/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "ddlab/error.h"

namespace ddlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Parameter vector: u = 1/λ, v = 1/α, γ, F0, F_Nmax.
enum { kU, kV, kG, kF0, kFN, kNumParams };
using Params = std::array<double, kNumParams>;
using Mask = std::array<bool, kNumParams>;

double constraint_denominator(FitVariant variant, double shape_at_max) {
    return shape_at_max - (variant == FitVariant::SELF_CONSISTENT ? 2.0 : 1.0);
}

struct Model {
    FitVariant variant;
    double n_max;

    // Returns false when the constraint is singular.
    bool coefficients(const Params &p, double &c, double &c0) const {
        double den = constraint_denominator(variant, decay_shape(n_max, p[kU], p[kG], p[kV]));
        if (std::abs(den) < 1e-12) return false;
        c = (p[kFN] - p[kF0]) / den;
        c0 = variant == FitVariant::SELF_CONSISTENT ? p[kF0] - 2 * c : p[kF0] - c;
        return std::isfinite(c) && std::isfinite(c0);
    }
};

struct Problem {
    std::vector<double> n, y, w;
    Model model;
    double gamma_max;

    int size() const {
        return static_cast<int>(n.size());
    }

    bool residuals(const Params &p, Eigen::VectorXd &r) const {
        double c, c0;
        if (!model.coefficients(p, c, c0)) return false;
        r.resize(size());
        for (int i = 0; i < size(); ++i) {
            r(i) = (c * decay_shape(n[i], p[kU], p[kG], p[kV]) + c0 - y[i]) * w[i];
        }
        return r.allFinite();
    }

    double cost(const Params &p) const {
        Eigen::VectorXd r;
        if (!residuals(p, r)) return kInf;
        return r.squaredNorm();
    }

    Params project(Params p) const {
        p[kU] = std::clamp(p[kU], 0.0, 10.0);
        p[kV] = std::clamp(p[kV], 0.0, 10.0);
        p[kG] = std::clamp(p[kG], 0.0, gamma_max);
        p[kF0] = std::clamp(p[kF0], 0.0, 1.0);
        p[kFN] = std::clamp(p[kFN], 0.0, 1.0);
        return p;
    }

    // Central-difference Jacobian over the free parameters.
    bool jacobian(const Params &p, const std::vector<int> &free, Eigen::MatrixXd &j) const {
        j.resize(size(), static_cast<Eigen::Index>(free.size()));
        Eigen::VectorXd rp, rm;
        for (std::size_t k = 0; k < free.size(); ++k) {
            int idx = free[k];
            double h = 1e-7 * std::max(std::abs(p[idx]), idx <= kG ? 1e-2 : 1.0);
            Params a = p, b = p;
            a[idx] += h;
            b[idx] -= h;
            if (!residuals(a, rp) || !residuals(b, rm)) return false;
            j.col(static_cast<Eigen::Index>(k)) = (rp - rm) / (2 * h);
        }
        return true;
    }
};

struct Fit {
    Params p{};
    Mask mask{};
    double cost = kInf;
};

std::vector<int> free_indices(const Mask &mask) {
    std::vector<int> out;
    for (int i = 0; i < kNumParams; ++i) {
        if (mask[i]) out.push_back(i);
    }
    return out;
}

// Levenberg–Marquardt with Marquardt scaling and projection onto the box.
Fit levenberg_marquardt(const Problem &prob, Params start, const Mask &mask, int max_iter) {
    Fit fit;
    fit.mask = mask;
    fit.p = prob.project(start);
    fit.cost = prob.cost(fit.p);
    if (!std::isfinite(fit.cost)) return fit;
    auto free = free_indices(mask);
    if (free.empty()) return fit;
    double mu = 1e-3;
    Eigen::VectorXd r;
    Eigen::MatrixXd j;
    for (int it = 0; it < max_iter; ++it) {
        if (!prob.residuals(fit.p, r) || !prob.jacobian(fit.p, free, j)) break;
        Eigen::MatrixXd a = j.transpose() * j;
        Eigen::VectorXd g = j.transpose() * r;
        // Parameters pinned at a bound with the descent direction pointing
        // outward are held fixed for this step.
        for (std::size_t k = 0; k < free.size(); ++k) {
            auto kk = static_cast<Eigen::Index>(k);
            Params probe = fit.p;
            probe[free[k]] -= g(kk) * 1e-12 / std::max(std::abs(g(kk)), 1e-300);
            if (prob.project(probe)[free[k]] == fit.p[free[k]] && g(kk) != 0) {
                a.row(kk).setZero();
                a.col(kk).setZero();
                a(kk, kk) = 1;
                g(kk) = 0;
            }
        }
        bool improved = false;
        for (int tries = 0; tries < 30; ++tries) {
            Eigen::MatrixXd damped = a;
            for (Eigen::Index k = 0; k < a.rows(); ++k) damped(k, k) += mu * std::max(a(k, k), 1e-12);
            Eigen::VectorXd step = damped.ldlt().solve(-g);
            if (!step.allFinite()) {
                mu *= 10;
                continue;
            }
            Params trial = fit.p;
            for (std::size_t k = 0; k < free.size(); ++k) trial[free[k]] += step(static_cast<Eigen::Index>(k));
            trial = prob.project(trial);
            double c = prob.cost(trial);
            if (c < fit.cost) {
                double gain = fit.cost - c;
                fit.p = trial;
                fit.cost = c;
                mu = std::max(mu / 3, 1e-12);
                improved = true;
                if (gain <= 1e-15 * std::max(fit.cost, 1e-300) || gain < 1e-32) it = max_iter;
                break;
            }
            mu *= 4;
            if (mu > 1e16) break;
        }
        if (!improved) break;
    }
    return fit;
}

Mask make_mask(bool gamma_free, bool alpha_free, bool endpoints_free) {
    return {true, alpha_free, gamma_free, endpoints_free, endpoints_free};
}

const char *model_name(const Mask &m) {
    if (m[kG] && m[kV]) return "full";
    if (!m[kG] && m[kV]) return "gamma_zero";
    if (m[kG] && !m[kV]) return "alpha_infinite";
    return "exponential";
}

long long gcd_of_grid(const std::vector<double> &n) {
    long long g = 0;
    for (double x : n) {
        if (std::abs(x - std::round(x)) > 1e-9) return 0;
        g = std::gcd(g, std::llabs(static_cast<long long>(std::llround(x))));
    }
    return g;
}

// Maps γ onto [0, γ_max] through the aliasing γ → 2γ_max − γ, γ → γ + 2γ_max.
double fold_gamma(double g, double gamma_max) {
    double period = 2 * gamma_max;
    g = std::fmod(std::abs(g), period);
    return g > gamma_max ? period - g : g;
}

// Covariance of the free parameters, scaled by the residual variance.
Eigen::MatrixXd parameter_covariance(const Problem &prob, const Fit &fit) {
    auto free = free_indices(fit.mask);
    Eigen::MatrixXd j;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(kNumParams, kNumParams);
    if (free.empty() || !prob.jacobian(fit.p, free, j)) return cov;
    int dof = prob.size() - static_cast<int>(free.size());
    double s2 = dof > 0 ? fit.cost / dof : 0.0;
    Eigen::MatrixXd a = j.transpose() * j;
    Eigen::MatrixXd inv = a.completeOrthogonalDecomposition().pseudoInverse() * s2;
    for (std::size_t a1 = 0; a1 < free.size(); ++a1) {
        for (std::size_t b1 = 0; b1 < free.size(); ++b1) {
            cov(free[a1], free[b1]) = inv(static_cast<Eigen::Index>(a1), static_cast<Eigen::Index>(b1));
        }
    }
    return cov;
}

}  // namespace

void FidelityCurve::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto &p = points[i];
        if (!std::isfinite(p.n) || (i > 0 && !(p.n > points[i - 1].n))) {
            throw InvalidInput("FidelityCurve: N must be strictly increasing");
        }
        if (!(p.fidelity >= 0 && p.fidelity <= 1)) {
            throw InvalidInput("FidelityCurve: fidelities must lie in [0, 1]");
        }
        if (!(p.ci_halfwidth >= 0)) {
            throw InvalidInput("FidelityCurve: CI halfwidths must be non-negative");
        }
    }
}

std::string_view fit_variant_name(FitVariant v) {
    return v == FitVariant::AS_WRITTEN ? "AS_WRITTEN" : "SELF_CONSISTENT";
}

FitVariant parse_fit_variant(std::string_view s) {
    if (s == "AS_WRITTEN") return FitVariant::AS_WRITTEN;
    if (s == "SELF_CONSISTENT") return FitVariant::SELF_CONSISTENT;
    throw InvalidInput("unknown fit variant '" + std::string(s) + "'");
}

double decay_shape(double n, double inv_lambda, double gamma, double inv_alpha) {
    return std::exp(-n * inv_lambda) * std::cos(n * gamma) + std::exp(-n * inv_alpha);
}

double FitResult::inverse_lambda() const {
    return lambda_infinite || std::isinf(lambda) ? 0.0 : 1.0 / lambda;
}

double FitResult::inverse_alpha() const {
    return alpha_infinite || std::isinf(alpha) ? 0.0 : 1.0 / alpha;
}

double FitResult::evaluate(double n) const {
    return c * decay_shape(n, inverse_lambda(), gamma, inverse_alpha()) + c0;
}

void FitResult::apply_constraint() {
    double den = constraint_denominator(variant, decay_shape(n_max, inverse_lambda(), gamma, inverse_alpha()));
    if (std::abs(den) < 1e-12) {
        throw InvalidInput("FitResult: the " + std::string(fit_variant_name(variant)) +
                           " constraint is singular for these parameters");
    }
    c = (F_Nmax - F0) / den;
    c0 = variant == FitVariant::SELF_CONSISTENT ? F0 - 2 * c : F0 - c;
}

FitResult FitResult::from_parameters(FitVariant variant, double F0, double F_Nmax, double n_max, double lambda,
                                     double alpha, double gamma, double lambda_2sigma, double alpha_2sigma,
                                     double gamma_2sigma) {
    if (!(lambda > 0) || !(alpha > 0) || !(gamma >= 0) || !(n_max > 0)) {
        throw InvalidInput("FitResult::from_parameters: need λ > 0, α > 0, γ >= 0, N_max > 0");
    }
    FitResult r;
    r.variant = variant;
    r.F0 = F0;
    r.F_Nmax = F_Nmax;
    r.n_max = n_max;
    r.lambda = lambda;
    r.alpha = alpha;
    r.gamma = gamma;
    r.lambda_infinite = std::isinf(lambda);
    r.alpha_infinite = std::isinf(alpha);
    r.gamma_zero = gamma == 0;
    double s_l = lambda_2sigma / 2;
    double s_v = r.alpha_infinite ? 0.0 : (alpha_2sigma / 2) / (alpha * alpha);
    double s_g = gamma_2sigma / 2;
    r.covariance[0][0] = s_l * s_l;
    r.covariance[1][1] = s_v * s_v;
    r.covariance[2][2] = s_g * s_g;
    r.model = r.gamma_zero ? (r.alpha_infinite ? "exponential" : "gamma_zero")
                           : (r.alpha_infinite ? "alpha_infinite" : "full");
    r.apply_constraint();
    return r;
}

FitResult fit_decay(const FidelityCurve &curve, FitVariant variant, const FitOptions &options) {
    curve.validate();
    if (curve.points.size() < 6) {
        throw InvalidInput("fit_decay: at least 6 points are required");
    }
    Problem prob;
    prob.model = {variant, curve.points.back().n};
    bool weighted = options.weighted && std::all_of(curve.points.begin(), curve.points.end(),
                                [](const CurvePoint &p) { return p.ci_halfwidth > 0; });
    for (const auto &p : curve.points) {
        prob.n.push_back(p.n);
        prob.y.push_back(p.fidelity);
        prob.w.push_back(weighted ? 2.0 / p.ci_halfwidth : 1.0);
    }
    // On a grid with spacing s, γ and γ + 2π/s are indistinguishable, and γ
    // and 2π/s − γ as well.
    long long g = gcd_of_grid(prob.n);
    prob.gamma_max = g > 0 ? std::numbers::pi / static_cast<double>(g) : std::numbers::pi;

    FitResult r;
    r.variant = variant;
    r.n_max = prob.model.n_max;
    double y0 = prob.y.front();
    double yn = prob.y.back();

    double spread = 0;
    for (double y : prob.y) spread = std::max(spread, std::abs(y - y0));
    if (spread <= 1e-12) {
        r.F0 = r.F_Nmax = y0;
        r.lambda = r.alpha = kInf;
        r.gamma = 0;
        r.lambda_infinite = r.alpha_infinite = r.gamma_zero = true;
        r.c = 0;
        r.c0 = y0;
        r.residual_rms = 0;
        r.model = "constant";
        return r;
    }

    const double lambda_starts[] = {10, 50, 100, 500};
    const double gamma_starts[] = {0, 0.2, 0.5, 0.8};
    const double inv_alpha_starts[] = {0, 1e-3, 1e-2};

    auto fit_mask = [&](bool gamma_free, bool alpha_free) {
        Fit best;
        for (double l0 : lambda_starts) {
            for (double g0 : gamma_starts) {
                if (!gamma_free && g0 != 0) continue;
                for (double v0 : inv_alpha_starts) {
                    if (!alpha_free && v0 != 0) continue;
                    Params start{1 / l0, v0, fold_gamma(g0, prob.gamma_max), y0, yn};
                    Fit f = levenberg_marquardt(prob, start, make_mask(gamma_free, alpha_free, false),
                                                options.max_iterations);
                    bool tie = std::isfinite(best.cost) && std::abs(f.cost - best.cost) <= 1e-12 * best.cost;
                    if (tie ? f.p[kG] < best.p[kG] : f.cost < best.cost) {
                        best = f;
                    }
                }
            }
        }
        if (options.refine_endpoints && std::isfinite(best.cost)) {
            Fit polished = levenberg_marquardt(prob, best.p, make_mask(gamma_free, alpha_free, true),
                                               options.max_iterations);
            if (polished.cost <= best.cost) best = polished;
        }
        return best;
    };

    struct Candidate {
        Fit fit;
        double bic;
    };
    std::vector<Candidate> candidates;
    const std::array<std::pair<bool, bool>, 4> masks{{{true, true}, {false, true}, {true, false}, {false, false}}};
    int n = prob.size();
    for (auto [gf, af] : masks) {
        if (!options.model_selection && !(gf && af)) continue;
        Fit f = fit_mask(gf, af);
        if (!std::isfinite(f.cost)) continue;
        int k = static_cast<int>(free_indices(f.mask).size());
        double bic = n * std::log(std::max(f.cost / n, 1e-300)) + k * std::log(static_cast<double>(n));
        candidates.push_back({f, bic});
    }
    if (candidates.empty()) {
        throw FitError("fit_decay: no starting point converged", kInf);
    }
    auto best_it = std::min_element(candidates.begin(), candidates.end(),
                                    [](const Candidate &a, const Candidate &b) { return a.bic < b.bic; });
    Fit best = best_it->fit;

    // With γ = 0 the two exponentials are interchangeable; report λ ≤ α.
    auto canonicalize = [](Fit &f) {
        if (f.p[kG] == 0 && f.mask[kV] && f.p[kV] > f.p[kU]) std::swap(f.p[kU], f.p[kV]);
    };
    canonicalize(best);

    // Flagged parameters are fixed at their boundary values and the rest
    // refit, so that c and c0 satisfy the constraint with the reported values.
    for (int pass = 0; pass < 2; ++pass) {
        Eigen::MatrixXd cov = parameter_covariance(prob, best);
        bool gamma_flag = best.mask[kG] && (best.p[kG] < 1e-3 || best.p[kG] - 2 * std::sqrt(std::max(cov(kG, kG), 0.0)) <= 0);
        bool alpha_flag = best.mask[kV] && best.p[kV] < 1e-4;
        if (!gamma_flag && !alpha_flag) break;
        Params start = best.p;
        Mask mask = best.mask;
        if (gamma_flag) {
            start[kG] = 0;
            mask[kG] = false;
        }
        if (alpha_flag) {
            start[kV] = 0;
            mask[kV] = false;
        }
        Fit refit = levenberg_marquardt(prob, start, mask, options.max_iterations);
        if (!std::isfinite(refit.cost)) break;
        best = refit;
        canonicalize(best);
    }

    const Params &p = best.p;
    r.F0 = p[kF0];
    r.F_Nmax = p[kFN];
    r.gamma_zero = !best.mask[kG] || p[kG] == 0;
    r.gamma = r.gamma_zero ? 0.0 : p[kG];
    r.alpha_infinite = !best.mask[kV] || p[kV] == 0;
    r.alpha = r.alpha_infinite ? kInf : 1.0 / p[kV];
    r.lambda_infinite = p[kU] <= 0;
    r.lambda = r.lambda_infinite ? kInf : 1.0 / p[kU];
    r.model = model_name(best.mask);
    if (r.gamma_zero && !best.mask[kG] && best.mask[kV]) r.model = "gamma_zero";
    r.residual_rms = [&] {
        Eigen::VectorXd res;
        Problem unweighted = prob;
        std::fill(unweighted.w.begin(), unweighted.w.end(), 1.0);
        unweighted.residuals(p, res);
        return std::sqrt(res.squaredNorm() / n);
    }();
    r.apply_constraint();

    Eigen::MatrixXd cov = parameter_covariance(prob, best);
    // (u, v, γ) → (λ, 1/α, γ): dλ = −du/u².
    std::array<double, 3> scale{r.lambda_infinite ? 0.0 : -1.0 / (p[kU] * p[kU]), 1.0, 1.0};
    std::array<int, 3> idx{kU, kV, kG};
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) r.covariance[a][b] = scale[a] * scale[b] * cov(idx[a], idx[b]);
    }
    return r;
}

FidelityCurve synthesize_curve(const FitResult &model, const std::vector<double> &n_values, int shots,
                               RandomStream *rng) {
    if (shots < 0 || (shots > 0 && rng == nullptr)) {
        throw InvalidInput("synthesize_curve: sampling needs shots > 0 and a random stream");
    }
    FidelityCurve curve;
    for (double n : n_values) {
        double f = std::clamp(model.evaluate(n), 0.0, 1.0);
        CurvePoint pt;
        pt.n = n;
        if (shots > 0) {
            f = static_cast<double>(rng->binomial(static_cast<std::uint64_t>(shots), f)) / shots;
            // Binomial 2σ from the observed value, floored at one count.
            double var = std::max(f * (1 - f), 1.0 / shots) / shots;
            pt.ci_halfwidth = 2 * std::sqrt(var);
            pt.samples = shots;
        }
        pt.fidelity = f;
        curve.points.push_back(pt);
    }
    return curve;
}

namespace {

std::optional<double> first_crossing(const FitResult &a, const FitResult &b, double lo, double hi) {
    auto diff = [&](double n) { return b.evaluate(n) - a.evaluate(n); };
    const double step = 0.25;
    double x0 = lo;
    double d0 = diff(x0);
    if (d0 == 0) return x0;
    for (double x1 = lo + step; x1 <= hi + 1e-12; x1 += step) {
        double d1 = diff(x1);
        if (d1 == 0) return x1;
        if ((d0 < 0) != (d1 < 0)) {
            double l = x0, h = x1, dl = d0;
            for (int it = 0; it < 200 && h - l > 1e-12; ++it) {
                double m = 0.5 * (l + h);
                double dm = diff(m);
                if ((dm < 0) == (dl < 0)) {
                    l = m;
                    dl = dm;
                } else {
                    h = m;
                }
            }
            return 0.5 * (l + h);
        }
        x0 = x1;
        d0 = d1;
    }
    return std::nullopt;
}

FitResult perturbed(const FitResult &f, RandomStream &rng) {
    Eigen::Matrix3d cov;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) cov(a, b) = f.covariance[a][b];
    }
    // PSD square root tolerates the zero rows of fixed parameters.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
    Eigen::Vector3d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::Vector3d z(rng.normal(), rng.normal(), rng.normal());
    Eigen::Vector3d d = es.eigenvectors() * ev.asDiagonal() * z;
    FitResult g = f;
    if (!f.lambda_infinite) g.lambda = std::max(f.lambda + d(0), 1e-6);
    if (!f.alpha_infinite) g.alpha = 1.0 / std::max(f.inverse_alpha() + d(1), 1e-12);
    if (!f.gamma_zero) g.gamma = std::abs(f.gamma + d(2));
    g.apply_constraint();
    return g;
}

}  // namespace

IntersectionResult intersection_time(const FitResult &fit_free, const FitResult &fit_dd, int resamples,
                                     RandomStream &rng, double n_transient) {
    IntersectionResult out;
    double hi = std::max(fit_free.n_max, fit_dd.n_max);
    double lo = n_transient;
    bool identical = true;
    for (double x = lo; x <= hi; x += 1.0) {
        if (std::abs(fit_dd.evaluate(x) - fit_free.evaluate(x)) > 1e-13) {
            identical = false;
            break;
        }
    }
    if (identical) {
        out.diagnostic = "the two fits coincide; no intersection is defined";
        return out;
    }
    auto root = first_crossing(fit_free, fit_dd, lo, hi);
    if (!root) {
        out.diagnostic = "no crossing for N in (" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
        return out;
    }
    out.found = true;
    out.t_int = *root;
    std::vector<double> roots;
    for (int k = 0; k < resamples; ++k) {
        auto a = perturbed(fit_free, rng);
        auto b = perturbed(fit_dd, rng);
        if (auto r = first_crossing(a, b, lo, hi)) roots.push_back(*r);
    }
    out.resamples_with_crossing = static_cast<int>(roots.size());
    if (roots.size() > 1) {
        double mean = std::accumulate(roots.begin(), roots.end(), 0.0) / static_cast<double>(roots.size());
        double ss = 0;
        for (double x : roots) ss += (x - mean) * (x - mean);
        out.two_sigma = 2 * std::sqrt(ss / static_cast<double>(roots.size() - 1));
    }
    if (resamples > 0 && static_cast<int>(roots.size()) < resamples) {
        out.diagnostic = std::to_string(resamples - static_cast<int>(roots.size())) +
                         " resampled curve pairs had no crossing";
    }
    return out;
}

LinearFit linear_fit(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidInput("linear_fit: need two or more (x, y) pairs");
    }
    auto n = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 1e-300 * n)) {
        throw InvalidInput("linear_fit: x values are all equal");
    }
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (x.size() > 2) {
        double sse = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double e = y[i] - (f.intercept + f.slope * x[i]);
            sse += e * e;
        }
        double s2 = sse / (n - 2);
        f.slope_se = std::sqrt(s2 / sxx);
        f.intercept_se = std::sqrt(s2 * (1 / n + mx * mx / sxx));
    }
    return f;
}

std::string_view bound_measure_name(BoundMeasure m) {
    return m == BoundMeasure::SQRT_ONE_MINUS_F ? "sqrt_one_minus_F" : "one_minus_sqrt_F";
}

BoundMeasure parse_bound_measure(std::string_view s) {
    if (s == "sqrt_one_minus_F") return BoundMeasure::SQRT_ONE_MINUS_F;
    if (s == "one_minus_sqrt_F") return BoundMeasure::ONE_MINUS_SQRT_F;
    throw InvalidInput("unknown bound measure '" + std::string(s) + "'");
}

double bound_constant(const SpinBathModel &bath, int cycle_length) {
    if (cycle_length < 1) {
        throw InvalidInput("bound_constant: cycle length must be >= 1");
    }
    bath.validate();
    CMatrix h0 = bath.system_hamiltonian() + bath.bath_hamiltonian();
    Eigen::Index d = h0.rows();
    CMatrix centered = h0 - (h0.trace() / static_cast<double>(d)) * CMatrix::Identity(d, d);
    double hsb = spectral_norm(bath.coupling_hamiltonian());
    return (cycle_length - 1) / 4.0 * hsb * (2 * spectral_norm(centered) + hsb);
}

BoundAnalysis bound_analysis(const BoundGrid &grid, double c, double slot_ns, BoundMeasure measure) {
    if (grid.taus.size() < 3) {
        throw InvalidInput("bound_analysis: at least 3 tau values are required");
    }
    if (grid.fidelity.size() != grid.n_values.size()) {
        throw InvalidInput("bound_analysis: grid shape mismatch");
    }
    BoundAnalysis out;
    out.measure = measure;
    out.c = c;
    std::vector<double> log_n, intercepts;
    for (std::size_t ni = 0; ni < grid.n_values.size(); ++ni) {
        const auto &row = grid.fidelity[ni];
        if (row.size() != grid.taus.size()) {
            throw InvalidInput("bound_analysis: grid shape mismatch");
        }
        int n = grid.n_values[ni];
        std::vector<double> lx, ly;
        for (std::size_t ti = 0; ti < row.size(); ++ti) {
            ++out.grid_points;
            double f = std::clamp(row[ti], 0.0, 1.0);
            double tau_ns = grid.taus[ti] * slot_ns;
            if (n > 0) {
                double rhs = 2 * c * tau_ns * tau_ns * n;
                double lhs = 1 - std::sqrt(f);
                double lhs_sqrt = std::sqrt(1 - f);
                double ratio = rhs > 0 ? lhs / rhs : (lhs > 0 ? kInf : 0.0);
                double ratio_sqrt = rhs > 0 ? lhs_sqrt / rhs : (lhs_sqrt > 0 ? kInf : 0.0);
                out.worst_bound_ratio = std::max(out.worst_bound_ratio, ratio);
                out.worst_bound_ratio_sqrt = std::max(out.worst_bound_ratio_sqrt, ratio_sqrt);
            }
            double m = measure == BoundMeasure::SQRT_ONE_MINUS_F ? std::sqrt(1 - f) : 1 - std::sqrt(f);
            if (f >= 1 || !(m > 0)) {
                ++out.excluded_unit_fidelity;
                continue;
            }
            lx.push_back(std::log(static_cast<double>(grid.taus[ti])));
            ly.push_back(std::log(m));
        }
        if (lx.size() < 2) continue;
        auto lf = linear_fit(lx, ly);
        out.rows.push_back({n, lf.slope, lf.intercept, lf.slope_se, static_cast<int>(lx.size())});
        if (n > 0) {
            log_n.push_back(std::log(static_cast<double>(n)));
            intercepts.push_back(lf.intercept);
        }
    }
    if (log_n.size() >= 2) out.intercept_vs_log_n = linear_fit(log_n, intercepts);
    out.inequality_holds = out.worst_bound_ratio <= 1 + 1e-12;
    return out;
}

}  // namespace ddlab
