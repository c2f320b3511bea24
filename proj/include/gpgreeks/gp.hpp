/*
 * Copyright 2026 The gpgreeks Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GPGREEKS_GP_HPP
#define GPGREEKS_GP_HPP

#include <Eigen/Core>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gpgreeks/design.hpp"
#include "gpgreeks/kernel.hpp"

namespace gpgreeks {

/// What the first input coordinate means. Models are fit in whichever
/// convention the training data uses; theta() in greeks.hpp normalizes the
/// sign so callers always receive calendar-time Theta.
enum class TimeAxis { Calendar, TimeToMaturity };

std::string to_string(TimeAxis axis);
TimeAxis time_axis_from_string(const std::string& name);

enum class TrendKind { Constant, LinearInS, ExternalReference };

std::string to_string(TrendKind kind);
TrendKind trend_kind_from_string(const std::string& name);

/// Reference Black-Scholes price used for pre-specified de-trending: the
/// reference value is subtracted from observations before fitting and added
/// back at prediction; its analytic derivatives feed the Greek posteriors.
struct BsReference {
    double r = 0.04;
    double sigma = 0.3;
    double strike = 50.0;
    double maturity = 0.4;

    double value(TimeAxis axis, double tcoord, double s) const;
    /// d value / d x_j in model coordinates (j = 0 time-like, j = 1 spot).
    double grad(TimeAxis axis, int j, double tcoord, double s) const;
};

struct TrendSpec {
    TrendKind kind = TrendKind::Constant;
    std::optional<BsReference> reference;  // required iff kind == ExternalReference
    Eigen::VectorXd beta;                  // fitted by GLS

    int n_coefficients() const { return kind == TrendKind::LinearInS ? 2 : 1; }
};

enum class NoiseKind { EstimatedConstant, PluginHeteroskedastic };

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& name);

struct NoiseSpec {
    NoiseKind kind = NoiseKind::EstimatedConstant;
    /// Homoskedastic observation variance; fitted by MLE for
    /// EstimatedConstant, ignored for PluginHeteroskedastic (per-point
    /// variances live in the training set).
    double sigma2_eps = 0.0;
};

struct TrainingSet {
    Eigen::MatrixXd inputs;          // N x d
    Eigen::VectorXd outputs;         // N
    Eigen::VectorXd noise_variances; // N; used by PluginHeteroskedastic
    std::vector<std::uint8_t> virtual_flags;

    Eigen::Index size() const { return inputs.rows(); }
    int dim() const { return static_cast<int>(inputs.cols()); }

    /// Build from a filled design (observations present), merging duplicate
    /// input rows per the averaging rule.
    static TrainingSet from_design(const Design& d);
};

struct FitConfig {
    int restarts = 10;     // multistart count, scrambled Halton over the bound box
    int refine_top = 2;    // best coarse results polished to convergence
    int coarse_evals = 140;
    int refine_evals = 500;
    std::uint64_t seed = 0;
    bool parallel = true;

    // Bound box factors (relative to data scales; see fit()).
    double lengthscale_lo = 1e-2, lengthscale_hi = 10.0;   // x coordinate range
    double process_var_lo = 1e-4, process_var_hi = 1e4;    // x var(y)
    double noise_lo = 1e-8, noise_hi = 1.0;                // x var(y)

    void validate() const;
};

/// Fitted Gaussian Process surrogate of the price surface. Immutable after
/// construction; predictions are const and safe to run concurrently.
/// Holds the lower Cholesky factor of A = K + Sigma + floor*I and
/// alpha = A^{-1}(y' - F beta), where y' is the (de-trended) observation
/// vector, so that every Greek reads the same cached factorization.
class GpModel {
public:
    /// Builds the factorization for the given (already chosen)
    /// hyperparameters. The nugget floor defaults to 1e-8 * var(y') and is
    /// always added to the diagonal; pass floor_override to freeze the floor
    /// of an existing model (rank-1 updates and frozen refits do).
    GpModel(TrainingSet ts, KernelSpec kernel, TrendSpec trend, NoiseSpec noise,
            TimeAxis time_axis, std::optional<double> floor_override = std::nullopt);

    const TrainingSet& training() const { return ts_; }
    const KernelSpec& kernel() const { return kernel_; }
    const TrendSpec& trend() const { return trend_; }
    const NoiseSpec& noise() const { return noise_; }
    TimeAxis time_axis() const { return time_axis_; }
    double log_likelihood() const { return loglik_; }
    double nugget_floor() const { return floor_; }
    const Eigen::MatrixXd& chol_factor() const { return chol_; }
    const Eigen::VectorXd& alpha() const { return alpha_; }

    /// Posterior mean and variance at x_star; variance is clamped at zero
    /// (round-off near training sites increments clamp_warnings).
    std::pair<double, double> predict(const Eigen::Ref<const Eigen::VectorXd>& x_star) const;

    /// Posterior covariance over the rows of xs; symmetrized and made PSD by
    /// clamping tiny negative eigenvalues.
    Eigen::MatrixXd predict_cov(const Eigen::MatrixXd& xs) const;

    /// New model conditioned on one extra observation, hyperparameters and
    /// nugget floor frozen, via extending the Cholesky factor (O(N^2)).
    /// A duplicate x_new is merged per the TrainingSet rule instead.
    /// noise_new is the new point's plugin variance; EstimatedConstant models
    /// give the point the fitted sigma2_eps so the result matches a frozen
    /// refit on the augmented set.
    GpModel update_rank1(const Eigen::Ref<const Eigen::VectorXd>& x_new, double y_new,
                         double noise_new) const;

    /// Trend mean (including any reference price) at x.
    double trend_value(const Eigen::Ref<const Eigen::VectorXd>& x) const;
    /// d trend / d x_j at x.
    double trend_grad(int j, const Eigen::Ref<const Eigen::VectorXd>& x) const;

    long clamp_warnings() const { return clamp_warnings_->load(); }

    std::string to_json() const;
    static GpModel from_json(const std::string& text);
    void save(const std::string& path) const;
    static GpModel load(const std::string& path);

private:
    TrainingSet ts_;
    KernelSpec kernel_;
    TrendSpec trend_;
    NoiseSpec noise_;
    TimeAxis time_axis_ = TimeAxis::Calendar;
    double floor_ = 0.0;
    Eigen::MatrixXd chol_;       // lower triangular L, L L^T = K + Sigma + floor I
    Eigen::MatrixXd basis_;      // F, N x p
    Eigen::VectorXd detrended_;  // y' = y - reference (or y)
    Eigen::VectorXd alpha_;
    double loglik_ = 0.0;
    std::shared_ptr<std::atomic<long>> clamp_warnings_ =
        std::make_shared<std::atomic<long>>(0);

    void note_clamp() const { clamp_warnings_->fetch_add(1); }
};

/// Profile log marginal likelihood: -1/2 (y-m)^T A^{-1} (y-m)
/// - 1/2 log det A - N/2 log 2pi, with trend coefficients profiled out by
/// generalized least squares. Throws IllConditioned when Cholesky fails.
/// The axis only matters for ExternalReference de-trending.
double log_marginal_likelihood(const TrainingSet& ts, const KernelSpec& kernel,
                               const TrendSpec& trend, const NoiseSpec& noise,
                               TimeAxis axis = TimeAxis::TimeToMaturity);

/// Maximum likelihood fit: multi-start Nelder-Mead over log-transformed
/// hyperparameters (lengthscales, process variance, and the constant noise
/// variance when estimated), deterministic under cfg.seed.
GpModel fit(const TrainingSet& ts, KernelFamily family, TrendSpec trend, NoiseKind noise_kind,
            const FitConfig& cfg, TimeAxis time_axis);

/// The always-added diagonal stabilizer: 1e-8 * var(y).
double nugget_floor_for(const Eigen::VectorXd& y);

}  // namespace gpgreeks

#endif
