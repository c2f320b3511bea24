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

#ifndef GPGREEKS_HEDGING_HPP
#define GPGREEKS_HEDGING_HPP

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "gpgreeks/greeks.hpp"

namespace gpgreeks {

/// One underlying scenario on a fine time grid (finer than the rebalance
/// grid so cash-account integrals can be taken along the path).
struct PricePath {
    Eigen::VectorXd times;   // strictly increasing, from 0 to T
    Eigen::VectorXd values;  // same length
};

/// Per-path hedging result. e_total = W_T - payoff(S_T). For decompositions,
/// e_total = e_disc + e_approx holds exactly by construction; e_approx is the
/// Delta-approximation sum and e_disc the time-discretization remainder.
struct HedgeOutcome {
    int path_id = 0;
    double w_terminal = 0.0;
    double e_total = 0.0;
    double e_disc = 0.0;
    double e_approx = 0.0;
    int n_trades = 0;
};

using DeltaFn = std::function<double(double t, double s)>;
using PayoffFn = std::function<double(double s)>;
using EstimateFn = std::function<GreekEstimate(double t, double s)>;

/// Discrete self-financing hedge along the rebalance grid:
///   W_k = S_k h_{k-1} + (W_{k-1} - S_{k-1} h_{k-1}) e^{r dt},
/// starting from w0 at times[0]. Rebalance times must be a subset of the
/// path's fine grid. Fills w_terminal, e_total and n_trades.
HedgeOutcome simulate_hedge(const DeltaFn& delta_fn, const PayoffFn& payoff,
                            const PricePath& path, const Eigen::VectorXd& rebalance_times,
                            double r, double w0);

/// Splits the hedging error of delta_hat into the Delta-approximation part
///   e_approx = sum_k (delta_hat - delta_bench)(t_k, S_k) * dX_k,
/// with dX_k = (S_{k+1} - S_k) - r * int S dt taken by trapezoid over the
/// fine grid, and the discretization remainder e_disc = e_total - e_approx.
/// With delta_hat == delta_bench, e_approx is exactly zero.
HedgeOutcome decompose_error(const DeltaFn& delta_hat, const DeltaFn& delta_bench,
                             const PayoffFn& payoff, const PricePath& path,
                             const Eigen::VectorXd& rebalance_times, double r, double w0);

/// Corollary-style empirical moment proxies over forward-simulated paths
/// sampled at dt (paths: n x (steps+1), times implied by t0 = 0):
///   mu_e = (mu - r) sum_k dt mean[(dhat - dbench) S],
///   v_e  =          sum_k dt mean[(dhat - dbench)^2 sigma(t,S)^2 S^2].
/// The state density never appears: path averaging realizes it.
std::pair<double, double> empirical_moments(const DeltaFn& delta_hat, const DeltaFn& delta_bench,
                                            const Eigen::MatrixXd& paths, double dt,
                                            const std::function<double(double, double)>& sigma_fn,
                                            double mu, double r);

/// Hedge that trades only when the held position falls outside the current
/// credible band of the Delta estimate; band_level >= 1 never retrades.
HedgeOutcome sticky_hedge(const EstimateFn& estimate_fn, double band_level,
                          const PayoffFn& payoff, const PricePath& path,
                          const Eigen::VectorXd& rebalance_times, double r, double w0);

/// CSV columns: path_id,W_T,E_T,E_d,E_hat,n_trades.
void hedge_outcomes_to_csv(const std::string& path, const std::vector<HedgeOutcome>& outcomes);

/// Flat JSON with mean/variance/stdev per column plus the one-sided L1 loss
/// mean(max(-E_T, 0)).
std::string hedge_summary_json(const std::vector<HedgeOutcome>& outcomes);

}  // namespace gpgreeks

#endif
