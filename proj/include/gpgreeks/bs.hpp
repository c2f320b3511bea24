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

#ifndef GPGREEKS_BS_HPP
#define GPGREEKS_BS_HPP

#include <Eigen/Core>

#include "gpgreeks/rng.hpp"

namespace gpgreeks {

struct BsParams {
    double r = 0.04;      // risk-free rate / year
    double sigma = 0.22;  // volatility / sqrt(year)
    double strike = 50.0;
    double maturity = 0.4;  // years
    double mu = 0.06;       // physical drift / year (hedging scenarios)
};

inline double call_payoff(double s, double strike) { return s > strike ? s - strike : 0.0; }

/// European call value; tau is time to maturity (tau = 0 returns the payoff).
double bs_price(const BsParams& p, double tau, double s);

/// dP/dS. tau = 0 degenerates to the payoff slope indicator.
double bs_delta(const BsParams& p, double tau, double s);

/// Calendar-time theta dP/dt (negative before maturity). tau must be > 0.
double bs_theta(const BsParams& p, double tau, double s);

/// d2P/dS2. tau must be > 0.
double bs_gamma(const BsParams& p, double tau, double s);

/// dP/dsigma. tau must be > 0.
double bs_vega(const BsParams& p, double tau, double s);

/// One noisy Monte Carlo price estimate built from n_inner replications.
/// sigma2_hat is the variance OF THE MEAN, i.e. the per-payoff sample
/// variance divided by n_inner; feeding the raw payoff variance into a
/// surrogate would overstate the observation noise by a factor n_inner.
struct McSample {
    double y = 0.0;
    double sigma2_hat = 0.0;
    int n_inner = 0;
};

/// Discounted mean call payoff over n_inner exact lognormal terminal draws
/// under Q started at (tau, s). Deterministic under the rng state.
McSample bs_mc_sample(const BsParams& p, double tau, double s, int n_inner, Rng& rng);

/// Exact GBM path on the time grid t0, t0+dt, ..., t0+n_steps*dt under the
/// chosen drift (true = physical mu, false = risk-neutral r). Returns
/// n_paths x (n_steps+1); each path uses its own substream (master, stream,
/// path index) so results do not depend on evaluation order.
Eigen::MatrixXd bs_simulate_paths(const BsParams& p, double s0, double dt, int n_steps,
                                  int n_paths, bool physical_measure, std::uint64_t master_seed,
                                  StreamId stream, std::uint64_t index_offset = 0);

/// Implied volatility of a call quote by bracketed root finding on bs_price,
/// to |price error| < 1e-10. Throws NoSolution outside the no-arbitrage
/// bounds (s - strike e^{-r tau})_+ < price < s.
double implied_vol(double price, double tau, double s, double strike, double r);

/// Black-Scholes delta evaluated at the implied volatility of the quote.
double implied_delta(double price, double tau, double s, double strike, double r);

}  // namespace gpgreeks

#endif
