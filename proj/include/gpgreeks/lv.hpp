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

#ifndef GPGREEKS_LV_HPP
#define GPGREEKS_LV_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "gpgreeks/bs.hpp"
#include "gpgreeks/rng.hpp"

namespace gpgreeks {

/// Local volatility market: dS = mu S dt + sigma(t,S) S dB under P, with
/// sigma(t,S) = 0.4 - 0.16 e^{-0.5 (T*-t)} cos(1.25 pi log(S/S*)) inside
/// |log(S/S*)| < 0.4 and 0.4 outside. The cosine argument hits pi/2 exactly
/// at the boundary, so the two branches agree there and sigma stays in
/// [0.24, 0.4] for t <= T*.
struct LvParams {
    double r = 0.05;
    double mu = 0.13;
    double strike = 50.0;
    double maturity = 0.4;
    double s_ref = 50.0;           // S*
    double t_ref = 0.4;            // T*
    int steps_per_maturity = 100;  // Euler dt = maturity / steps_per_maturity
    double floor_frac = 1e-8;      // positivity floor, fraction of the start value
};

double lv_sigma(const LvParams& p, double t, double s);

/// Euler-Maruyama paths from (t0, s0) on an n_steps grid to t_end. Returns
/// n_paths x (n_steps+1). One Gaussian draw per step per path from the
/// (master, stream, index_offset + path) substream; paths are floored at
/// floor_frac * s0.
Eigen::MatrixXd lv_simulate_paths(const LvParams& p, double s0, double t0, double t_end,
                                  int n_steps, int n_paths, bool physical_measure,
                                  std::uint64_t master_seed, StreamId stream,
                                  std::uint64_t index_offset = 0);

/// Discounted mean call payoff over Q-measure Euler paths from (t, s) to
/// maturity, stepped at dt = maturity / steps_per_maturity.
McSample lv_mc_price(const LvParams& p, double t, double s, int n_paths, std::uint64_t master_seed,
                     StreamId stream = StreamId::TrainingData, std::uint64_t index_offset = 0);

/// Price and central-difference Delta at (t, s) with both legs S +- delta_h
/// driven by the SAME Brownian increments (common random numbers). A third
/// center leg shares the shocks so the price comes for free.
struct LvGoldPoint {
    double price = 0.0;
    double delta = 0.0;
};

LvGoldPoint lv_fd_gold_point(const LvParams& p, double t, double s, double delta_h, int n_paths,
                             std::uint64_t master_seed);

/// Only the CRN finite-difference Delta (the paper-style benchmark).
double lv_fd_delta_gold(const LvParams& p, double t, double s, double delta_h, int n_paths,
                        std::uint64_t master_seed);

/// Gold-standard benchmark over a grid of (t, s) sites, cached as CSV in
/// cache_dir keyed by (params hash, grid hash, seed). Sites at t == maturity
/// are evaluated from the payoff directly. Parallel across sites.
struct LvGoldGrid {
    std::vector<double> t;
    std::vector<double> s;
    std::vector<double> price;
    std::vector<double> delta;
};

LvGoldGrid lv_gold_grid(const LvParams& p, const std::vector<double>& ts,
                        const std::vector<double>& ss, double delta_h, int n_paths,
                        std::uint64_t seed, const std::string& cache_dir);

}  // namespace gpgreeks

#endif
