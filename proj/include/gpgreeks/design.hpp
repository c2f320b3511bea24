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

#ifndef GPGREEKS_DESIGN_HPP
#define GPGREEKS_DESIGN_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "gpgreeks/lv.hpp"
#include "gpgreeks/rng.hpp"

namespace gpgreeks {

/// 2-D training domain rectangle: first coordinate "time-like" (t or tau),
/// second the spot S.
struct Box {
    double t_lo = 0.0, t_hi = 1.0;
    double s_lo = 0.0, s_hi = 1.0;
};

enum class DesignKind { Grid, Halton, Path, Virtual };

/// A set of training inputs, possibly carrying observations. Sampled points
/// have y/noise_var NaN until a data generator fills them; virtual points are
/// born with their pseudo-observation and zero noise. Virtual points may sit
/// on or beyond the box edges.
struct Design {
    Eigen::MatrixXd points;  // N x 2, columns (time-like, S)
    std::vector<std::uint8_t> virtual_flags;
    Eigen::VectorXd y;          // observation or pseudo-observation, NaN if unfilled
    Eigen::VectorXd noise_var;  // per-point variance of y, NaN if unfilled
    DesignKind provenance = DesignKind::Grid;
    Box box;

    Eigen::Index size() const { return points.rows(); }
};

/// n_t x n_s lattice, both box edges included.
Design grid_design(const Box& box, int n_t, int n_s);

/// First n points of the 2-D Halton sequence (bases 2 and 3, starting at
/// index 1 so every point is strictly inside), affinely scaled to the box.
Design halton_design(const Box& box, int n);

/// Radical-inverse of index in the given base (generic helper, also used for
/// scrambling multistart optimizers).
double halton_point(std::uint64_t index, unsigned base);

/// Path-based designs: states of simulated P-measure trajectories saved at
/// frequency dt, times i*dt for i = 0..steps-1 (maturity excluded).
/// Start values come from s0_levels (one path per entry, cycled if
/// n_paths > levels) or, when s0_levels is empty, from N(s0_mean, s0_sd^2).
struct PathDesignConfig {
    int n_paths = 16;
    double dt = 0.02;
    double horizon = 0.4;
    std::vector<double> s0_levels;  // empty -> Gaussian draws
    double s0_mean = 50.0;
    double s0_sd = 2.0;
    std::uint64_t seed = 0;
};

/// Black-Scholes flavor: exact GBM steps.
Design path_design_bs(const BsParams& p, const PathDesignConfig& cfg, const Box& box);

/// Local-volatility flavor: Euler steps at the model's fine grid, subsampled
/// at dt.
Design path_design_lv(const LvParams& p, const PathDesignConfig& cfg, const Box& box);

/// Virtual boundary points with attached pseudo-observations:
///   - n_itm points ("two close but distinct" S levels, box upper edge x
///     {1.0, 1.01}) carrying the intrinsic-forward value S - e^{-r tau} K,
///   - n_otm points (lower edge x {1.0, 0.99}) carrying 0,
///   - n_maturity points along the maturity edge carrying the payoff (S-K)_+.
/// time_is_tau selects where the maturity edge lives (tau = 0 vs t = T) and
/// how discounting reads the time coordinate.
struct VirtualPointConfig {
    double strike = 50.0;
    double rate = 0.04;
    double maturity = 0.4;
    bool time_is_tau = false;
    int n_itm = 20;
    int n_otm = 20;
    int n_maturity = 10;
};

Design virtual_points(const VirtualPointConfig& cfg, const Box& box);

/// Concatenate designs (provenance of the first wins; box of the first wins).
Design concat(const Design& a, const Design& b);

/// Merge exactly duplicated input rows: outputs averaged, noise variance
/// averaged then divided by the multiplicity. NaN observations merge to NaN.
Design merge_duplicates(const Design& d);

/// CSV round-trip, schema: t,S,is_virtual,pseudo_y,noise_var.
void design_to_csv(const Design& d, const std::string& path);
Design design_from_csv(const std::string& path);

}  // namespace gpgreeks

#endif
