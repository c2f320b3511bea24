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

#include "gpgreeks/design.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "gpgreeks/errors.hpp"
#include "gpgreeks/io.hpp"

namespace gpgreeks {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

Design make_empty(DesignKind kind, const Box& box, Eigen::Index n) {
    Design d;
    d.points.resize(n, 2);
    d.virtual_flags.assign(static_cast<size_t>(n), 0);
    d.y = Eigen::VectorXd::Constant(n, kNaN);
    d.noise_var = Eigen::VectorXd::Constant(n, kNaN);
    d.provenance = kind;
    d.box = box;
    return d;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = 0.5 * (lo + hi);
        return v;
    }
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) v[i] = lo + i * step;
    return v;
}

}  // namespace

Design grid_design(const Box& box, int n_t, int n_s) {
    if (n_t < 2 || n_s < 2) throw InvalidArgument("grid_design: n_t and n_s must be >= 2");
    Design d = make_empty(DesignKind::Grid, box, static_cast<Eigen::Index>(n_t) * n_s);
    const auto ts = linspace(box.t_lo, box.t_hi, n_t);
    const auto ss = linspace(box.s_lo, box.s_hi, n_s);
    Eigen::Index row = 0;
    for (int i = 0; i < n_t; ++i)
        for (int j = 0; j < n_s; ++j) {
            d.points(row, 0) = ts[i];
            d.points(row, 1) = ss[j];
            ++row;
        }
    return d;
}

double halton_point(std::uint64_t index, unsigned base) {
    double f = 1.0, value = 0.0;
    while (index > 0) {
        f /= base;
        value += f * (index % base);
        index /= base;
    }
    return value;
}

Design halton_design(const Box& box, int n) {
    if (n < 1) throw InvalidArgument("halton_design: n must be >= 1");
    Design d = make_empty(DesignKind::Halton, box, n);
    for (int i = 0; i < n; ++i) {
        const double u = halton_point(static_cast<std::uint64_t>(i) + 1, 2);
        const double v = halton_point(static_cast<std::uint64_t>(i) + 1, 3);
        d.points(i, 0) = box.t_lo + u * (box.t_hi - box.t_lo);
        d.points(i, 1) = box.s_lo + v * (box.s_hi - box.s_lo);
    }
    return d;
}

namespace {

std::vector<double> start_levels(const PathDesignConfig& cfg) {
    if (!cfg.s0_levels.empty()) return cfg.s0_levels;
    std::vector<double> levels(cfg.n_paths);
    Rng rng(cfg.seed, StreamId::InitialSpot, 0);
    for (int j = 0; j < cfg.n_paths; ++j) levels[j] = rng.normal(cfg.s0_mean, cfg.s0_sd);
    return levels;
}

}  // namespace

Design path_design_bs(const BsParams& p, const PathDesignConfig& cfg, const Box& box) {
    if (cfg.n_paths < 1) throw InvalidArgument("path_design: n_paths must be >= 1");
    const int steps = static_cast<int>(std::lround(cfg.horizon / cfg.dt));
    if (steps < 1) throw InvalidArgument("path_design: dt must divide the horizon");
    const auto levels = start_levels(cfg);
    Design d = make_empty(DesignKind::Path, box, static_cast<Eigen::Index>(cfg.n_paths) * steps);
    Eigen::Index row = 0;
    for (int j = 0; j < cfg.n_paths; ++j) {
        const double s0 = levels[j % levels.size()];
        // One saved state per dt; exact GBM increments, no sub-stepping needed.
        Eigen::MatrixXd path = bs_simulate_paths(p, s0, cfg.dt, steps, 1, true, cfg.seed,
                                                 StreamId::DesignPaths, static_cast<std::uint64_t>(j));
        for (int i = 0; i < steps; ++i) {
            d.points(row, 0) = i * cfg.dt;
            d.points(row, 1) = path(0, i);
            ++row;
        }
    }
    return d;
}

Design path_design_lv(const LvParams& p, const PathDesignConfig& cfg, const Box& box) {
    if (cfg.n_paths < 1) throw InvalidArgument("path_design: n_paths must be >= 1");
    const int steps = static_cast<int>(std::lround(cfg.horizon / cfg.dt));
    if (steps < 1) throw InvalidArgument("path_design: dt must divide the horizon");
    // Simulate on the model's fine Euler grid, save every (dt / fine_dt)-th state.
    const double fine_dt = p.maturity / p.steps_per_maturity;
    int sub = static_cast<int>(std::lround(cfg.dt / fine_dt));
    if (sub < 1) sub = 1;
    const int fine_steps = steps * sub;
    const auto levels = start_levels(cfg);
    Design d = make_empty(DesignKind::Path, box, static_cast<Eigen::Index>(cfg.n_paths) * steps);
    Eigen::Index row = 0;
    for (int j = 0; j < cfg.n_paths; ++j) {
        const double s0 = levels[j % levels.size()];
        Eigen::MatrixXd path =
            lv_simulate_paths(p, s0, 0.0, cfg.horizon, fine_steps, 1, true, cfg.seed,
                              StreamId::DesignPaths, static_cast<std::uint64_t>(j));
        for (int i = 0; i < steps; ++i) {
            d.points(row, 0) = i * cfg.dt;
            d.points(row, 1) = path(0, i * sub);
            ++row;
        }
    }
    return d;
}

Design virtual_points(const VirtualPointConfig& cfg, const Box& box) {
    if (cfg.n_itm < 0 || cfg.n_otm < 0 || cfg.n_maturity < 0)
        throw InvalidArgument("virtual_points: counts must be >= 0");
    const Eigen::Index total = cfg.n_itm + cfg.n_otm + cfg.n_maturity;
    Design d = make_empty(DesignKind::Virtual, box, total);
    std::fill(d.virtual_flags.begin(), d.virtual_flags.end(), 1);

    const auto tau_of = [&](double tcoord) {
        return cfg.time_is_tau ? tcoord : cfg.maturity - tcoord;
    };

    Eigen::Index row = 0;
    // ITM / OTM edges: pairs of close but distinct S levels per time node.
    const auto edge_points = [&](int n, double s_edge, double pair_factor, bool itm) {
        if (n <= 0) return;
        const int n_nodes = (n + 1) / 2;
        const auto ts = linspace(box.t_lo, box.t_hi, n_nodes);
        int placed = 0;
        for (int i = 0; i < n_nodes && placed < n; ++i) {
            for (int k = 0; k < 2 && placed < n; ++k) {
                const double s = k == 0 ? s_edge : s_edge * pair_factor;
                d.points(row, 0) = ts[i];
                d.points(row, 1) = s;
                const double tau = tau_of(ts[i]);
                d.y[row] = itm ? s - std::exp(-cfg.rate * tau) * cfg.strike : 0.0;
                d.noise_var[row] = 0.0;
                ++row;
                ++placed;
            }
        }
    };
    edge_points(cfg.n_itm, box.s_hi, 1.01, true);
    edge_points(cfg.n_otm, box.s_lo, 0.99, false);

    if (cfg.n_maturity > 0) {
        const double t_mat = cfg.time_is_tau ? 0.0 : cfg.maturity;
        const auto ss = linspace(box.s_lo, box.s_hi, cfg.n_maturity);
        for (int i = 0; i < cfg.n_maturity; ++i) {
            d.points(row, 0) = t_mat;
            d.points(row, 1) = ss[i];
            d.y[row] = call_payoff(ss[i], cfg.strike);
            d.noise_var[row] = 0.0;
            ++row;
        }
    }
    return d;
}

Design concat(const Design& a, const Design& b) {
    Design d = make_empty(a.provenance, a.box, a.size() + b.size());
    d.points << a.points, b.points;
    d.y << a.y, b.y;
    d.noise_var << a.noise_var, b.noise_var;
    std::copy(a.virtual_flags.begin(), a.virtual_flags.end(), d.virtual_flags.begin());
    std::copy(b.virtual_flags.begin(), b.virtual_flags.end(),
              d.virtual_flags.begin() + a.size());
    return d;
}

Design merge_duplicates(const Design& d) {
    std::map<std::pair<double, double>, std::vector<Eigen::Index>> groups;
    for (Eigen::Index i = 0; i < d.size(); ++i)
        groups[{d.points(i, 0), d.points(i, 1)}].push_back(i);
    if (groups.size() == static_cast<size_t>(d.size())) return d;

    Design out = make_empty(d.provenance, d.box, static_cast<Eigen::Index>(groups.size()));
    // Preserve first-appearance order.
    std::vector<std::pair<Eigen::Index, const std::vector<Eigen::Index>*>> ordered;
    ordered.reserve(groups.size());
    for (const auto& [key, idxs] : groups) ordered.push_back({idxs.front(), &idxs});
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    Eigen::Index row = 0;
    for (const auto& [first, idxs] : ordered) {
        const auto& g = *idxs;
        out.points.row(row) = d.points.row(first);
        out.virtual_flags[static_cast<size_t>(row)] = d.virtual_flags[static_cast<size_t>(first)];
        double ysum = 0.0, vsum = 0.0;
        bool has_y = true, has_v = true;
        for (Eigen::Index i : g) {
            if (std::isnan(d.y[i])) has_y = false;
            else ysum += d.y[i];
            if (std::isnan(d.noise_var[i])) has_v = false;
            else vsum += d.noise_var[i];
        }
        const double m = static_cast<double>(g.size());
        out.y[row] = has_y ? ysum / m : kNaN;
        out.noise_var[row] = has_v ? (vsum / m) / m : kNaN;
        ++row;
    }
    return out;
}

void design_to_csv(const Design& d, const std::string& path) {
    CsvTable table;
    table.header = {"t", "S", "is_virtual", "pseudo_y", "noise_var"};
    for (Eigen::Index i = 0; i < d.size(); ++i)
        table.rows.push_back({d.points(i, 0), d.points(i, 1),
                              static_cast<double>(d.virtual_flags[static_cast<size_t>(i)]),
                              d.y[i], d.noise_var[i]});
    write_csv(path, table);
}

Design design_from_csv(const std::string& path) {
    CsvTable table = read_csv(path);
    if (table.header.size() < 5)
        throw InvalidArgument("design csv: expected columns t,S,is_virtual,pseudo_y,noise_var");
    const Eigen::Index n = static_cast<Eigen::Index>(table.rows.size());
    Design d = make_empty(DesignKind::Halton, Box{}, n);
    double t_lo = 1e300, t_hi = -1e300, s_lo = 1e300, s_hi = -1e300;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = table.rows[static_cast<size_t>(i)];
        d.points(i, 0) = row[0];
        d.points(i, 1) = row[1];
        d.virtual_flags[static_cast<size_t>(i)] = row[2] != 0.0 ? 1 : 0;
        d.y[i] = row[3];
        d.noise_var[i] = row[4];
        if (!d.virtual_flags[static_cast<size_t>(i)]) {
            t_lo = std::min(t_lo, row[0]);
            t_hi = std::max(t_hi, row[0]);
            s_lo = std::min(s_lo, row[1]);
            s_hi = std::max(s_hi, row[1]);
        }
    }
    if (t_lo <= t_hi) d.box = Box{t_lo, t_hi, s_lo, s_hi};
    return d;
}

}  // namespace gpgreeks
