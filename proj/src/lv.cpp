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

#include "gpgreeks/lv.hpp"

#include <cmath>
#include <sstream>

#include "gpgreeks/errors.hpp"
#include "gpgreeks/io.hpp"
#include "parallel.hpp"

namespace gpgreeks {

namespace {

constexpr double kPi = 3.14159265358979323846;

int steps_from(const LvParams& p, double t) {
    const double dt = p.maturity / p.steps_per_maturity;
    int n = static_cast<int>(std::lround((p.maturity - t) / dt));
    return n < 1 ? 1 : n;
}

std::string params_key(const LvParams& p) {
    std::ostringstream ss;
    ss << format_double(p.r) << '|' << format_double(p.mu) << '|' << format_double(p.strike)
       << '|' << format_double(p.maturity) << '|' << format_double(p.s_ref) << '|'
       << format_double(p.t_ref) << '|' << p.steps_per_maturity;
    return ss.str();
}

}  // namespace

double lv_sigma(const LvParams& p, double t, double s) {
    if (!(s > 0.0)) throw InvalidArgument("lv_sigma: s must be > 0");
    const double lm = std::log(s / p.s_ref);
    if (std::abs(lm) >= 0.4) return 0.4;
    return 0.4 - 0.16 * std::exp(-0.5 * (p.t_ref - t)) * std::cos(1.25 * kPi * lm);
}

Eigen::MatrixXd lv_simulate_paths(const LvParams& p, double s0, double t0, double t_end,
                                  int n_steps, int n_paths, bool physical_measure,
                                  std::uint64_t master_seed, StreamId stream,
                                  std::uint64_t index_offset) {
    if (n_steps < 1) throw InvalidArgument("lv_simulate_paths: n_steps must be >= 1");
    if (!(s0 > 0.0)) throw InvalidArgument("lv_simulate_paths: s0 must be > 0");
    const double dt = (t_end - t0) / n_steps;
    const double sqdt = std::sqrt(dt);
    const double drift = physical_measure ? p.mu : p.r;
    const double floor = p.floor_frac * s0;
    Eigen::MatrixXd paths(n_paths, n_steps + 1);
    for (int i = 0; i < n_paths; ++i) {
        Rng rng(master_seed, stream, index_offset + static_cast<std::uint64_t>(i));
        double s = s0;
        paths(i, 0) = s;
        for (int k = 0; k < n_steps; ++k) {
            const double t = t0 + k * dt;
            const double z = rng.normal();
            s += drift * s * dt + lv_sigma(p, t, s) * s * sqdt * z;
            if (s < floor) s = floor;
            paths(i, k + 1) = s;
        }
    }
    return paths;
}

McSample lv_mc_price(const LvParams& p, double t, double s, int n_paths,
                     std::uint64_t master_seed, StreamId stream, std::uint64_t index_offset) {
    const double tau = p.maturity - t;
    if (tau <= 0.0) return {call_payoff(s, p.strike), 0.0, n_paths};
    if (n_paths < 2) throw InvalidArgument("lv_mc_price: n_paths must be >= 2");
    const int n_steps = steps_from(p, t);
    const double dt = tau / n_steps;
    const double sqdt = std::sqrt(dt);
    const double disc = std::exp(-p.r * tau);
    const double floor = p.floor_frac * s;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n_paths; ++i) {
        Rng rng(master_seed, stream, index_offset + static_cast<std::uint64_t>(i));
        double st = s;
        for (int k = 0; k < n_steps; ++k) {
            const double tk = t + k * dt;
            st += p.r * st * dt + lv_sigma(p, tk, st) * st * sqdt * rng.normal();
            if (st < floor) st = floor;
        }
        const double pay = disc * call_payoff(st, p.strike);
        sum += pay;
        sumsq += pay * pay;
    }
    const double mean = sum / n_paths;
    double var = (sumsq - n_paths * mean * mean) / (n_paths - 1);
    if (var < 0.0) var = 0.0;
    return {mean, var / n_paths, n_paths};
}

LvGoldPoint lv_fd_gold_point(const LvParams& p, double t, double s, double delta_h, int n_paths,
                             std::uint64_t master_seed) {
    if (!(delta_h > 0.0)) throw InvalidArgument("lv_fd_gold_point: delta_h must be > 0");
    const double tau = p.maturity - t;
    if (tau <= 0.0) {
        const double up = call_payoff(s + delta_h, p.strike);
        const double dn = call_payoff(s - delta_h, p.strike);
        return {call_payoff(s, p.strike), (up - dn) / (2.0 * delta_h)};
    }
    const int n_steps = steps_from(p, t);
    const double dt = tau / n_steps;
    const double sqdt = std::sqrt(dt);
    const double disc = std::exp(-p.r * tau);
    double sum_up = 0.0, sum_dn = 0.0, sum_mid = 0.0;
    for (int i = 0; i < n_paths; ++i) {
        Rng rng(master_seed, StreamId::GoldStandard, static_cast<std::uint64_t>(i));
        double s_up = s + delta_h, s_dn = s - delta_h, s_mid = s;
        const double fl_up = p.floor_frac * s_up, fl_dn = p.floor_frac * std::max(s_dn, 1e-12),
                     fl_mid = p.floor_frac * s_mid;
        for (int k = 0; k < n_steps; ++k) {
            const double tk = t + k * dt;
            const double dz = sqdt * rng.normal();  // shared shock: common random numbers
            s_up += p.r * s_up * dt + lv_sigma(p, tk, s_up) * s_up * dz;
            s_dn += p.r * s_dn * dt + lv_sigma(p, tk, s_dn) * s_dn * dz;
            s_mid += p.r * s_mid * dt + lv_sigma(p, tk, s_mid) * s_mid * dz;
            if (s_up < fl_up) s_up = fl_up;
            if (s_dn < fl_dn) s_dn = fl_dn;
            if (s_mid < fl_mid) s_mid = fl_mid;
        }
        sum_up += call_payoff(s_up, p.strike);
        sum_dn += call_payoff(s_dn, p.strike);
        sum_mid += call_payoff(s_mid, p.strike);
    }
    const double inv = disc / n_paths;
    return {sum_mid * inv, (sum_up - sum_dn) * inv / (2.0 * delta_h)};
}

double lv_fd_delta_gold(const LvParams& p, double t, double s, double delta_h, int n_paths,
                        std::uint64_t master_seed) {
    return lv_fd_gold_point(p, t, s, delta_h, n_paths, master_seed).delta;
}

LvGoldGrid lv_gold_grid(const LvParams& p, const std::vector<double>& ts,
                        const std::vector<double>& ss, double delta_h, int n_paths,
                        std::uint64_t seed, const std::string& cache_dir) {
    std::ostringstream grid_key;
    for (double t : ts) grid_key << format_double(t) << ';';
    grid_key << '#';
    for (double s : ss) grid_key << format_double(s) << ';';
    grid_key << '#' << format_double(delta_h) << '#' << n_paths;

    std::string cache_path;
    if (!cache_dir.empty()) {
        ensure_dir(cache_dir);
        std::ostringstream name;
        name << cache_dir << "/gold_" << std::hex << fnv1a(params_key(p)) << '_'
             << fnv1a(grid_key.str()) << '_' << std::dec << seed << ".csv";
        cache_path = name.str();
        if (file_exists(cache_path)) {
            CsvTable t = read_csv(cache_path);
            LvGoldGrid g;
            for (const auto& row : t.rows) {
                g.t.push_back(row[0]);
                g.s.push_back(row[1]);
                g.price.push_back(row[2]);
                g.delta.push_back(row[3]);
            }
            return g;
        }
    }

    const std::size_t n = ts.size() * ss.size();
    LvGoldGrid g;
    g.t.resize(n);
    g.s.resize(n);
    g.price.resize(n);
    g.delta.resize(n);
    parallel_for(n, [&](std::size_t idx) {
        const double t = ts[idx / ss.size()];
        const double s = ss[idx % ss.size()];
        // Distinct gold substream per site so sites are independent.
        const std::uint64_t site_seed = derive_seed(seed, static_cast<std::uint64_t>(StreamId::GoldStandard),
                                                    static_cast<std::uint64_t>(idx) + 1);
        const LvGoldPoint pt = lv_fd_gold_point(p, t, s, delta_h, n_paths, site_seed);
        g.t[idx] = t;
        g.s[idx] = s;
        g.price[idx] = pt.price;
        g.delta[idx] = pt.delta;
    });

    if (!cache_path.empty()) {
        CsvTable table;
        table.header = {"t", "S", "price", "delta"};
        for (std::size_t i = 0; i < n; ++i)
            table.rows.push_back({g.t[i], g.s[i], g.price[i], g.delta[i]});
        write_csv(cache_path, table);
    }
    return g;
}

}  // namespace gpgreeks
