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

#include "gpgreeks/hedging.hpp"

#include <cmath>
#include <json.hpp>
#include <limits>

#include "gpgreeks/errors.hpp"
#include "gpgreeks/io.hpp"
#include "gpgreeks/stats.hpp"

namespace gpgreeks {

namespace {

// Indices of the rebalance times inside the fine path grid.
std::vector<Eigen::Index> locate(const PricePath& path, const Eigen::VectorXd& times) {
    if (times.size() < 2) throw InvalidArgument("hedge: need at least two rebalance times");
    for (Eigen::Index k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1]))
            throw InvalidArgument("hedge: rebalance times must be strictly increasing");
    std::vector<Eigen::Index> idx(static_cast<size_t>(times.size()));
    Eigen::Index j = 0;
    for (Eigen::Index k = 0; k < times.size(); ++k) {
        while (j < path.times.size() && path.times[j] < times[k] - 1e-12) ++j;
        if (j >= path.times.size() || std::abs(path.times[j] - times[k]) > 1e-9)
            throw InvalidArgument("hedge: rebalance times must lie on the path grid");
        idx[static_cast<size_t>(k)] = j;
    }
    return idx;
}

struct WealthRun {
    double w_terminal = 0.0;
    int n_trades = 0;
};

WealthRun run_wealth(const std::vector<double>& positions, const PricePath& path,
                     const std::vector<Eigen::Index>& idx, const Eigen::VectorXd& times,
                     double r, double w0) {
    double w = w0;
    int trades = 0;
    double prev_pos = 0.0;
    for (size_t k = 0; k + 1 < idx.size(); ++k) {
        const double s_k = path.values[idx[k]];
        const double s_next = path.values[idx[k + 1]];
        const double h = positions[k];
        if (h != prev_pos) ++trades;
        prev_pos = h;
        const double growth = std::exp(r * (times[static_cast<Eigen::Index>(k + 1)] -
                                            times[static_cast<Eigen::Index>(k)]));
        w = s_next * h + (w - s_k * h) * growth;
    }
    return {w, trades};
}

}  // namespace

HedgeOutcome simulate_hedge(const DeltaFn& delta_fn, const PayoffFn& payoff,
                            const PricePath& path, const Eigen::VectorXd& rebalance_times,
                            double r, double w0) {
    const auto idx = locate(path, rebalance_times);
    std::vector<double> positions(idx.size() - 1);
    for (size_t k = 0; k + 1 < idx.size(); ++k)
        positions[k] = delta_fn(rebalance_times[static_cast<Eigen::Index>(k)],
                                path.values[idx[k]]);
    const WealthRun run = run_wealth(positions, path, idx, rebalance_times, r, w0);
    HedgeOutcome out;
    out.w_terminal = run.w_terminal;
    out.e_total = run.w_terminal - payoff(path.values[idx.back()]);
    out.e_disc = out.e_total;
    out.e_approx = 0.0;
    out.n_trades = run.n_trades;
    return out;
}

HedgeOutcome decompose_error(const DeltaFn& delta_hat, const DeltaFn& delta_bench,
                             const PayoffFn& payoff, const PricePath& path,
                             const Eigen::VectorXd& rebalance_times, double r, double w0) {
    HedgeOutcome out = simulate_hedge(delta_hat, payoff, path, rebalance_times, r, w0);
    const auto idx = locate(path, rebalance_times);

    double e_hat = 0.0;
    for (size_t k = 0; k + 1 < idx.size(); ++k) {
        const double t_k = rebalance_times[static_cast<Eigen::Index>(k)];
        const double s_k = path.values[idx[k]];
        // dX over the interval from the path itself: price increment minus the
        // trapezoid of r S dt on the fine grid.
        double carry = 0.0;
        for (Eigen::Index j = idx[k]; j < idx[k + 1]; ++j) {
            const double dtj = path.times[j + 1] - path.times[j];
            carry += 0.5 * (path.values[j] + path.values[j + 1]) * dtj;
        }
        const double dx = (path.values[idx[k + 1]] - s_k) - r * carry;
        e_hat += (delta_hat(t_k, s_k) - delta_bench(t_k, s_k)) * dx;
    }
    out.e_approx = e_hat;
    out.e_disc = out.e_total - e_hat;
    return out;
}

std::pair<double, double> empirical_moments(const DeltaFn& delta_hat, const DeltaFn& delta_bench,
                                            const Eigen::MatrixXd& paths, double dt,
                                            const std::function<double(double, double)>& sigma_fn,
                                            double mu, double r) {
    const Eigen::Index n_paths = paths.rows();
    const Eigen::Index n_steps = paths.cols() - 1;  // sum over t_k, k = 0..K-1
    if (n_paths < 1 || n_steps < 1) throw InvalidArgument("empirical_moments: empty paths");
    double mu_e = 0.0, v_e = 0.0;
    for (Eigen::Index k = 0; k < n_steps; ++k) {
        const double t_k = k * dt;
        double acc_mu = 0.0, acc_v = 0.0;
        for (Eigen::Index i = 0; i < n_paths; ++i) {
            const double s = paths(i, k);
            const double diff = delta_hat(t_k, s) - delta_bench(t_k, s);
            const double sig = sigma_fn(t_k, s);
            acc_mu += diff * s;
            acc_v += diff * diff * sig * sig * s * s;
        }
        mu_e += dt * acc_mu / n_paths;
        v_e += dt * acc_v / n_paths;
    }
    return {(mu - r) * mu_e, v_e};
}

HedgeOutcome sticky_hedge(const EstimateFn& estimate_fn, double band_level,
                          const PayoffFn& payoff, const PricePath& path,
                          const Eigen::VectorXd& rebalance_times, double r, double w0) {
    const auto idx = locate(path, rebalance_times);
    std::vector<double> positions(idx.size() - 1);
    double held = 0.0;
    bool first = true;
    for (size_t k = 0; k + 1 < idx.size(); ++k) {
        const double t_k = rebalance_times[static_cast<Eigen::Index>(k)];
        const GreekEstimate est = estimate_fn(t_k, path.values[idx[k]]);
        double lo, hi;
        if (band_level >= 1.0) {
            lo = -std::numeric_limits<double>::infinity();
            hi = std::numeric_limits<double>::infinity();
        } else {
            const CredibleBand band = credible_band(est, band_level);
            lo = band.lower;
            hi = band.upper;
        }
        if (first || held < lo || held > hi) {
            held = est.value;
            first = false;
        }
        positions[k] = held;
    }
    const WealthRun run = run_wealth(positions, path, idx, rebalance_times, r, w0);
    HedgeOutcome out;
    out.w_terminal = run.w_terminal;
    out.e_total = run.w_terminal - payoff(path.values[idx.back()]);
    out.n_trades = run.n_trades;
    return out;
}

void hedge_outcomes_to_csv(const std::string& path, const std::vector<HedgeOutcome>& outcomes) {
    CsvTable table;
    table.header = {"path_id", "W_T", "E_T", "E_d", "E_hat", "n_trades"};
    for (const auto& o : outcomes)
        table.rows.push_back({static_cast<double>(o.path_id), o.w_terminal, o.e_total, o.e_disc,
                              o.e_approx, static_cast<double>(o.n_trades)});
    write_csv(path, table);
}

std::string hedge_summary_json(const std::vector<HedgeOutcome>& outcomes) {
    const auto stats = [&](auto getter) {
        double sum = 0.0;
        for (const auto& o : outcomes) sum += getter(o);
        const double n = static_cast<double>(outcomes.size());
        const double mean = n > 0 ? sum / n : 0.0;
        double ss = 0.0;
        for (const auto& o : outcomes) ss += (getter(o) - mean) * (getter(o) - mean);
        const double var = n > 1 ? ss / (n - 1) : 0.0;
        nlohmann::json j;
        j["mean"] = mean;
        j["variance"] = var;
        j["stdev"] = std::sqrt(var);
        return j;
    };
    nlohmann::json j;
    j["n_paths"] = outcomes.size();
    j["W_T"] = stats([](const HedgeOutcome& o) { return o.w_terminal; });
    j["E_T"] = stats([](const HedgeOutcome& o) { return o.e_total; });
    j["E_d"] = stats([](const HedgeOutcome& o) { return o.e_disc; });
    j["E_hat"] = stats([](const HedgeOutcome& o) { return o.e_approx; });
    j["n_trades"] = stats([](const HedgeOutcome& o) { return static_cast<double>(o.n_trades); });
    double one_sided = 0.0;
    for (const auto& o : outcomes) one_sided += std::max(-o.e_total, 0.0);
    j["one_sided_l1"] = outcomes.empty() ? 0.0 : one_sided / outcomes.size();
    return j.dump(2);
}

}  // namespace gpgreeks
