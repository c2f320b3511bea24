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

#include "gpgreeks/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "gpgreeks/errors.hpp"
#include "gpgreeks/stats.hpp"

namespace gpgreeks {

namespace {

void check_lengths(size_t a, size_t b, const char* who) {
    if (a != b || a == 0)
        throw InvalidArgument(std::string(who) + ": estimate/benchmark length mismatch or empty");
}

double json_or_nan(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nan("");
    return j[key].get<double>();
}

void put(nlohmann::json& j, const char* key, double v) {
    if (std::isnan(v)) j[key] = nullptr;
    else j[key] = v;
}

}  // namespace

double rimse(const std::vector<double>& estimates, const std::vector<double>& benchmarks) {
    check_lengths(estimates.size(), benchmarks.size(), "rimse");
    double ss = 0.0;
    for (size_t i = 0; i < estimates.size(); ++i) {
        const double d = estimates[i] - benchmarks[i];
        ss += d * d;
    }
    return std::sqrt(ss / estimates.size());
}

double mad(const std::vector<double>& estimates, const std::vector<double>& benchmarks) {
    check_lengths(estimates.size(), benchmarks.size(), "mad");
    std::vector<double> devs(estimates.size());
    for (size_t i = 0; i < estimates.size(); ++i)
        devs[i] = std::abs(estimates[i] - benchmarks[i]);
    std::sort(devs.begin(), devs.end());
    const size_t n = devs.size();
    return n % 2 == 1 ? devs[n / 2] : 0.5 * (devs[n / 2 - 1] + devs[n / 2]);
}

double coverage(const std::vector<double>& estimates, const std::vector<double>& variances,
                const std::vector<double>& benchmarks, double level) {
    check_lengths(estimates.size(), benchmarks.size(), "coverage");
    check_lengths(estimates.size(), variances.size(), "coverage");
    const double z = two_sided_z(level);
    size_t hits = 0;
    for (size_t i = 0; i < estimates.size(); ++i) {
        const double half = z * std::sqrt(std::max(variances[i], 0.0));
        if (benchmarks[i] >= estimates[i] - half && benchmarks[i] <= estimates[i] + half) ++hits;
    }
    return static_cast<double>(hits) / estimates.size();
}

double nlpd(const std::vector<double>& estimates, const std::vector<double>& variances,
            const std::vector<double>& benchmarks) {
    check_lengths(estimates.size(), benchmarks.size(), "nlpd");
    check_lengths(estimates.size(), variances.size(), "nlpd");
    double acc = 0.0;
    for (size_t i = 0; i < estimates.size(); ++i) {
        const double v = std::max(variances[i], 1e-300);
        const double d = benchmarks[i] - estimates[i];
        acc += d * d / v + std::log(v);
    }
    return acc / estimates.size();
}

double bias(const std::vector<double>& estimates, const std::vector<double>& benchmarks) {
    check_lengths(estimates.size(), benchmarks.size(), "bias");
    double acc = 0.0;
    for (size_t i = 0; i < estimates.size(); ++i) acc += estimates[i] - benchmarks[i];
    return acc / estimates.size();
}

double pnl_variance(const std::vector<HedgeOutcome>& outcomes) {
    if (outcomes.size() < 2) throw InvalidArgument("pnl_variance: need at least two outcomes");
    double mean = 0.0;
    for (const auto& o : outcomes) mean += o.e_total;
    mean /= outcomes.size();
    double ss = 0.0;
    for (const auto& o : outcomes) ss += (o.e_total - mean) * (o.e_total - mean);
    return ss / (outcomes.size() - 1);
}

std::string metrics_rows_to_json(const std::vector<MetricsRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j;
        j["label"] = r.label;
        put(j, "rimse", r.rimse);
        put(j, "mad", r.mad);
        put(j, "cvr95", r.cvr95);
        put(j, "bias", r.bias);
        put(j, "nlpd", r.nlpd);
        put(j, "var_ET", r.var_ET);
        put(j, "mu_E", r.mu_E);
        put(j, "V_E", r.V_E);
        put(j, "theta_err", r.theta_err);
        put(j, "price_err", r.price_err);
        arr.push_back(j);
    }
    nlohmann::json root;
    root["rows"] = arr;
    return root.dump(2);
}

std::vector<MetricsRow> metrics_rows_from_json(const std::string& text) {
    nlohmann::json root = nlohmann::json::parse(text);
    std::vector<MetricsRow> rows;
    for (const auto& j : root["rows"]) {
        MetricsRow r;
        r.label = j["label"].get<std::string>();
        r.rimse = json_or_nan(j, "rimse");
        r.mad = json_or_nan(j, "mad");
        r.cvr95 = json_or_nan(j, "cvr95");
        r.bias = json_or_nan(j, "bias");
        r.nlpd = json_or_nan(j, "nlpd");
        r.var_ET = json_or_nan(j, "var_ET");
        r.mu_E = json_or_nan(j, "mu_E");
        r.V_E = json_or_nan(j, "V_E");
        r.theta_err = json_or_nan(j, "theta_err");
        r.price_err = json_or_nan(j, "price_err");
        rows.push_back(r);
    }
    return rows;
}

}  // namespace gpgreeks
