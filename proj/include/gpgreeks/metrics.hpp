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

#ifndef GPGREEKS_METRICS_HPP
#define GPGREEKS_METRICS_HPP

#include <string>
#include <vector>

#include "gpgreeks/hedging.hpp"

namespace gpgreeks {

/// Root mean squared deviation over the test set.
double rimse(const std::vector<double>& estimates, const std::vector<double>& benchmarks);

/// Median absolute deviation; even counts take the midpoint of the two
/// central order statistics.
double mad(const std::vector<double>& estimates, const std::vector<double>& benchmarks);

/// Fraction of sites whose benchmark lies inside the two-sided credible
/// band of the given level.
double coverage(const std::vector<double>& estimates, const std::vector<double>& variances,
                const std::vector<double>& benchmarks, double level);

/// Mean over sites of (bench - est)^2 / V + log V.
double nlpd(const std::vector<double>& estimates, const std::vector<double>& variances,
            const std::vector<double>& benchmarks);

/// Mean signed deviation.
double bias(const std::vector<double>& estimates, const std::vector<double>& benchmarks);

/// Sample variance (n-1 denominator) of the terminal hedging error.
double pnl_variance(const std::vector<HedgeOutcome>& outcomes);

/// One table row, mirroring the reporting columns. NaN marks a column not
/// computed for the run (serialized as JSON null).
struct MetricsRow {
    std::string label;
    double rimse = 0.0;
    double mad = 0.0;
    double cvr95 = 0.0;
    double bias = 0.0;
    double nlpd = 0.0;
    double var_ET = 0.0;
    double mu_E = 0.0;
    double V_E = 0.0;
    double theta_err = 0.0;
    double price_err = 0.0;
};

std::string metrics_rows_to_json(const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> metrics_rows_from_json(const std::string& text);

}  // namespace gpgreeks

#endif
