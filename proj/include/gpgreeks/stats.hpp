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

#ifndef GPGREEKS_STATS_HPP
#define GPGREEKS_STATS_HPP

#include <cmath>

namespace gpgreeks {

inline double norm_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

/// Inverse of the standard normal CDF. Acklam's rational approximation
/// polished with one Halley step, accurate to ~1e-15 over (0,1).
/// p = 0 maps to -inf, p = 1 to +inf.
double norm_ppf(double p);

/// Two-sided quantile for a central interval of the given level,
/// i.e. norm_ppf((1 + level) / 2). level 0.95 -> 1.959964...
inline double two_sided_z(double level) { return norm_ppf(0.5 * (1.0 + level)); }

}  // namespace gpgreeks

#endif
