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

#ifndef GPGREEKS_GREEKS_HPP
#define GPGREEKS_GREEKS_HPP

#include <string>
#include <vector>

#include "gpgreeks/gp.hpp"

namespace gpgreeks {

enum class GreekKind { Price, Delta, Theta, Gamma };

std::string to_string(GreekKind kind);
GreekKind greek_kind_from_string(const std::string& name);

/// One sensitivity with its posterior variance at one site.
struct GreekEstimate {
    double value = 0.0;
    double variance = 0.0;  // >= 0 after clamping
    GreekKind kind = GreekKind::Price;
    double t = 0.0;  // site, model coordinates
    double s = 0.0;
    /// Set when the estimate leans on a derivative the kernel does not
    /// classically possess (finite-difference Gamma on a Matern-3/2 model).
    bool degraded = false;
};

struct CredibleBand {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
};

/// Posterior of dP/dx_j at x_star: mean = d trend/dx_j + dk/dx_j . alpha,
/// variance = prior gradient variance minus the explained part, clamped at 0.
/// Reads the model's cached factorization; no refitting.
GreekEstimate gradient_posterior(const GpModel& model, int j,
                                 const Eigen::Ref<const Eigen::VectorXd>& x_star);

/// dP/dS: gradient_posterior in the spot coordinate.
GreekEstimate delta(const GpModel& model, double tcoord, double s);

/// Calendar-time Theta, sign-normalized across time conventions: -dP/dtau
/// for TimeToMaturity models, +dP/dt for Calendar models. Negative for plain
/// calls before maturity.
GreekEstimate theta(const GpModel& model, double tcoord, double s);

/// Posterior price (predict) packaged as a GreekEstimate.
GreekEstimate price(const GpModel& model, double tcoord, double s);

/// Central finite-difference Gamma over {S-h, S, S+h} with the variance
/// propagated through the 3-site posterior covariance: w = (1,-2,1)/h^2,
/// var = w' C w. Matern-3/2 models mark the estimate degraded.
GreekEstimate gamma_fd(const GpModel& model, double tcoord, double s, double delta_h);

/// Symmetric band value +- z sqrt(variance) with z the exact two-sided
/// normal quantile (level 0.95 -> 1.959964). level must lie in (0,1).
CredibleBand credible_band(const GreekEstimate& est, double level);

/// CSV columns: t,S,kind,value,variance,lo95,hi95.
void greek_surface_to_csv(const std::string& path, const std::vector<GreekEstimate>& surface);

}  // namespace gpgreeks

#endif
