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

#include "gpgreeks/greeks.hpp"

#include <cmath>

#include "gpgreeks/errors.hpp"
#include "gpgreeks/io.hpp"
#include "gpgreeks/stats.hpp"

namespace gpgreeks {

std::string to_string(GreekKind kind) {
    switch (kind) {
        case GreekKind::Price: return "price";
        case GreekKind::Delta: return "delta";
        case GreekKind::Theta: return "theta";
        case GreekKind::Gamma: return "gamma";
    }
    return "?";
}

GreekKind greek_kind_from_string(const std::string& name) {
    if (name == "price") return GreekKind::Price;
    if (name == "delta") return GreekKind::Delta;
    if (name == "theta") return GreekKind::Theta;
    if (name == "gamma") return GreekKind::Gamma;
    throw InvalidArgument("unknown greek kind: '" + name + "'");
}

GreekEstimate gradient_posterior(const GpModel& model, int j,
                                 const Eigen::Ref<const Eigen::VectorXd>& x_star) {
    const Eigen::VectorXd kg =
        kernel_grad_vector(model.kernel(), j, model.training().inputs, x_star);
    GreekEstimate est;
    est.value = model.trend_grad(j, x_star) + kg.dot(model.alpha());
    const Eigen::VectorXd v = model.chol_factor().triangularView<Eigen::Lower>().solve(kg);
    double var = kernel_grad_prior_variance(model.kernel(), j) - v.squaredNorm();
    if (var < 0.0) var = 0.0;
    est.variance = var;
    est.t = x_star[0];
    est.s = x_star[1];
    return est;
}

GreekEstimate delta(const GpModel& model, double tcoord, double s) {
    Eigen::Vector2d x(tcoord, s);
    GreekEstimate est = gradient_posterior(model, 1, x);
    est.kind = GreekKind::Delta;
    return est;
}

GreekEstimate theta(const GpModel& model, double tcoord, double s) {
    Eigen::Vector2d x(tcoord, s);
    GreekEstimate est = gradient_posterior(model, 0, x);
    // dP/dtau = -dP/dt: normalize so the caller always sees calendar Theta.
    if (model.time_axis() == TimeAxis::TimeToMaturity) est.value = -est.value;
    est.kind = GreekKind::Theta;
    return est;
}

GreekEstimate price(const GpModel& model, double tcoord, double s) {
    Eigen::Vector2d x(tcoord, s);
    auto [mean, var] = model.predict(x);
    GreekEstimate est;
    est.value = mean;
    est.variance = var;
    est.kind = GreekKind::Price;
    est.t = tcoord;
    est.s = s;
    return est;
}

GreekEstimate gamma_fd(const GpModel& model, double tcoord, double s, double delta_h) {
    if (!(delta_h > 0.0)) throw InvalidArgument("gamma_fd: delta_h must be > 0");
    Eigen::MatrixXd sites(3, 2);
    sites << tcoord, s - delta_h, tcoord, s, tcoord, s + delta_h;
    Eigen::Vector3d means;
    for (int i = 0; i < 3; ++i) means[i] = model.predict(sites.row(i).transpose()).first;
    const Eigen::MatrixXd cov = model.predict_cov(sites);
    const double inv_h2 = 1.0 / (delta_h * delta_h);
    Eigen::Vector3d w(inv_h2, -2.0 * inv_h2, inv_h2);

    GreekEstimate est;
    est.value = w.dot(means);
    est.variance = std::max(0.0, w.dot(cov * w));
    est.kind = GreekKind::Gamma;
    est.t = tcoord;
    est.s = s;
    est.degraded = model.kernel().family == KernelFamily::Matern32;
    return est;
}

CredibleBand credible_band(const GreekEstimate& est, double level) {
    if (!(level > 0.0) || !(level < 1.0))
        throw InvalidArgument("credible_band: level must be in (0,1)");
    const double z = two_sided_z(level);
    const double half = z * std::sqrt(est.variance);
    return {est.value - half, est.value + half, level};
}

void greek_surface_to_csv(const std::string& path, const std::vector<GreekEstimate>& surface) {
    std::string out = "t,S,kind,value,variance,lo95,hi95\n";
    for (const auto& est : surface) {
        const CredibleBand band = credible_band(est, 0.95);
        out += format_double(est.t) + "," + format_double(est.s) + "," + to_string(est.kind) +
               "," + format_double(est.value) + "," + format_double(est.variance) + "," +
               format_double(band.lower) + "," + format_double(band.upper) + "\n";
    }
    atomic_write_text(path, out);
}

}  // namespace gpgreeks
