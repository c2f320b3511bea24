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

#include "gpgreeks/kernel.hpp"

#include <cmath>

#include "gpgreeks/errors.hpp"

namespace gpgreeks {

namespace {

constexpr double kSqrt5 = 2.2360679774997896964;
constexpr double kSqrt3 = 1.7320508075688772935;

void check_dims(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                const Eigen::Ref<const Eigen::VectorXd>& x2) {
    if (x.size() != spec.dim() || x2.size() != spec.dim())
        throw InvalidArgument("kernel: input dimension does not match lengthscales");
}

void check_coord(const KernelSpec& spec, int j) {
    if (j < 0 || j >= spec.dim()) throw InvalidArgument("kernel: coordinate index out of range");
}

// One-dimensional correlation factor of the product kernel, as a function of
// the scaled distance u = |r| / l >= 0.
double factor(KernelFamily fam, double u) {
    switch (fam) {
        case KernelFamily::SE:
            return std::exp(-0.5 * u * u);
        case KernelFamily::Matern52:
            return (1.0 + kSqrt5 * u + (5.0 / 3.0) * u * u) * std::exp(-kSqrt5 * u);
        case KernelFamily::Matern32:
            return (1.0 + kSqrt3 * u) * std::exp(-kSqrt3 * u);
    }
    return 0.0;
}

// d factor / dr with r = x_j - x'_j (signed), l the lengthscale.
double factor_dr(KernelFamily fam, double r, double l) {
    const double u = std::abs(r) / l;
    switch (fam) {
        case KernelFamily::SE:
            return -(r / (l * l)) * std::exp(-0.5 * u * u);
        case KernelFamily::Matern52:
            return -(5.0 / 3.0) * (r / (l * l) + kSqrt5 * r * std::abs(r) / (l * l * l)) *
                   std::exp(-kSqrt5 * u);
        case KernelFamily::Matern32:
            return -3.0 * (r / (l * l)) * std::exp(-kSqrt3 * u);
    }
    return 0.0;
}

// -d2 factor / dr2, i.e. the cross derivative d2/(dx_j dx'_j) of the factor.
double factor_cross(KernelFamily fam, double r, double l) {
    const double u = std::abs(r) / l;
    const double l2 = l * l;
    switch (fam) {
        case KernelFamily::SE:
            return (1.0 / l2 - r * r / (l2 * l2)) * std::exp(-0.5 * u * u);
        case KernelFamily::Matern52:
            return (5.0 / 3.0) *
                   (1.0 / l2 + kSqrt5 * std::abs(r) / (l2 * l) - 5.0 * r * r / (l2 * l2)) *
                   std::exp(-kSqrt5 * u);
        case KernelFamily::Matern32:
            return 3.0 * (1.0 / l2 - kSqrt3 * std::abs(r) / (l2 * l)) * std::exp(-kSqrt3 * u);
    }
    return 0.0;
}

}  // namespace

KernelSpec::KernelSpec(KernelFamily fam, Eigen::VectorXd ls, double s2)
    : family(fam), lengthscales(std::move(ls)), process_variance(s2) {
    validate();
}

void KernelSpec::validate() const {
    if (lengthscales.size() == 0) throw InvalidArgument("KernelSpec: empty lengthscales");
    if (!(process_variance > 0.0)) throw InvalidArgument("KernelSpec: process_variance must be > 0");
    for (int k = 0; k < lengthscales.size(); ++k)
        if (!(lengthscales[k] > 0.0)) throw InvalidArgument("KernelSpec: lengthscales must be > 0");
}

std::string to_string(KernelFamily family) {
    switch (family) {
        case KernelFamily::SE: return "se";
        case KernelFamily::Matern52: return "m52";
        case KernelFamily::Matern32: return "m32";
    }
    return "?";
}

KernelFamily kernel_family_from_string(const std::string& name) {
    if (name == "se") return KernelFamily::SE;
    if (name == "m52") return KernelFamily::Matern52;
    if (name == "m32") return KernelFamily::Matern32;
    throw InvalidArgument("unknown kernel family: '" + name + "' (expected se|m52|m32)");
}

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& x2) {
    check_dims(spec, x, x2);
    double v = spec.process_variance;
    for (int k = 0; k < spec.dim(); ++k) {
        const double u = std::abs(x[k] - x2[k]) / spec.lengthscales[k];
        v *= factor(spec.family, u);
    }
    return v;
}

double kernel_grad(const KernelSpec& spec, int j, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& x2) {
    check_dims(spec, x, x2);
    check_coord(spec, j);
    double v = spec.process_variance;
    for (int k = 0; k < spec.dim(); ++k) {
        const double r = x[k] - x2[k];
        if (k == j) {
            v *= factor_dr(spec.family, r, spec.lengthscales[k]);
        } else {
            v *= factor(spec.family, std::abs(r) / spec.lengthscales[k]);
        }
    }
    return v;
}

double kernel_grad_prior_variance(const KernelSpec& spec, int j) {
    check_coord(spec, j);
    const double l2 = spec.lengthscales[j] * spec.lengthscales[j];
    switch (spec.family) {
        case KernelFamily::SE: return spec.process_variance / l2;
        case KernelFamily::Matern52: return (5.0 / 3.0) * spec.process_variance / l2;
        case KernelFamily::Matern32: return 3.0 * spec.process_variance / l2;
    }
    return 0.0;
}

double kernel_cross_grad(const KernelSpec& spec, int j,
                         const Eigen::Ref<const Eigen::VectorXd>& x,
                         const Eigen::Ref<const Eigen::VectorXd>& x2, bool* degraded) {
    check_dims(spec, x, x2);
    check_coord(spec, j);
    double v = spec.process_variance;
    for (int k = 0; k < spec.dim(); ++k) {
        const double r = x[k] - x2[k];
        if (k == j) {
            if (spec.family == KernelFamily::Matern32 && r == 0.0 && degraded) *degraded = true;
            v *= factor_cross(spec.family, r, spec.lengthscales[k]);
        } else {
            v *= factor(spec.family, std::abs(r) / spec.lengthscales[k]);
        }
    }
    return v;
}

Eigen::MatrixXd kernel_gram(const KernelSpec& spec, const Eigen::MatrixXd& xs) {
    const Eigen::Index n = xs.rows();
    Eigen::MatrixXd K(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        K(i, i) = spec.process_variance;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = kernel_eval(spec, xs.row(i).transpose(), xs.row(j).transpose());
            K(i, j) = v;
            K(j, i) = v;
        }
    }
    return K;
}

Eigen::VectorXd kernel_cross_vector(const KernelSpec& spec, const Eigen::MatrixXd& xs,
                                    const Eigen::Ref<const Eigen::VectorXd>& x_star) {
    Eigen::VectorXd k(xs.rows());
    for (Eigen::Index i = 0; i < xs.rows(); ++i)
        k[i] = kernel_eval(spec, x_star, xs.row(i).transpose());
    return k;
}

Eigen::VectorXd kernel_grad_vector(const KernelSpec& spec, int j, const Eigen::MatrixXd& xs,
                                   const Eigen::Ref<const Eigen::VectorXd>& x_star) {
    Eigen::VectorXd g(xs.rows());
    for (Eigen::Index i = 0; i < xs.rows(); ++i)
        g[i] = kernel_grad(spec, j, x_star, xs.row(i).transpose());
    return g;
}

}  // namespace gpgreeks
