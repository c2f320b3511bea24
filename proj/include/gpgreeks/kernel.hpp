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

#ifndef GPGREEKS_KERNEL_HPP
#define GPGREEKS_KERNEL_HPP

#include <Eigen/Core>
#include <string>

namespace gpgreeks {

enum class KernelFamily { SE, Matern52, Matern32 };

std::string to_string(KernelFamily family);          // "se" | "m52" | "m32"
KernelFamily kernel_family_from_string(const std::string& name);

/// Anisotropic stationary covariance kernel. Immutable after construction;
/// all evaluation routines below are pure and safe to call concurrently.
///
/// Families:
///   SE   k(x,x') = s2 * exp(-sum_k u_k^2 / 2)
///   M52  k(x,x') = s2 * prod_k (1 + sqrt5*u_k + (5/3)*u_k^2) * exp(-sqrt5*u_k)
///   M32  k(x,x') = s2 * prod_k (1 + sqrt3*u_k) * exp(-sqrt3*u_k)
/// with u_k = |x_k - x'_k| / lengthscale_k computed in scaled units.
struct KernelSpec {
    KernelFamily family = KernelFamily::Matern52;
    Eigen::VectorXd lengthscales;   // one per input dimension, > 0
    double process_variance = 1.0;  // s2, price^2 units, > 0

    KernelSpec() = default;
    KernelSpec(KernelFamily fam, Eigen::VectorXd ls, double s2);

    int dim() const { return static_cast<int>(lengthscales.size()); }
    void validate() const;  // throws InvalidArgument
};

/// k(x, x2). Symmetric in its arguments, maximal (= process_variance) at
/// zero distance.
double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& x2);

/// dk/dx_j evaluated at (x, x2): derivative with respect to coordinate j of
/// the FIRST argument. Antisymmetric under swapping x_j <-> x2_j. For M32 the
/// value at x_j == x2_j is the shared one-sided limit, 0.
double kernel_grad(const KernelSpec& spec, int j, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& x2);

/// d2k/(dx_j dx'_j) at x == x': the prior variance of the gradient process in
/// coordinate j. Equals s2/l_j^2 (SE), (5/3) s2/l_j^2 (M52), 3 s2/l_j^2 (M32).
double kernel_grad_prior_variance(const KernelSpec& spec, int j);

/// Mixed second derivative d2k/(dx_j dx'_j) at (x, x2); reduces to
/// kernel_grad_prior_variance when x == x2. The M32 family has no classical
/// second derivative at x_j == x2_j; there the one-sided limit 3 s2/l_j^2 is
/// returned and *degraded (when non-null) is set.
double kernel_cross_grad(const KernelSpec& spec, int j,
                         const Eigen::Ref<const Eigen::VectorXd>& x,
                         const Eigen::Ref<const Eigen::VectorXd>& x2,
                         bool* degraded = nullptr);

/// Gram matrix of kernel_eval over the rows of xs (n x d).
Eigen::MatrixXd kernel_gram(const KernelSpec& spec, const Eigen::MatrixXd& xs);

/// Cross-covariance vector [k(x_star, xs_row_i)]_i.
Eigen::VectorXd kernel_cross_vector(const KernelSpec& spec, const Eigen::MatrixXd& xs,
                                    const Eigen::Ref<const Eigen::VectorXd>& x_star);

/// Vector of dk/dx*_j(x_star, xs_row_i) over training rows.
Eigen::VectorXd kernel_grad_vector(const KernelSpec& spec, int j, const Eigen::MatrixXd& xs,
                                   const Eigen::Ref<const Eigen::VectorXd>& x_star);

}  // namespace gpgreeks

#endif
