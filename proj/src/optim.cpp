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

#include "optim.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gpgreeks {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn,
                             const Eigen::VectorXd& x0, const Eigen::VectorXd& step0,
                             int max_evals, double ftol_rel) {
    const int n = static_cast<int>(x0.size());
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, shrink = 0.5;

    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        double v = fn(x);
        if (std::isnan(v)) v = 1e100;
        return v;
    };

    std::vector<Eigen::VectorXd> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    fs[0] = eval(xs[0]);
    for (int i = 0; i < n; ++i) {
        xs[i + 1][i] += step0[i];
        fs[i + 1] = eval(xs[i + 1]);
    }

    std::vector<int> order(n + 1);
    for (int i = 0; i <= n; ++i) order[i] = i;

    while (evals < max_evals) {
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        const int best = order[0], worst = order[n], second_worst = order[n - 1];

        if (std::abs(fs[worst] - fs[best]) <=
            ftol_rel * (std::abs(fs[best]) + std::abs(fs[worst]) + 1e-30))
            break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += xs[i];
        centroid /= n;

        Eigen::VectorXd xr = centroid + alpha * (centroid - xs[worst]);
        const double fr = eval(xr);

        if (fr < fs[best]) {
            Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
            const double fe = eval(xe);
            if (fe < fr) {
                xs[worst] = xe;
                fs[worst] = fe;
            } else {
                xs[worst] = xr;
                fs[worst] = fr;
            }
        } else if (fr < fs[second_worst]) {
            xs[worst] = xr;
            fs[worst] = fr;
        } else {
            const bool outside = fr < fs[worst];
            Eigen::VectorXd xc;
            if (outside) xc = centroid + rho * (xr - centroid);
            else xc = centroid - rho * (centroid - xs[worst]);
            const double fc = eval(xc);
            if (fc < (outside ? fr : fs[worst])) {
                xs[worst] = xc;
                fs[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    xs[i] = xs[best] + shrink * (xs[i] - xs[best]);
                    fs[i] = eval(xs[i]);
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (fs[i] < fs[best]) best = i;
    return {xs[best], fs[best], evals};
}

}  // namespace gpgreeks
