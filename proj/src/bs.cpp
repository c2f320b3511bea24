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

#include "gpgreeks/bs.hpp"

#include <cmath>

#include "gpgreeks/errors.hpp"
#include "gpgreeks/stats.hpp"

namespace gpgreeks {

namespace {

void d1d2(const BsParams& p, double tau, double s, double& d1, double& d2) {
    const double sig_sqrt = p.sigma * std::sqrt(tau);
    d1 = (std::log(s / p.strike) + (p.r + 0.5 * p.sigma * p.sigma) * tau) / sig_sqrt;
    d2 = d1 - sig_sqrt;
}

void require_positive_tau(double tau, const char* who) {
    if (!(tau > 0.0)) throw InvalidArgument(std::string(who) + ": tau must be > 0");
}

}  // namespace

double bs_price(const BsParams& p, double tau, double s) {
    if (tau < 0.0) throw InvalidArgument("bs_price: tau must be >= 0");
    if (s <= 0.0) return 0.0;
    if (tau == 0.0) return call_payoff(s, p.strike);
    double d1, d2;
    d1d2(p, tau, s, d1, d2);
    return s * norm_cdf(d1) - p.strike * std::exp(-p.r * tau) * norm_cdf(d2);
}

double bs_delta(const BsParams& p, double tau, double s) {
    if (tau < 0.0) throw InvalidArgument("bs_delta: tau must be >= 0");
    if (s <= 0.0) return 0.0;
    if (tau == 0.0) return s > p.strike ? 1.0 : 0.0;
    double d1, d2;
    d1d2(p, tau, s, d1, d2);
    return norm_cdf(d1);
}

double bs_theta(const BsParams& p, double tau, double s) {
    require_positive_tau(tau, "bs_theta");
    double d1, d2;
    d1d2(p, tau, s, d1, d2);
    return -s * norm_pdf(d1) * p.sigma / (2.0 * std::sqrt(tau)) -
           p.r * p.strike * std::exp(-p.r * tau) * norm_cdf(d2);
}

double bs_gamma(const BsParams& p, double tau, double s) {
    require_positive_tau(tau, "bs_gamma");
    double d1, d2;
    d1d2(p, tau, s, d1, d2);
    return norm_pdf(d1) / (s * p.sigma * std::sqrt(tau));
}

double bs_vega(const BsParams& p, double tau, double s) {
    require_positive_tau(tau, "bs_vega");
    double d1, d2;
    d1d2(p, tau, s, d1, d2);
    return s * std::sqrt(tau) * norm_pdf(d1);
}

McSample bs_mc_sample(const BsParams& p, double tau, double s, int n_inner, Rng& rng) {
    if (tau == 0.0) return {call_payoff(s, p.strike), 0.0, n_inner};
    if (n_inner < 2) throw InvalidArgument("bs_mc_sample: n_inner must be >= 2");
    const double disc = std::exp(-p.r * tau);
    const double drift = (p.r - 0.5 * p.sigma * p.sigma) * tau;
    const double vol = p.sigma * std::sqrt(tau);
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n_inner; ++i) {
        const double st = s * std::exp(drift + vol * rng.normal());
        const double pay = disc * call_payoff(st, p.strike);
        sum += pay;
        sumsq += pay * pay;
    }
    const double mean = sum / n_inner;
    double var = (sumsq - n_inner * mean * mean) / (n_inner - 1);
    if (var < 0.0) var = 0.0;  // round-off on constant payoffs
    return {mean, var / n_inner, n_inner};
}

Eigen::MatrixXd bs_simulate_paths(const BsParams& p, double s0, double dt, int n_steps,
                                  int n_paths, bool physical_measure, std::uint64_t master_seed,
                                  StreamId stream, std::uint64_t index_offset) {
    if (n_steps < 1) throw InvalidArgument("bs_simulate_paths: n_steps must be >= 1");
    const double drift = physical_measure ? p.mu : p.r;
    const double a = (drift - 0.5 * p.sigma * p.sigma) * dt;
    const double b = p.sigma * std::sqrt(dt);
    Eigen::MatrixXd paths(n_paths, n_steps + 1);
    for (int i = 0; i < n_paths; ++i) {
        Rng rng(master_seed, stream, index_offset + static_cast<std::uint64_t>(i));
        double s = s0;
        paths(i, 0) = s;
        for (int k = 1; k <= n_steps; ++k) {
            s *= std::exp(a + b * rng.normal());
            paths(i, k) = s;
        }
    }
    return paths;
}

double implied_vol(double price, double tau, double s, double strike, double r) {
    require_positive_tau(tau, "implied_vol");
    const double lower = call_payoff(s - strike * std::exp(-r * tau), 0.0);
    if (!(price > lower) || !(price < s))
        throw NoSolution("implied_vol: price outside no-arbitrage bounds");

    BsParams p;
    p.r = r;
    p.strike = strike;
    auto f = [&](double sig) {
        p.sigma = sig;
        return bs_price(p, tau, s) - price;
    };

    double lo = 1e-9, hi = 1.0;
    while (f(hi) < 0.0 && hi < 64.0) hi *= 2.0;
    if (f(hi) < 0.0) throw NoSolution("implied_vol: no root below sigma = 64");

    // Bisection with a Newton polish; bs_price is monotone in sigma.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) < 1e-10) return mid;
        (fm < 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-14) break;
    }
    double sig = 0.5 * (lo + hi);
    for (int it = 0; it < 5; ++it) {
        p.sigma = sig;
        const double v = bs_vega(p, tau, s);
        if (v <= 0.0) break;
        const double step = f(sig) / v;
        sig -= step;
        if (sig <= 0.0) {
            sig = 0.5 * (lo + hi);
            break;
        }
        if (std::abs(step) < 1e-14) break;
    }
    return sig;
}

double implied_delta(double price, double tau, double s, double strike, double r) {
    BsParams p;
    p.r = r;
    p.strike = strike;
    p.sigma = implied_vol(price, tau, s, strike, r);
    return bs_delta(p, tau, s);
}

}  // namespace gpgreeks
