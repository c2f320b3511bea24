#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "gpgreeks/bs.hpp"
#include "gpgreeks/errors.hpp"
#include "gpgreeks/hedging.hpp"
#include "gpgreeks/io.hpp"
#include "gpgreeks/rng.hpp"

using namespace gpgreeks;

namespace {

const BsParams kStudy{0.04, 0.22, 50.0, 0.4, 0.06};

/// Fine-grid GBM scenario with its own substream; 10 fine steps per
/// rebalance period.
PricePath make_path(std::uint64_t seed, std::uint64_t index, double s0, int n_fine = 200,
                    double horizon = 0.4) {
    PricePath path;
    path.times.resize(n_fine + 1);
    path.values.resize(n_fine + 1);
    const double dt = horizon / n_fine;
    Rng rng(seed, StreamId::HedgePaths, index);
    double s = s0;
    path.times[0] = 0.0;
    path.values[0] = s;
    const double a = (kStudy.mu - 0.5 * kStudy.sigma * kStudy.sigma) * dt;
    const double b = kStudy.sigma * std::sqrt(dt);
    for (int k = 1; k <= n_fine; ++k) {
        s *= std::exp(a + b * rng.normal());
        path.times[k] = k * dt;
        path.values[k] = s;
    }
    return path;
}

Eigen::VectorXd rebalance_grid(int periods, double horizon = 0.4) {
    Eigen::VectorXd t(periods + 1);
    for (int k = 0; k <= periods; ++k) t[k] = horizon * k / periods;
    return t;
}

const PayoffFn kCall = [](double s) { return call_payoff(s, 50.0); };

}  // namespace

TEST_CASE("cash-only strategy at zero rate keeps the initial wealth") {
    PricePath path = make_path(1, 0, 50.0);
    const Eigen::VectorXd times = rebalance_grid(20);
    HedgeOutcome out = simulate_hedge([](double, double) { return 0.0; }, kCall, path, times,
                                      0.0, 3.0);
    CHECK(out.w_terminal == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(out.e_total == doctest::Approx(3.0 - kCall(path.values[200])).epsilon(1e-12));
    CHECK(out.n_trades == 0);
}

TEST_CASE("holding one share replicates a forward at zero rate") {
    PricePath path = make_path(2, 1, 50.0);
    const Eigen::VectorXd times = rebalance_grid(20);
    const PayoffFn forward = [](double s) { return s - 50.0; };
    HedgeOutcome out = simulate_hedge([](double, double) { return 1.0; }, forward, path, times,
                                      0.0, path.values[0] - 50.0);
    CHECK(std::abs(out.e_total) < 1e-10);
}

TEST_CASE("exact-delta hedging error shrinks with the rebalance frequency") {
    const DeltaFn bs = [&](double t, double s) { return bs_delta(kStudy, 0.4 - t, s); };
    double coarse = 0.0, fine = 0.0;
    const int n_paths = 300;
    for (int i = 0; i < n_paths; ++i) {
        PricePath path = make_path(7, static_cast<std::uint64_t>(i), 50.0, 400);
        const double w0 = bs_price(kStudy, 0.4, path.values[0]);
        const double e4 =
            simulate_hedge(bs, kCall, path, rebalance_grid(4), kStudy.r, w0).e_total;
        const double e40 =
            simulate_hedge(bs, kCall, path, rebalance_grid(40), kStudy.r, w0).e_total;
        coarse += e4 * e4;
        fine += e40 * e40;
    }
    CHECK(fine < coarse / 2.0);
}

TEST_CASE("decomposition identity and the Remark-4 degenerate case") {
    const DeltaFn bench = [&](double t, double s) { return bs_delta(kStudy, 0.4 - t, s); };
    const DeltaFn hat = [&](double t, double s) { return bench(t, s) + 0.03 * std::sin(s + t); };
    const Eigen::VectorXd times = rebalance_grid(20);

    for (int i = 0; i < 50; ++i) {
        PricePath path = make_path(11, static_cast<std::uint64_t>(i), 50.0);
        const double w0 = bs_price(kStudy, 0.4, path.values[0]);
        HedgeOutcome out = decompose_error(hat, bench, kCall, path, times, kStudy.r, w0);
        CHECK(std::abs(out.e_total - (out.e_disc + out.e_approx)) < 1e-10);

        HedgeOutcome same = decompose_error(bench, bench, kCall, path, times, kStudy.r, w0);
        CHECK(same.e_approx == 0.0);
        CHECK(same.e_total == doctest::Approx(same.e_disc));

        // The discretization part tracks the benchmark hedge run (compounding
        // of the approximation leg differs at order r*T).
        HedgeOutcome bench_run = simulate_hedge(bench, kCall, path, times, kStudy.r, w0);
        CHECK(std::abs(out.e_disc - bench_run.e_total) <
              0.05 * std::max(1.0, std::abs(out.e_approx)) + 5e-3);
    }
}

TEST_CASE("constant delta offset telescopes into the X increment") {
    const DeltaFn bench = [&](double t, double s) { return bs_delta(kStudy, 0.4 - t, s); };
    const double c = 0.07;
    const DeltaFn hat = [&](double t, double s) { return bench(t, s) + c; };
    const Eigen::VectorXd times = rebalance_grid(10);

    PricePath path = make_path(13, 3, 50.0);
    HedgeOutcome out = decompose_error(hat, bench, kCall, path, times, kStudy.r,
                                       bs_price(kStudy, 0.4, path.values[0]));

    // Independent recomputation of X_T - X_0 from the fine path.
    double carry = 0.0;
    for (Eigen::Index j = 0; j + 1 < path.times.size(); ++j)
        carry += 0.5 * (path.values[j] + path.values[j + 1]) *
                 (path.times[j + 1] - path.times[j]);
    const double x_increment = path.values[path.values.size() - 1] - path.values[0] -
                               kStudy.r * carry;
    CHECK(out.e_approx == doctest::Approx(c * x_increment).epsilon(1e-10));
}

TEST_CASE("unbiased synthetic noise: moment identities of the decomposition") {
    // delta_hat = bench + seeded zero-mean noise independent of the path.
    const DeltaFn bench = [&](double t, double s) { return bs_delta(kStudy, 0.4 - t, s); };
    const double noise_sd = 0.05;
    const Eigen::VectorXd times = rebalance_grid(20);
    const int n_paths = 4000;

    std::vector<double> e_disc(n_paths), e_hat(n_paths);
    double qv_sum = 0.0;
    for (int i = 0; i < n_paths; ++i) {
        PricePath path = make_path(17, static_cast<std::uint64_t>(i), 50.0);
        Rng noise_rng(99, StreamId::Synthetic, static_cast<std::uint64_t>(i));
        // One draw per rebalance time, independent of the path state.
        std::vector<double> eps(20);
        for (auto& e : eps) e = noise_rng.normal(0.0, noise_sd);
        const DeltaFn hat = [&](double t, double s) {
            const int k = std::min(19, static_cast<int>(std::lround(t / 0.02)));
            return bench(t, s) + eps[static_cast<size_t>(k)];
        };
        HedgeOutcome out = decompose_error(hat, bench, kCall, path, times, kStudy.r,
                                           bs_price(kStudy, 0.4, path.values[0]));
        e_disc[static_cast<size_t>(i)] = out.e_disc;
        e_hat[static_cast<size_t>(i)] = out.e_approx;
        // Realized quadratic variation of S along the fine grid.
        for (Eigen::Index j = 0; j + 1 < path.values.size(); ++j) {
            const double ds = path.values[j + 1] - path.values[j];
            qv_sum += ds * ds;
        }
    }
    auto mean = [](const std::vector<double>& v) {
        double m = 0;
        for (double x : v) m += x;
        return m / v.size();
    };
    auto var = [&](const std::vector<double>& v) {
        const double m = mean(v);
        double ss = 0;
        for (double x : v) ss += (x - m) * (x - m);
        return ss / (v.size() - 1);
    };

    // E[e_hat] = 0 within 3 standard errors.
    const double se_mean = std::sqrt(var(e_hat) / n_paths);
    CHECK(std::abs(mean(e_hat)) < 3 * se_mean);

    // Var(e_hat) tracks sigma^2 E[<S>_T] within 10%.
    const double expected = noise_sd * noise_sd * (qv_sum / n_paths);
    CHECK(var(e_hat) == doctest::Approx(expected).epsilon(0.10));

    // Cov(e_disc, e_hat) = 0 within 3 standard errors.
    const double md = mean(e_disc), mh = mean(e_hat);
    double cov = 0.0, cov_var = 0.0;
    for (int i = 0; i < n_paths; ++i) {
        const double p = (e_disc[static_cast<size_t>(i)] - md) * (e_hat[static_cast<size_t>(i)] - mh);
        cov += p;
    }
    cov /= n_paths - 1;
    for (int i = 0; i < n_paths; ++i) {
        const double p = (e_disc[static_cast<size_t>(i)] - md) * (e_hat[static_cast<size_t>(i)] - mh);
        cov_var += (p - cov) * (p - cov);
    }
    cov_var /= (n_paths - 1.0) * n_paths;
    CHECK(std::abs(cov) < 3 * std::sqrt(cov_var));
}

TEST_CASE("empirical moment proxies") {
    const DeltaFn bench = [&](double t, double s) { return bs_delta(kStudy, 0.4 - t, s); };
    Eigen::MatrixXd paths = bs_simulate_paths(kStudy, 50.0, 0.02, 20, 400, true, 23,
                                              StreamId::Synthetic);
    const auto sigma_fn = [](double, double) { return 0.22; };

    // Perfect delta: both proxies vanish identically.
    auto [mu0, v0] = empirical_moments(bench, bench, paths, 0.02, sigma_fn, kStudy.mu, kStudy.r);
    CHECK(mu0 == 0.0);
    CHECK(v0 == 0.0);

    // mu = r kills the drift prefactor regardless of the estimator.
    const DeltaFn off = [&](double t, double s) { return bench(t, s) + 0.1; };
    auto [mu1, v1] = empirical_moments(off, bench, paths, 0.02, sigma_fn, kStudy.r, kStudy.r);
    CHECK(mu1 == 0.0);
    CHECK(v1 > 0.0);

    // Constant offset c: V_E = c^2 * sum_k dt mean[sigma^2 S^2].
    auto [mu2, v2] = empirical_moments(off, bench, paths, 0.02, sigma_fn, kStudy.mu, kStudy.r);
    double acc = 0.0;
    for (int k = 0; k < 20; ++k) {
        double m = 0.0;
        for (int i = 0; i < paths.rows(); ++i)
            m += 0.22 * 0.22 * paths(i, k) * paths(i, k);
        acc += 0.02 * m / paths.rows();
    }
    CHECK(v2 == doctest::Approx(0.01 * acc).epsilon(1e-10));
    CHECK(mu2 != 0.0);
}

TEST_CASE("sticky hedging limits") {
    const DeltaFn bench = [&](double t, double s) { return bs_delta(kStudy, 0.4 - t, s); };
    PricePath path = make_path(29, 5, 50.0);
    const Eigen::VectorXd times = rebalance_grid(20);
    const double w0 = bs_price(kStudy, 0.4, path.values[0]);

    // Infinitely wide band: a single initial trade.
    const EstimateFn wide = [&](double t, double s) {
        GreekEstimate est;
        est.value = bench(t, s);
        est.variance = 1.0;
        est.kind = GreekKind::Delta;
        return est;
    };
    HedgeOutcome lazy = sticky_hedge(wide, 1.0, kCall, path, times, kStudy.r, w0);
    CHECK(lazy.n_trades == 1);

    // Zero-width band: identical to plain hedging with the band center.
    const EstimateFn point = [&](double t, double s) {
        GreekEstimate est;
        est.value = bench(t, s);
        est.variance = 0.0;
        est.kind = GreekKind::Delta;
        return est;
    };
    HedgeOutcome eager = sticky_hedge(point, 0.95, kCall, path, times, kStudy.r, w0);
    HedgeOutcome plain = simulate_hedge(bench, kCall, path, times, kStudy.r, w0);
    CHECK(eager.e_total == doctest::Approx(plain.e_total).epsilon(1e-12));
    CHECK(eager.n_trades == 20);

    // A moderately wide band trades strictly less often.
    const EstimateFn banded = [&](double t, double s) {
        GreekEstimate est;
        est.value = bench(t, s);
        est.variance = 0.0004;  // sd 0.02
        est.kind = GreekKind::Delta;
        return est;
    };
    HedgeOutcome sticky = sticky_hedge(banded, 0.95, kCall, path, times, kStudy.r, w0);
    CHECK(sticky.n_trades < eager.n_trades);
    CHECK(sticky.n_trades >= 1);
}

TEST_CASE("hedge outcome export") {
    std::vector<HedgeOutcome> outcomes;
    for (int i = 0; i < 5; ++i) {
        HedgeOutcome o;
        o.path_id = i;
        o.w_terminal = 1.0 + i;
        o.e_total = i % 2 == 0 ? 0.5 : -0.5;
        o.e_disc = 0.25;
        o.e_approx = o.e_total - 0.25;
        o.n_trades = 10;
        outcomes.push_back(o);
    }
    const std::string path =
        (std::filesystem::temp_directory_path() / "gpgreeks_hedge_test.csv").string();
    hedge_outcomes_to_csv(path, outcomes);
    CsvTable table = read_csv(path);
    CHECK(table.header == std::vector<std::string>{"path_id", "W_T", "E_T", "E_d", "E_hat",
                                                   "n_trades"});
    CHECK(table.rows.size() == 5);
    std::remove(path.c_str());

    const std::string summary = hedge_summary_json(outcomes);
    CHECK(summary.find("\"E_T\"") != std::string::npos);
    CHECK(summary.find("one_sided_l1") != std::string::npos);
}

TEST_CASE("hedge input validation") {
    PricePath path = make_path(31, 0, 50.0);
    Eigen::VectorXd bad_times(3);
    bad_times << 0.0, 0.2105, 0.4;  // 0.2105 is off the fine grid (step 0.002)
    CHECK_THROWS_AS(simulate_hedge([](double, double) { return 0.0; }, kCall, path, bad_times,
                                   0.0, 1.0),
                    InvalidArgument);
    Eigen::VectorXd decreasing(3);
    decreasing << 0.0, 0.2, 0.1;
    CHECK_THROWS_AS(simulate_hedge([](double, double) { return 0.0; }, kCall, path, decreasing,
                                   0.0, 1.0),
                    InvalidArgument);
}
