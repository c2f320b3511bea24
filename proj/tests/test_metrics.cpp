#include <doctest.h>

#include <cmath>

#include "gpgreeks/errors.hpp"
#include "gpgreeks/metrics.hpp"
#include "gpgreeks/rng.hpp"

using namespace gpgreeks;

TEST_CASE("rimse") {
    std::vector<double> bench{0.1, 0.5, 0.9};
    CHECK(rimse(bench, bench) == 0.0);
    std::vector<double> shifted{0.1 + 0.02, 0.5 + 0.02, 0.9 + 0.02};
    CHECK(rimse(shifted, bench) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK_THROWS_AS(rimse({1.0}, {1.0, 2.0}), InvalidArgument);
}

TEST_CASE("mad is robust to a single outlier among 101 sites") {
    std::vector<double> bench(101, 0.0), est(101, 0.0);
    for (int i = 0; i < 101; ++i) est[static_cast<size_t>(i)] = (i % 2 ? 0.01 : -0.01);
    const double before = mad(est, bench);
    est[50] = 1000.0;  // one extreme site
    CHECK(mad(est, bench) == doctest::Approx(before).epsilon(1e-12));
    CHECK(before == doctest::Approx(0.01));

    // Even-count median: midpoint of the central order statistics.
    std::vector<double> e2{1.0, 2.0, 3.0, 10.0}, b2(4, 0.0);
    CHECK(mad(e2, b2) == doctest::Approx(2.5));
}

TEST_CASE("coverage limits") {
    std::vector<double> est{0.2, 0.4, 0.6}, bench{0.25, 0.35, 0.65};
    CHECK(coverage(est, {1e9, 1e9, 1e9}, bench, 0.95) == 1.0);
    CHECK(coverage(est, {0.0, 0.0, 0.0}, bench, 0.95) == 0.0);
    // Exactly one site covered.
    CHECK(coverage(est, {1e9, 0.0, 0.0}, bench, 0.95) == doctest::Approx(1.0 / 3));
}

TEST_CASE("nlpd identities") {
    std::vector<double> est{0.2, 0.4}, bench{0.3, 0.5};
    // Unit variance: mean squared error (log 1 = 0).
    CHECK(nlpd(est, {1.0, 1.0}, bench) == doctest::Approx(0.01).epsilon(1e-12));
    // Perfect estimate with variance v: log v.
    const double v = 0.04;
    CHECK(nlpd(bench, {v, v}, bench) == doctest::Approx(std::log(v)).epsilon(1e-12));
}

TEST_CASE("bias and the Jensen relation to rimse") {
    std::vector<double> bench(10, 1.0), est(10, 1.0);
    for (int i = 0; i < 10; ++i) est[static_cast<size_t>(i)] += (i % 2 ? 0.05 : -0.05);
    CHECK(bias(est, bench) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    std::vector<double> offset(10, 1.03);
    CHECK(bias(offset, bench) == doctest::Approx(0.03).epsilon(1e-12));

    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> e(25), b(25, 0.0);
        for (auto& x : e) x = rng.normal(0.0, 0.2);
        CHECK(rimse(e, b) >= std::abs(bias(e, b)) - 1e-14);
    }
}

TEST_CASE("metrics are invariant under site permutation") {
    Rng rng(5);
    std::vector<double> est(40), bench(40), var(40);
    for (int i = 0; i < 40; ++i) {
        est[static_cast<size_t>(i)] = rng.normal(0.5, 0.1);
        bench[static_cast<size_t>(i)] = rng.normal(0.5, 0.1);
        var[static_cast<size_t>(i)] = rng.uniform(0.001, 0.01);
    }
    auto rev = [](std::vector<double> v) {
        std::reverse(v.begin(), v.end());
        return v;
    };
    CHECK(rimse(est, bench) == doctest::Approx(rimse(rev(est), rev(bench))).epsilon(1e-14));
    CHECK(mad(est, bench) == doctest::Approx(mad(rev(est), rev(bench))).epsilon(1e-14));
    CHECK(coverage(est, var, bench, 0.95) ==
          doctest::Approx(coverage(rev(est), rev(var), rev(bench), 0.95)));
    CHECK(nlpd(est, var, bench) == doctest::Approx(nlpd(rev(est), rev(var), rev(bench))).epsilon(1e-14));
    CHECK(bias(est, bench) == doctest::Approx(bias(rev(est), rev(bench))).epsilon(1e-14));
}

TEST_CASE("pnl variance uses the n-1 denominator") {
    std::vector<HedgeOutcome> outcomes(2);
    outcomes[0].e_total = 1.0;
    outcomes[1].e_total = -1.0;
    CHECK(pnl_variance(outcomes) == doctest::Approx(2.0));

    std::vector<HedgeOutcome> same(5);
    for (auto& o : same) o.e_total = 0.7;
    CHECK(pnl_variance(same) == 0.0);
    CHECK_THROWS_AS(pnl_variance({HedgeOutcome{}}), InvalidArgument);
}

TEST_CASE("metrics rows JSON round trip with null columns") {
    std::vector<MetricsRow> rows(2);
    rows[0].label = "m52";
    rows[0].rimse = 0.0165;
    rows[0].mu_E = std::nan("");
    rows[1].label = "se";
    rows[1].rimse = 0.0134;
    rows[1].cvr95 = 0.7281;

    const std::string text = metrics_rows_to_json(rows);
    CHECK(text.find("null") != std::string::npos);
    const auto back = metrics_rows_from_json(text);
    REQUIRE(back.size() == 2);
    CHECK(back[0].label == "m52");
    CHECK(back[0].rimse == 0.0165);
    CHECK(std::isnan(back[0].mu_E));
    CHECK(back[1].cvr95 == 0.7281);
}
