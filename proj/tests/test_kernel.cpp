#include <doctest.h>

#include <Eigen/Cholesky>
#include <cmath>

#include "gpgreeks/errors.hpp"
#include "gpgreeks/kernel.hpp"
#include "gpgreeks/rng.hpp"

using namespace gpgreeks;

namespace {

KernelSpec make_spec(KernelFamily fam, std::initializer_list<double> ls, double s2) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(ls.size()));
    Eigen::Index i = 0;
    for (double l : ls) v[i++] = l;
    return KernelSpec(fam, v, s2);
}

double fd_grad(const KernelSpec& spec, int j, Eigen::VectorXd x, const Eigen::VectorXd& x2,
               double h = 1e-6) {
    x[j] += h;
    const double up = kernel_eval(spec, x, x2);
    x[j] -= 2 * h;
    const double dn = kernel_eval(spec, x, x2);
    return (up - dn) / (2 * h);
}

double fd_cross(const KernelSpec& spec, int j, Eigen::VectorXd x, Eigen::VectorXd x2,
                double h = 1e-4) {
    const double xj = x[j], x2j = x2[j];
    auto at = [&](double a, double b) {
        x[j] = a;
        x2[j] = b;
        return kernel_eval(spec, x, x2);
    };
    return (at(xj + h, x2j + h) - at(xj + h, x2j - h) - at(xj - h, x2j + h) +
            at(xj - h, x2j - h)) /
           (4 * h * h);
}

const KernelFamily kFamilies[] = {KernelFamily::SE, KernelFamily::Matern52,
                                  KernelFamily::Matern32};

}  // namespace

TEST_CASE("kernel_eval basics") {
    Eigen::Vector2d x(0.3, -1.2), same(0.3, -1.2);

    for (auto fam : kFamilies) {
        auto spec = make_spec(fam, {0.7, 2.5}, 3.14);
        CHECK(kernel_eval(spec, x, same) == doctest::Approx(3.14).epsilon(1e-14));
    }

    // Frozen value of the Matern-5/2 formula at unit parameters and distance 1,
    // from a high-precision evaluation: (1 + sqrt5 + 5/3) e^{-sqrt5}.
    auto m52 = make_spec(KernelFamily::Matern52, {1.0, 1.0}, 1.0);
    Eigen::Vector2d a(0.0, 0.0), b(1.0, 0.0);
    CHECK(kernel_eval(m52, a, b) == doctest::Approx(0.52399410883182031).epsilon(1e-12));

    // Monotone decay to zero at large distance.
    auto m32 = make_spec(KernelFamily::Matern32, {1.0, 1.0}, 1.0);
    Eigen::Vector2d far(50.0, 0.0);
    CHECK(kernel_eval(m32, a, far) < 1e-30);
    double prev = 1.0;
    for (double d = 1.0; d < 20.0; d += 1.0) {
        Eigen::Vector2d xb(d, 0.0);
        const double v = kernel_eval(m32, a, xb);
        CHECK(v < prev);
        prev = v;
    }

    // Symmetry and maximum at zero distance.
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        for (auto fam : kFamilies) {
            auto spec = make_spec(fam, {rng.uniform(0.2, 3.0), rng.uniform(0.2, 3.0)},
                                  rng.uniform(0.5, 4.0));
            Eigen::Vector2d u(rng.uniform(-2, 2), rng.uniform(-2, 2));
            Eigen::Vector2d v(rng.uniform(-2, 2), rng.uniform(-2, 2));
            CHECK(kernel_eval(spec, u, v) == doctest::Approx(kernel_eval(spec, v, u)).epsilon(1e-14));
            CHECK(kernel_eval(spec, u, v) <= kernel_eval(spec, u, u) + 1e-15);
        }
    }

    Eigen::Vector3d wrong(0, 0, 0);
    CHECK_THROWS_AS(kernel_eval(m52, wrong, wrong), InvalidArgument);
}

TEST_CASE("kernel_grad matches finite differences and is antisymmetric") {
    // Frozen SE example: l=2, s2=1, d=1, x=0.5, x2=0.
    Eigen::VectorXd l1(1);
    l1 << 2.0;
    KernelSpec se1(KernelFamily::SE, l1, 1.0);
    Eigen::VectorXd x(1), x2(1);
    x << 0.5;
    x2 << 0.0;
    CHECK(kernel_grad(se1, 0, x, x2) == doctest::Approx(-0.12115415430954301).epsilon(1e-12));
    CHECK(kernel_grad(se1, 0, x, x2) == doctest::Approx(fd_grad(se1, 0, x, x2)).epsilon(1e-7));

    Rng rng(42);
    for (auto fam : kFamilies) {
        for (int rep = 0; rep < 100; ++rep) {
            auto spec = make_spec(fam, {rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0)},
                                  rng.uniform(0.5, 4.0));
            Eigen::Vector2d u(rng.uniform(-2, 2), rng.uniform(-2, 2));
            Eigen::Vector2d v(rng.uniform(-2, 2), rng.uniform(-2, 2));
            for (int j = 0; j < 2; ++j) {
                if (fam == KernelFamily::Matern32 && std::abs(u[j] - v[j]) < 1e-5) continue;
                CHECK(std::abs(kernel_grad(spec, j, u, v) - fd_grad(spec, j, u, v)) < 1e-5);
                // Antisymmetry under swapping the j-th coordinates.
                Eigen::Vector2d us = u, vs = v;
                std::swap(us[j], vs[j]);
                CHECK(kernel_grad(spec, j, us, vs) ==
                      doctest::Approx(-kernel_grad(spec, j, u, v)).epsilon(1e-12));
            }
        }
    }

    // Zero at coincidence for every family.
    for (auto fam : kFamilies) {
        auto spec = make_spec(fam, {1.0, 1.0}, 2.0);
        Eigen::Vector2d p(0.4, 0.7);
        CHECK(kernel_grad(spec, 0, p, p) == 0.0);
        CHECK(kernel_grad(spec, 1, p, p) == 0.0);
    }

    CHECK_THROWS_AS(kernel_grad(se1, 1, x, x2), InvalidArgument);
}

TEST_CASE("kernel_grad_prior_variance values and scaling") {
    auto se = make_spec(KernelFamily::SE, {1.0, 1.0}, 1.0);
    auto m32 = make_spec(KernelFamily::Matern32, {1.0, 1.0}, 1.0);
    auto m52 = make_spec(KernelFamily::Matern52, {1.0, 1.0}, 1.0);
    CHECK(kernel_grad_prior_variance(se, 0) == doctest::Approx(1.0));
    CHECK(kernel_grad_prior_variance(m32, 0) == doctest::Approx(3.0));
    CHECK(kernel_grad_prior_variance(m52, 0) == doctest::Approx(5.0 / 3.0));

    // Finite-difference oracle at coincidence (SE converges at O(h^2), the
    // Matern families at O(h) so the step is kept moderate).
    Eigen::Vector2d p(0.2, -0.3);
    CHECK(fd_cross(se, 0, p, p, 1e-4) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fd_cross(m32, 0, p, p, 1e-5) == doctest::Approx(3.0).epsilon(1e-3));
    CHECK(fd_cross(m52, 0, p, p, 1e-5) == doctest::Approx(5.0 / 3.0).epsilon(1e-3));

    // Linear in the process variance.
    for (auto fam : kFamilies) {
        auto base = make_spec(fam, {0.8, 1.7}, 1.3);
        auto scaled = make_spec(fam, {0.8, 1.7}, 1.3 * 7.0);
        for (int j = 0; j < 2; ++j)
            CHECK(kernel_grad_prior_variance(scaled, j) ==
                  doctest::Approx(7.0 * kernel_grad_prior_variance(base, j)).epsilon(1e-14));
    }
}

TEST_CASE("kernel_cross_grad against 2-D finite differences") {
    Rng rng(7);
    for (auto fam : kFamilies) {
        for (int rep = 0; rep < 100; ++rep) {
            auto spec = make_spec(fam, {rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)},
                                  rng.uniform(0.5, 4.0));
            Eigen::Vector2d u(rng.uniform(-2, 2), rng.uniform(-2, 2));
            Eigen::Vector2d v(rng.uniform(-2, 2), rng.uniform(-2, 2));
            for (int j = 0; j < 2; ++j) {
                if (fam == KernelFamily::Matern32 && std::abs(u[j] - v[j]) < 1e-3) continue;
                CHECK(std::abs(kernel_cross_grad(spec, j, u, v) - fd_cross(spec, j, u, v)) < 1e-5);
            }
        }
    }

    // Consistency with the prior gradient variance at coincidence.
    auto se = make_spec(KernelFamily::SE, {0.9, 1.4}, 2.2);
    Eigen::Vector2d p(0.1, 0.2);
    CHECK(kernel_cross_grad(se, 0, p, p) ==
          doctest::Approx(kernel_grad_prior_variance(se, 0)).epsilon(1e-14));

    // M32 at exact coincidence reports a degraded value equal to the limit.
    auto m32 = make_spec(KernelFamily::Matern32, {1.0, 1.0}, 1.0);
    bool degraded = false;
    const double v = kernel_cross_grad(m32, 0, p, p, &degraded);
    CHECK(degraded);
    CHECK(v == doctest::Approx(3.0));
    degraded = false;
    Eigen::Vector2d q(0.5, 0.2);
    kernel_cross_grad(m32, 0, p, q, &degraded);
    CHECK_FALSE(degraded);
}

TEST_CASE("gram matrices are symmetric PSD on distinct sites") {
    Rng rng(99);
    for (auto fam : kFamilies) {
        auto spec = make_spec(fam, {0.5, 1.5}, 2.0);
        Eigen::MatrixXd xs(40, 2);
        for (int i = 0; i < 40; ++i) {
            xs(i, 0) = rng.uniform(0, 1);
            xs(i, 1) = rng.uniform(30, 70);
        }
        Eigen::MatrixXd k = kernel_gram(spec, xs);
        CHECK((k - k.transpose()).cwiseAbs().maxCoeff() == 0.0);
        k.diagonal().array() += 1e-10;
        Eigen::LLT<Eigen::MatrixXd> llt(k);
        CHECK(llt.info() == Eigen::Success);
    }
}

TEST_CASE("anisotropy: permuting coordinates together with lengthscales") {
    Rng rng(123);
    for (auto fam : kFamilies) {
        auto spec = make_spec(fam, {0.6, 2.4}, 1.9);
        auto flipped = make_spec(fam, {2.4, 0.6}, 1.9);
        for (int rep = 0; rep < 25; ++rep) {
            Eigen::Vector2d u(rng.uniform(-2, 2), rng.uniform(-2, 2));
            Eigen::Vector2d v(rng.uniform(-2, 2), rng.uniform(-2, 2));
            Eigen::Vector2d up(u[1], u[0]), vp(v[1], v[0]);
            CHECK(kernel_eval(spec, u, v) ==
                  doctest::Approx(kernel_eval(flipped, up, vp)).epsilon(1e-14));
        }
    }
}

TEST_CASE("kernel family string round trip") {
    for (auto fam : kFamilies) CHECK(kernel_family_from_string(to_string(fam)) == fam);
    CHECK_THROWS_AS(kernel_family_from_string("cubic"), InvalidArgument);
}

TEST_CASE("KernelSpec invariants") {
    Eigen::VectorXd ls(2);
    ls << 1.0, -1.0;
    CHECK_THROWS_AS(KernelSpec(KernelFamily::SE, ls, 1.0), InvalidArgument);
    ls << 1.0, 1.0;
    CHECK_THROWS_AS(KernelSpec(KernelFamily::SE, ls, 0.0), InvalidArgument);
}
