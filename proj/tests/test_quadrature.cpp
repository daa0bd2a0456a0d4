#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "revgap/basis.hpp"
#include "revgap/errors.hpp"
#include "revgap/quadrature.hpp"
#include "revgap/weighted_inner.hpp"

using namespace revgap;

TEST_CASE("one-node Legendre rule is the midpoint rule") {
  const auto r = gauss_jacobi(1, 0.0);
  CHECK(r.nodes == std::vector<double>{0.0});
  CHECK(r.weights[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("total weights") {
  for (std::size_t n : {2u, 5u, 17u}) {
    CHECK(gauss_jacobi(n, 0.5).total_weight() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
    const auto cheb = gauss_jacobi(n, -0.5);
    CHECK(cheb.total_weight() == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(cheb.integrate([](double t) { return t * t; }) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
  }
}

TEST_CASE("alpha <= -1 is rejected") {
  CHECK_THROWS_AS(gauss_jacobi(4, -1.0), ParameterError);
  CHECK_THROWS_AS(gauss_jacobi(0, 0.0), ParameterError);
}

TEST_CASE("property: exactness against Beta moments") {
  for (double alpha : {-0.5, 0.0, 0.5, 1.0, 1.5, 2.0}) {
    for (std::size_t n : {4u, 8u, 16u}) {
      const auto r = gauss_jacobi(n, alpha);
      for (int k = 0; k <= static_cast<int>(2 * n - 1); ++k) {
        const double exact = oracle::jacobi_moment(k, alpha);
        const double got = r.integrate([k](double t) { return std::pow(t, k); });
        CHECK(std::abs(got - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("property: nodes increasing and symmetric, weights positive and symmetric") {
  for (double alpha : {-0.5, 0.3, 2.5}) {
    for (std::size_t n : {3u, 10u, 33u}) {
      const auto r = gauss_jacobi(n, alpha);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(r.weights[i] > 0.0);
        CHECK(r.nodes[i] == -r.nodes[n - 1 - i]);
        CHECK(r.weights[i] == r.weights[n - 1 - i]);
        if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
      }
    }
  }
}

TEST_CASE("weight_w values") {
  CHECK(weight_w(DimensionedProfile(Profile::ball(), 3), 0, 0.5).value == doctest::Approx(1.0 / 3.0));
  for (double t : {-0.5, 0.0, 0.8}) {
    CHECK(weight_w(DimensionedProfile(Profile::ball(), 2), 1, t).value ==
          doctest::Approx(std::sqrt(1 - t * t) / 2).epsilon(1e-14));
  }
  const auto w = weight_w(DimensionedProfile(Profile::spheroid(1.0, 2.0), 3), 0, 0.0);
  CHECK(w.value == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(w.exponent == 0.0);
  CHECK_THROWS_AS(weight_w(DimensionedProfile(Profile::ball(), 2), 0, 1.0), SingularPointError);
}

TEST_CASE("inner products on the ball") {
  const DimensionedProfile ball(Profile::ball(), 3);
  const auto ctx = BasisContext::for_harmonic(3, 0, 4);
  // 1 = c0 * phi_0 with phi_0 = 1/sqrt(2) for the Legendre weight.
  const std::vector<double> one{std::sqrt(2.0), 0, 0, 0};
  const std::vector<double> t{0, std::sqrt(2.0 / 3.0), 0, 0};
  CHECK(inner_product_mn(ball, 0, one, one, ctx) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(inner_product_mn(ball, 0, one, t, ctx)) < 1e-15);
  CHECK_THROWS_AS(inner_product_mn(ball, 1, one, one, ctx), UsageError);
}

TEST_CASE("spheroid inner product against an adaptive oracle") {
  const DimensionedProfile dp(Profile::spheroid(1.0, 2.0), 4);
  const auto ctx = BasisContext::for_harmonic(4, 1, 6);
  const Eigen::VectorXd c = ctx.project([](double) { return 1.0; });
  const std::vector<double> cv(c.data(), c.data() + c.size());
  const double got = inner_product_mn(dp, 1, cv, cv, ctx);
  const double expected = oracle::jacobi_integral(
      [](double t) {
        return oracle::spheroid_a2(1, 2, t) * std::pow(oracle::spheroid_a1(1, 2, t), 2) / (4 * oracle::spheroid_eta(1, 2, t));
      },
      1.5);
  CHECK(got == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("property: Gram matrix of the weighted inner product is positive definite") {
  oracle::Gen gen(3);
  for (int trial = 0; trial < 6; ++trial) {
    const DimensionedProfile dp(gen.profile(), gen.integer(2, 5));
    const int m = gen.integer(0, 3);
    const auto ctx = BasisContext::for_harmonic(dp.n, m, 10);
    Eigen::MatrixXd gram(10, 10);
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        std::vector<double> ei(10, 0.0), ej(10, 0.0);
        ei[i] = 1.0;
        ej[j] = 1.0;
        gram(i, j) = inner_product_mn(dp, m, ei, ej, ctx);
      }
    }
    CHECK((gram - gram.transpose()).norm() <= 1e-14 * gram.norm());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("property: doubling the order leaves smooth inner products unchanged") {
  const DimensionedProfile dp(Profile::spheroid(1.0, 1.7), 3);
  const auto ctx = BasisContext::for_harmonic(3, 2, 8);
  oracle::Gen gen(9);
  const auto a = gen.vector(8), b = gen.vector(8);
  const double base = inner_product_mn(dp, 2, a, b, ctx, 48);
  CHECK(std::abs(inner_product_mn(dp, 2, a, b, ctx, 96) - base) < 1e-10 * std::max(1.0, std::abs(base)));
}
