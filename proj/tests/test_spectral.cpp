#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "revgap/errors.hpp"
#include "revgap/spectral.hpp"

using namespace revgap;

namespace {

double offdiag_max(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd b = a;
  b.diagonal().setZero();
  return b.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("ball mass matrix is diagonal and m = 1 has no potential") {
  const auto sys = assemble(DimensionedProfile(Profile::ball(), 3), 0, 8);
  CHECK(offdiag_max(sys.mass) < 1e-14);
  CHECK(potential_k(3, 1, 1.3, 0.7, 0.2) == 0.0);
  for (int n = 2; n <= 5; ++n) {
    const auto s1 = assemble(DimensionedProfile(Profile::ball(), n), 1, 8);
    // Constant function: zero stiffness, zero potential.
    CHECK(std::abs(s1.form(0, 0)) < 1e-14);
  }
}

TEST_CASE("spheroid assembly is finite, symmetric and positive definite") {
  const auto sys = assemble(DimensionedProfile(Profile::spheroid(1.0, 2.0), 3), 0, 32);
  CHECK(sys.form.allFinite());
  CHECK(sys.mass.allFinite());
  CHECK((sys.form - sys.form.transpose()).norm() <= 1e-12 * sys.form.norm());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sys.mass);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("assembly argument checks") {
  CHECK_THROWS_AS(assemble(DimensionedProfile(Profile::ball(), 3), 0, 3), ParameterError);
  CHECK_THROWS_AS(assemble(DimensionedProfile(Profile::even_polynomial({0.0, 1.0}), 3), 0, 8), ValidationError);
}

TEST_CASE("parallel kernel agrees with the serial reference") {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 6; ++trial) {
    const DimensionedProfile dp(gen.profile(), gen.integer(2, 6));
    const int m = gen.integer(0, 4);
    const auto parity = static_cast<Parity>(gen.integer(0, 2));
    const auto a = assemble(dp, m, 24, parity);
    const auto b = assemble_reference(dp, m, 24, parity);
    CHECK((a.form - b.form).norm() <= 1e-13 * std::max(1.0, b.form.norm()));
    CHECK((a.mass - b.mass).norm() <= 1e-13 * std::max(1.0, b.mass.norm()));
  }
}

TEST_CASE("ball spectra") {
  const auto s0 = solve(assemble(DimensionedProfile(Profile::ball(), 3), 0, 32));
  const double expected0[] = {1, 0, -2, -5, -9};
  for (int k = 0; k < 5; ++k) CHECK(std::abs(s0.eigenvalues[k] - expected0[k]) < 1e-9);
  const auto s1 = solve(assemble(DimensionedProfile(Profile::ball(), 3), 1, 32));
  for (int k = 0; k < 5; ++k) CHECK(std::abs(s1.eigenvalues[k] + k * (k + 3) / 2.0) < 1e-9);
  const auto s2 = solve(assemble(DimensionedProfile(Profile::ball(), 4), 2, 32));
  CHECK(std::abs(s2.eigenvalues[0] + 5.0 / 3.0) < 1e-9);
}

TEST_CASE("property: ball oracle over n and m") {
  for (int n = 2; n <= 6; ++n) {
    for (int m = 0; m <= 4; ++m) {
      const auto s = solve(assemble(DimensionedProfile(Profile::ball(), n), m, 64));
      for (int k = 0; k <= 10; ++k) CHECK(std::abs(s.eigenvalues[k] - oracle::ball_eigenvalue(n, m, k)) <= 1e-8);
    }
  }
}

TEST_CASE("property: spectrum invariants on random profiles") {
  oracle::Gen gen(41);
  for (int trial = 0; trial < 8; ++trial) {
    const DimensionedProfile dp(gen.profile(), gen.integer(2, 5));
    const int m = gen.integer(0, 3);
    const auto sys = assemble(dp, m, 32);
    const auto s = solve(sys);
    const auto& x = s.eigenvectors;
    // Descending, small residuals, M-orthonormal.
    for (std::size_t k = 1; k < s.eigenvalues.size(); ++k) CHECK(s.eigenvalues[k] <= s.eigenvalues[k - 1]);
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
      CHECK(s.residuals[k] <= 1e-9 * (s.form_norm + std::abs(s.eigenvalues[k]) * s.mass_norm));
    }
    const Eigen::MatrixXd gram = x.transpose() * sys.mass * x;
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-10);
    // Rayleigh quotients never exceed the top eigenvalue.
    for (int r = 0; r < 20; ++r) {
      const auto v = gen.vector(sys.basis.size());
      const Eigen::Map<const Eigen::VectorXd> y(v.data(), static_cast<Eigen::Index>(v.size()));
      CHECK(y.dot(sys.form * y) / y.dot(sys.mass * y) <= s.eigenvalues[0] + 1e-10);
    }
    // Parity decoupling for even profiles.
    double cross = 0.0;
    for (Eigen::Index i = 0; i < sys.form.rows(); ++i) {
      for (Eigen::Index j = 0; j < sys.form.cols(); ++j) {
        if ((i + j) % 2 == 1) cross = std::max({cross, std::abs(sys.form(i, j)), std::abs(sys.mass(i, j))});
      }
    }
    CHECK(cross <= 1e-12 * std::max(sys.form.norm(), sys.mass.norm()));
  }
}

TEST_CASE("property: h_K is an eigenfunction with eigenvalue 1 and spectra are mesh independent") {
  oracle::Gen gen(43);
  for (int trial = 0; trial < 6; ++trial) {
    const DimensionedProfile dp(gen.profile(), gen.integer(2, 5));
    const auto coarse = gap_entry(dp, 0, 48);
    const auto fine = gap_entry(dp, 0, 96);
    REQUIRE(coarse.trivial.size() == 2);
    CHECK(coarse.trivial[0].match == "eta");
    CHECK(std::abs(coarse.trivial[0].lambda - 1.0) <= 1e-8);
    CHECK(coarse.trivial[0].angle <= 1e-6);
    CHECK(std::abs(coarse.max_nontrivial - fine.max_nontrivial) <= 1e-6);
  }
}

TEST_CASE("constraints restrict the space") {
  auto sys = assemble(DimensionedProfile(Profile::ball(), 3), 0, 16);
  sys.constrain_orthogonal_to([](double) { return 1.0; });
  sys.constrain_orthogonal_to([](double t) { return t; });
  const auto s = solve(sys);
  CHECK(s.eigenvalues.size() == 14);
  CHECK(std::abs(s.eigenvalues[0] + 2.0) < 1e-10);
  for (Eigen::Index j = 0; j < s.eigenvectors.cols(); ++j) {
    for (const auto& c : sys.constraints) CHECK(std::abs(c.dot(s.eigenvectors.col(j))) < 1e-12);
  }
  sys.constrain_orthogonal_to([](double t) { return 2.0 * t; });
  CHECK_THROWS_AS(solve(sys), UsageError);
}

TEST_CASE("gap check on the ball") {
  const auto r = gap_check(DimensionedProfile(Profile::ball(), 3), 4);
  CHECK(r.passed);
  CHECK(r.entries.size() == 5);
  CHECK(r.entries[0].max_nontrivial == doctest::Approx(-2.0).epsilon(1e-10));
  std::vector<double> trivial;
  for (const auto& e : r.entries) {
    for (const auto& t : e.trivial) {
      trivial.push_back(t.lambda);
      CHECK(t.angle < 1e-8);
    }
  }
  REQUIRE(trivial.size() == 3);
  CHECK(trivial[0] == doctest::Approx(1.0));
  CHECK(std::abs(trivial[1]) < 1e-10);
  CHECK(std::abs(trivial[2]) < 1e-10);
  CHECK(r.empirical_p_threshold == doctest::Approx(-3.0).epsilon(1e-10));
}

TEST_CASE("gap check on a spheroid is refinement stable") {
  const DimensionedProfile dp(Profile::spheroid(1.0, 2.0), 3);
  const auto a = gap_check(dp, 4, 32), b = gap_check(dp, 4, 64);
  CHECK(a.passed);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].max_nontrivial <= -0.5 + 1e-6);
    CHECK(std::abs(a.entries[i].max_nontrivial - b.entries[i].max_nontrivial) < 1e-6);
  }
  const auto& m0 = a.entries[0];
  CHECK(m0.trivial[0].match == "eta");
  CHECK(m0.trivial[0].lambda == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gap check in the plane covers m <= 1 only") {
  const auto r = gap_check(DimensionedProfile(Profile::spheroid(1.0, 1.5), 2), 4);
  CHECK(r.entries.size() == 2);
  CHECK(r.passed);
}

TEST_CASE("gap check rejects non-symmetric profiles") {
  CHECK_THROWS_AS(gap_entry(DimensionedProfile(Profile::shifted(Profile::ball(), 0.1), 3), 0, 16),
                  UnsupportedCaseError);
}

TEST_CASE("Frobenius indices") {
  const auto a = frobenius(3, 0);
  CHECK(a.alpha1 == Rational(0));
  CHECK(a.alpha2 == Rational(0));
  CHECK(a.logarithmic);
  const auto b = frobenius(5, 2);
  CHECK(b.alpha2 == Rational(-3));
  CHECK(b.resonant);
  CHECK_FALSE(b.logarithmic);
  const auto c = frobenius(4, 0);
  CHECK(c.alpha2 == Rational(-1, 2));
  CHECK_FALSE(c.resonant);
}

TEST_CASE("property: Frobenius indices are indicial roots") {
  for (int n = 2; n <= 9; ++n) {
    for (int m = 0; m <= 8; ++m) {
      const auto r = frobenius(n, m);
      CHECK(r.indicial(r.alpha1) == Rational(0));
      CHECK(r.indicial(r.alpha2) == Rational(0));
      CHECK(r.logarithmic == (n == 3 && m == 0));
      CHECK(r.p0 == Rational(2 * m + n - 1, 2));
    }
  }
}

TEST_CASE("homotopy endpoints") {
  const double grid[] = {0.0, 0.5, 1.0};
  for (int n = 2; n <= 5; ++n) {
    for (int m = 0; m <= 1; ++m) {
      const auto pts = homotopy_scan(DimensionedProfile(Profile::spheroid(1.0, 2.0), n), m, grid, 32);
      CHECK(pts[0].f == doctest::Approx((n + 3.0) / (n - 1.0)).epsilon(1e-10));
      CHECK(pts[2].sup_a <= -1.0 / (n - 1) + 1e-6);
      CHECK(pts[2].sup_b <= -1.0 / (n - 1) + 1e-6);
    }
  }
  const auto flat = homotopy_scan(DimensionedProfile(Profile::ball(), 3), 2, grid, 24);
  CHECK(flat[0].f == doctest::Approx(flat[1].f).epsilon(1e-10));
  CHECK(flat[0].f == doctest::Approx(flat[2].f).epsilon(1e-10));
}

TEST_CASE("orthogonal-space identity") {
  const std::vector<double> one{1.0};
  const auto r = orthogonal_space_identity(DimensionedProfile(Profile::ball(), 3), 2, one);
  CHECK(std::isfinite(r.lhs));
  CHECK(std::abs(r.lhs - r.rhs) <= 1e-12 * r.scale);
  // phi_0 is the top ball eigenfunction (eigenvalue -2) with <phi_0, phi_0>_{2,3} = 1/3.
  CHECK(r.lhs == doctest::Approx((-2.0 + 0.5) / 3.0).epsilon(1e-13));
  // correction = (4/6) int (1-t^2) phi_0^2 with phi_0^2 = 15/16.
  CHECK(r.correction == doctest::Approx(4.0 / 6.0 * (4.0 / 3.0) * (15.0 / 16.0)).epsilon(1e-13));
  const std::vector<double> zero{0.0, 0.0, 0.0};
  const auto z = orthogonal_space_identity(DimensionedProfile(Profile::spheroid(1, 2), 4), 1, zero);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK(z.correction == 0.0);
  // f = t in the m = 1 basis at n = 4.
  const auto ctx = BasisContext::for_harmonic(4, 1, 2);
  const Eigen::VectorXd tc = ctx.project([](double t) { return t; });
  const std::vector<double> t(tc.data(), tc.data() + 2);
  const auto s = orthogonal_space_identity(DimensionedProfile(Profile::spheroid(1, 2), 4), 1, t);
  CHECK(std::abs(s.lhs - s.rhs) <= 1e-9 * s.scale);
  CHECK_THROWS_AS(orthogonal_space_identity(DimensionedProfile(Profile::ball(), 3), 0, one), ParameterError);
}

TEST_CASE("property: orthogonal-space identity on random polynomials") {
  oracle::Gen gen(47);
  for (int trial = 0; trial < 20; ++trial) {
    const DimensionedProfile dp(gen.profile(), gen.integer(2, 5));
    const int m = gen.integer(1, 4);
    const auto c = gen.vector(static_cast<std::size_t>(gen.integer(1, 12)));
    const auto r = orthogonal_space_identity(dp, m, c);
    CHECK(r.converged);
    CHECK(std::abs(r.lhs - r.rhs) <= 1e-8 * r.scale);
  }
}

TEST_CASE("Cauchy-Schwarz product bounds") {
  // Ball, n = 3, m = 1, f = t: pairing = int t^2 sqrt(1-t^2) = pi/8, I1 = I2 = 2/3.
  const auto ctx = BasisContext::for_harmonic(3, 1, 2);
  const Eigen::VectorXd tc = ctx.project([](double t) { return t; });
  const std::vector<double> t(tc.data(), tc.data() + 2);
  const auto r = cs_bound_check(DimensionedProfile(Profile::ball(), 3), 1, t);
  CHECK(r.lhs == doctest::Approx(std::pow(std::numbers::pi / 8, 2)).epsilon(1e-12));
  CHECK(r.i1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(r.i2 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(r.factor == 1.0);
  CHECK(r.holds);
  const std::vector<double> zero{0.0};
  const auto z = cs_bound_check(DimensionedProfile(Profile::spheroid(1, 3), 4), 2, zero);
  CHECK(z.lhs == 0.0);
  CHECK(z.holds);
  const std::vector<double> one{1.0};
  const auto s = cs_bound_check(DimensionedProfile(Profile::spheroid(1, 3), 4), 2, one);
  CHECK(s.holds);
  CHECK(s.slack > 0.0);
  CHECK_THROWS_AS(cs_bound_check(DimensionedProfile(Profile::ball(), 2), 1, one), UnsupportedCaseError);
}

TEST_CASE("property: Cauchy-Schwarz bounds hold on random data") {
  oracle::Gen gen(53);
  for (int trial = 0; trial < 30; ++trial) {
    const DimensionedProfile dp(gen.profile(), gen.integer(3, 6));
    const int m = gen.integer(1, 5);
    const auto c = gen.vector(static_cast<std::size_t>(gen.integer(1, 10)));
    CHECK(cs_bound_check(dp, m, c).holds);
  }
}
