#include "revgap/spectral.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "revgap/errors.hpp"

namespace revgap {

Eigen::VectorXd GalerkinSystem::functional(const std::function<double(double)>& g) const {
  const auto size = static_cast<Eigen::Index>(basis.size());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(size);
  std::vector<double> v(basis.size());
  for (std::size_t q = 0; q < rule.order(); ++q) {
    basis.evaluate(rule.nodes[q], v);
    const double gw = mass_weights[q] * g(rule.nodes[q]);
    for (Eigen::Index i = 0; i < size; ++i) b[i] += gw * v[i];
  }
  return b;
}

Eigen::VectorXd GalerkinSystem::coefficients_of(const std::function<double(double)>& g) const {
  return mass.ldlt().solve(functional(g));
}

void GalerkinSystem::constrain_orthogonal_to(const std::function<double(double)>& g) {
  constraints.push_back(functional(g));
}

namespace {

double min_eigenvalue(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

// Orthonormal basis of the null space of C^T, C holding the constraint functionals as columns.
Eigen::MatrixXd constraint_null_space(const std::vector<Eigen::VectorXd>& constraints, Eigen::Index size) {
  if (constraints.empty()) return Eigen::MatrixXd::Identity(size, size);
  const auto k = static_cast<Eigen::Index>(constraints.size());
  if (k >= size) throw ParameterError("more constraints than basis elements");
  Eigen::MatrixXd c(size, k);
  for (Eigen::Index j = 0; j < k; ++j) c.col(j) = constraints[static_cast<std::size_t>(j)] / constraints[static_cast<std::size_t>(j)].norm();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(c);
  qr.setThreshold(1e-10);
  if (qr.rank() < k) throw UsageError("constraint functionals are linearly dependent");
  const Eigen::MatrixXd full = qr.householderQ();
  return full.rightCols(size - k);
}

}  // namespace

Spectrum solve(const GalerkinSystem& system) {
  const Eigen::Index size = system.form.rows();
  Spectrum out;
  out.form_norm = system.form.norm();
  out.mass_norm = system.mass.norm();
  if ((system.form - system.form.transpose()).norm() > 1e-12 * std::max(out.form_norm, 1.0)) {
    throw UsageError("form matrix is not symmetric");
  }

  const Eigen::MatrixXd z = constraint_null_space(system.constraints, size);
  const Eigen::MatrixXd qr = z.transpose() * system.form * z;
  const Eigen::MatrixXd mr = z.transpose() * system.mass * z;
  if (Eigen::LLT<Eigen::MatrixXd>(mr).info() != Eigen::Success) {
    throw ConditioningError("mass matrix is not positive definite; smallest eigenvalue " +
                            std::to_string(min_eigenvalue(mr)));
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(qr, mr, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) throw ConditioningError("generalized eigensolver did not converge");

  const Eigen::Index r = qr.rows();
  out.eigenvectors.resize(size, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    const Eigen::Index src = r - 1 - j;  // Eigen orders ascending
    const double lambda = es.eigenvalues()[src];
    Eigen::VectorXd y = es.eigenvectors().col(src);
    Eigen::Index imax = 0;
    Eigen::VectorXd x = z * y;
    x.cwiseAbs().maxCoeff(&imax);
    if (x[imax] < 0) {
      x = -x;
      y = -y;
    }
    out.eigenvalues.push_back(lambda);
    out.eigenvectors.col(j) = x;
    out.residuals.push_back((qr * y - lambda * (mr * y)).norm());
  }
  return out;
}

double m_angle(const Eigen::MatrixXd& mass, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  auto mnorm = [&](const Eigen::VectorXd& v) { return std::sqrt(std::max(v.dot(mass * v), 0.0)); };
  const double nx = mnorm(x), ny = mnorm(y);
  if (nx == 0.0 || ny == 0.0) throw ParameterError("angle with a zero vector");
  const Eigen::VectorXd xh = x / nx, yh = y / ny;
  const double d = std::min(mnorm(xh - yh), mnorm(xh + yh));
  return 2.0 * std::asin(std::min(0.5 * d, 1.0));
}

GapEntry gap_entry(const DimensionedProfile& dprofile, int m, std::size_t basis_size, double tol) {
  if (!dprofile.profile.symmetric()) throw UnsupportedCaseError("spectral gap check needs an origin-symmetric profile");
  const auto system = assemble(dprofile, m, basis_size);
  const auto spectrum = solve(system);
  const int n = dprofile.n;

  GapEntry entry;
  entry.m = m;
  entry.basis_size = basis_size;
  entry.eigenvalues = spectrum.eigenvalues;

  std::vector<std::pair<std::string, std::function<double(double)>>> known;
  const Profile profile = dprofile.profile;
  if (m == 0) {
    known.emplace_back("eta", [profile](double t) { return profile.eval(t).value; });
    known.emplace_back("t", [](double t) { return t; });
  } else if (m == 1) {
    known.emplace_back("1", [](double) { return 1.0; });
  }

  std::vector<bool> removed(spectrum.eigenvalues.size(), false);
  for (const auto& [name, g] : known) {
    const Eigen::VectorXd target = system.coefficients_of(g);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (std::size_t j = 0; j < spectrum.eigenvalues.size(); ++j) {
      const double angle = m_angle(system.mass, spectrum.eigenvectors.col(static_cast<Eigen::Index>(j)), target);
      if (angle < best) {
        best = angle;
        best_index = j;
      }
    }
    if (best > kTrivialMatchAngle) {
      throw DiagnosticError("no eigenvector matches " + name + " for m = " + std::to_string(m) +
                            " (best angle " + std::to_string(best) + ")");
    }
    if (removed[best_index]) throw DiagnosticError("two known eigenfunctions matched the same eigenvector");
    removed[best_index] = true;
    entry.trivial.push_back({name, spectrum.eigenvalues[best_index], best, best_index});
  }

  for (std::size_t j = 0; j < spectrum.eigenvalues.size(); ++j) {
    if (!removed[j]) entry.nontrivial.push_back(spectrum.eigenvalues[j]);
  }
  const double threshold = -1.0 / (n - 1.0);
  entry.max_nontrivial = entry.nontrivial.empty() ? -std::numeric_limits<double>::infinity() : entry.nontrivial.front();
  entry.margin = threshold - entry.max_nontrivial;
  entry.passed = entry.max_nontrivial <= threshold + tol;
  if (entry.nontrivial.size() >= 2) {
    const double gap = entry.nontrivial[0] - entry.nontrivial[1];
    entry.top_simple = gap > 1e-8 * std::max(1.0, std::abs(entry.nontrivial[0]));
  }
  return entry;
}

GapReport gap_check(const DimensionedProfile& dprofile, int m_max, std::size_t basis_size, double tol) {
  if (m_max < 0) throw ParameterError("m_max must be non-negative");
  GapReport report;
  report.n = dprofile.n;
  report.threshold = -1.0 / (dprofile.n - 1.0);
  report.tol = tol;
  // In the plane the harmonics of degree >= 2 in one variable vanish.
  const int top = dprofile.n == 2 ? std::min(m_max, 1) : m_max;
  report.entries.resize(static_cast<std::size_t>(top + 1));
  std::vector<std::exception_ptr> errors(report.entries.size());
#pragma omp parallel for schedule(dynamic)
  for (int m = 0; m <= top; ++m) {
    try {
      report.entries[static_cast<std::size_t>(m)] = gap_entry(dprofile, m, basis_size, tol);
    } catch (...) {
      errors[static_cast<std::size_t>(m)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  report.passed = true;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& e : report.entries) {
    report.passed = report.passed && e.passed;
    worst = std::max(worst, e.max_nontrivial);
    if (!e.top_simple) spdlog::debug("m = {}: top nontrivial eigenvalue is numerically multiple", e.m);
  }
  report.margin = report.threshold - worst;
  report.empirical_p_threshold = 1.0 + (dprofile.n - 1.0) * worst;
  return report;
}

FrobeniusReport frobenius(int n, int m) {
  if (n < 2 || m < 0) throw ParameterError("frobenius: need n >= 2 and m >= 0");
  FrobeniusReport r;
  r.n = n;
  r.m = m;
  r.p0 = Rational(m) + Rational(n - 1, 2);
  r.q0 = Rational(0);
  r.alpha1 = Rational(0);
  r.alpha2 = Rational(-m) - Rational(n - 3, 2);
  const Rational diff = r.alpha1 - r.alpha2;
  r.resonant = diff.is_integer() && Rational(0) <= diff;
  r.logarithmic = diff == Rational(0);
  return r;
}

}  // namespace revgap
