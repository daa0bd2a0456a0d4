#include "revgap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "revgap/errors.hpp"

namespace revgap {

double sphere_area(int d) {
  if (d < 0) throw ParameterError("sphere dimension must be non-negative");
  const double h = 0.5 * (d + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

double volume(const DimensionedProfile& dprofile, std::size_t order) {
  const int n = dprofile.n;
  if (order == 0) order = oversampled_order(kDefaultBasisSize);
  const auto s = ProfileSamples::sample(dprofile.profile, gauss_jacobi(order, 0.5 * (n - 3)));
  double sum = 0.0;
  for (std::size_t q = 0; q < s.rule.order(); ++q) {
    sum += s.rule.weights[q] * s.a2[q] * std::pow(s.a1[q], n - 2) * s.eta[q];
  }
  return sphere_area(n - 2) / n * sum;
}

TestFunction TestFunction::scaled(double c) const {
  TestFunction out = *this;
  for (auto& comp : out.components) {
    for (double& x : comp.coeffs) x *= c;
  }
  return out;
}

bool TestFunction::has_nonzonal_part() const {
  return std::any_of(components.begin(), components.end(), [](const Component& c) {
    return c.m >= 1 && std::any_of(c.coeffs.begin(), c.coeffs.end(), [](double x) { return x != 0.0; });
  });
}

BodyModel::BodyModel(DimensionedProfile dprofile, int m_max, std::size_t basis_size)
    : dprofile_(std::move(dprofile)), basis_size_(basis_size) {
  if (m_max < 0) throw ParameterError("m_max must be non-negative");
  const int top = dprofile_.n == 2 ? std::min(m_max, 1) : m_max;
  systems_.reserve(static_cast<std::size_t>(top + 1));
  for (int m = 0; m <= top; ++m) systems_.push_back(assemble(dprofile_, m, basis_size));
  volume_ = revgap::volume(dprofile_, oversampled_order(std::max(basis_size, kDefaultBasisSize)));
  const Profile profile = dprofile_.profile;
  eta_functional_ = systems_[0].functional([profile](double t) { return profile.eval(t).value; });
  eta_coefficients_ = systems_[0].mass.ldlt().solve(eta_functional_);
  if (dprofile_.n >= 3 && profile.symmetric()) {
    stability_.assign(static_cast<std::size_t>(top + 1), 0.0);
    for (int m = 1; m <= top; ++m) stability_[static_cast<std::size_t>(m)] = stability_constant(dprofile_, m);
  }
}

const GalerkinSystem& BodyModel::system(int m) const {
  if (m < 0 || m > m_max()) throw UsageError("no assembled system for m = " + std::to_string(m));
  return systems_[static_cast<std::size_t>(m)];
}

double BodyModel::stability(int m) const {
  if (m < 1) throw ParameterError("stability constants are defined for m >= 1");
  if (stability_.empty()) throw UnsupportedCaseError("stability constants need n >= 3 and an origin-symmetric profile");
  if (m > m_max()) throw UsageError("no stability constant for m = " + std::to_string(m));
  return stability_[static_cast<std::size_t>(m)];
}

Eigen::VectorXd BodyModel::padded(const Component& c) const {
  if (c.coeffs.size() > basis_size_) throw UsageError("component has more coefficients than the model basis");
  if (!(c.h_norm > 0.0)) throw UsageError("component harmonic norm must be positive");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_size_));
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) x[static_cast<Eigen::Index>(i)] = c.coeffs[i];
  return x;
}

TestFunction support_test_function(const BodyModel& model) {
  const auto& x = model.eta_coefficients();
  return {model.n(), {{0, sphere_area(model.n() - 2), std::vector<double>(x.data(), x.data() + x.size())}}};
}

namespace {

void check_dimension(const BodyModel& model, const TestFunction& f) {
  if (f.n != model.n()) throw UsageError("test function dimension does not match the body");
}

std::size_t max_coefficients(const TestFunction& f) {
  std::size_t size = 4;
  for (const auto& c : f.components) size = std::max(size, c.coeffs.size());
  return size;
}

int max_degree(const TestFunction& f) {
  int m_max = 0;
  for (const auto& c : f.components) m_max = std::max(m_max, c.m);
  return m_max;
}

BodyModel model_for(const DimensionedProfile& dprofile, const TestFunction& f) {
  return BodyModel(dprofile, max_degree(f), std::max(max_coefficients(f), kDefaultBasisSize));
}

}  // namespace

MixedQuantities mixed_quantities(const BodyModel& model, const TestFunction& f) {
  check_dimension(model, f);
  MixedQuantities out;
  const double sigma = sphere_area(model.n() - 2);
  for (const auto& c : f.components) {
    const auto& sys = model.system(c.m);
    const Eigen::VectorXd x = model.padded(c);
    if (c.m == 0) out.v_lk += std::sqrt(c.h_norm * sigma) * x.dot(model.eta_functional());
    out.v_llk += c.h_norm * x.dot(sys.form * x);
    const double i = model.n() * c.h_norm * x.dot(sys.mass * x);
    out.integral += i;
    out.integral_by_m[c.m] += i;
  }
  return out;
}

MixedQuantities mixed_quantities(const DimensionedProfile& dprofile, const TestFunction& f) {
  return mixed_quantities(model_for(dprofile, f), f);
}

TestFunction center_of_mass_project(const BodyModel& model, const TestFunction& f) {
  check_dimension(model, f);
  if (!model.dprofile().profile.symmetric()) {
    throw UnsupportedCaseError("center-of-mass projection needs an origin-symmetric profile");
  }
  TestFunction out = f;
  for (auto& c : out.components) {
    if (c.m > 1) continue;
    const auto& sys = model.system(c.m);
    const auto b = c.m == 0 ? sys.functional([](double t) { return t; }) : sys.functional([](double) { return 1.0; });
    const Eigen::VectorXd dir = sys.mass.ldlt().solve(b);
    const Eigen::VectorXd x = model.padded(c);
    const Eigen::VectorXd y = x - (x.dot(b) / dir.dot(b)) * dir;
    c.coeffs.assign(y.data(), y.data() + std::max<std::size_t>(c.coeffs.size(), c.m == 0 ? 2 : 1));
  }
  return out;
}

TestFunction center_of_mass_project(const DimensionedProfile& dprofile, const TestFunction& f) {
  return center_of_mass_project(model_for(dprofile, f), f);
}

namespace {

InequalityReport base_report(const BodyModel& model, const MixedQuantities& q) {
  InequalityReport r;
  r.term_v_lk = q.v_lk;
  r.term_v_llk = q.v_llk;
  r.term_integral = q.integral;
  r.vol = model.volume();
  return r;
}

void finish(InequalityReport& r, const TestFunction& f, double largest) {
  r.tolerance = kDeficitRelTolerance * largest;
  r.passed = r.deficit <= r.tolerance;
  r.suspicious = std::abs(r.deficit) < r.tolerance && f.has_nonzonal_part();
}

}  // namespace

InequalityReport local_lp_deficit(const BodyModel& model, const TestFunction& f, double p) {
  const int n = model.n();
  if (!(p < n)) throw ParameterError("exponent p must be smaller than n");
  const auto q = mixed_quantities(model, f);
  auto r = base_report(model, q);
  r.kind = "lp";
  r.p = p;
  const double t1 = (n - 1.0) / (n - p) * q.v_llk;
  const double t2 = (1.0 - p) / (n * (n - p)) * q.integral;
  const double t3 = q.v_lk * q.v_lk / model.volume();
  r.deficit = t1 + t2 - t3;
  r.certified = p >= 0.0 && model.dprofile().profile.symmetric();
  finish(r, f, std::max({std::abs(t1), std::abs(t2), std::abs(t3)}));
  return r;
}

InequalityReport local_lp_deficit(const DimensionedProfile& dprofile, const TestFunction& f, double p) {
  return local_lp_deficit(model_for(dprofile, f), f, p);
}

double stability_constant(const DimensionedProfile& dprofile, int m, std::size_t order) {
  const int n = dprofile.n;
  if (m < 1) throw ParameterError("stability constants are defined for m >= 1");
  if (!dprofile.profile.symmetric()) throw UnsupportedCaseError("stability constants need an origin-symmetric profile");
  if (n < 3) throw UnsupportedCaseError("stability constants need n >= 3");
  if (m >= 2) return m * (m + n - 3.0) / (n - 1.0) - 1.0;
  require_valid(dprofile);
  if (order == 0) order = oversampled_order(kDefaultBasisSize);
  const auto s = ProfileSamples::sample(dprofile.profile, gauss_jacobi(order, 0.5 * (n - 3)));
  double with_cap = 0.0, without = 0.0;
  for (std::size_t q = 0; q < s.rule.order(); ++q) {
    const double t = s.rule.nodes[q];
    const double base = s.rule.weights[q] * s.a2[q] * std::pow(s.a1[q], n - 2) / s.eta[q] * t * t;
    with_cap += base * cap_height(dprofile.profile, t);
    without += base;
  }
  return (n - 3.0) / (n - 1.0) + with_cap / without;
}

InequalityReport strengthened_deficit(const BodyModel& model, const TestFunction& f) {
  const int n = model.n();
  const auto q = mixed_quantities(model, f);
  auto r = base_report(model, q);
  r.kind = "strengthened";
  r.p = 0.0;
  const double t1 = q.v_llk;
  const double t2 = n / (n - 1.0) * q.v_lk * q.v_lk / model.volume();
  const double t3 = q.integral / (n * (n - 1.0));
  double stab = 0.0;
  for (const auto& [m, integral] : q.integral_by_m) {
    if (m == 0) continue;
    const double c = model.stability(m);
    const double value = c / n * integral;
    r.per_m_stability.push_back({m, c, value});
    stab += value;
  }
  r.deficit = t1 - t2 + t3 + stab;
  r.certified = true;
  finish(r, f, std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(stab)}));
  return r;
}

InequalityReport strengthened_deficit(const DimensionedProfile& dprofile, const TestFunction& f) {
  return strengthened_deficit(model_for(dprofile, f), f);
}

KubotaReport kubota_check(const DimensionedProfile& dprofile, std::size_t order) {
  const int n = dprofile.n;
  if (order == 0) order = oversampled_order(kDefaultBasisSize);
  const auto sl = ProfileSamples::sample(dprofile.profile, gauss_jacobi(order, 0.5 * (n - 1)));
  const auto sr = ProfileSamples::sample(dprofile.profile, gauss_jacobi(order, 0.5 * (n - 3)));
  KubotaReport r;
  for (std::size_t q = 0; q < order; ++q) {
    r.lhs += sl.rule.weights[q] * sl.a2[q] * std::pow(sl.a1[q], n - 1);
    r.rhs += sr.rule.weights[q] * sr.a2[q] * std::pow(sr.a1[q], n - 2) * sr.eta[q];
  }
  r.rhs *= (n - 1.0) / n;
  r.relative_error = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.rhs), 1e-300);
  return r;
}

SymmetrizationReport symmetrization_bound(const DimensionedProfile& dprofile, const TestFunction& f) {
  const int n = dprofile.n;
  if (n < 3) throw UnsupportedCaseError("symmetrization bound needs n >= 3");
  const BodyModel model(dprofile, std::max(max_degree(f), 2), std::max(max_coefficients(f), kDefaultBasisSize));
  const auto q = mixed_quantities(model, f);
  SymmetrizationReport r;
  r.c1 = model.stability(1);
  r.c2 = model.stability(2);
  const double cmin = std::min(r.c1, r.c2);
  double zonal = 0.0;
  for (const auto& [m, integral] : q.integral_by_m) {
    if (m == 0) {
      zonal += integral;
    } else {
      r.lhs += model.stability(m) * integral;
    }
  }
  r.rhs = cmin * (q.integral - zonal);
  r.p_threshold = -(n - 1.0) * cmin;
  r.holds = r.lhs >= r.rhs - 1e-12 * std::max(std::abs(r.rhs), 1.0);
  return r;
}

TestFunction random_test_function(const BodyModel& model, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // 53 random bits mapped to [-1, 1); independent of the standard library's distributions.
  auto uniform = [&rng] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };
  const std::size_t count = std::min(kRandomCoefficientCount, model.basis_size());
  TestFunction f;
  f.n = model.n();
  for (int m = 0; m <= model.m_max(); ++m) {
    Component c;
    c.m = m;
    c.h_norm = m == 0 ? sphere_area(model.n() - 2) : 1.0;
    c.coeffs.resize(count);
    for (double& x : c.coeffs) x = uniform();
    f.components.push_back(std::move(c));
  }
  return center_of_mass_project(model, f);
}

}  // namespace revgap
