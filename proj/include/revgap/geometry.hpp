#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "revgap/spectral.hpp"

namespace revgap {

/// Surface area of the unit sphere S^d: 2 pi^((d+1)/2) / Gamma((d+1)/2).
double sphere_area(int d);

/// sigma_{n-2}/n * int A2 A1^(n-2) eta (1-t^2)^((n-3)/2) dt.
double volume(const DimensionedProfile& dprofile, std::size_t order = 0);

/// One term h (x) f of a test function: h a degree-m harmonic with <h, h> = h_norm on S^(n-2).
struct Component {
  int m = 0;
  double h_norm = 1.0;
  std::vector<double> coeffs;  // f in the orthonormal m-basis, lowest degree first
};

struct TestFunction {
  int n = 0;
  std::vector<Component> components;

  TestFunction scaled(double c) const;
  bool has_nonzonal_part() const;
};

/**
 * Galerkin systems for m = 0..m_max of one body, plus the functionals of eta, t and 1.
 * Immutable after construction; safe to share between threads.
 */
class BodyModel {
 public:
  BodyModel(DimensionedProfile dprofile, int m_max, std::size_t basis_size);

  const DimensionedProfile& dprofile() const { return dprofile_; }
  int n() const { return dprofile_.n; }
  int m_max() const { return static_cast<int>(systems_.size()) - 1; }
  std::size_t basis_size() const { return basis_size_; }
  const GalerkinSystem& system(int m) const;
  double volume() const { return volume_; }
  /// <phi_i, eta>_{0,n}
  const Eigen::VectorXd& eta_functional() const { return eta_functional_; }
  /// Coefficients of the projection of eta onto the m = 0 basis.
  const Eigen::VectorXd& eta_coefficients() const { return eta_coefficients_; }

  /// Component coefficients zero-padded to the model basis size.
  Eigen::VectorXd padded(const Component& c) const;

  /// c_m(K) for 1 <= m <= m_max; throws UnsupportedCaseError where undefined.
  double stability(int m) const;

 private:
  DimensionedProfile dprofile_;
  std::size_t basis_size_;
  std::vector<GalerkinSystem> systems_;
  double volume_ = 0.0;
  Eigen::VectorXd eta_functional_;
  Eigen::VectorXd eta_coefficients_;
  std::vector<double> stability_;  // index m; empty when undefined
};

/// h_K itself: one zonal component with h_norm = sigma_{n-2}.
TestFunction support_test_function(const BodyModel& model);

struct MixedQuantities {
  double v_lk = 0.0;      // V(f, K[n-1])
  double v_llk = 0.0;     // V(f, f, K[n-2])
  double integral = 0.0;  // int f^2 / h_K dS_K
  std::map<int, double> integral_by_m;
};

MixedQuantities mixed_quantities(const BodyModel& model, const TestFunction& f);
MixedQuantities mixed_quantities(const DimensionedProfile& dprofile, const TestFunction& f);

/// Removes the t-part of zonal components and the constant part of m = 1 components.
TestFunction center_of_mass_project(const BodyModel& model, const TestFunction& f);
TestFunction center_of_mass_project(const DimensionedProfile& dprofile, const TestFunction& f);

struct StabilityTerm {
  int m = 0;
  double c_m = 0.0;
  double value = 0.0;  // c_m / n * int (pi_m f)^2 / h_K dS_K
};

struct InequalityReport {
  std::string kind;  // "lp" or "strengthened"
  double term_v_lk = 0.0;
  double term_v_llk = 0.0;
  double term_integral = 0.0;
  double vol = 0.0;
  double p = 0.0;
  double deficit = 0.0;  // <= 0 certifies the inequality
  double tolerance = 0.0;
  bool certified = false;  // whether the statement covers this case
  bool passed = false;     // deficit <= tolerance
  bool suspicious = false;  // near-equality with a nonzonal part present
  std::vector<StabilityTerm> per_m_stability;
};

inline constexpr double kDeficitRelTolerance = 1e-8;

/// (n-1)/(n-p) V(f,f,K[n-2]) + (1-p)/(n(n-p)) int f^2/h_K dS_K - V(f,K[n-1])^2 / vol(K).
InequalityReport local_lp_deficit(const BodyModel& model, const TestFunction& f, double p);
InequalityReport local_lp_deficit(const DimensionedProfile& dprofile, const TestFunction& f, double p);

/// c_m(K); needs an origin-symmetric profile, n >= 3 and m >= 1.
double stability_constant(const DimensionedProfile& dprofile, int m, std::size_t order = 0);

/// V(f,f,K[n-2]) - n/(n-1) V(f,K[n-1])^2/vol + int f^2/h_K/(n(n-1)) + sum_{m>=1} c_m/n int (pi_m f)^2/h_K.
InequalityReport strengthened_deficit(const BodyModel& model, const TestFunction& f);
InequalityReport strengthened_deficit(const DimensionedProfile& dprofile, const TestFunction& f);

struct KubotaReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_error = 0.0;
};

/// int A2 A1^(n-1) (1-t^2)^((n-1)/2) against (n-1)/n int A2 A1^(n-2) eta (1-t^2)^((n-3)/2).
KubotaReport kubota_check(const DimensionedProfile& dprofile, std::size_t order = 0);

struct SymmetrizationReport {
  double lhs = 0.0;  // sum_{m>=1} c_m int (pi_m f)^2 / h_K dS_K
  double rhs = 0.0;  // min(c_1, c_2) * (int f^2/h_K - int (pi_0 f)^2/h_K)
  double c1 = 0.0;
  double c2 = 0.0;
  double p_threshold = 0.0;  // -(n-1) min(c_1, c_2)
  bool holds = false;
};

SymmetrizationReport symmetrization_bound(const DimensionedProfile& dprofile, const TestFunction& f);

inline constexpr std::size_t kRandomCoefficientCount = 12;

/// Uniform [-1, 1] coefficients on the first 12 basis elements for m = 0..m_max, then center-of-mass projected.
TestFunction random_test_function(const BodyModel& model, std::uint64_t seed);

}  // namespace revgap
