#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "revgap/basis.hpp"
#include "revgap/profile.hpp"
#include "revgap/quadrature.hpp"
#include "revgap/rational.hpp"

namespace revgap {

/// Profile quantities tabulated at the nodes of a quadrature rule.
struct ProfileSamples {
  QuadratureRule rule;
  std::vector<double> eta, d2, a1, a2;

  static ProfileSamples sample(const Profile& profile, QuadratureRule rule);
};

/// k_m = -(m-1)(n-2) A2 - (m^2-1) A1 - m(m-1) eta''.
inline double potential_k(int n, int m, double a1, double a2, double d2) {
  return -(m - 1.0) * (n - 2.0) * a2 - (m * static_cast<double>(m) - 1.0) * a1 - m * (m - 1.0) * d2;
}

/**
 * Weak form of L_m and the mass form of <., .>_{m,n} on a polynomial basis.
 *
 * form(i, j) = <L_m phi_i, phi_j>_{m,n}
 *            = 1/(n(n-1)) int [ -A1^(n-2) (1-t^2)^(a+1) phi_i' phi_j'
 *                               + A1^(n-3) (1-t^2)^a k_m phi_i phi_j ] dt,
 * mass(i, j) = int w_{m,n} phi_i phi_j dt, with a = m + (n-3)/2.
 * The weighted Neumann conditions are natural for this form.
 */
struct GalerkinSystem {
  int n = 0;
  int m = 0;
  BasisContext basis;
  Profile profile;
  QuadratureRule rule{};             // exponent m + (n-3)/2
  std::vector<double> mass_weights{};  // rule weight times A2 A1^(n-2) / (n eta) at each node
  Eigen::MatrixXd form{};
  Eigen::MatrixXd mass{};
  /// Linear functionals c with c^T x = 0 imposed on the solution space.
  std::vector<Eigen::VectorXd> constraints{};

  /// b_i = <phi_i, g>_{m,n}.
  Eigen::VectorXd functional(const std::function<double(double)>& g) const;
  /// Coefficients of the <., .>_{m,n}-orthogonal projection of g onto the basis.
  Eigen::VectorXd coefficients_of(const std::function<double(double)>& g) const;
  /// Restrict to functions <., .>_{m,n}-orthogonal to g.
  void constrain_orthogonal_to(const std::function<double(double)>& g);
};

inline constexpr std::size_t kDefaultBasisSize = 48;
inline constexpr double kDefaultGapTolerance = 1e-6;

/// OpenMP assembly kernel. Validates the profile first.
GalerkinSystem assemble(const DimensionedProfile& dprofile, int m, std::size_t basis_size,
                        Parity parity = Parity::kAll);

/// Serial reference assembly, kept for testing the parallel kernel.
GalerkinSystem assemble_reference(const DimensionedProfile& dprofile, int m, std::size_t basis_size,
                                  Parity parity = Parity::kAll);

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  Eigen::MatrixXd eigenvectors;     // columns, basis coefficients, M-orthonormal
  std::vector<double> residuals;    // ||Q x - lambda M x|| on the constrained space
  double form_norm = 0.0;
  double mass_norm = 0.0;
};

/// Dense generalized eigenproblem on the constrained subspace.
Spectrum solve(const GalerkinSystem& system);

/// Angle between coefficient vectors in the M-inner product, sign-insensitive.
double m_angle(const Eigen::MatrixXd& mass, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

struct TrivialMatch {
  std::string match;  // "eta", "t" or "1"
  double lambda = 0.0;
  double angle = 0.0;
  std::size_t index = 0;
};

struct GapEntry {
  int m = 0;
  std::size_t basis_size = 0;
  std::vector<double> eigenvalues;
  std::vector<TrivialMatch> trivial;
  std::vector<double> nontrivial;
  double max_nontrivial = 0.0;
  double margin = 0.0;  // -1/(n-1) - max_nontrivial
  bool passed = false;
  /// Top nontrivial eigenvalue separated from its neighbours (reported, not certified).
  bool top_simple = true;
};

struct GapReport {
  int n = 0;
  double threshold = 0.0;  // -1/(n-1)
  double tol = 0.0;
  std::vector<GapEntry> entries;
  bool passed = false;
  double margin = 0.0;
  /// 1 + (n-1) * max nontrivial eigenvalue: smallest p the computed spectrum supports.
  double empirical_p_threshold = 0.0;
};

inline constexpr double kTrivialMatchAngle = 1e-3;

/// Spectrum of L_m with the eigenpairs of h_K and linear functions removed.
GapEntry gap_entry(const DimensionedProfile& dprofile, int m, std::size_t basis_size,
                   double tol = kDefaultGapTolerance);

/// Runs gap_entry for m = 0..m_max (m <= 1 when n = 2) in parallel.
GapReport gap_check(const DimensionedProfile& dprofile, int m_max, std::size_t basis_size = kDefaultBasisSize,
                    double tol = kDefaultGapTolerance);

/// Frobenius data of L_m at the endpoints t = +-1.
struct FrobeniusReport {
  int n = 0;
  int m = 0;
  Rational p0;      // m + (n-1)/2
  Rational q0;      // 0
  Rational alpha1;  // 0
  Rational alpha2;  // -m - (n-3)/2
  bool resonant = false;
  bool logarithmic = false;

  /// alpha^2 + (p0 - 1) alpha + q0.
  Rational indicial(Rational alpha) const { return alpha * alpha + (p0 - Rational(1)) * alpha + q0; }
};

FrobeniusReport frobenius(int n, int m);

struct HomotopyPoint {
  double s = 0.0;
  double sup_a = 0.0;  // first parity subspace
  double sup_b = 0.0;  // second parity subspace
  double f = 0.0;      // sup_a - sup_b
};

/// Names of the two subspaces compared by homotopy_scan for a given m.
std::pair<std::string, std::string> homotopy_subspaces(int m);

/**
 * Top Rayleigh quotients of L_{m,s} along eta_s = 1 - s + s eta on two parity subspaces:
 * m = 0: even and orthogonal to eta_s vs odd and orthogonal to t;
 * m = 1: odd vs even and orthogonal to constants;
 * m >= 2: even vs odd.
 */
std::vector<HomotopyPoint> homotopy_scan(const DimensionedProfile& dprofile, int m,
                                         std::span<const double> s_grid,
                                         std::size_t basis_size = kDefaultBasisSize);

struct OrthogonalSpaceIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  double correction = 0.0;
  double scale = 0.0;  // largest magnitude among the evaluated terms
  bool converged = true;
};

/**
 * Both sides of the reduction of <L_m f, f> + <f, f>/(n-1) to the zonal operator acting on
 * g = (1 - t^2)^(m/2) f, with the correction integral. Coefficients are in the m-basis with
 * degree_bound = coeffs.size().
 */
OrthogonalSpaceIdentity orthogonal_space_identity(const DimensionedProfile& dprofile, int m,
                                                  std::span<const double> coeffs, std::size_t order = 0);

struct CsBoundReport {
  int m = 0;
  double lhs = 0.0;  // squared pairing integral
  double factor = 0.0;
  double i1 = 0.0;
  double i2 = 0.0;
  double bound = 0.0;  // factor * i1 * i2
  double slack = 0.0;  // bound - lhs
  bool holds = false;
};

/// Cauchy-Schwarz product bounds behind the m = 1 (factor n-2) and m >= 2 (factor m(m+n-3)/n) cases.
CsBoundReport cs_bound_check(const DimensionedProfile& dprofile, int m, std::span<const double> coeffs,
                             std::size_t order = 0);

/// Weak-form value 1/(n(n-1)) sum w [-A1^(n-2)(1-t^2) f'^2 + A1^(n-3) k_m f^2] on a rule with exponent m+(n-3)/2.
double weak_form_on_samples(const ProfileSamples& samples, int n, int m, std::span<const double> f,
                            std::span<const double> df);

/// sum w A2 A1^(n-2) / (n eta) f^2.
double mass_form_on_samples(const ProfileSamples& samples, int n, std::span<const double> f);

}  // namespace revgap
