#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace revgap {

/// Value and first two derivatives of a profile at one point.
struct ProfileValue {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/**
 * Generating profile eta of a convex body of revolution, h_K(x) = eta(x_n).
 *
 * Profiles are immutable and cheap to copy (shared node). Every kind has
 * closed-form first and second derivatives.
 */
class Profile {
 public:
  enum class Kind { kBall, kSpheroid, kEvenPolynomial, kHomotopy, kScaledSum, kShifted };

  static Profile ball();
  /// Ellipsoid of revolution with equatorial semi-axis a and polar semi-axis b.
  static Profile spheroid(double a, double b);
  /// eta(t) = sum_k coeffs[k] * t^(2k).
  static Profile even_polynomial(std::vector<double> coeffs);
  /// eta_s(t) = 1 - s + s * base(t), s in [0, 1].
  static Profile homotopy(const Profile& base, double s);
  /// Positive combination sum_i c_i * eta_i (Minkowski sum of bodies).
  static Profile scaled_sum(const std::vector<std::pair<double, Profile>>& terms);
  /// eta(t) + shift * t, the body translated along the axis. Not origin symmetric.
  static Profile shifted(const Profile& base, double shift);

  Kind kind() const;
  bool symmetric() const { return symmetric_; }
  /// Same shape with the symmetry flag overridden.
  Profile with_symmetric(bool symmetric) const;

  /// (eta, eta', eta'') at t. Throws DomainError outside [-1, 1].
  ProfileValue eval(double t) const;

  std::string describe() const;

  struct Node;

 private:
  Profile(std::shared_ptr<const Node> node, bool symmetric)
      : node_(std::move(node)), symmetric_(symmetric) {}

  std::shared_ptr<const Node> node_;
  bool symmetric_ = true;
};

/// A profile together with the ambient dimension n >= 2.
struct DimensionedProfile {
  DimensionedProfile(Profile p, int dim);

  Profile profile;
  int n;
};

ProfileValue eval(const Profile& profile, double t);

/// A1 eta(t) = -t eta'(t) + eta(t).
double a1(const Profile& profile, double t);

/// A2 eta(t) = (1 - t^2) eta''(t) + A1 eta(t).
double a2(const Profile& profile, double t);

struct ValidationReport {
  struct Violation {
    std::string condition;  // "eta>0", "A1>0", "A2>0", "even"
    double t = 0.0;
    double value = 0.0;
  };

  std::size_t grid_points = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

inline constexpr std::size_t kDefaultValidationGrid = 257;
inline constexpr double kPositivityMargin = 1e-12;

/// Checks eta > 0, A1 > 0, A2 > 0 and (if flagged) evenness on a Chebyshev grid with endpoints.
ValidationReport validate(const DimensionedProfile& dprofile,
                          std::size_t grid_points = kDefaultValidationGrid);

/// Throws ValidationError if validate() reports any violation.
void require_valid(const DimensionedProfile& dprofile);

/// L_K(t) = t * int_0^t A2 eta(s) ds (64-node Gauss-Legendre on [0, t]).
double cap_height(const Profile& profile, double t);

/// eta(t) - A1 eta(t) (1 - t^2); requires a symmetric profile.
double rk_hk_gap(const Profile& profile, double t);

}  // namespace revgap
