#include "revgap/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <variant>

#include "revgap/errors.hpp"
#include "revgap/quadrature.hpp"

namespace revgap {

namespace {

struct BallData {};
struct SpheroidData {
  double a;
  double b;
};
struct PolyData {
  std::vector<double> coeffs;  // in powers of t^2
};
struct HomotopyData {
  Profile base;
  double s;
};
struct SumData {
  std::vector<std::pair<double, Profile>> terms;
};
struct ShiftData {
  Profile base;
  double shift;
};

}  // namespace

struct Profile::Node {
  std::variant<BallData, SpheroidData, PolyData, HomotopyData, SumData, ShiftData> data;
};

namespace {

ProfileValue eval_poly(const std::vector<double>& c, double t) {
  // p(u) with u = t^2; eta' = 2t p'(u), eta'' = 2 p'(u) + 4 t^2 p''(u).
  const double u = t * t;
  double p = 0.0, dp = 0.0, ddp = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) {
    ddp = ddp * u + 2.0 * dp;
    dp = dp * u + p;
    p = p * u + c[k];
  }
  return {p, 2.0 * t * dp, 2.0 * dp + 4.0 * u * ddp};
}

}  // namespace

Profile Profile::ball() { return Profile(std::make_shared<Node>(Node{BallData{}}), true); }

Profile Profile::spheroid(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("spheroid semi-axes must be positive");
  return Profile(std::make_shared<Node>(Node{SpheroidData{a, b}}), true);
}

Profile Profile::even_polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw ParameterError("even polynomial needs at least one coefficient");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw ParameterError("even polynomial coefficient is not finite");
  }
  return Profile(std::make_shared<Node>(Node{PolyData{std::move(coeffs)}}), true);
}

Profile Profile::homotopy(const Profile& base, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("homotopy parameter s must lie in [0, 1]");
  return Profile(std::make_shared<Node>(Node{HomotopyData{base, s}}), base.symmetric());
}

Profile Profile::scaled_sum(const std::vector<std::pair<double, Profile>>& terms) {
  if (terms.empty()) throw ParameterError("scaled sum needs at least one term");
  bool symmetric = true;
  for (const auto& [c, p] : terms) {
    if (!(c > 0.0)) throw ParameterError("scaled sum coefficients must be positive");
    symmetric = symmetric && p.symmetric();
  }
  return Profile(std::make_shared<Node>(Node{SumData{terms}}), symmetric);
}

Profile Profile::shifted(const Profile& base, double shift) {
  if (!std::isfinite(shift)) throw ParameterError("shift must be finite");
  return Profile(std::make_shared<Node>(Node{ShiftData{base, shift}}), shift == 0.0 && base.symmetric());
}

Profile::Kind Profile::kind() const {
  return static_cast<Kind>(node_->data.index());
}

Profile Profile::with_symmetric(bool symmetric) const { return Profile(node_, symmetric); }

ProfileValue Profile::eval(double t) const {
  if (!(std::abs(t) <= 1.0 + 1e-14)) {
    throw DomainError("profile evaluated outside [-1, 1] at t = " + std::to_string(t));
  }
  return std::visit(
      [t](const auto& d) -> ProfileValue {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, BallData>) {
          return {1.0, 0.0, 0.0};
        } else if constexpr (std::is_same_v<T, SpheroidData>) {
          const double a2 = d.a * d.a;
          const double diff = d.b * d.b - a2;
          const double eta = std::sqrt(a2 + diff * t * t);
          return {eta, diff * t / eta, diff * a2 / (eta * eta * eta)};
        } else if constexpr (std::is_same_v<T, PolyData>) {
          return eval_poly(d.coeffs, t);
        } else if constexpr (std::is_same_v<T, HomotopyData>) {
          const auto v = d.base.eval(t);
          return {1.0 - d.s + d.s * v.value, d.s * v.d1, d.s * v.d2};
        } else if constexpr (std::is_same_v<T, SumData>) {
          ProfileValue sum;
          for (const auto& [c, p] : d.terms) {
            const auto v = p.eval(t);
            sum.value += c * v.value;
            sum.d1 += c * v.d1;
            sum.d2 += c * v.d2;
          }
          return sum;
        } else {
          auto v = d.base.eval(t);
          v.value += d.shift * t;
          v.d1 += d.shift;
          return v;
        }
      },
      node_->data);
}

std::string Profile::describe() const {
  std::ostringstream os;
  std::visit(
      [&os](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, BallData>) {
          os << "ball";
        } else if constexpr (std::is_same_v<T, SpheroidData>) {
          os << "spheroid(a=" << d.a << ",b=" << d.b << ")";
        } else if constexpr (std::is_same_v<T, PolyData>) {
          os << "even-polynomial(";
          for (std::size_t i = 0; i < d.coeffs.size(); ++i) os << (i ? "," : "") << d.coeffs[i];
          os << ")";
        } else if constexpr (std::is_same_v<T, HomotopyData>) {
          os << "homotopy(" << d.base.describe() << ",s=" << d.s << ")";
        } else if constexpr (std::is_same_v<T, SumData>) {
          os << "scaled-sum(";
          for (std::size_t i = 0; i < d.terms.size(); ++i) {
            os << (i ? "+" : "") << d.terms[i].first << "*" << d.terms[i].second.describe();
          }
          os << ")";
        } else {
          os << "shifted(" << d.base.describe() << ",shift=" << d.shift << ")";
        }
      },
      node_->data);
  return os.str();
}

DimensionedProfile::DimensionedProfile(Profile p, int dim) : profile(std::move(p)), n(dim) {
  if (n < 2) throw ParameterError("ambient dimension n must be at least 2");
}

ProfileValue eval(const Profile& profile, double t) { return profile.eval(t); }

double a1(const Profile& profile, double t) {
  const auto v = profile.eval(t);
  return -t * v.d1 + v.value;
}

double a2(const Profile& profile, double t) {
  const auto v = profile.eval(t);
  return (1.0 - t * t) * v.d2 - t * v.d1 + v.value;
}

std::string ValidationReport::summary() const {
  if (ok()) return "ok (" + std::to_string(grid_points) + " points)";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    const auto& v = violations[i];
    os << (i ? "; " : "") << v.condition << " violated at t=" << v.t << " (value " << v.value << ")";
  }
  return os.str();
}

ValidationReport validate(const DimensionedProfile& dprofile, std::size_t grid_points) {
  if (grid_points < 3) throw ParameterError("validation grid needs at least 3 points");
  const Profile& p = dprofile.profile;
  ValidationReport report;
  report.grid_points = grid_points;

  struct Worst {
    double value = std::numeric_limits<double>::infinity();
    double t = 0.0;
  };
  Worst eta, first, second;
  double worst_odd = 0.0, worst_odd_t = 0.0;

  for (std::size_t k = 0; k < grid_points; ++k) {
    double t = std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid_points - 1));
    if (std::abs(t) < 1e-15) t = 0.0;
    const auto v = p.eval(t);
    const double va1 = -t * v.d1 + v.value;
    const double va2 = (1.0 - t * t) * v.d2 + va1;
    if (v.value < eta.value) eta = {v.value, t};
    if (va1 < first.value) first = {va1, t};
    if (va2 < second.value) second = {va2, t};
    if (p.symmetric()) {
      const double odd = std::abs(v.value - p.eval(-t).value) / std::max(1.0, std::abs(v.value));
      if (odd > worst_odd) {
        worst_odd = odd;
        worst_odd_t = t;
      }
    }
  }

  if (!(eta.value > kPositivityMargin)) report.violations.push_back({"eta>0", eta.t, eta.value});
  if (!(first.value > kPositivityMargin)) report.violations.push_back({"A1>0", first.t, first.value});
  if (!(second.value > kPositivityMargin)) report.violations.push_back({"A2>0", second.t, second.value});
  if (worst_odd > kPositivityMargin) report.violations.push_back({"even", worst_odd_t, worst_odd});
  return report;
}

void require_valid(const DimensionedProfile& dprofile) {
  const auto report = validate(dprofile);
  if (!report.ok()) {
    throw ValidationError("invalid profile " + dprofile.profile.describe() + ": " + report.summary());
  }
}

double cap_height(const Profile& profile, double t) {
  static const QuadratureRule rule = gauss_legendre(64);
  if (t == 0.0) return 0.0;
  const double half = 0.5 * t;
  const double integral =
      half * rule.integrate([&](double x) { return a2(profile, half * (x + 1.0)); });
  return t * integral;
}

double rk_hk_gap(const Profile& profile, double t) {
  if (!profile.symmetric()) {
    throw UnsupportedCaseError("rk_hk_gap requires an origin-symmetric profile");
  }
  return profile.eval(t).value - a1(profile, t) * (1.0 - t * t);
}

}  // namespace revgap
