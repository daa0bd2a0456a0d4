#include "revgap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "revgap/errors.hpp"

namespace revgap {

using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InputError(std::string("profile field '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

}  // namespace

Profile profile_from_json(const json& j) {
  if (!j.is_object()) throw InputError("profile description must be an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw InputError("profile needs a string 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  Profile p = Profile::ball();
  try {
    if (kind == "ball") {
      p = Profile::ball();
    } else if (kind == "spheroid") {
      p = Profile::spheroid(number(j, "a"), number(j, "b"));
    } else if (kind == "even-polynomial") {
      if (!j.contains("coefficients") || !j.at("coefficients").is_array()) {
        throw InputError("even-polynomial needs a 'coefficients' array");
      }
      std::vector<double> c;
      for (const auto& x : j.at("coefficients")) {
        if (!x.is_number()) throw InputError("polynomial coefficients must be numbers");
        c.push_back(x.get<double>());
      }
      p = Profile::even_polynomial(std::move(c));
    } else if (kind == "homotopy") {
      if (!j.contains("base")) throw InputError("homotopy needs a 'base' profile");
      p = Profile::homotopy(profile_from_json(j.at("base")), number(j, "s"));
    } else if (kind == "scaled-sum") {
      if (!j.contains("terms") || !j.at("terms").is_array()) throw InputError("scaled-sum needs a 'terms' array");
      std::vector<std::pair<double, Profile>> terms;
      for (const auto& t : j.at("terms")) {
        if (!t.contains("profile")) throw InputError("scaled-sum term needs a 'profile'");
        terms.emplace_back(number(t, "coefficient"), profile_from_json(t.at("profile")));
      }
      p = Profile::scaled_sum(terms);
    } else if (kind == "shifted") {
      if (!j.contains("base")) throw InputError("shifted needs a 'base' profile");
      p = Profile::shifted(profile_from_json(j.at("base")), number(j, "shift"));
    } else {
      throw InputError("unknown profile kind '" + kind + "'");
    }
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(std::string("invalid ") + kind + " profile: " + e.what());
  }
  if (j.contains("symmetric")) {
    if (!j.at("symmetric").is_boolean()) throw InputError("'symmetric' must be a boolean");
    p = p.with_symmetric(j.at("symmetric").get<bool>());
  }
  return p;
}

bool ExperimentSpec::wants(const std::string& format) const {
  for (const auto& f : formats) {
    if (f == format) return true;
  }
  return false;
}

namespace {

template <class T>
std::vector<T> list_of(const json& j, const char* key) {
  if (!j.at(key).is_array()) throw InputError(std::string("'") + key + "' must be an array");
  try {
    return j.at(key).get<std::vector<T>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("'") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentSpec parse_spec(const json& j) {
  if (!j.is_object()) throw InputError("spec must be a JSON object");
  ExperimentSpec spec;
  if (j.contains("kind")) {
    spec.profiles.push_back({j.value("id", std::string("profile0")), profile_from_json(j), j});
    return spec;
  }
  if (!j.contains("profiles") || !j.at("profiles").is_array() || j.at("profiles").empty()) {
    throw InputError("spec needs a non-empty 'profiles' array");
  }
  for (std::size_t i = 0; i < j.at("profiles").size(); ++i) {
    const auto& pj = j.at("profiles")[i];
    std::string id = "profile" + std::to_string(i);
    if (pj.is_object() && pj.contains("id")) {
      if (!pj.at("id").is_string()) throw InputError("profile 'id' must be a string");
      id = pj.at("id").get<std::string>();
    }
    spec.profiles.push_back({id, profile_from_json(pj), pj});
  }
  try {
    if (j.contains("n_list")) spec.n_list = list_of<int>(j, "n_list");
    if (j.contains("m_max")) spec.m_max = j.at("m_max").get<int>();
    if (j.contains("N")) spec.basis_size = j.at("N").get<std::size_t>();
    if (j.contains("tol")) spec.tol = j.at("tol").get<double>();
    if (j.contains("p_list")) spec.p_list = list_of<double>(j, "p_list");
    if (j.contains("seeds")) spec.seeds = list_of<std::uint64_t>(j, "seeds");
    if (j.contains("s_grid")) spec.s_grid = list_of<double>(j, "s_grid");
    if (j.contains("outputs")) {
      const auto& o = j.at("outputs");
      if (o.contains("dir")) spec.out_dir = o.at("dir").get<std::string>();
      if (o.contains("formats")) spec.formats = list_of<std::string>(o, "formats");
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed spec field: ") + e.what());
  }
  for (int n : spec.n_list) {
    if (n < 2) throw InputError("n_list entries must be at least 2");
  }
  if (spec.n_list.empty()) throw InputError("n_list is empty");
  if (spec.basis_size < 4) throw InputError("N must be at least 4");
  if (spec.m_max < 0) throw InputError("m_max must be non-negative");
  for (double s : spec.s_grid) {
    if (!(s >= 0.0 && s <= 1.0)) throw InputError("s_grid entries must lie in [0, 1]");
  }
  return spec;
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read spec file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_spec(j);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// JSON has no infinities; report them as null.
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json to_json(const ValidationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"condition", x.condition}, {"t", x.t}, {"value", x.value}});
  return {{"ok", r.ok()}, {"grid_points", r.grid_points}, {"violations", v}};
}

json to_json(const GapEntry& e, int n) {
  json trivial = json::array();
  for (const auto& t : e.trivial) {
    trivial.push_back({{"match", t.match}, {"lambda", t.lambda}, {"angle", t.angle}, {"index", t.index}});
  }
  return {{"n", n},
          {"m", e.m},
          {"N", e.basis_size},
          {"eigenvalues", e.eigenvalues},
          {"trivial", trivial},
          {"max_nontrivial", finite_or_null(e.max_nontrivial)},
          {"gap_margin", finite_or_null(e.margin)},
          {"passed", e.passed},
          {"top_nontrivial_simple", e.top_simple}};
}

json to_json(const GapReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) entries.push_back(to_json(e, r.n));
  return {{"statement", "thm:spectral_gap"},
          {"n", r.n},
          {"threshold", r.threshold},
          {"tol", r.tol},
          {"passed", r.passed},
          {"gap_margin", finite_or_null(r.margin)},
          {"empirical_p_threshold", finite_or_null(r.empirical_p_threshold)},
          {"per_m", entries}};
}

json to_json(const Rational& r) { return r.str(); }

json to_json(const FrobeniusReport& r) {
  return {{"statement", "lem:frobenius_indices"},
          {"n", r.n},
          {"m", r.m},
          {"p0", to_json(r.p0)},
          {"q0", to_json(r.q0)},
          {"indices", {to_json(r.alpha1), to_json(r.alpha2)}},
          {"resonant", r.resonant},
          {"logarithmic", r.logarithmic}};
}

json to_json(const InequalityReport& r) {
  json stab = json::array();
  for (const auto& s : r.per_m_stability) stab.push_back({{"m", s.m}, {"c_m", s.c_m}, {"value", s.value}});
  return {{"statement", r.kind == "strengthened" ? "thm:strengthened_local_log_bm" : "conj:local_lp_bm"},
          {"kind", r.kind},
          {"term_V_LK", r.term_v_lk},
          {"term_V_LLK", r.term_v_llk},
          {"term_integral", r.term_integral},
          {"vol_K", r.vol},
          {"p", r.p},
          {"deficit", r.deficit},
          {"tolerance", r.tolerance},
          {"certified", r.certified},
          {"pass", r.passed},
          {"suspicious", r.suspicious},
          {"per_m_stability", stab}};
}

json to_json(const HomotopyPoint& p) {
  return {{"s", p.s}, {"sup_a", p.sup_a}, {"sup_b", p.sup_b}, {"F", p.f}};
}

}  // namespace revgap
