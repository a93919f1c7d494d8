#pragma once

// Serialization: versioned JSON for root systems and scenario files,
// JSON/CSV/markdown/aligned-text emission for Morse tables, cell sets and
// verification reports. Rationals travel as [numerator, denominator]
// pairs or "p/q" strings; Weyl words as 1-based letter arrays.

#include "flagmorse/bundle/bundle.hpp"
#include "flagmorse/cohomology.hpp"
#include "flagmorse/schubert.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace flagmorse {

using json = nlohmann::ordered_json;

// ---- rationals ----

inline json to_json(const Rat& r) { return json::array({r.numerator(), r.denominator()}); }

inline Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }
  if (j.is_array() && j.size() == 2) return Rat(j[0].get<long long>(), j[1].get<long long>());
  throw ConfigError("cannot parse rational from " + j.dump());
}

inline Rat parse_rational(const std::string& s) { return rat_from_json(json(s)); }

inline json to_json(const RatVec& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_json(r));
  return out;
}

inline RatVec ratvec_from_json(const json& j) {
  RatVec out;
  for (const auto& e : j) out.push_back(rat_from_json(e));
  return out;
}

// ---- simple-root subsets ----

inline json theta_to_json(SimpleSet s) {
  json out = json::array();
  for (int i : set_elements(s)) out.push_back("a" + std::to_string(i + 1));
  return out;
}

inline int parse_simple_root_name(const std::string& name, int rank) {
  std::string body = name;
  if (!body.empty() && (body[0] == 'a' || body[0] == 'A')) body = body.substr(1);
  if (!body.empty() && body.substr(0, 5) == "lpha") body = body.substr(5);  // "alpha3"
  try {
    int idx = std::stoi(body);
    if (idx < 1 || idx > rank) throw ConfigError("simple root out of range: " + name);
    return idx - 1;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError("cannot parse simple root name: " + name);
  }
}

inline SimpleSet theta_from_json(const json& j, int rank) {
  SimpleSet s = 0;
  for (const auto& e : j) {
    int idx = e.is_number_integer() ? e.get<int>() - 1
                                    : parse_simple_root_name(e.get<std::string>(), rank);
    if (idx < 0 || idx >= rank) throw ConfigError("simple root index out of range");
    s |= SimpleSet(1) << idx;
  }
  return s;
}

// ---- root systems ----

inline json to_json(const RootSystem& rs) {
  json j;
  j["format"] = "flagmorse.rootsystem";
  j["version"] = 1;
  j["kind"] = std::string(1, kind_letter(rs.kind));
  j["rank"] = rs.rank;
  j["ambient"] = rs.ambient;
  j["cartan"] = rs.cartan;
  json simple = json::array();
  for (const auto& a : rs.simple) simple.push_back(to_json(a));
  j["simple_roots"] = std::move(simple);
  json roots = json::array();
  for (const auto& r : rs.roots) roots.push_back(to_json(r));
  j["roots"] = std::move(roots);
  j["num_positive"] = rs.num_positive;
  return j;
}

// Rebuilds from (kind, rank) and verifies the stored data against the
// reconstruction, so a stored document can never drift silently.
inline RootSystem root_system_from_json(const json& j) {
  if (j.value("format", "") != "flagmorse.rootsystem")
    throw ConfigError("not a root system document");
  if (j.value("version", 0) != 1) throw ConfigError("unsupported root system version");
  RootSystem rs = build_root_system(j.at("kind").get<std::string>(), j.at("rank").get<int>());
  if (j.at("cartan").get<std::vector<std::vector<long long>>>() != rs.cartan)
    throw ConfigError("stored Cartan matrix disagrees with the reconstruction");
  const auto& roots = j.at("roots");
  if (static_cast<int>(roots.size()) != rs.num_roots() ||
      j.at("num_positive").get<int>() != rs.num_positive)
    throw ConfigError("stored root list disagrees with the reconstruction");
  for (int r = 0; r < rs.num_roots(); ++r)
    if (ratvec_from_json(roots[r]) != rs.roots[r])
      throw ConfigError("stored root list disagrees with the reconstruction");
  return rs;
}

// ---- polynomials, words, cells ----

inline json to_json(const IntPolynomial& p) { return json(p.coeffs); }

inline json word_to_json(const std::vector<int>& word) {
  json out = json::array();
  for (int i : word) out.push_back(i + 1);
  return out;
}

inline json cells_to_json(const WeylGroup& wg, const CellSet& cs) {
  std::vector<int> sorted = cs.members;
  std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
    if (wg.length(a) != wg.length(b)) return wg.length(a) < wg.length(b);
    return wg.word(a) < wg.word(b);
  });
  json out = json::array();
  for (int w : sorted) out.push_back(word_string(wg.word(w)));
  return out;
}

// ---- Morse tables ----

inline json to_json(const WeylGroup& wg, const MorseTable& t) {
  json j;
  j["format"] = "flagmorse.morse_table";
  j["version"] = 1;
  j["system"] = t.system;
  j["h_values"] = to_json(t.h_values);
  j["theta_H"] = theta_to_json(t.theta_H);
  j["theta"] = theta_to_json(t.theta);
  j["coefficients"] = t.coefficients;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r;
    r["rep_word"] = word_string(wg.word(row.coset.rep));
    r["word"] = word_to_json(wg.word(row.coset.rep));
    r["coset_size"] = row.coset.size();
    r["n_plus"] = row.profile.n_plus;
    r["n_zero"] = row.profile.n_zero;
    r["n_minus"] = row.profile.n_minus;
    r["delta"] = theta_to_json(row.fix.delta);
    r["inner_type"] = theta_to_json(row.fix.inner_type);
    r["fix_poly"] = to_json(row.fix_poly);
    r["conley_poly"] = to_json(row.conley_poly);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["total_space_poly"] = to_json(t.total_space_poly);
  json res;
  res["ok"] = t.residual.ok;
  res["defect"] = to_json(t.residual.defect);
  if (t.residual.ok) res["residual"] = to_json(t.residual.residual);
  else res["reason"] = t.residual.reason;
  j["residual"] = std::move(res);
  return j;
}

inline std::string theta_names(SimpleSet s) {
  std::string out;
  for (int i : set_elements(s)) {
    if (!out.empty()) out += ' ';
    out += "a" + std::to_string(i + 1);
  }
  return out.empty() ? "-" : out;
}

inline std::string morse_table_csv(const WeylGroup& wg, const MorseTable& t) {
  std::ostringstream os;
  os << "rep_word,coset_size,n_plus,n_zero,n_minus,delta,inner_type,fix_poly,conley_poly\n";
  for (const auto& row : t.rows) {
    os << word_string(wg.word(row.coset.rep)) << ',' << row.coset.size() << ','
       << row.profile.n_plus << ',' << row.profile.n_zero << ',' << row.profile.n_minus << ','
       << theta_names(row.fix.delta) << ',' << theta_names(row.fix.inner_type) << ','
       << row.fix_poly.str() << ',' << row.conley_poly.str() << '\n';
  }
  os << "# total," << t.total_space_poly.str() << '\n';
  if (t.residual.ok) os << "# residual," << t.residual.residual.str() << '\n';
  else os << "# residual_failure," << t.residual.reason << '\n';
  return os.str();
}

inline std::string morse_table_text(const WeylGroup& wg, const MorseTable& t, bool markdown) {
  std::vector<std::array<std::string, 7>> cells;
  cells.push_back({"rep", "size", "n+", "n0", "n-", "fix", "conley"});
  for (const auto& row : t.rows)
    cells.push_back({word_string(wg.word(row.coset.rep)), std::to_string(row.coset.size()),
                     std::to_string(row.profile.n_plus), std::to_string(row.profile.n_zero),
                     std::to_string(row.profile.n_minus), row.fix_poly.str(),
                     row.conley_poly.str()});
  std::array<std::size_t, 7> width{};
  for (const auto& row : cells)
    for (int c = 0; c < 7; ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  os << t.system << "  theta_H={" << theta_names(t.theta_H) << "}  theta={"
     << theta_names(t.theta) << "}  coefficients=" << t.coefficients << "\n";
  for (std::size_t r = 0; r < cells.size(); ++r) {
    os << (markdown ? "| " : "  ");
    for (int c = 0; c < 7; ++c) {
      os << std::left << std::setw(static_cast<int>(width[c])) << cells[r][c];
      os << (markdown ? " | " : "  ");
    }
    os << '\n';
    if (markdown && r == 0) {
      os << "|";
      for (int c = 0; c < 7; ++c) os << std::string(width[c] + 2, '-') << "|";
      os << '\n';
    }
  }
  os << "total: " << t.total_space_poly.str() << '\n';
  if (t.residual.ok) os << "residual R(t): " << t.residual.residual.str() << '\n';
  else os << "residual failure: " << t.residual.reason << " (defect " << t.residual.defect.str() << ")\n";
  return os.str();
}

// ---- scenarios ----

struct Scenario {
  RatVec h_values;
  SimpleSet theta = 0;
  BaseSystem base = BaseSystem::cycle(1);
  Cocycle::Kind cocycle_kind = Cocycle::Kind::ConstantExp;
  std::vector<Eigen::MatrixXd> cocycle_values;  // empty for constant
  bool validate_cocycle = true;
  std::uint64_t seed = 2024;
  int samples = 500;
  int horizon = 60;
};

inline json to_json(const Scenario& sc) {
  json j;
  j["format"] = "flagmorse.scenario";
  j["version"] = 1;
  j["h"] = to_json(sc.h_values);
  j["theta"] = theta_to_json(sc.theta);
  if (sc.base.kind == BaseSystem::Kind::Cycle)
    j["base"] = {{"kind", "cycle"}, {"period", sc.base.period}};
  else
    j["base"] = {{"kind", "rotation"}, {"angle", sc.base.angle}, {"samples", sc.base.samples}};
  json coc;
  coc["kind"] = sc.cocycle_kind == Cocycle::Kind::ConstantExp ? "constant-exp" : "conformal";
  coc["validate"] = sc.validate_cocycle;
  if (sc.cocycle_kind == Cocycle::Kind::Conformal) {
    json values = json::array();
    for (const auto& m : sc.cocycle_values) {
      json rows = json::array();
      for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
      }
      values.push_back(std::move(rows));
    }
    coc["values"] = std::move(values);
  }
  j["cocycle"] = std::move(coc);
  j["seed"] = sc.seed;
  j["samples"] = sc.samples;
  j["horizon"] = sc.horizon;
  return j;
}

inline Scenario scenario_from_json(const json& j) {
  if (j.value("format", "") != "flagmorse.scenario") throw ConfigError("not a scenario document");
  if (j.value("version", 0) != 1) throw ConfigError("unsupported scenario version");
  Scenario sc;
  sc.h_values = ratvec_from_json(j.at("h"));
  sc.theta = theta_from_json(j.at("theta"), static_cast<int>(sc.h_values.size()));
  const auto& base = j.at("base");
  if (base.at("kind") == "cycle") sc.base = BaseSystem::cycle(base.at("period").get<int>());
  else if (base.at("kind") == "rotation")
    sc.base = BaseSystem::rotation(base.at("angle").get<double>(), base.at("samples").get<int>());
  else throw ConfigError("unknown base kind");
  const auto& coc = j.at("cocycle");
  sc.validate_cocycle = coc.value("validate", true);
  if (coc.at("kind") == "constant-exp") {
    sc.cocycle_kind = Cocycle::Kind::ConstantExp;
  } else if (coc.at("kind") == "conformal") {
    sc.cocycle_kind = Cocycle::Kind::Conformal;
    const int n = static_cast<int>(sc.h_values.size()) + 1;
    for (const auto& rows : coc.at("values")) {
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m(i, k) = rows.at(i).at(k).get<double>();
      sc.cocycle_values.push_back(std::move(m));
    }
  } else {
    throw ConfigError("unknown cocycle kind");
  }
  sc.seed = j.value("seed", std::uint64_t(2024));
  sc.samples = j.value("samples", 500);
  sc.horizon = j.value("horizon", 60);
  return sc;
}

inline Cocycle cocycle_from_scenario(const Scenario& sc, const SplitElement& h) {
  if (sc.cocycle_kind == Cocycle::Kind::ConstantExp) return Cocycle::constant_exp();
  if (sc.base.kind == BaseSystem::Kind::Cycle &&
      static_cast<int>(sc.cocycle_values.size()) != sc.base.count())
    throw ConfigError("scenario cocycle needs one value per base state");
  if (sc.validate_cocycle) return Cocycle::conformal(h, sc.cocycle_values);
  return Cocycle::raw(sc.cocycle_values);
}

}  // namespace flagmorse
