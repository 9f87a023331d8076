#pragma once

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pf.hpp"

namespace pf::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "pf-1";

inline json document(const std::string& kind) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  return j;
}

// 17 significant digits
inline std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string rational_str(const mpq_class& q) { return q.get_str(); }

inline std::string gauss_str(const GaussRational& c) { return coeff_expr(c); }

// ---------------------------------------------------------------- reading

inline std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [l, c] = line_column(text, e.byte ? e.byte - 1 : 0);
    throw FormatError(origin + ":" + std::to_string(l) + ":" + std::to_string(c) + ": malformed JSON");
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  json j = parse_text(ss.str(), path);
  if (!j.is_object()) throw FormatError(path + ": top level must be an object");
  if (j.contains("schema") && j["schema"] != kSchema) throw FormatError(path + ": unknown schema " + j["schema"].dump());
  return j;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T field_or(const json& j, const char* key, T dflt) {
  return j.contains(key) ? field<T>(j, key) : dflt;
}

inline int nvars_of(const json& j) {
  int n = field<int>(j, "nvars");
  if (n < 1 || n > kMaxVars) throw FormatError("nvars out of range");
  return n;
}

inline MonicPoly read_monic(const json& j, const char* key, int cap) {
  return parse_monic(field<std::string>(j, key), nvars_of(j), cap);
}

inline TruncatedSeries read_series(const json& j, const char* key, int cap) {
  return parse_series(field<std::string>(j, key), nvars_of(j), cap);
}

// {"components": [...], "nvars": m} or {"example": "osgood"|"gabrielov", "N": 8}
inline Morphism read_morphism(const json& j, int cap) {
  if (j.contains("example")) {
    const auto name = field<std::string>(j, "example");
    if (name == "osgood") return example_osgood(cap);
    if (name == "gabrielov") return example_gabrielov(cap, field_or<int>(j, "N", 8));
    throw FormatError("unknown example '" + name + "'");
  }
  const int m = nvars_of(j);
  auto comps = field<std::vector<std::string>>(j, "components");
  if (comps.empty()) throw FormatError("morphism without components");
  std::vector<TruncatedSeries> phi;
  for (auto& c : comps) phi.push_back(parse_series(c, m, cap));
  return Morphism(phi);
}

// ---------------------------------------------------------------- writing

inline json series_json(const TruncatedSeries& f) {
  return {{"nvars", f.nvars()}, {"cap", f.cap()}, {"expr", to_expr(f)}};
}

inline json ph_json(const PhElem& A) {
  json nums = json::array();
  for (int k = A.k0(); k <= A.cap(); ++k) nums.push_back(to_expr(A.term(k)));
  return {{"h", to_expr(A.h())}, {"alpha", A.alpha()}, {"beta", A.beta()}, {"k0", A.k0()}, {"cap", A.cap()},
          {"numerators", nums}};
}

inline json gamma_json(const HomElem& g) {
  json f = json::array();
  for (auto& c : g.f) f.push_back(to_expr(c));
  return {{"degree", g.degree()}, {"omega", rational_str(g.omega)}, {"pure", g.pure}, {"coefficients", f}};
}

inline json factorization_json(const NpeFactorization& F) {
  json j = document("factorization");
  j["cap"] = F.cap;
  j["gamma"] = gamma_json(F.gamma);
  j["h"] = to_expr(F.h);
  json roots = json::array();
  for (auto& r : F.roots) {
    json parts = json::array();
    for (auto& a : r.A) parts.push_back(ph_json(a));
    auto v = vg_valuation(r);
    roots.push_back({{"conjugate", r.conj}, {"valuation", v ? json(rational_str(*v)) : json(nullptr)}, {"gamma_powers", parts}});
  }
  j["roots"] = roots;
  j["orbits"] = F.orbits;
  return j;
}

inline json morphism_json(const Morphism& phi) {
  json c = json::array();
  for (auto& f : phi.phi) c.push_back(to_expr(f));
  json j = document("morphism");
  j["nvars"] = phi.m;
  j["cap"] = phi.cap();
  j["components"] = c;
  return j;
}

inline json tree_json(const Resolution& r) {
  json j = document("resolution");
  j["blowups"] = r.tree.blowups;
  json nodes = json::array();
  for (auto& n : r.tree.nodes) {
    json labels = json::array();
    for (auto& l : r.tree.labels(n.id)) labels.push_back(l);
    nodes.push_back({{"id", n.id},
                     {"parent", n.parent < 0 ? json(nullptr) : json(n.parent)},
                     {"step", n.parent < 0 ? "root" : n.affine ? "affine" : "other"},
                     {"kind", chart_kind_name(n.chart.kind)},
                     {"c", n.chart.c},
                     {"w0", gauss_str(n.chart.kind == ChartKind::free ? n.chart.w0 : n.c)},
                     {"blowup", n.blowup},
                     {"divisors", labels}});
  }
  j["nodes"] = nodes;
  json cert = json::object();
  for (auto& pc : r.cert)
    cert[std::to_string(pc.node)] = {{"exponents", pc.exponents},
                                     {"unitConstant", gauss_str(pc.unit_constant())},
                                     {"straightened", pc.straightened},
                                     {"ok", pc.ok}};
  j["certificate"] = cert;
  j["ok"] = r.ok();
  return j;
}

inline json gap_json(const std::optional<mpq_class>& g) { return g ? json(rational_str(*g)) : json(nullptr); }

inline json pairing_json(const RootPairing& r) {
  json j = document("pairing");
  j["d"] = r.d;
  j["nuDifference"] = r.nu_difference ? json(*r.nu_difference) : json(nullptr);
  j["nuDiscriminant"] = r.nu_discriminant;
  j["threshold"] = rational_str(r.threshold);
  json pairs = json::array();
  for (std::size_t i = 0; i < r.pair.size(); ++i) pairs.push_back({{"p", i}, {"q", r.pair[i]}, {"gap", gap_json(r.gap[i])}});
  j["pairs"] = pairs;
  return j;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace pf::io
