#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "pf/json_io.hpp"

using namespace pf;
using io::json;

namespace {

struct Options {
  std::string in, out, name = "osgood";
  int cap = 12, degX = 4, capU = 10, maxDepth = 32, N = 8, trials = 1000;
  std::uint64_t seed = 0;
  bool expect_relation = false;
  double rho = 1.0;
};

constexpr int kNegative = 2;

void emit(const Options& o, const json& j) {
  if (o.out.empty()) return;
  std::ofstream f(o.out);
  if (!f) throw FormatError("cannot write " + o.out);
  f << io::dump(j);
}

std::uint64_t effective_seed(const Options& o) {
  if (const char* s = std::getenv("PF_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw FormatError("PF_SEED is not an unsigned integer");
    }
  }
  return o.seed;
}

json input(const Options& o) {
  if (o.in.empty()) throw FormatError("--in is required");
  return io::read_file(o.in);
}

int run_factor(const Options& o) {
  auto j = input(o);
  auto P = io::read_monic(j, "poly", o.cap);
  auto F = npe_factor(P, o.cap, effective_seed(o));
  auto out = io::factorization_json(F);
  out["poly"] = to_expr(P);
  emit(o, out);
  std::cout << "factor: " << F.roots.size() << " roots in " << F.orbits.size() << " orbit(s), gamma of degree "
            << F.gamma.degree() << ", h = " << to_expr(F.h) << "\n";
  return 0;
}

int run_aj(const Options& o) {
  auto j = input(o);
  auto P = io::read_monic(j, "poly", o.cap);
  auto roots = aj_roots(P, o.cap);
  json out = io::document("aj-roots");
  out["poly"] = to_expr(P);
  json rs = json::array();
  for (auto& r : roots) rs.push_back({{"ramification", r.ram}, {"series", io::series_json(r.base)}});
  out["roots"] = rs;
  emit(o, out);
  std::cout << "aj-roots: " << roots.size() << " roots, ramification " << (roots.empty() ? 1 : roots[0].ram) << "\n";
  return 0;
}

int run_disc(const Options& o) {
  auto j = input(o);
  auto P = io::read_monic(j, "poly", o.cap);
  auto D = discriminant(P);
  json out = io::document("discriminant");
  out["poly"] = to_expr(P);
  out["discriminant"] = io::series_json(D);
  auto ord = s_order(D);
  out["order"] = ord ? json(*ord) : json(nullptr);
  std::optional<MonomialUnit> mu;
  if (ord) mu = is_monomial_unit(D);
  out["monomialTimesUnit"] = mu.has_value();
  if (mu) {
    std::vector<int> a(P.nvars());
    for (int i = 0; i < P.nvars(); ++i) a[i] = mu->alpha[i];
    out["exponents"] = a;
  }
  emit(o, out);
  std::cout << "disc: order " << (ord ? std::to_string(*ord) : "beyond cap") << (mu ? ", monomial times unit" : "") << "\n";
  return ord ? 0 : kNegative;
}

int run_prep(const Options& o) {
  auto phi = io::read_morphism(input(o), o.cap);
  auto p = prepare_morphism(phi);
  json out = io::document("prepared");
  out["form"] = p.form;
  out["rank"] = p.rank;
  out["a"] = p.a;
  out["b"] = p.b;
  out["morphism"] = io::morphism_json(p.phi);
  json log = json::array();
  for (auto& t : p.log) log.push_back({{"kind", t.kind}, {"detail", t.detail}});
  out["log"] = log;
  emit(o, out);
  std::cout << "prep: form " << p.form << " after " << p.log.size() << " transformation(s)\n";
  return 0;
}

int run_rank(const Options& o) {
  auto phi = io::read_morphism(input(o), o.cap);
  int r = generic_rank(phi);
  json out = io::document("rank");
  out["genericRank"] = r;
  out["n"] = phi.n;
  out["m"] = phi.m;
  out["cap"] = phi.cap();
  emit(o, out);
  std::cout << "rank: generic rank " << r << " (minors checked through degree " << phi.cap() << ")\n";
  return 0;
}

int run_kernel(const Options& o) {
  auto phi = io::read_morphism(input(o), o.capU);
  auto r = kernel_search(phi, o.degX, o.capU);
  json out = io::document("kernel");
  out["degX"] = o.degX;
  out["capU"] = o.capU;
  out["constraintRank"] = r.rank;
  json basis = json::array();
  for (auto& k : r.basis) basis.push_back(to_expr(k));
  out["basis"] = basis;
  emit(o, out);
  if (r.basis.empty()) {
    std::cout << "kernel: no relation up to degree " << o.degX << " (checked through degree " << o.capU << ")\n";
    return kNegative;
  }
  std::cout << "kernel: " << r.basis.size() << " relation(s) up to degree " << o.degX << " through degree " << o.capU
            << "\n";
  return 0;
}

int run_resolve(const Options& o) {
  auto j = input(o);
  TruncatedSeries delta = j.contains("poly") ? discriminant(io::read_monic(j, "poly", o.cap)) : io::read_series(j, "series", o.cap);
  auto r = monomialize_discriminant(delta, o.maxDepth);
  auto out = io::tree_json(r);
  out["series"] = to_expr(delta);
  emit(o, out);
  std::cout << "resolve-disc: " << r.tree.blowups << " blow-up(s), " << r.cert.size() << " fiber point(s), certificate "
            << (r.ok() ? "passes" : "fails") << "\n";
  return r.ok() ? 0 : kNegative;
}

std::pair<MonicPoly, MonicPoly> read_pair(const Options& o) {
  auto j = input(o);
  return {io::read_monic(j, "P", o.cap), io::read_monic(j, "Q", o.cap)};
}

int run_pair(const Options& o) {
  auto [P, Q] = read_pair(o);
  auto r = pair_roots(P, Q, npe_factor(P, o.cap, effective_seed(o)), npe_factor(Q, o.cap, effective_seed(o)));
  emit(o, io::pairing_json(r));
  std::cout << "pair-roots: bijection on " << r.d << " roots, threshold " << r.threshold << "\n";
  return 0;
}

int run_match(const Options& o) {
  auto [P, Q] = read_pair(o);
  auto m = match_factors(P, Q, o.cap);
  json out = io::document("factor-matching");
  out["pairing"] = io::pairing_json(m.roots);
  json fs = json::array();
  for (auto& f : m.factors)
    fs.push_back({{"p", f.p_orbit}, {"q", f.q_orbit}, {"degree", f.degree}, {"gap", f.gap ? json(*f.gap) : json(nullptr)}});
  out["factors"] = fs;
  emit(o, out);
  std::cout << "match-factors: " << m.factors.size() << " factor pair(s)\n";
  return 0;
}

HPoly random_homogeneous(std::mt19937_64& rng, int n, int deg) {
  std::uniform_int_distribution<int> c(-5, 5);
  std::vector<Term> t;
  for (auto& e : graded_monomials(n, deg)) {
    if (exp_degree(e, n) != deg || rng() % 2) continue;
    GaussRational v(mpq_class(c(rng)), mpq_class(c(rng)));
    if (!v.is_zero()) t.emplace_back(e, v);
  }
  if (t.empty()) {
    Exp e{};
    e[0] = static_cast<std::uint8_t>(deg);
    t.emplace_back(e, GaussRational(1));
  }
  return HPoly(n, deg, t);
}

int run_norm(const Options& o) {
  std::vector<std::pair<HPoly, HPoly>> pairs;
  if (!o.in.empty()) {
    auto j = input(o);
    const int n = io::nvars_of(j);
    for (auto& p : io::field<std::vector<std::vector<std::string>>>(j, "pairs")) {
      if (p.size() != 2) throw FormatError("each pair needs two polynomials");
      pairs.emplace_back(parse_hpoly(p[0], n), parse_hpoly(p[1], n));
    }
  } else {
    std::mt19937_64 rng(effective_seed(o));
    for (int t = 0; t < o.trials; ++t) {
      const int n = 2;
      pairs.emplace_back(random_homogeneous(rng, n, 1 + static_cast<int>(rng() % 4)),
                         random_homogeneous(rng, n, 1 + static_cast<int>(rng() % 4)));
    }
  }
  json out = io::document("norm-check");
  json rows = json::array();
  int violations = 0;
  double worst = 0;
  for (auto& [h, b] : pairs) {
    auto r = mahler_check(h, b);
    violations += !(r.submultiplicative && r.mahler);
    worst = std::max(worst, r.ratio / std::ldexp(1.0, r.exponent));
    rows.push_back({{"h", to_expr(h)}, {"b", to_expr(b)}, {"hb", io::decimal(r.hb)}, {"lhs", io::decimal(r.lhs)},
                    {"rhsMahler", io::decimal(r.rhs)}, {"ratio", io::decimal(r.ratio)},
                    {"normRho", io::decimal(norm_rho(h * b, o.rho).value)}, {"ok", r.submultiplicative && r.mahler}});
  }
  out["rho"] = io::decimal(o.rho);
  out["pairs"] = rows;
  out["violations"] = violations;
  emit(o, out);
  std::cout << "norm-check: " << pairs.size() << " pair(s), " << violations << " violation(s), largest ratio / 2^D "
            << io::decimal(worst) << "\n";
  return violations ? kNegative : 0;
}

int run_examples(const Options& o) {
  Morphism phi;
  if (o.name == "osgood") phi = example_osgood(o.cap);
  else if (o.name == "gabrielov") phi = example_gabrielov(o.cap, o.N);
  else throw FormatError("unknown example '" + o.name + "'");
  auto out = io::morphism_json(phi);
  out["example"] = o.name;
  emit(o, out);
  std::cout << "examples: " << o.name << " with " << phi.n << " components through degree " << phi.cap() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pf: power series, factorization and rank tools"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, std::function<int(const Options&)>> verbs = {
      {"factor", run_factor},   {"aj-roots", run_aj},        {"disc", run_disc},          {"prep", run_prep},
      {"rank", run_rank},       {"kernel", run_kernel},      {"resolve-disc", run_resolve}, {"pair-roots", run_pair},
      {"match-factors", run_match}, {"norm-check", run_norm}, {"examples", run_examples}};
  for (auto& [name, fn] : verbs) {
    auto* sc = app.add_subcommand(name);
    sc->add_option("--in", o.in, "input JSON file");
    sc->add_option("--out", o.out, "output JSON file");
    sc->add_option("--cap", o.cap, "truncation degree")->check(CLI::NonNegativeNumber);
    sc->add_option("--seed", o.seed, "random seed (PF_SEED overrides)");
    if (name == "kernel") {
      sc->add_option("--degX", o.degX, "relation degree")->check(CLI::NonNegativeNumber);
      sc->add_option("--capU", o.capU, "truncation in the source")->check(CLI::NonNegativeNumber);
      sc->add_flag("--expect-relation", o.expect_relation, "treat an empty basis as a negative result (default)");
    }
    if (name == "resolve-disc") sc->add_option("--maxDepth", o.maxDepth, "blow-up depth limit")->check(CLI::PositiveNumber);
    if (name == "norm-check") {
      sc->add_option("--trials", o.trials, "random pairs when no input is given")->check(CLI::NonNegativeNumber);
      sc->add_option("--rho", o.rho, "polyradius")->check(CLI::PositiveNumber);
    }
    if (name == "examples") {
      sc->add_option("--name", o.name, "osgood or gabrielov");
      sc->add_option("--N", o.N, "Gabrielov truncation index")->check(CLI::NonNegativeNumber);
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorKind::input);
  }
  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    return verbs.at(verb)(o);
  } catch (const Error& e) {
    std::cerr << "pf " << verb << ": " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::invalid_argument& e) {
    std::cerr << "pf " << verb << ": " << e.what() << "\n";
    return static_cast<int>(ErrorKind::input);
  } catch (const std::exception& e) {
    std::cerr << "pf " << verb << ": internal error: " << e.what() << "\n";
    return static_cast<int>(ErrorKind::internal);
  }
}
