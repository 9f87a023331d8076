#pragma once

#include <array>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "aj.hpp"
#include "chart.hpp"
#include "errors.hpp"
#include "homogeneous.hpp"
#include "series.hpp"
#include "upoly.hpp"
#include "weierstrass.hpp"

namespace pf {

// free: x1 = v, x2 = v (w + w0).  corner: x1 = v w^c, x2 = v w^(c+1).
// origin is the unblown plane; composite marks a chart that fits neither normal form.
enum class ChartKind { origin, free, corner, composite };

inline const char* chart_kind_name(ChartKind k) {
  switch (k) {
    case ChartKind::free: return "free";
    case ChartKind::corner: return "corner";
    case ChartKind::origin: return "origin";
    default: return "composite";
  }
}

struct Chart {
  ChartKind kind = ChartKind::free;
  int c = 0;
  GaussRational w0{0};

  static Chart free_at(const GaussRational& w0) { return {ChartKind::free, 0, w0}; }
  static Chart corner_at(int c) { return {ChartKind::corner, c, GaussRational(0)}; }

  // Images of x1, x2 in the local coordinates (v, w).
  std::vector<TruncatedSeries> images(int cap) const {
    if (kind == ChartKind::origin) return {TruncatedSeries::var(2, cap, 0), TruncatedSeries::var(2, cap, 1)};
    if (kind == ChartKind::composite) throw NotSupported("composite chart has no closed form");
    if (c < 0) throw std::invalid_argument("chart: negative corner exponent");
    Exp e1{}, e2{};
    if (kind == ChartKind::free) {
      e1[0] = 1;
      e2[0] = 1;
      e2[1] = 1;
      auto x2 = s_monomial(2, cap, e2) + s_monomial(2, cap, e1, w0);
      return {s_monomial(2, cap, e1), x2};
    }
    e1[0] = 1;
    e1[1] = static_cast<std::uint8_t>(c);
    e2[0] = 1;
    e2[1] = static_cast<std::uint8_t>(c + 1);
    return {s_monomial(2, cap, e1), s_monomial(2, cap, e2)};
  }
};

struct StrictTransform {
  int m = 0;   // exponent of v
  int mw = 0;  // exponent of w (corner charts)
  TruncatedSeries f;
};

namespace detail {

inline std::array<int, 2> min_exponents(const TruncatedSeries& g) {
  auto terms = g.terms();
  if (terms.empty()) throw ZeroUpToCap("pullback vanishes at cap");
  std::array<int, 2> m{1 << 20, 1 << 20};
  for (auto& [e, c] : terms)
    for (int i = 0; i < 2; ++i) m[i] = std::min(m[i], static_cast<int>(e[i]));
  return m;
}

inline Exp exp2(int a, int b) {
  Exp e{};
  e[0] = static_cast<std::uint8_t>(a);
  e[1] = static_cast<std::uint8_t>(b);
  return e;
}

}  // namespace detail

inline StrictTransform strict_transform(const TruncatedSeries& f, const Chart& chart) {
  if (f.nvars() != 2) throw VariableMismatch("strict_transform needs two variables");
  if (f.is_zero()) throw ZeroUpToCap("strict_transform");
  auto g = s_subst(f, chart.images(f.cap()));
  auto m = detail::min_exponents(g);
  StrictTransform r;
  r.m = m[0];
  r.mw = chart.kind == ChartKind::corner ? m[1] : 0;
  r.f = detail::divide_monomial(g, detail::exp2(r.m, r.mw));
  return r;
}

// Certificate entry at one fiber point: pullback = v^a w^b * factor * unit.
// factor is 1 unless a smooth branch transverse to the divisors was straightened.
struct PointCertificate {
  int node = -1;
  bool ok = false;
  std::array<int, 2> exponents{0, 0};
  bool straightened = false;
  TruncatedSeries factor;
  TruncatedSeries unit;
  TruncatedSeries residual;  // the pullback when ok is false
  GaussRational unit_constant() const { return ok ? unit.coeff(Exp{}) : GaussRational(0); }
};

struct BlowupNode {
  int id = 0;
  int parent = -1;
  int depth = 0;          // blow-ups above this point
  int created_by = 0;     // index of the blow-up whose fiber holds this point
  bool affine = true;     // step chart: (v, v (w + c)) when affine, (v w, w) otherwise
  GaussRational c{0};     // fiber coordinate of the affine step
  Chart chart;            // normal form of the composite map from the root
  std::vector<TruncatedSeries> sigma;  // x1, x2 in local coordinates
  TruncatedSeries total;               // pulled-back series
  std::array<int, 2> divisors{0, 0};   // exceptional curve index along v = 0 and w = 0, 0 for none
  int blowup = 0;                      // index of the blow-up centred here, 0 for a fiber point
};

struct BlowupTree {
  std::vector<BlowupNode> nodes;
  int blowups = 0;

  static std::string label(int j, int k) { return "F_" + std::to_string(j) + "^(" + std::to_string(k) + ")"; }
  // Labels of the divisors through a node after all blow-ups.
  std::vector<std::string> labels(int id) const {
    std::vector<std::string> out;
    for (int j : nodes[id].divisors)
      if (j) out.push_back(label(j, blowups));
    return out;
  }
  std::vector<int> fiber_points() const {
    std::vector<int> out;
    for (auto& n : nodes)
      if (!n.blowup) out.push_back(n.id);
    return out;
  }
};

struct Resolution {
  BlowupTree tree;
  std::vector<PointCertificate> cert;
  bool ok() const {
    for (auto& c : cert)
      if (!c.ok) return false;
    return !cert.empty();
  }
};

namespace detail {

inline Chart classify_chart(const std::vector<TruncatedSeries>& sigma) {
  auto single = [](const TruncatedSeries& s) -> std::optional<std::pair<Exp, GaussRational>> {
    auto t = s.terms();
    if (t.size() != 1) return std::nullopt;
    return t[0];
  };
  auto a = single(sigma[0]);
  if (sigma[0] == TruncatedSeries::var(2, sigma[0].cap(), 0) && sigma[1] == TruncatedSeries::var(2, sigma[1].cap(), 1))
    return {ChartKind::origin, 0, GaussRational(0)};
  if (a && a->second == GaussRational(1) && a->first[0] == 1) {
    int c = a->first[1];
    auto b = single(sigma[1]);
    if (b && b->second == GaussRational(1) && b->first[0] == 1 && b->first[1] == c + 1) return Chart::corner_at(c);
    if (c == 0) {
      auto t = sigma[1].terms();
      GaussRational w0(0);
      bool ok = !t.empty();
      for (auto& [e, co] : t) {
        if (e == exp2(1, 1) && co == GaussRational(1)) continue;
        if (e == exp2(1, 0)) {
          w0 = co;
          continue;
        }
        ok = false;
      }
      if (ok && sigma[1].coeff(exp2(1, 1)) == GaussRational(1)) return Chart::free_at(w0);
    }
  }
  return {ChartKind::composite, -1, GaussRational(0)};
}

// Monomial times unit, or monomial times a smooth branch transverse to the divisors.
inline PointCertificate certify_point(const TruncatedSeries& g) {
  PointCertificate pc;
  if (auto mu = is_monomial_unit(g)) {
    pc.ok = true;
    pc.exponents = {mu->alpha[0], mu->alpha[1]};
    pc.unit = mu->unit;
    pc.factor = TruncatedSeries::constant(2, mu->unit.cap(), GaussRational(1));
    return pc;
  }
  auto m = min_exponents(g);
  auto s = divide_monomial(g, exp2(m[0], m[1]));
  pc.residual = g;
  if (s.cap() < 1 || !s[0].is_zero()) return pc;
  const GaussRational p = s.coeff(exp2(1, 0)), q = s.coeff(exp2(0, 1));
  if (p.is_zero() && q.is_zero()) return pc;
  if (m[0] > 0 && m[1] > 0) return pc;
  if (m[0] > 0 && q.is_zero()) return pc;
  if (m[1] > 0 && p.is_zero()) return pc;
  pc.ok = true;
  pc.straightened = true;
  pc.exponents = {m[0], m[1]};
  pc.factor = s;
  pc.unit = TruncatedSeries::constant(2, s.cap(), GaussRational(1));
  return pc;
}

inline std::vector<TruncatedSeries> compose_step(const std::vector<TruncatedSeries>& sigma, bool affine,
                                                 const GaussRational& c, int cap) {
  Exp ev = exp2(1, 0), ew = exp2(0, 1), evw = exp2(1, 1);
  std::vector<TruncatedSeries> step;
  if (affine)
    step = {s_monomial(2, cap, ev), s_monomial(2, cap, evw) + s_monomial(2, cap, ev, c)};
  else
    step = {s_monomial(2, cap, evw), s_monomial(2, cap, ew)};
  std::vector<TruncatedSeries> out;
  for (auto& s : sigma) out.push_back(s_subst(s, step));
  return out;
}

}  // namespace detail

// Point blow-ups until the pullback of delta is monomial (or straightenable) at every fiber point.
inline Resolution monomialize_discriminant(const TruncatedSeries& delta, int max_depth = 32) {
  if (delta.nvars() != 2) throw VariableMismatch("monomialize_discriminant needs two variables");
  if (delta.is_zero()) throw ZeroUpToCap("monomialize_discriminant");
  const int cap = delta.cap();
  Resolution res;
  auto& nodes = res.tree.nodes;
  BlowupNode root;
  root.sigma = {TruncatedSeries::var(2, cap, 0), TruncatedSeries::var(2, cap, 1)};
  root.chart = detail::classify_chart(root.sigma);
  root.total = delta;
  nodes.push_back(root);

  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    if (nodes[id].total.is_zero()) throw PrecisionExhausted("pullback vanishes at cap; raise cap");
    auto pc = detail::certify_point(nodes[id].total);
    pc.node = id;
    if (pc.ok) {
      res.cert.push_back(std::move(pc));
      continue;
    }
    if (nodes[id].depth >= max_depth) throw DepthExceeded("no monomial form after " + std::to_string(max_depth) + " blow-ups");

    const TruncatedSeries g = nodes[id].total;
    const HPoly in = g[*s_order(g)];
    const UPoly G = dehomogenize(in);
    const auto roots = roots_qi(G);
    if (G.deg() > 0 && static_cast<int>(roots.size()) < squarefree_part(G).deg())
      throw FiberRootUnsupported("fiber point outside Q(i)");
    const int k = ++res.tree.blowups;
    nodes[id].blowup = k;

    auto spawn = [&](bool affine, const GaussRational& c) {
      BlowupNode ch;
      ch.id = static_cast<int>(nodes.size());
      ch.parent = id;
      ch.depth = nodes[id].depth + 1;
      ch.created_by = k;
      ch.affine = affine;
      ch.c = c;
      ch.sigma = detail::compose_step(nodes[id].sigma, affine, c, cap);
      ch.chart = detail::classify_chart(ch.sigma);
      ch.total = s_subst(g, detail::compose_step({TruncatedSeries::var(2, cap, 0), TruncatedSeries::var(2, cap, 1)},
                                                 affine, c, cap));
      const auto& pd = nodes[id].divisors;
      if (affine)
        ch.divisors = {k, c.is_zero() ? pd[1] : 0};
      else
        ch.divisors = {pd[0], k};
      nodes.push_back(std::move(ch));
      queue.push_back(nodes.back().id);
    };
    for (auto& c : roots) spawn(true, c);
    if (G.deg() < in.degree()) spawn(false, GaussRational(0));
  }
  return res;
}

namespace detail {

// Coefficients of n(w0 + t) / d(w0 + t) up to t^prec.
inline std::vector<GaussRational> expand_ratio(const UPoly& n, const UPoly& d, const GaussRational& w0, int prec) {
  std::vector<GaussRational> out(std::max(0, prec + 1), GaussRational(0));
  if (prec < 0) return out;
  UPoly N = n.shifted(w0), D = d.shifted(w0);
  if (D.coeff(0).is_zero()) throw std::logic_error("expand_ratio: denominator vanishes");
  const GaussRational inv = D.coeff(0).inv();
  for (int j = 0; j <= prec; ++j) {
    GaussRational s = N.coeff(j);
    for (int i = 1; i <= std::min(j, D.deg()); ++i) s = s - D.coeff(i) * out[j - i];
    out[j] = s * inv;
  }
  return out;
}

inline UPoly chart_numerator(const HPoly& a, const Chart& chart, int k) {
  UPoly N = dehomogenize(a);
  if (chart.kind == ChartKind::corner && chart.c * k > 0) {
    std::vector<GaussRational> sh(chart.c * k + 1, GaussRational(0));
    sh.back() = GaussRational(1);
    N = N * UPoly(sh);
  }
  return N;
}

inline GaussRational chart_point(const Chart& chart, const GaussRational& w0) {
  return chart.kind == ChartKind::free ? chart.w0 + w0 : w0;
}

inline void check_ph_chart(const PhElem& A, const Chart& chart) {
  if (A.nvars() != 2) throw VariableMismatch("ph pullback needs two variables");
  if (chart.kind == ChartKind::composite || chart.kind == ChartKind::origin) throw NotSupported("ph pullback needs a blow-up chart");
  if (A.k0() < 0) throw NotSupported("Laurent element");
}

inline TruncatedSeries assemble(int cap, const std::vector<std::vector<GaussRational>>& rows, int k0) {
  std::vector<Term> t;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      if (!rows[i][j].is_zero()) t.emplace_back(exp2(k0 + static_cast<int>(i), static_cast<int>(j)), rows[i][j]);
  return TruncatedSeries::from_terms(2, cap, t);
}

inline int root_multiplicity(UPoly p, const GaussRational& w0) {
  if (p.is_zero()) return 1 << 20;
  UPoly lin(std::vector<GaussRational>{-w0, GaussRational(1)});
  int m = 0;
  while (p.eval(w0).is_zero()) {
    p = divmod(p, lin).first;
    ++m;
  }
  return m;
}

}  // namespace detail

// Sum of v^k w^(ck) a_k(1,w) / h(1,w)^(alpha k + beta), expanded in (v, w - w0).
inline TruncatedSeries ph_pullback(const PhElem& A, const Chart& chart, const GaussRational& w0) {
  detail::check_ph_chart(A, chart);
  const GaussRational p = detail::chart_point(chart, w0);
  const UPoly H = dehomogenize(A.h());
  if (H.eval(p).is_zero()) throw OnStrictTransformOfH("h(1, w0) = 0");
  std::vector<std::vector<GaussRational>> rows;
  for (int k = A.k0(); k <= A.cap(); ++k) {
    const HPoly a = A.term(k);
    if (a.is_zero()) {
      rows.emplace_back();
      continue;
    }
    UPoly D = UPoly::constant(GaussRational(1));
    for (int i = 0; i < A.denom_power(k); ++i) D = D * H;
    rows.push_back(detail::expand_ratio(detail::chart_numerator(a, chart, k), D, p, A.cap() - k));
  }
  return detail::assemble(A.cap(), rows, A.k0());
}

// Formal extension across a zero w0 of h(1, w): every a_k(1, w) must absorb h(1, w)^(alpha k + beta) at w0.
inline std::optional<TruncatedSeries> ph_extends_formally(const PhElem& A, const Chart& chart, const GaussRational& w0) {
  detail::check_ph_chart(A, chart);
  const GaussRational p = detail::chart_point(chart, w0);
  const UPoly H = dehomogenize(A.h());
  const int mu = detail::root_multiplicity(H, p);
  UPoly lin(std::vector<GaussRational>{-p, GaussRational(1)});
  UPoly Hred = H;
  for (int i = 0; i < mu; ++i) Hred = divmod(Hred, lin).first;
  std::vector<std::vector<GaussRational>> rows;
  for (int k = A.k0(); k <= A.cap(); ++k) {
    const HPoly a = A.term(k);
    if (a.is_zero()) {
      rows.emplace_back();
      continue;
    }
    UPoly N = detail::chart_numerator(a, chart, k);
    const int need = A.denom_power(k) * mu;
    if (detail::root_multiplicity(N, p) < need) return std::nullopt;
    for (int i = 0; i < need; ++i) N = divmod(N, lin).first;
    UPoly D = UPoly::constant(GaussRational(1));
    for (int i = 0; i < A.denom_power(k); ++i) D = D * Hred;
    rows.push_back(detail::expand_ratio(N, D, p, A.cap() - k));
  }
  return detail::assemble(A.cap(), rows, A.k0());
}

}  // namespace pf
