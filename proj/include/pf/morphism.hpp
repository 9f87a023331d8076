#pragma once

#include <vector>

#include "series.hpp"

namespace pf {

// phi: C[[x1..xn]] -> C[[u1..um]], x_i -> phi[i].
struct Morphism {
  int n = 0, m = 0;
  std::vector<TruncatedSeries> phi;

  Morphism() = default;
  explicit Morphism(std::vector<TruncatedSeries> comps) : phi(std::move(comps)) {
    if (phi.empty()) throw std::invalid_argument("morphism without components");
    n = static_cast<int>(phi.size());
    m = phi[0].nvars();
    int cap = phi[0].cap();
    for (auto& f : phi) {
      if (f.nvars() != m) throw VariableMismatch("morphism components");
      if (!f.constant_term().is_zero()) throw ConstantTermNonzero("morphism component");
      cap = std::min(cap, f.cap());
    }
    for (auto& f : phi) f = f.truncated(cap);
  }

  int cap() const { return phi[0].cap(); }
  TruncatedSeries apply(const TruncatedSeries& f) const { return s_subst(f, phi); }
};

}  // namespace pf
