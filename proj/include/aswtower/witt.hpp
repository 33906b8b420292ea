#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "aswtower/field.hpp"
#include "aswtower/poly.hpp"

namespace aswtower {

// Sparse polynomial with coefficients in [0, p) and exponent vectors over the
// variables a_0..a_{n-1}, b_0..b_{n-1}; terms sorted by exponent vector.
struct ModPoly {
  std::vector<std::pair<std::vector<std::uint16_t>, std::uint32_t>> terms;
};

struct WittPolys {
  std::uint32_t p = 0;
  unsigned n = 0;
  std::vector<ModPoly> sum;   // coordinate m of a (+) b
  std::vector<ModPoly> diff;  // coordinate m of a (-) b
};

// Level cap; default 3, overridden by the ASWTOWER_MAX_LEVEL environment variable.
unsigned witt_length_cap();

// Cached per (p, n); safe to call from several threads.
const WittPolys& witt_carry_polys(std::uint32_t p, unsigned n);

// Evaluate P at the given values of (a_0..a_{n-1}, b_0..b_{n-1}).
// Ops must provide: V one(); V mul(const V&, const V&); void add_scaled(V&, const V&, uint32_t);
// V zero().
template <class V, class Ops>
V eval_modpoly(const ModPoly& P, const std::vector<V>& vars, const Ops& ops) {
  std::vector<std::vector<V>> powers(vars.size());
  auto power = [&](std::size_t v, std::size_t e) -> const V& {
    auto& pw = powers[v];
    if (pw.empty()) pw.push_back(ops.one());
    while (pw.size() <= e) pw.push_back(ops.mul(pw.back(), vars[v]));
    return pw[e];
  };
  V acc = ops.zero();
  for (const auto& [exps, c] : P.terms) {
    V term = ops.one();
    bool first = true;
    for (std::size_t v = 0; v < exps.size(); ++v) {
      if (!exps[v]) continue;
      if (first) {
        term = power(v, exps[v]);
        first = false;
      } else {
        term = ops.mul(term, power(v, exps[v]));
      }
    }
    ops.add_scaled(acc, term, c);
  }
  return acc;
}

template <class V, class Ops>
std::vector<V> witt_combine(const std::vector<ModPoly>& polys, const std::vector<V>& u, const std::vector<V>& v,
                            const Ops& ops) {
  if (u.size() != v.size()) throw MathError("Witt vector length mismatch");
  const std::size_t n = u.size();
  std::vector<V> vars;
  vars.reserve(2 * n);
  for (auto& x : u) vars.push_back(x);
  for (auto& x : v) vars.push_back(x);
  std::vector<V> out;
  for (std::size_t m = 0; m < n; ++m) out.push_back(eval_modpoly(polys[m], vars, ops));
  return out;
}

template <class V, class Ops>
std::vector<V> witt_add(std::uint32_t p, const std::vector<V>& u, const std::vector<V>& v, const Ops& ops) {
  return witt_combine(witt_carry_polys(p, static_cast<unsigned>(u.size())).sum, u, v, ops);
}

template <class V, class Ops>
std::vector<V> witt_sub(std::uint32_t p, const std::vector<V>& u, const std::vector<V>& v, const Ops& ops) {
  return witt_combine(witt_carry_polys(p, static_cast<unsigned>(u.size())).diff, u, v, ops);
}

// Ring adapters
struct ConstOps {
  const Field* F;
  Elem one() const { return 1; }
  Elem zero() const { return 0; }
  Elem mul(Elem a, Elem b) const { return F->mul(a, b); }
  void add_scaled(Elem& acc, Elem t, std::uint32_t c) const { acc = F->add(acc, F->mul(t, F->from_int(c))); }
};

struct PolyOps {
  const Field* F;
  Poly one() const { return Poly::constant(F, 1); }
  Poly zero() const { return Poly(F); }
  Poly mul(const Poly& a, const Poly& b) const { return a * b; }
  void add_scaled(Poly& acc, const Poly& t, std::uint32_t c) const { acc += t.scaled(F->from_int(c)); }
};

// Witt coordinates (length n) of the integer c in W(F_p), by repeated addition of 1.
std::vector<Elem> witt_of_integer(const Field* F, long long c, unsigned n);

}  // namespace aswtower
