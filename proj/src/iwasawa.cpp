#include "aswtower/iwasawa.hpp"

#include <sstream>

#include "aswtower/cartier.hpp"
#include "aswtower/linalg.hpp"

namespace aswtower {

std::size_t CheckReport::failures() const {
  std::size_t f = 0;
  for (const auto& it : items)
    if (!it.pass) ++f;
  return f;
}

void CheckReport::add(std::string label, bool pass, std::string detail) {
  items.push_back({std::move(label), pass, std::move(detail)});
}

FuncElem T_power(const Tower& T, const FuncElem& e, std::uint64_t k) {
  FuncElem r = e;
  for (std::uint64_t i = 0; i < k && !r.is_zero(); ++i) r = T.T(r);
  return r;
}

namespace {

void require_level(const Tower& T, unsigned n) {
  if (n < 1 || n > T.levels())
    throw InputError("level " + std::to_string(n) + " is outside the constructed range 1.." +
                     std::to_string(T.levels()));
}

std::string digits(std::size_t a, std::uint32_t p, unsigned n) {
  std::ostringstream os;
  os << a << " = (";
  for (unsigned i = 0; i < n; ++i, a /= p) os << (i ? "," : "") << a % p;
  os << ')';
  return os.str();
}

}  // namespace

FuncElem trace_down(const Tower& T, const FuncElem& e) {
  if (e.level == 0) throw MathError("trace_down needs an element above level 0");
  const unsigned n = e.level - 1;
  const std::size_t blk = T.dim(n), p = T.p();
  FuncElem top{n, std::vector<Poly>(e.g.begin() + (p - 1) * blk, e.g.begin() + p * blk)};
  return T.neg(top);
}

FuncElem trace_by_conjugates(const Tower& T, const FuncElem& e) {
  if (e.level == 0) throw MathError("trace needs an element above level 0");
  const std::uint64_t step = T.dim(e.level - 1);
  FuncElem acc = e, cur = e;
  for (std::uint32_t j = 1; j < T.p(); ++j) {
    for (std::uint64_t k = 0; k < step; ++k) cur = T.gamma(cur);
    acc = T.add(acc, cur);
  }
  return acc;
}

CheckReport verify_taunit(const Tower& T, unsigned n) {
  require_level(T, n);
  const Field* F = T.field();
  const std::uint32_t p = T.p();
  CheckReport R{"taunit", n, {}, {}};
  for (std::size_t a = 1; a < T.dim(n); ++a) {
    Elem expect = 1;
    for (std::size_t v = a; v; v /= p)
      for (std::uint32_t k = 2; k <= v % p; ++k) expect = F->mul(expect, F->from_int(k));
    FuncElem r = T_power(T, T.monomial(n, 0, a), a);
    bool pass = r == T.constant(n, expect);
    R.add("a=" + digits(a, p, n), pass, pass ? "" : "got " + T.to_string(r) + ", expected " + F->to_string(expect));
  }
  return R;
}

CheckReport verify_T_triangular(const Tower& T, unsigned n) {
  require_level(T, n);
  const Field* F = T.field();
  const std::uint32_t p = T.p();
  const std::int64_t d = T.d();
  CheckReport R{"triangular", n, {}, {}};
  for (std::size_t a = 1; a < T.dim(n); ++a) {
    unsigned m = 0;
    std::size_t v = a;
    while (v % p == 0) v /= p, ++m;
    Elem expect = F->from_int(v % p);
    if (m % 2) expect = F->neg(expect);
    FuncElem r = T.T(T.monomial(n, 0, a));
    std::string why;
    const Poly& lead = r.g[a - 1];
    if (lead != Poly::constant(F, expect))
      why += "coefficient of y^(a-1) is " + lead.to_string() + ", expected " + F->to_string(expect) + "; ";
    for (std::size_t b = a; b < r.g.size(); ++b)
      if (!r.g[b].is_zero()) why += "nonzero coefficient at y^" + std::to_string(b) + "; ";
    for (std::size_t b = 0; b + 1 < a; ++b) {
      const Poly& g = r.g[b];
      if (g.is_zero()) continue;
      if (static_cast<std::int64_t>(p) * g.degree() > static_cast<std::int64_t>(a - 1 - b) * d)
        why += "deg at y^" + std::to_string(b) + " is " + std::to_string(g.degree()) + "; ";
    }
    R.add("a=" + digits(a, p, n), why.empty(), why);
  }
  return R;
}

CheckReport verify_trace(const Tower& T, unsigned n) {
  if (n + 1 > T.levels())
    throw InputError("trace check at level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " levels");
  const std::uint32_t p = T.p();
  CheckReport R{"trace", n, {}, {}};
  // the two descriptions of the trace agree on y_n^i
  for (std::uint32_t i = 0; i < p; ++i) {
    FuncElem e = T.pow(T.y(n, n + 1), i);
    FuncElem lhs = trace_by_conjugates(T, e);
    FuncElem rhs = T.embed(trace_down(T, e), n + 1);
    R.add("conjugate sum y_" + std::to_string(n) + "^" + std::to_string(i), lhs == rhs,
          lhs == rhs ? "" : "conjugates give " + T.to_string(lhs));
  }
  for (std::size_t a = 0; a < T.dim(n + 1); ++a) {
    FuncElem got = trace_down(T, omega_generator(T, n + 1, a));
    FuncElem want = omega_generator(T, n, a);
    bool pass = got == want;
    R.add("w_a, a=" + digits(a, p, n + 1), pass, pass ? "" : "got " + T.to_string(got));
  }
  return R;
}

CheckReport verify_module_structure(const Tower& T, unsigned n) {
  require_level(T, n);
  const TowerProfile P = T.profile();
  const std::uint64_t pn = T.dim(n);
  CheckReport R{"module", n, {}, {}};
  Cartier C(T);
  RegularBasis B = C.regular_basis(n);
  const BigInt g = breaks_and_genus(P, n).genus;

  std::vector<std::uint64_t> mus;
  for (std::uint64_t i = 1;; ++i) {
    std::uint64_t mi = mu(P, i);
    if (mi >= pn) break;
    mus.push_back(mi);
  }
  BigInt colsum = 0;
  for (auto mi : mus) colsum += pn - mi;
  const BigInt lattice = lattice_count(P, n, 0);
  R.add("dim M_n = sum (p^n - mu_i)", colsum == g, "sum " + colsum.str() + ", genus " + g.str());
  R.add("#Delta_n = genus", lattice == g, "#Delta_n " + lattice.str());
  R.add("basis size = genus", BigInt(B.size()) == g, std::to_string(B.size()));
  R.facts.push_back({"i(n)", std::to_string(mus.size())});
  R.facts.push_back({"dim", g.str()});

  std::vector<std::vector<Elem>> cols;
  std::size_t ann_full = 0, ann_short = 0;
  bool regular = true;
  for (std::size_t idx = 0; idx < mus.size(); ++idx) {
    const std::uint64_t i = idx + 1, mi = mus[idx];
    // x^i w_mu dx / x
    FuncElem e = C.basis_element(n, BasisPair{mi, i}).body;
    const std::uint64_t len = pn - mi;
    for (std::uint64_t j = 0; j <= len; ++j) {
      if (j < len) {
        auto c = diff_coordinates(T, B, e);
        if (!c) {
          regular = false;
          R.add("T^" + std::to_string(j) + " e_" + std::to_string(i) + " regular", false);
        } else {
          cols.push_back(std::move(*c));
        }
        if (j + 1 == len && e.is_zero()) ++ann_short;
      } else {
        if (e.is_zero()) ++ann_full;
        R.add("T^(p^n-mu_i) e_" + std::to_string(i) + " = 0", e.is_zero());
      }
      e = T.T(e);
    }
  }
  Matrix M(B.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t r = 0; r < B.size(); ++r) M(r, j) = cols[j][r];
  const std::size_t rk = mat_rank(*T.field(), M);
  R.add("T-iterates of generators are regular", regular);
  R.add("T-iterates span M_n independently", rk == B.size() && cols.size() == B.size(),
        "rank " + std::to_string(rk) + " of " + std::to_string(cols.size()) + " vectors");
  R.facts.push_back({"annihilator_p^n-mu_i", std::to_string(ann_full) + "/" + std::to_string(mus.size())});
  R.facts.push_back({"annihilator_p^n-1-mu_i", std::to_string(ann_short) + "/" + std::to_string(mus.size())});
  std::string supported = ann_full == mus.size() && ann_short == 0 ? "p^n-mu_i"
                          : ann_short == mus.size()               ? "p^n-1-mu_i"
                                                                  : "neither";
  R.facts.push_back({"annihilator_supported", supported});
  return R;
}

}  // namespace aswtower
