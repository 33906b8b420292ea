#include "aswtower/tower.hpp"

#include <algorithm>
#include <sstream>

#include "aswtower/witt.hpp"

namespace aswtower {

bool FuncElem::is_zero() const {
  for (const auto& c : g)
    if (!c.is_zero()) return false;
  return true;
}

namespace {

// ring adapter for evaluating Witt polynomials inside R_L
struct FuncOps {
  const Tower* T;
  unsigned level;
  FuncElem one() const { return T->constant(level, 1); }
  FuncElem zero() const { return T->zero(level); }
  FuncElem mul(const FuncElem& a, const FuncElem& b) const { return T->mul(a, b); }
  void add_scaled(FuncElem& acc, const FuncElem& t, std::uint32_t c) const {
    acc = T->add(acc, T->scale(t, T->field()->from_int(c)));
  }
};

}  // namespace

Tower::Tower(const TowerSpec& spec) : spec_(spec), F_(make_field(spec.field)), levels_(spec.levels) {
  if (levels_ < 1) throw InputError("levels must be at least 1");
  if (levels_ > witt_length_cap())
    throw InputError("levels = " + std::to_string(levels_) + " exceeds the level cap " +
                     std::to_string(witt_length_cap()));
  pw_.assign(levels_ + 2, 1);
  for (unsigned i = 1; i < pw_.size(); ++i) pw_[i] = pw_[i - 1] * F_->p();
  d_ = spec_degree(spec_);
  w_ = build_rhs(spec_, F_.get(), levels_);
  build();
}

FuncElem Tower::zero(unsigned level) const { return FuncElem{level, std::vector<Poly>(pw_[level], Poly(F_.get()))}; }

FuncElem Tower::constant(unsigned level, Elem c) const {
  FuncElem e = zero(level);
  e.g[0] = Poly::constant(F_.get(), c);
  return e;
}

FuncElem Tower::from_poly(unsigned level, const Poly& g) const {
  FuncElem e = zero(level);
  e.g[0] = g;
  return e;
}

FuncElem Tower::monomial(unsigned level, std::size_t xexp, std::size_t a, Elem c) const {
  FuncElem e = zero(level);
  e.g.at(a) = Poly::monomial(F_.get(), c, xexp);
  return e;
}

FuncElem Tower::y(unsigned i, unsigned level) const {
  if (i >= level) throw MathError("y index beyond level");
  return monomial(level, 0, pw_[i], 1);
}

FuncElem Tower::embed(const FuncElem& e, unsigned level) const {
  if (level < e.level) throw MathError("cannot embed into a lower level");
  FuncElem r = e;
  r.level = level;
  r.g.resize(pw_[level], Poly(F_.get()));
  return r;
}

FuncElem Tower::add(const FuncElem& a, const FuncElem& b) const {
  unsigned L = std::max(a.level, b.level);
  FuncElem r = embed(a, L);
  for (std::size_t i = 0; i < b.g.size(); ++i) r.g[i] += b.g[i];
  return r;
}

FuncElem Tower::sub(const FuncElem& a, const FuncElem& b) const {
  unsigned L = std::max(a.level, b.level);
  FuncElem r = embed(a, L);
  for (std::size_t i = 0; i < b.g.size(); ++i) r.g[i] -= b.g[i];
  return r;
}

FuncElem Tower::neg(const FuncElem& a) const {
  FuncElem r = a;
  for (auto& c : r.g) c = -c;
  return r;
}

FuncElem Tower::scale(const FuncElem& a, Elem c) const {
  FuncElem r = a;
  for (auto& g : r.g) g = g.scaled(c);
  return r;
}

FuncElem Tower::mul_poly(const FuncElem& a, const Poly& g) const {
  FuncElem r = a;
  for (auto& c : r.g)
    if (!c.is_zero()) c = c * g;
  return r;
}

bool Tower::block_zero(const Poly* A, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!A[i].is_zero()) return false;
  return true;
}

std::vector<Poly> Tower::mul_rec(unsigned L, const Poly* A, const Poly* B) const {
  const Field* F = F_.get();
  if (L == 0) return {A[0] * B[0]};
  const std::size_t p = F->p(), blk = pw_[L - 1];
  std::vector<char> nzA(p), nzB(p);
  for (std::size_t i = 0; i < p; ++i) {
    nzA[i] = !block_zero(A + i * blk, blk);
    nzB[i] = !block_zero(B + i * blk, blk);
  }
  std::vector<std::vector<Poly>> C(2 * p - 1);
  auto accumulate = [&](std::size_t k, std::vector<Poly>&& v) {
    if (C[k].empty()) {
      C[k] = std::move(v);
    } else {
      for (std::size_t i = 0; i < blk; ++i) C[k][i] += v[i];
    }
  };
  for (std::size_t i = 0; i < p; ++i) {
    if (!nzA[i]) continue;
    for (std::size_t j = 0; j < p; ++j) {
      if (!nzB[j]) continue;
      accumulate(i + j, mul_rec(L - 1, A + i * blk, B + j * blk));
    }
  }
  // y^k = y^{k-p} (y + f) for k >= p
  const FuncElem& fL = f_[L - 1];
  for (std::size_t k = 2 * p - 2; k >= p; --k) {
    if (C[k].empty() || block_zero(C[k].data(), blk)) continue;
    std::vector<Poly> moved = C[k];
    accumulate(k - p + 1, std::move(moved));
    accumulate(k - p, mul_rec(L - 1, C[k].data(), fL.g.data()));
  }
  std::vector<Poly> out(pw_[L], Poly(F));
  for (std::size_t k = 0; k < p; ++k) {
    if (C[k].empty()) continue;
    for (std::size_t i = 0; i < blk; ++i) out[k * blk + i] = std::move(C[k][i]);
  }
  return out;
}

FuncElem Tower::mul(const FuncElem& a, const FuncElem& b) const {
  unsigned L = std::max(a.level, b.level);
  if (L > f_.size()) throw MathError("multiplication beyond the constructed levels");
  FuncElem A = embed(a, L), B = embed(b, L);
  return FuncElem{L, mul_rec(L, A.g.data(), B.g.data())};
}

FuncElem Tower::pow(const FuncElem& a, std::uint64_t k) const {
  FuncElem r = constant(a.level, 1), base = a;
  while (k) {
    if (k & 1) r = mul(r, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return r;
}

FuncElem Tower::reduce(unsigned level, const std::vector<RawTerm>& raw) const {
  std::vector<std::vector<FuncElem>> ypow(level);
  auto ypower = [&](unsigned i, unsigned e) -> const FuncElem& {
    auto& v = ypow[i];
    if (v.empty()) v.push_back(constant(level, 1));
    while (v.size() <= e) v.push_back(mul(v.back(), y(i, level)));
    return v[e];
  };
  FuncElem acc = zero(level);
  for (const auto& t : raw) {
    if (t.yexp.size() > level) throw MathError("raw term uses a variable beyond the level");
    FuncElem m = monomial(level, t.xexp, 0, t.coeff);
    for (unsigned i = 0; i < t.yexp.size(); ++i)
      if (t.yexp[i]) m = mul(m, ypower(i, t.yexp[i]));
    acc = add(acc, m);
  }
  return acc;
}

std::optional<Leading> Tower::leading(const FuncElem& e) const {
  std::optional<Leading> best;
  const std::int64_t scale = static_cast<std::int64_t>(pw_[e.level]);
  for (std::size_t a = 0; a < e.g.size(); ++a) {
    if (e.g[a].is_zero()) continue;
    std::int64_t pole = scale * e.g[a].degree() + xis_[e.level][a];
    if (!best || pole > best->pole)
      best = Leading{pole, a, static_cast<std::size_t>(e.g[a].degree()), e.g[a].leading()};
  }
  return best;
}

std::optional<std::int64_t> Tower::ord(const FuncElem& e) const {
  auto l = leading(e);
  if (!l) return std::nullopt;
  return -l->pole;
}

void Tower::fill_xi(unsigned level) {
  if (xis_.size() <= level) xis_.resize(level + 1);
  const std::uint32_t p = F_->p();
  std::vector<std::int64_t> t(pw_[level], 0);
  for (std::size_t a = 0; a < t.size(); ++a) {
    std::size_t v = a;
    std::int64_t s = 0;
    for (unsigned i = 0; i < level; ++i, v /= p)
      s += static_cast<std::int64_t>(v % p) * static_cast<std::int64_t>(pw_[level - 1 - i]) * dbreak_[i];
    t[a] = s;
  }
  xis_[level] = std::move(t);
}

void Tower::set_gamma_powers(unsigned m) {
  if (gpow_.size() <= m) gpow_.resize(m + 1);
  gpow_[m].clear();
  gpow_[m].push_back(constant(m + 1, 1));
  for (std::uint32_t j = 1; j < F_->p(); ++j) gpow_[m].push_back(mul(gpow_[m].back(), gy_[m]));
}

std::vector<Poly> Tower::gamma_rec(unsigned L, const Poly* E) const {
  if (L == 0) return {E[0]};
  const std::size_t p = F_->p(), blk = pw_[L - 1];
  FuncElem out = zero(L);
  for (std::size_t j = 0; j < p; ++j) {
    if (block_zero(E + j * blk, blk)) continue;
    FuncElem sub{L - 1, gamma_rec(L - 1, E + j * blk)};
    if (j == 0) {
      out = add(out, sub);
    } else {
      out = add(out, mul(embed(sub, L), gpow_[L - 1][j]));
    }
  }
  return out.g;
}

FuncElem Tower::gamma(const FuncElem& e) const {
  if (e.level > gy_.size()) throw MathError("Galois action beyond the constructed levels");
  return FuncElem{e.level, gamma_rec(e.level, e.g.data())};
}

FuncElem Tower::T(const FuncElem& e) const { return sub(gamma(e), e); }

void Tower::build() {
  const Field* F = F_.get();
  const std::uint32_t p = F->p();
  const TowerProfile prof(p, d_);
  xis_.clear();
  fill_xi(0);
  std::vector<FuncElem> Y;  // original Witt coordinates in standard variables
  for (unsigned m = 0; m < levels_; ++m) {
    // raw right-hand side: w_m + carry_m(Y_{<m}, w_{<m})
    FuncElem b = from_poly(m, w_[m]);
    // coordinate m of Y (+) (1,0,...) minus Y_m, for the Galois action
    FuncElem carry1 = m == 0 ? constant(0, 1) : zero(m);
    if (m > 0) {
      const auto& polys = witt_carry_polys(p, m + 1).sum;
      FuncOps ops{this, m};
      std::vector<FuncElem> vars;
      for (unsigned i = 0; i <= m; ++i) vars.push_back(i < m ? embed(Y[i], m) : zero(m));
      for (unsigned i = 0; i <= m; ++i) vars.push_back(i < m ? from_poly(m, w_[i]) : zero(m));
      b = add(b, eval_modpoly(polys[m], vars, ops));
      for (unsigned i = 0; i <= m; ++i) vars[m + 1 + i] = i == 0 ? constant(m, 1) : zero(m);
      carry1 = eval_modpoly(polys[m], vars, ops);
    }

    // standard form: remove poles of order divisible by p
    FuncElem u = zero(m);
    const std::int64_t pm = static_cast<std::int64_t>(pw_[m]);
    auto lead0 = leading(b);
    if (!lead0) throw MathError("level " + std::to_string(m) + " equation is trivial");
    const std::int64_t limit = 4 * lead0->pole + 64;
    for (std::int64_t iter = 0;; ++iter) {
      auto ld = leading(b);
      if (!ld || ld->pole <= 0) throw MathError("level " + std::to_string(m) + " right-hand side became constant");
      if (ld->pole % p != 0) break;
      if (iter > limit) throw MathError("standard-form reduction did not terminate at level " + std::to_string(m));
      const std::int64_t N = ld->pole / p;
      std::optional<std::size_t> pick;
      for (std::size_t a = 0; a < pw_[m]; ++a) {
        std::int64_t x = xis_[m][a];
        if (x <= N && (N - x) % pm == 0) {
          pick = a;
          break;
        }
      }
      if (!pick) throw MathError("no monomial of pole order " + std::to_string(N) + " at level " + std::to_string(m));
      const std::size_t e = static_cast<std::size_t>((N - xis_[m][*pick]) / pm);
      FuncElem U = monomial(m, e, *pick, 1);
      FuncElem Up = pow(U, p);
      auto lp = leading(Up);
      if (!lp || lp->pole != ld->pole || lp->a != ld->a || lp->e != ld->e)
        throw MathError("leading term mismatch in standard-form reduction");
      Elem cp = F->neg(F->div(ld->coeff, lp->coeff));
      Elem c = F->frobenius_inverse(cp);
      b = add(b, sub(scale(Up, cp), scale(U, c)));
      u = add(u, scale(U, c));
    }
    const std::int64_t pole = leading(b)->pole;
    const BigInt expected = breaks_and_genus(prof, m + 1).lower;
    if (BigInt(pole) != expected)
      throw MathError("level " + std::to_string(m) + " has pole order " + std::to_string(pole) + ", expected " +
                      expected.str() + " (not a minimal-break tower)");

    // provisional level with y'_m = Y_m + u
    f_.push_back(b);
    u_.push_back(u);
    c_.push_back(1);
    dbreak_.push_back(pole);
    fill_xi(m + 1);
    // gamma(y'_m) = y'_m - u + carry1 + gamma(u)
    FuncElem ym = y(m, m + 1);
    FuncElem gu = m > 0 ? gamma(u) : u;
    gy_.push_back(add(ym, sub(add(carry1, gu), u)));
    set_gamma_powers(m);
    // gamma^{p^m} y'_m - y'_m must be a constant c in F_p^x
    FuncElem v = ym;
    for (std::uint64_t k = 0; k < pw_[m]; ++k) v = gamma(v);
    FuncElem diff = sub(v, ym);
    bool is_const = true;
    for (std::size_t a = 0; a < diff.g.size(); ++a)
      if (!diff.g[a].is_zero() && (a != 0 || diff.g[a].degree() != 0)) is_const = false;
    Elem c = diff.g[0].coeff(0);
    if (!is_const || c == 0 || !F->in_prime_field(c))
      throw MathError("generator does not act by a nonzero constant shift at level " + std::to_string(m));
    if (c != 1) {
      Elem ci = F->inv(c);
      f_[m] = scale(f_[m], ci);
      c_[m] = c;
      // gamma(y_m) = y_m + c^{-1}(carry1 + gamma(u) - u)
      gy_[m] = add(ym, scale(sub(add(carry1, gu), u), ci));
      set_gamma_powers(m);
    }
    // Y_m = c y_m - u
    Y.push_back(sub(scale(y(m, m + 1), c), u));
  }
}

std::string Tower::to_string(const FuncElem& e) const {
  std::ostringstream os;
  bool first = true;
  const std::uint32_t p = F_->p();
  for (std::size_t a = 0; a < e.g.size(); ++a) {
    if (e.g[a].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << e.g[a].to_string() << ')';
    std::size_t v = a;
    for (unsigned i = 0; i < e.level; ++i, v /= p) {
      if (v % p == 0) continue;
      os << "*y" << i;
      if (v % p > 1) os << '^' << v % p;
    }
  }
  return first ? "0" : os.str();
}

FuncElem omega_generator(const Tower& T, unsigned n, std::size_t a) {
  const std::size_t pn = T.dim(n);
  if (a >= pn) return T.zero(n);
  Elem sign = n % 2 ? T.field()->neg(1) : 1;
  return T.monomial(n, 0, pn - 1 - a, sign);
}

}  // namespace aswtower
