#pragma once

// Independent reference implementations used only by the tests.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "aswtower/rational.hpp"

namespace oracle {

// seed for randomized suites, from ASWTOWER_SEED (default 0)
inline std::uint64_t test_seed() {
  const char* s = std::getenv("ASWTOWER_SEED");
  return s ? std::strtoull(s, nullptr, 10) : 0;
}

using aswtower::BigInt;
using aswtower::Rational;

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// lower breaks d_1..d_n from upper breaks s_i = d p^{i-1} (Herbrand)
inline std::vector<BigInt> lower_breaks(std::uint32_t p, std::uint32_t d, unsigned n) {
  std::vector<BigInt> low;
  BigInt prev_s = 0, prev_d = 0;
  for (unsigned i = 1; i <= n; ++i) {
    BigInt s = BigInt(d) * aswtower::big_pow(p, i - 1);
    BigInt di = prev_d + aswtower::big_pow(p, i - 1) * (s - prev_s);
    low.push_back(di);
    prev_s = s;
    prev_d = di;
  }
  return low;
}

// Riemann-Hurwitz with the different of a totally ramified cyclic p^n cover
inline BigInt genus_rh(std::uint32_t p, std::uint32_t d, unsigned n) {
  auto low = lower_breaks(p, d, n);
  BigInt diff = 0, prev = -1;
  for (unsigned k = 0; k < n; ++k) {
    diff += (low[k] - prev) * (aswtower::big_pow(p, n - k) - 1);
    prev = low[k];
  }
  BigInt two_g = diff - 2 * aswtower::big_pow(p, n) + 2;
  return two_g / 2;
}

// xi_a via the weighted digit sum with the given lower breaks
inline Rational xi_with(const std::vector<BigInt>& low, std::uint32_t p, std::uint64_t a) {
  Rational s = 0;
  BigInt pw = p;
  for (unsigned m = 0; a; a /= p, pw *= p, ++m) s += Rational(BigInt(a % p) * low.at(m), pw);
  return s;
}

inline Rational xi(std::uint32_t p, std::uint32_t d, std::uint64_t a) {
  unsigned digits = 0;
  for (std::uint64_t v = a; v; v /= p) ++digits;
  return xi_with(lower_breaks(p, d, digits), p, a);
}

// mu_1..mu_imax, mu_i = min { b : xi_b > i }, from the running maximum of xi
inline std::vector<std::uint64_t> mu_table(std::uint32_t p, std::uint32_t d, std::uint64_t imax) {
  std::vector<std::uint64_t> mu(imax + 1, 0);
  std::uint64_t next = 1;
  Rational best = -1;
  const auto low = lower_breaks(p, d, 40);
  for (std::uint64_t b = 0; next <= imax; ++b) {
    Rational x = xi_with(low, p, b);
    if (x <= best) continue;
    best = x;
    while (next <= imax && Rational(next) < best) mu[next++] = b;
  }
  return mu;
}

inline std::uint64_t mu(std::uint32_t p, std::uint32_t d, std::uint64_t i) { return mu_table(p, d, i)[i]; }

// #{(i, j) : i > t, mu_i <= j < p^n} by direct enumeration
inline BigInt lattice_count(std::uint32_t p, std::uint32_t d, unsigned n, std::uint64_t t) {
  const std::uint64_t pn = ipow(p, n);
  // mu_i >= (p+1) i / d - 1, so i below this bound covers the support
  const std::uint64_t imax = d * (pn + 2) / (p + 1) + 2;
  auto mu = mu_table(p, d, imax);
  BigInt c = 0;
  for (std::uint64_t i = t + 1; i <= imax; ++i)
    for (std::uint64_t j = mu[i]; j < pn; ++j) c += 1;
  return c;
}

inline BigInt floor_q(const Rational& q) { return aswtower::floor_q(q); }

inline BigInt fn_sum(std::uint32_t p, std::uint32_t d, unsigned n, const Rational& x) {
  BigInt s = 0;
  const auto low = lower_breaks(p, d, n);
  for (std::uint64_t b = 0; b < ipow(p, n); ++b) s += floor_q(x + xi_with(low, p, b));
  return s;
}

// r = 1 closed form for d | (p-1), p odd, evaluated as displayed
inline Rational exact_r1(std::uint32_t p, std::uint32_t d, unsigned n) {
  Rational v = Rational(BigInt(p - 1), 2) * Rational(BigInt(d), BigInt(2 * (p + 1))) *
               Rational(aswtower::big_pow(p, 2 * n - 1) + 1);
  if (d % 2) v -= Rational(BigInt(p - 1), BigInt(4 * d));
  return v;
}

// Witt addition over Z through ghost components, then reduced mod p
inline std::vector<std::uint32_t> witt_sum_ghost(std::uint32_t p, const std::vector<std::uint32_t>& a,
                                                 const std::vector<std::uint32_t>& b) {
  const std::size_t n = a.size();
  auto ghost = [&](const std::vector<BigInt>& v, std::size_t m) {
    BigInt w = 0;
    for (std::size_t i = 0; i <= m; ++i) w += aswtower::big_pow(p, i) * boost::multiprecision::pow(v[i], ipow(p, m - i));
    return w;
  };
  std::vector<BigInt> A(a.begin(), a.end()), B(b.begin(), b.end()), S;
  for (std::size_t m = 0; m < n; ++m) {
    BigInt w = ghost(A, m) + ghost(B, m);
    for (std::size_t i = 0; i < m; ++i) w -= aswtower::big_pow(p, i) * boost::multiprecision::pow(S[i], ipow(p, m - i));
    S.push_back(w / aswtower::big_pow(p, m));
  }
  std::vector<std::uint32_t> out;
  for (auto& s : S) {
    BigInt r = s % p;
    if (r < 0) r += p;
    out.push_back(static_cast<std::uint32_t>(r));
  }
  return out;
}

// Level-one Cartier matrix of y^p - y = f over F_p, via V(h dx) = (-h^{(p-1)})^{1/p} dx.
// Elements are dense arrays c[b][m] for x^m y^b, b < p.
struct ASCurve {
  std::uint32_t p;
  std::vector<std::uint32_t> f;  // coefficients of f, index = exponent
  std::size_t d() const { return f.size() - 1; }
};

using Elt = std::vector<std::vector<std::int64_t>>;

inline Elt reduce_elt(const ASCurve& C, std::vector<std::vector<std::int64_t>> raw) {
  // y^p = y + f, applied from the top degree down
  const std::int64_t p = C.p;
  for (std::size_t b = raw.size(); b-- > static_cast<std::size_t>(p);) {
    auto row = raw[b];
    raw[b].assign(row.size(), 0);
    auto& down = raw[b - p + 1];
    if (down.size() < row.size()) down.resize(row.size(), 0);
    for (std::size_t m = 0; m < row.size(); ++m) down[m] = (down[m] + row[m]) % p;
    auto& fp = raw[b - p];
    for (std::size_t m = 0; m < row.size(); ++m) {
      if (!row[m]) continue;
      for (std::size_t e = 0; e < C.f.size(); ++e) {
        if (fp.size() <= m + e) fp.resize(m + e + 1, 0);
        fp[m + e] = (fp[m + e] + row[m] * C.f[e]) % p;
      }
    }
  }
  raw.resize(std::max<std::size_t>(raw.size(), p));
  raw.resize(p);
  return raw;
}

// d/dx with dy/dx = -f'
inline Elt derive(const ASCurve& C, const Elt& h) {
  const std::int64_t p = C.p;
  std::vector<std::vector<std::int64_t>> raw(p);
  std::vector<std::int64_t> fprime;
  for (std::size_t e = 1; e < C.f.size(); ++e) fprime.push_back(static_cast<std::int64_t>(e % p) * C.f[e] % p);
  for (std::size_t b = 0; b < h.size(); ++b)
    for (std::size_t m = 0; m < h[b].size(); ++m) {
      std::int64_t c = h[b][m];
      if (!c) continue;
      if (m) {
        auto& r = raw[b];
        if (r.size() < m) r.resize(m, 0);
        r[m - 1] = (r[m - 1] + c * static_cast<std::int64_t>(m % p)) % p;
      }
      if (b) {
        auto& r = raw[b - 1];
        for (std::size_t e = 0; e < fprime.size(); ++e) {
          if (r.size() <= m + e) r.resize(m + e + 1, 0);
          r[m + e] = (r[m + e] - c * static_cast<std::int64_t>(b) % p * fprime[e]) % p;
        }
      }
    }
  for (auto& r : raw)
    for (auto& v : r) v = ((v % p) + p) % p;
  return reduce_elt(C, raw);
}

// g with g^p = h, where g^p = sum_b g_b(x)^p (y + f)^b
inline Elt pth_root(const ASCurve& C, Elt h) {
  const std::int64_t p = C.p;
  Elt g(p);
  for (std::size_t b = p; b-- > 0;) {
    std::vector<std::int64_t>& top = h[b];
    std::vector<std::int64_t> gb;
    for (std::size_t m = 0; m < top.size(); ++m) {
      if (!top[m]) continue;
      if (m % p) throw std::runtime_error("not a p-th power");
      if (gb.size() <= m / p) gb.resize(m / p + 1, 0);
      gb[m / p] = top[m];
    }
    g[b] = gb;
    if (gb.empty()) continue;
    // subtract g_b(x^p) (y + f)^b
    std::vector<std::int64_t> gp;
    for (std::size_t m = 0; m < gb.size(); ++m) {
      if (gp.size() <= m * p) gp.resize(m * p + 1, 0);
      gp[m * p] = gb[m];
    }
    std::vector<std::vector<std::int64_t>> pw{{1}};  // (y + f)^k as y-coefficient rows
    for (std::size_t k = 0; k < b; ++k) {
      std::vector<std::vector<std::int64_t>> nx(pw.size() + 1);
      for (std::size_t i = 0; i < pw.size(); ++i) {
        auto& up = nx[i + 1];
        if (up.size() < pw[i].size()) up.resize(pw[i].size(), 0);
        for (std::size_t m = 0; m < pw[i].size(); ++m) up[m] = (up[m] + pw[i][m]) % p;
        auto& same = nx[i];
        for (std::size_t m = 0; m < pw[i].size(); ++m)
          for (std::size_t e = 0; e < C.f.size(); ++e) {
            if (same.size() <= m + e) same.resize(m + e + 1, 0);
            same[m + e] = (same[m + e] + pw[i][m] * C.f[e]) % p;
          }
      }
      pw = std::move(nx);
    }
    for (std::size_t i = 0; i < pw.size(); ++i)
      for (std::size_t m = 0; m < pw[i].size(); ++m)
        for (std::size_t e = 0; e < gp.size(); ++e) {
          if (!pw[i][m] || !gp[e]) continue;
          if (h[i].size() <= m + e) h[i].resize(m + e + 1, 0);
          h[i][m + e] = ((h[i][m + e] - pw[i][m] * gp[e]) % p + p) % p;
        }
  }
  for (auto& r : h)
    for (auto v : r)
      if (v) throw std::runtime_error("p-th root left a remainder");
  return g;
}

inline Elt cartier(const ASCurve& C, const Elt& h) {
  Elt e = h;
  for (std::uint32_t i = 0; i + 1 < C.p; ++i) e = derive(C, e);
  for (auto& r : e)
    for (auto& v : r) v = (C.p - v) % C.p;
  return pth_root(C, e);
}

// regular basis x^m y^b dx: p m + d b <= (p - 1)(d - 1) - 2 (pole order bound at infinity)
inline std::vector<std::pair<std::size_t, std::size_t>> regular_basis(const ASCurve& C) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::int64_t p = C.p, d = static_cast<std::int64_t>(C.d());
  for (std::int64_t b = 0; b < p; ++b)
    for (std::int64_t m = 0; p * m + d * b <= (p - 1) * (d - 1) - 2; ++m) out.emplace_back(m, b);
  return out;
}

// rank of a matrix over F_p
inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> A, std::int64_t p) {
  std::size_t r = 0;
  const std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[r]);
    std::int64_t inv = 1;
    for (std::int64_t k = 1; k < p; ++k)
      if (A[r][c] * k % p == 1) inv = k;
    for (auto& v : A[r]) v = v * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] % p == 0) continue;
      std::int64_t f = A[i][c];
      for (std::size_t j = 0; j < cols; ++j) A[i][j] = ((A[i][j] - f * A[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

// a^(r) at level one from the oracle Cartier matrix
inline std::vector<std::size_t> level_one_anumbers(const ASCurve& C, unsigned r_max) {
  auto B = regular_basis(C);
  const std::size_t g = B.size();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> idx;
  for (std::size_t i = 0; i < g; ++i) idx[B[i]] = i;
  std::vector<std::vector<std::int64_t>> M(g, std::vector<std::int64_t>(g, 0));
  for (std::size_t j = 0; j < g; ++j) {
    Elt h(C.p);
    h[B[j].second].assign(B[j].first + 1, 0);
    h[B[j].second][B[j].first] = 1;
    Elt v = cartier(C, h);
    for (std::size_t b = 0; b < v.size(); ++b)
      for (std::size_t m = 0; m < v[b].size(); ++m)
        if (v[b][m]) M[idx.at({m, b})][j] = v[b][m];
  }
  std::vector<std::size_t> out;
  auto P = M;
  for (unsigned r = 1; r <= r_max; ++r) {
    out.push_back(g - rank_mod_p(P, C.p));
    std::vector<std::vector<std::int64_t>> Q(g, std::vector<std::int64_t>(g, 0));
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t k = 0; k < g; ++k)
        if (M[i][k])
          for (std::size_t j = 0; j < g; ++j) Q[i][j] = (Q[i][j] + M[i][k] * P[k][j]) % C.p;
    P = std::move(Q);
  }
  return out;
}

}  // namespace oracle
