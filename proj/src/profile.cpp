#include "aswtower/profile.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "aswtower/field.hpp"

namespace aswtower {

namespace {

using i128 = __int128;

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

BigInt exact_div(const BigInt& a, const BigInt& b, const char* what) {
  if (a % b != 0) throw MathError(std::string("non-integral ") + what);
  return a / b;
}

BigInt to_big(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
  BigInt r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? BigInt(-r) : r;
}

constexpr double kLatticeBudget = 3e8;

}  // namespace

TowerProfile::TowerProfile(std::uint32_t p_, std::uint32_t d_) : p(p_), d(d_) {
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
  if (d == 0) throw InputError("d must be positive");
  if (d % p == 0) throw InputError("p divides d");
}

Breaks breaks_and_genus(const TowerProfile& P, unsigned n) {
  if (n < 1) throw InputError("level must be at least 1");
  const BigInt p = P.p, d = P.d;
  Breaks b;
  b.upper = d * big_pow(P.p, n - 1);
  b.lower = exact_div(d * (big_pow(P.p, 2 * n - 1) + 1), p + 1, "lower break");
  BigInt pn = big_pow(P.p, n);
  // g = (d(p^{2n}-1)/(p+1) + 1 - p^n) / 2
  BigInt twice = exact_div(d * (pn * pn - 1), p + 1, "genus") + 1 - pn;
  b.genus = exact_div(twice, 2, "genus");
  return b;
}

Rational rev(std::uint32_t p, std::uint64_t a) {
  Rational r = 0;
  BigInt scale = p;
  while (a) {
    r += Rational(BigInt(a % p), scale);
    a /= p;
    scale *= p;
  }
  return r;
}

Rational xi_digit_sum(const TowerProfile& P, std::uint64_t a) {
  Rational r = 0;
  unsigned m = 0;
  BigInt scale = P.p;
  while (a) {
    std::uint64_t digit = a % P.p;
    if (digit) {
      BigInt dm = breaks_and_genus(P, m + 1).lower;
      r += Rational(BigInt(digit) * dm, scale);
    }
    a /= P.p;
    scale *= P.p;
    ++m;
  }
  return r;
}

Rational xi(const TowerProfile& P, std::uint64_t a) {
  Rational v = Rational(BigInt(P.d), BigInt(P.p + 1)) * (Rational(BigInt(a)) + rev(P.p, a));
  if (v != xi_digit_sum(P, a)) throw MathError("xi formulas disagree");
  return v;
}

std::uint64_t mu(const TowerProfile& P, std::uint64_t i) {
  if (i == 0) return 1;
  const std::uint64_t p = P.p;
  std::uint64_t numer = (p + 1) * i, denom = P.d;
  std::uint64_t g = std::gcd(numer, denom);
  numer /= g;
  denom /= g;
  const std::uint64_t ip = numer / denom;
  std::uint64_t rem = numer % denom;
  if (rem == 0) return ip;

  std::vector<std::uint32_t> idig;
  for (std::uint64_t v = ip; v; v /= p) idig.push_back(static_cast<std::uint32_t>(v % p));

  // fractional digits with cycle detection on the remainder
  std::vector<std::uint32_t> fdig;
  std::map<std::uint64_t, std::size_t> seen;
  std::size_t pre = 0, per = 0;
  for (std::uint64_t r = rem;;) {
    auto it = seen.find(r);
    if (it != seen.end()) {
      pre = it->second;
      per = fdig.size() - pre;
      break;
    }
    seen[r] = fdig.size();
    fdig.push_back(static_cast<std::uint32_t>(r * p / denom));
    r = r * p % denom;
  }
  auto frac_digit = [&](std::size_t k) -> std::uint32_t {
    if (k < fdig.size()) return fdig[k];
    return fdig[pre + (k - pre) % per];
  };
  const std::size_t limit = std::max(idig.size(), pre + per) + per + 1;
  for (std::size_t k = 0; k < limit; ++k) {
    std::uint32_t a = k < idig.size() ? idig[k] : 0;
    std::uint32_t b = frac_digit(k);
    if (a > b) return ip;
    if (a < b) return ip + 1;
  }
  return ip + 1;
}

bool lattice_feasible(const TowerProfile& P, unsigned n) {
  double pn = 1;
  for (unsigned i = 0; i < n; ++i) pn *= P.p;
  return pn * (1.0 + double(P.d) / (P.p + 1)) <= kLatticeBudget;
}

BigInt lattice_count(const TowerProfile& P, unsigned n, const BigInt& t) {
  if (n < 1) throw InputError("level must be at least 1");
  if (t < 0) throw InputError("cutoff must be non-negative");
  if (!lattice_feasible(P, n)) throw InputError("lattice count too large at this level");
  const std::uint64_t p = P.p, d = P.d;
  const std::uint64_t pn = upow(p, n);
  std::vector<std::uint64_t> step(n);  // d p^{n-1-v}
  for (unsigned v = 0; v < n; ++v) step[v] = d * upow(p, n - 1 - v);
  auto vp = [&](std::uint64_t b) {
    unsigned v = 0;
    while (b % p == 0) { b /= p; ++v; }
    return v;
  };
  // X = p^n xi_b, mu_i = min{b : X_b > i p^n}
  std::uint64_t b = 1;
  i128 X = step[0];
  i128 total = 0;
  const BigInt tt = t;
  const bool t_small = t < BigInt(std::numeric_limits<std::int64_t>::max());
  const std::int64_t t64 = t_small ? static_cast<std::int64_t>(tt) : 0;
  if (!t_small) return 0;
  for (std::uint64_t i = 1;; ++i) {
    const i128 thr = (i128)i * pn;
    while (b < pn && X <= thr) {
      ++b;
      if (b < pn) X += step[vp(b)];
    }
    if (b >= pn) break;
    if ((std::int64_t)i > t64) total += pn - b;
  }
  return to_big(total);
}

LatticeReport lattice_counts(const TowerProfile& P, unsigned n, const BigInt& t, unsigned r) {
  LatticeReport rep;
  rep.n = n;
  rep.t = t;
  rep.r = r;
  rep.count_right = lattice_count(P, n, t);
  rep.count_total = t == 0 ? rep.count_right : lattice_count(P, n, 0);
  rep.formula_value = Rational(BigInt(r) * (P.p - 1) * t * (t + 1), BigInt(2 * P.d)) + rep.count_right;
  return rep;
}

std::string LambdaMode::describe(const TowerProfile& P) const {
  if (kind == Kind::safe) return "safe";
  std::uint64_t N = scan ? scan : (std::uint64_t)P.d * upow(P.p, 4);
  return "empirical:" + std::to_string(N);
}

LambdaMode parse_lambda_mode(const std::string& s) {
  if (s == "safe") return LambdaMode::safe_bound();
  if (s == "empirical") return LambdaMode::empirical();
  const std::string pre = "empirical:";
  if (s.rfind(pre, 0) == 0) {
    try {
      std::size_t pos = 0;
      long long N = std::stoll(s.substr(pre.size()), &pos);
      if (pos == s.size() - pre.size() && N > 0) return LambdaMode::empirical(N);
    } catch (const std::logic_error&) {
    }
  }
  throw InputError("bad lambda mode '" + s + "' (expected empirical:<N> or safe)");
}

Rational lambda_value(const TowerProfile& P, const LambdaMode& mode) {
  if (mode.kind == LambdaMode::Kind::safe) return Rational(BigInt(P.d - 1), BigInt(P.d));
  std::uint64_t N = mode.scan ? mode.scan : (std::uint64_t)P.d * upow(P.p, 4);
  std::uint64_t best = 0;  // max |d mu_i - (p+1) i|
  for (std::uint64_t i = 1; i <= N; ++i) {
    std::int64_t diff = (std::int64_t)(P.d * mu(P, i)) - (std::int64_t)((P.p + 1) * i);
    best = std::max<std::uint64_t>(best, diff < 0 ? -diff : diff);
  }
  return Rational(BigInt(best), BigInt(P.d));
}

CutoffReport cutoff_report(const TowerProfile& P, unsigned r, unsigned n, LambdaMode mode) {
  if (r < 1 || n < 1) throw InputError("r and n must be at least 1");
  CutoffReport c;
  c.r = r;
  c.n = n;
  c.lambda_mode = mode;
  const BigInt p = P.p, d = P.d, pn = big_pow(P.p, n);
  c.delta = BigInt(r + 1) * p - BigInt(r - 1);
  c.t_n = d * ((pn - 1) / c.delta);
  c.t_prime_n = d * pn / c.delta;
  c.s_n_rem = pn - 1 - c.t_n * c.delta / d;
  c.lambda = lambda_value(P, mode);
  Rational D = Rational(pn) - Rational(c.t_n * c.delta, d) - Rational(BigInt(r) * (p - 1) + 1, d) + 1 - c.lambda;
  c.D_t = D > 1 ? D : Rational(1);
  c.epsilon = c.D_t - 1 + 2 * c.lambda - Rational(p, d);
  if (c.epsilon > 0) {
    BigInt k = floor_q(Rational(d) * c.epsilon / Rational(p));
    c.C_pdr = Rational(1 + k) * (c.epsilon - Rational(p, 2 * d) * Rational(k));
  } else {
    c.C_pdr = 0;
  }
  const bool divides = (P.p - 1) % P.d == 0;
  c.exact_flag = divides || (P.d <= P.p + 1 && Rational(c.s_n_rem) < Rational(c.delta, d) - 1);
  return c;
}

Rational anumber_exact_r1_raw(const TowerProfile& P, unsigned n) {
  if (P.p == 2 || (P.p - 1) % P.d != 0) throw InputError("exact r=1 formula needs p > 2 and d | (p-1)");
  if (n < 1) throw InputError("level must be at least 1");
  const BigInt p = P.p, d = P.d;
  Rational v = Rational(p - 1, 2) * Rational(d, 2 * (p + 1)) * Rational(big_pow(P.p, 2 * n - 1) + 1);
  if (P.d % 2 == 1) v -= Rational(p - 1, 4 * d);
  return v;
}

BigInt anumber_exact_r1(const TowerProfile& P, unsigned n) {
  Rational v = anumber_exact_r1_raw(P, n);
  if (den(v) != 1) throw MathError("exact r=1 formula is not integral: " + to_str(v));
  return num(v);
}

FormulaResult anumber_formula(const TowerProfile& P, unsigned r, unsigned n, LambdaMode mode) {
  FormulaResult f;
  f.cutoff = cutoff_report(P, r, n, mode);
  f.exact_flag = f.cutoff.exact_flag;
  f.t_used = f.exact_flag ? f.cutoff.t_prime_n : f.cutoff.t_n;
  if (lattice_feasible(P, n)) {
    f.method = "lattice";
    f.lattice = lattice_count(P, n, f.t_used);
    const BigInt& t = f.t_used;
    Rational tri(BigInt(r) * (P.p - 1) * t * (t + 1), BigInt(2 * P.d));
    if (den(tri) != 1) throw MathError("triangular term not integral");
    f.value = num(tri) + f.lattice;
  } else if (r == 1 && P.p > 2 && (P.p - 1) % P.d == 0) {
    f.method = "closed_form_r1";
    f.value = anumber_exact_r1(P, n);
  } else {
    throw InputError("level too large for the lattice count and no closed form applies");
  }
  f.lower = Rational(f.value) - f.cutoff.C_pdr;
  return f;
}

BigInt fn_brute(const TowerProfile& P, unsigned n, const Rational& x) {
  const std::uint64_t pn = upow(P.p, n);
  BigInt s = 0;
  for (std::uint64_t b = 0; b < pn; ++b) s += floor_q(x + xi_digit_sum(P, b));
  return s;
}

BigInt fn_closed(const TowerProfile& P, unsigned n, const Rational& x) {
  if ((P.p - 1) % P.d != 0) throw InputError("closed form for f_n needs d | (p-1)");
  if (n < 1) throw InputError("level must be at least 1");
  const BigInt p = P.p, d = P.d, pn = big_pow(P.p, n), pn1 = big_pow(P.p, n - 1);
  BigInt a = exact_div(d * p * (pn - 1) * (pn1 - 1), 2 * (p + 1), "f_n term");
  BigInt b = exact_div((d - 1) * (pn - 1), 2, "f_n term");
  return a + b + floor_q(Rational(pn) * x);
}

Asymptotics asymptotics(const TowerProfile& P, unsigned r, unsigned imax) {
  if (r < 1) throw InputError("r must be at least 1");
  Asymptotics a;
  Rational tau(BigInt(P.p + 1), BigInt(P.p - 1));
  a.ratio = Rational(BigInt(r)) / (Rational(BigInt(r)) + tau);
  for (unsigned i = 1; i <= imax; ++i) {
    Rational z = Rational(BigInt(i)) + tau;
    a.m_densities.push_back(2 * tau / (z * z * z - z));
  }
  return a;
}

}  // namespace aswtower
