#include "aswtower/lfun.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace aswtower {

TVec tvec_mul(const Field& F, const TVec& a, const TVec& b) {
  const std::size_t N = a.size();
  TVec r(N, 0);
  for (std::size_t i = 0; i < N; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; i + j < N; ++j)
      if (b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return r;
}

TVec tvec_add(const Field& F, const TVec& a, const TVec& b) {
  TVec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(r[i], b[i]);
  return r;
}

TVec tvec_sub(const Field& F, const TVec& a, const TVec& b) {
  TVec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(r[i], b[i]);
  return r;
}

std::optional<std::size_t> tvec_val(const TVec& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) return i;
  return std::nullopt;
}

TVec tvec_inverse(const Field& F, const TVec& a) {
  const std::size_t N = a.size();
  if (N == 0 || a[0] == 0) throw MathError("not a unit in k[T]/(T^N)");
  TVec r(N, 0);
  const Elem c0 = F.inv(a[0]);
  r[0] = c0;
  for (std::size_t k = 1; k < N; ++k) {
    Elem s = 0;
    for (std::size_t i = 1; i <= k; ++i) s = F.add(s, F.mul(a[i], r[k - i]));
    r[k] = F.neg(F.mul(c0, s));
  }
  return r;
}

TVec one_plus_T_power(const Field& F, std::size_t N, std::uint64_t c) {
  TVec r(N, 0), base(N, 0);
  r[0] = 1;
  base[0] = 1;
  if (N > 1) base[1] = 1;
  while (c) {
    if (c & 1) r = tvec_mul(F, r, base);
    c >>= 1;
    if (c) base = tvec_mul(F, base, base);
  }
  return r;
}

std::optional<std::string> growth_violation(const TruncSeries& s, std::uint32_t d) {
  for (std::size_t j = 0; j < s.p_power(); ++j) {
    const auto& c = s.t_coeff(j).coeffs();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] && static_cast<std::uint64_t>(j) * d < i)
        return "x^" + std::to_string(i) + " appears at T^" + std::to_string(j);
  }
  return std::nullopt;
}

FrobeniusElement frobenius_alpha(const Tower& T, unsigned n) {
  if (n < 1 || n > T.levels()) throw InputError("level n must be between 1 and the tower's level count");
  const Field* F = T.field();
  const std::size_t pn = T.dim(n);
  FrobeniusElement fe{n, TruncSeries(F, pn), TruncSeries(F, pn), false, false, false, {}};

  std::vector<FuncElem> tw{omega_generator(T, n, 0)};
  for (std::size_t j = 1; j < pn; ++j) tw.push_back(T.T(tw.back()));
  FuncElem r = T.pow(tw[0], F->p());
  // triangular elimination: T^j(w0) has leading monomial y^{p^n-1-j} with a constant coefficient
  for (std::size_t b = pn; b-- > 0;) {
    if (r.g[b].is_zero()) continue;
    const std::size_t j = pn - 1 - b;
    const Poly& lc = tw[j].g[b];
    if (lc.degree() != 0) throw MathError("T^" + std::to_string(j) + "(w_0) has no unit leading coefficient");
    for (std::size_t c = b + 1; c < pn; ++c)
      if (!tw[j].g[c].is_zero()) throw MathError("T^" + std::to_string(j) + "(w_0) is not triangular");
    Poly q = r.g[b].scaled(F->inv(lc.coeff(0)));
    fe.alpha.t_coeff(j) = q;
    r = T.sub(r, T.mul_poly(tw[j], q));
  }
  if (!r.is_zero()) throw MathError("Frobenius element equation has no solution");

  fe.unit_mod_T = fe.alpha.t_coeff(0) == Poly::constant(F, 1);
  if (!fe.unit_mod_T) throw MathError("Frobenius element is not 1 mod T");
  fe.alpha_inv = fe.alpha.inverse();
  fe.inverse_ok = fe.alpha * fe.alpha_inv == TruncSeries::one(F, pn);
  auto g1 = growth_violation(fe.alpha, T.d());
  auto g2 = growth_violation(fe.alpha_inv, T.d());
  fe.growth_ok = !g1 && !g2;
  if (g1) fe.growth_detail = "alpha: " + *g1;
  if (g2) fe.growth_detail += (fe.growth_detail.empty() ? "" : "; ") + std::string("alpha^-1: ") + *g2;
  return fe;
}

namespace {

// E = k[z]/(v); E-valued T-series as vectors of residues
using EVec = std::vector<Poly>;

EVec evec_mul(const EVec& a, const EVec& b, const Poly& v) {
  const std::size_t N = a.size();
  EVec r(N, Poly(v.field()));
  for (std::size_t i = 0; i < N; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < N; ++j)
      if (!b[j].is_zero()) r[i + j] += mulmod(a[i], b[j], v);
  }
  return r;
}

}  // namespace

CharValue char_value(const Tower& T, const FrobeniusElement& fe, const Poly& place) {
  const Field* F = T.field();
  if (place.degree() < 1 || place.leading() != 1 || !is_irreducible(place))
    throw InputError("place must be a monic irreducible polynomial");
  const std::size_t N = fe.alpha.p_power();
  const std::uint32_t p = F->p();
  const Poly z = Poly::x(F);
  const Poly theta = divmod(z, place).second;
  // alpha(theta), coefficientwise in T
  EVec val(N, Poly(F));
  for (std::size_t j = 0; j < N; ++j) {
    const auto& c = fe.alpha.t_coeff(j).coeffs();
    Poly acc(F);
    for (std::size_t i = c.size(); i-- > 0;) {
      acc = mulmod(acc, theta, place);
      acc += Poly::constant(F, c[i]);
    }
    val[j] = acc;
  }
  // product of the conjugates under the p-power map, m*nu of them
  const std::size_t steps = static_cast<std::size_t>(place.degree()) * F->nu();
  EVec prod(N, Poly(F));
  prod[0] = Poly::constant(F, 1);
  EVec cur = val;
  for (std::size_t i = 0; i < steps; ++i) {
    prod = evec_mul(prod, cur, place);
    if (i + 1 < steps)
      for (auto& e : cur) e = powmod(e, p, place);
  }
  CharValue cv{place, TVec(N, 0), 0};
  for (std::size_t j = 0; j < N; ++j) {
    if (prod[j].degree() > 0 || !F->in_prime_field(prod[j].coeff(0)))
      throw MathError("character value at " + place.to_string() + " is not in F_p[T]");
    cv.value[j] = prod[j].coeff(0);
  }
  // digits of the exponent: (1+T)^c = prod_i (1+T^{p^i})^{c_i}
  TVec u = cv.value;
  std::uint64_t c = 0, pw = 1;
  for (std::size_t pi = 1; pi < N; pi *= p, pw *= p) {
    Elem digit = u[pi];
    if (digit) {
      c += static_cast<std::uint64_t>(digit) * pw;
      TVec inv_factor = one_plus_T_power(*F, N, static_cast<std::uint64_t>(N) - static_cast<std::uint64_t>(digit) * pi);
      // (1+T^{p^i})^{-c_i} = (1+T)^{-c_i p^i}
      u = tvec_mul(*F, u, inv_factor);
    }
  }
  TVec one(N, 0);
  one[0] = 1;
  if (u != one) throw MathError("character value at " + place.to_string() + " is not a power of 1+T");
  cv.exponent = c % N;
  return cv;
}

std::string to_string(EulerConvention c) { return c == EulerConvention::inverted ? "inverted" : "plain"; }

EulerConvention parse_euler_convention(const std::string& s) {
  if (s == "inverted") return EulerConvention::inverted;
  if (s == "plain") return EulerConvention::plain;
  throw InputError("unknown Euler convention '" + s + "'");
}

std::uint64_t necklace_count(std::uint64_t q, unsigned m) {
  auto mobius = [](unsigned e) {
    int r = 1;
    for (unsigned f = 2; f * f <= e; ++f)
      if (e % f == 0) {
        e /= f;
        if (e % f == 0) return 0;
        r = -r;
      }
    return e > 1 ? -r : r;
  };
  std::int64_t s = 0;
  for (unsigned e = 1; e <= m; ++e) {
    if (m % e) continue;
    std::int64_t pw = 1;
    for (unsigned i = 0; i < m / e; ++i) pw *= static_cast<std::int64_t>(q);
    s += mobius(e) * pw;
  }
  return static_cast<std::uint64_t>(s / m);
}

EulerProduct euler_product(const Tower& T, const FrobeniusElement& fe, unsigned D, EulerConvention conv, bool dual) {
  const Field& F = *T.field();
  const std::size_t N = fe.alpha.p_power();
  EulerProduct E{conv, dual, D, SPoly(D + 1, TVec(N, 0)), {}, {}};
  E.coeffs[0][0] = 1;
  for (unsigned m = 1; m <= D; ++m) {
    auto places = monic_irreducibles(&F, static_cast<int>(m));
    E.place_counts.push_back(places.size());
    for (const auto& v : places) {
      CharValue cv = char_value(T, fe, v);
      const TVec chi = dual ? tvec_inverse(F, cv.value) : cv.value;
      SPoly factor(D + 1, TVec(N, 0));
      factor[0][0] = 1;
      if (conv == EulerConvention::plain) {
        factor[m] = tvec_sub(F, factor[m], chi);
      } else {
        TVec pw = factor[0];
        for (unsigned k = m; k <= D; k += m) {
          pw = tvec_mul(F, pw, chi);
          factor[k] = pw;
        }
      }
      SPoly next(D + 1, TVec(N, 0));
      for (unsigned i = 0; i <= D; ++i)
        for (unsigned j = 0; i + j <= D; ++j)
          next[i + j] = tvec_add(F, next[i + j], tvec_mul(F, E.coeffs[i], factor[j]));
      E.coeffs = std::move(next);
      E.values.push_back(std::move(cv));
    }
  }
  return E;
}

TruncSeries nuclear_series(const FrobeniusElement& fe, std::uint32_t nu) {
  TruncSeries b = fe.alpha_inv, s = fe.alpha_inv;
  for (std::uint32_t i = 1; i < nu; ++i) {
    s = s.sigma();
    b = b * s;
  }
  return b;
}

TMatrix nuclear_matrix(const Field& F, const TruncSeries& b, std::size_t t) {
  const std::size_t N = b.p_power();
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < F.nu(); ++i) q *= F.p();
  TMatrix M{t, N, std::vector<TVec>(t * t, TVec(N, 0))};
  for (std::size_t i = 1; i <= t; ++i)
    for (std::size_t j = 1; j <= t; ++j) {
      std::int64_t k = static_cast<std::int64_t>(q * i) - static_cast<std::int64_t>(j);
      if (k < 0) continue;
      TVec& e = M.at(i - 1, j - 1);
      for (std::size_t l = 0; l < N; ++l) e[l] = b.coeff(static_cast<std::size_t>(k), l);
    }
  return M;
}

std::vector<TVec> fredholm_coeffs(const Field& F, const TMatrix& M) {
  const std::size_t t = M.t, N = M.N;
  auto neg = [&](const TVec& a) {
    TVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.neg(a[i]);
    return r;
  };
  // k[T]/(T^0) is the zero ring
  TVec one(N, 0);
  if (N) one[0] = 1;
  if (t == 0) return {one};
  // Berkowitz: characteristic polynomial of the leading r x r block, grown one row at a time
  std::vector<TVec> poly{one, neg(M.at(0, 0))};
  for (std::size_t r = 1; r < t; ++r) {
    std::vector<TVec> col(r), row(r);
    for (std::size_t i = 0; i < r; ++i) {
      col[i] = M.at(i, r);
      row[i] = M.at(r, i);
    }
    std::vector<TVec> toe{one, neg(M.at(r, r))};
    std::vector<TVec> X = col;
    for (std::size_t k = 0; k < r; ++k) {
      TVec dot(N, 0);
      for (std::size_t i = 0; i < r; ++i) dot = tvec_add(F, dot, tvec_mul(F, row[i], X[i]));
      toe.push_back(neg(dot));
      if (k + 1 < r) {
        std::vector<TVec> Y(r, TVec(N, 0));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) Y[i] = tvec_add(F, Y[i], tvec_mul(F, M.at(i, j), X[j]));
        X = std::move(Y);
      }
    }
    std::vector<TVec> next(r + 2, TVec(N, 0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] = tvec_add(F, next[i], tvec_mul(F, toe[i - j], poly[j]));
    poly = std::move(next);
  }
  // det(lambda - M) = sum c_k lambda^{t-k}, so det(1 - sM) = sum c_k s^k
  return poly;
}

Rational fredholm_trust_bound(std::uint32_t p, std::uint32_t nu, std::uint32_t d, unsigned n, std::size_t t) {
  // entries satisfy v_T(N_ij) >= (q i - j) / (p^{nu-1} d)
  BigInt q = big_pow(p, nu), pn = big_pow(p, n);
  Rational b = Rational(BigInt((q - 1) * (t + 1)), BigInt(d) * big_pow(p, nu - 1));
  return b < Rational(pn) ? b : Rational(pn);
}

std::vector<std::pair<std::int64_t, Rational>> lower_hull(std::vector<std::pair<std::int64_t, Rational>> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<std::pair<std::int64_t, Rational>> h;
  for (const auto& pt : pts) {
    if (!h.empty() && h.back().first == pt.first) {
      if (pt.second < h.back().second) h.back() = pt;
      continue;
    }
    while (h.size() >= 2) {
      const auto& a = h[h.size() - 2];
      const auto& b = h.back();
      // drop b when it lies on or above the segment a -> pt
      Rational lhs = (b.second - a.second) * Rational(pt.first - a.first);
      Rational rhs = (pt.second - a.second) * Rational(b.first - a.first);
      if (lhs >= rhs)
        h.pop_back();
      else
        break;
    }
    h.push_back(pt);
  }
  return h;
}

NewtonPolygon newton_polygon(const std::vector<TVec>& coeffs, const Rational& trust_bound) {
  NewtonPolygon np;
  np.trust_bound = trust_bound;
  std::vector<std::pair<std::int64_t, Rational>> pts;
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    auto v = tvec_val(coeffs[m]);
    if (!v || Rational(static_cast<long long>(*v)) >= trust_bound) continue;
    np.points.push_back({static_cast<std::int64_t>(m), static_cast<std::int64_t>(*v)});
    pts.push_back({static_cast<std::int64_t>(m), Rational(static_cast<long long>(*v))});
  }
  np.vertices = lower_hull(pts);
  return np;
}

Rational hodge_eta(std::uint32_t p, std::uint32_t d, std::int64_t m) {
  return Rational(BigInt(p - 1) * m * (m + 1), BigInt(2 * d));
}

NewtonRun run_newton(const Tower& T, unsigned n, std::size_t t, const FrobeniusElement* reuse) {
  const Field& F = *T.field();
  NewtonRun run;
  run.frob = reuse ? *reuse : frobenius_alpha(T, n);
  run.t = t;
  TruncSeries b = nuclear_series(run.frob, F.nu());
  run.matrix = nuclear_matrix(F, b, t);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < F.nu(); ++i) q *= F.p();
  run.entry_growth_ok = true;
  for (std::size_t i = 1; i <= t; ++i)
    for (std::size_t j = 1; j <= t; ++j) {
      auto v = tvec_val(run.matrix.at(i - 1, j - 1));
      std::int64_t need = static_cast<std::int64_t>(q * i) - static_cast<std::int64_t>(j);
      if (v && static_cast<std::int64_t>(*v * q / F.p()) * T.d() < need) run.entry_growth_ok = false;
    }
  run.fredholm = fredholm_coeffs(F, run.matrix);
  run.np = newton_polygon(run.fredholm, fredholm_trust_bound(F.p(), F.nu(), T.d(), n, t));
  return run;
}

CheckReport compare_np_hp(const NewtonPolygon& np, std::uint32_t p, std::uint32_t d, std::uint32_t nu) {
  const bool full = (p - 1) % d == 0;
  CheckReport R{full ? "np_hp_full" : "np_hp_vertices", 0, {}, {}};
  std::map<std::int64_t, std::int64_t> val(np.points.begin(), np.points.end());
  for (const auto& [m, v] : np.points) {
    Rational h = hodge_eta(p, d, m) * nu;
    R.add("NP above HP at m=" + std::to_string(m), Rational(static_cast<long long>(v)) >= h,
          "v=" + std::to_string(v) + " eta=" + to_str(h));
  }
  for (std::int64_t m = 0;; ++m) {
    Rational h = hodge_eta(p, d, m) * nu;
    if (h >= np.trust_bound) break;
    bool wanted = full || m % d == 0 || m % d == static_cast<std::int64_t>(d) - 1;
    if (!wanted) continue;
    auto it = val.find(m);
    bool pass = it != val.end() && Rational(static_cast<long long>(it->second)) == h;
    R.add("vertex (m, eta_m) at m=" + std::to_string(m), pass,
          (it == val.end() ? std::string("no certified point") : "v=" + std::to_string(it->second)) +
              " eta=" + to_str(h));
  }
  R.facts.push_back({"trust_bound", to_str(np.trust_bound)});
  R.facts.push_back({"mode", full ? "full" : "vertices"});
  return R;
}

CheckReport compare_euler_fredholm(const Field& F, const EulerProduct& E, const std::vector<TVec>& fredholm,
                                   const Rational& trust_bound) {
  (void)F;
  CheckReport R{"euler_fredholm", 0, {}, {}};
  const std::size_t N = E.coeffs.empty() ? 0 : E.coeffs[0].size();
  BigInt cb = ceil_q(trust_bound);
  std::size_t K = cb < BigInt(N) ? static_cast<std::size_t>(cb) : N;
  R.facts.push_back({"convention", to_string(E.convention)});
  R.facts.push_back({"character", E.dual ? "inverse" : "direct"});
  R.facts.push_back({"modulus_T", std::to_string(K)});
  for (unsigned k = 0; k <= E.D; ++k) {
    if (k >= fredholm.size()) {
      R.add("s^" + std::to_string(k), false, "matrix too small");
      continue;
    }
    bool same = true;
    for (std::size_t j = 0; j < K; ++j)
      if (E.coeffs[k][j] != fredholm[k][j]) same = false;
    R.add("s^" + std::to_string(k), same);
  }
  return R;
}

}  // namespace aswtower
