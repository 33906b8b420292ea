#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aswtower/iwasawa.hpp"
#include "aswtower/rational.hpp"
#include "aswtower/series.hpp"
#include "aswtower/tower.hpp"

namespace aswtower {

// element of k[T]/(T^N), dense, length N
using TVec = std::vector<Elem>;

TVec tvec_mul(const Field& F, const TVec& a, const TVec& b);
TVec tvec_add(const Field& F, const TVec& a, const TVec& b);
TVec tvec_sub(const Field& F, const TVec& a, const TVec& b);
// T-adic valuation; nullopt for zero
std::optional<std::size_t> tvec_val(const TVec& a);
// inverse of a unit of k[T]/(T^N)
TVec tvec_inverse(const Field& F, const TVec& a);
// (1+T)^c
TVec one_plus_T_power(const Field& F, std::size_t N, std::uint64_t c);

struct FrobeniusElement {
  unsigned n = 0;
  TruncSeries alpha;
  TruncSeries alpha_inv;
  bool unit_mod_T = false;
  bool growth_ok = false;
  bool inverse_ok = false;
  std::string growth_detail;
};

// Solves alpha . w0 = w0^p in R_n.
FrobeniusElement frobenius_alpha(const Tower& T, unsigned n);

// v_T(x^i coefficient) >= i/d for all i; returns a description of the first violation
std::optional<std::string> growth_violation(const TruncSeries& s, std::uint32_t d);

struct CharValue {
  Poly place;   // monic irreducible over k
  TVec value;   // in F_p[T]/(T^N)
  std::uint64_t exponent = 0;  // value = (1+T)^exponent
};

CharValue char_value(const Tower& T, const FrobeniusElement& fe, const Poly& place);

enum class EulerConvention { inverted, plain };
std::string to_string(EulerConvention c);
EulerConvention parse_euler_convention(const std::string& s);

// coefficient [s^k] for k <= D, each in F_p[T]/(T^N)
using SPoly = std::vector<TVec>;

struct EulerProduct {
  EulerConvention convention;
  bool dual = false;  // local factors use chi(Frob_v)^{-1}
  unsigned D = 0;
  SPoly coeffs;
  std::vector<std::size_t> place_counts;  // index m-1: number of places of degree m
  std::vector<CharValue> values;
};

EulerProduct euler_product(const Tower& T, const FrobeniusElement& fe, unsigned D,
                           EulerConvention conv = EulerConvention::inverted, bool dual = true);
// (1/m) sum_{e|m} mobius(e) q^{m/e}
std::uint64_t necklace_count(std::uint64_t q, unsigned m);

// t x t matrix over k[T]/(T^N), row-major
struct TMatrix {
  std::size_t t = 0, N = 0;
  std::vector<TVec> e;
  const TVec& at(std::size_t i, std::size_t j) const { return e[i * t + j]; }
  TVec& at(std::size_t i, std::size_t j) { return e[i * t + j]; }
};

// product_{i<nu} sigma^i(alpha^{-1}) = sum b_k x^k
TruncSeries nuclear_series(const FrobeniusElement& fe, std::uint32_t nu);
// N_{ij} = b_{p^nu i - j}, 1 <= i, j <= t
TMatrix nuclear_matrix(const Field& F, const TruncSeries& b, std::size_t t);

// coefficients c_0 = 1, c_1, ..., c_t of det(1 - sM), division-free
std::vector<TVec> fredholm_coeffs(const Field& F, const TMatrix& M);

struct NewtonPolygon {
  std::vector<std::pair<std::int64_t, Rational>> vertices;
  // (m, v_T(c_m)) for every m with a certified value
  std::vector<std::pair<std::int64_t, std::int64_t>> points;
  Rational trust_bound;
};

Rational fredholm_trust_bound(std::uint32_t p, std::uint32_t nu, std::uint32_t d, unsigned n, std::size_t t);
NewtonPolygon newton_polygon(const std::vector<TVec>& coeffs, const Rational& trust_bound);
// lower convex hull of the given points
std::vector<std::pair<std::int64_t, Rational>> lower_hull(std::vector<std::pair<std::int64_t, Rational>> pts);

// eta_m = (p-1) m (m+1) / (2d)
Rational hodge_eta(std::uint32_t p, std::uint32_t d, std::int64_t m);

struct NewtonRun {
  FrobeniusElement frob;
  std::size_t t = 0;
  TMatrix matrix;
  std::vector<TVec> fredholm;
  NewtonPolygon np;
  bool entry_growth_ok = false;
};

NewtonRun run_newton(const Tower& T, unsigned n, std::size_t t, const FrobeniusElement* reuse = nullptr);

// full: d | (p-1) equality below the trust bound; otherwise vertices at m = 0, -1 mod d
CheckReport compare_np_hp(const NewtonPolygon& np, std::uint32_t p, std::uint32_t d, std::uint32_t nu);

// coefficient comparison of the Euler product with det(1 - sN) modulo
// (T^K, s^{D+1}), K = min(p^n, ceil(trust bound))
CheckReport compare_euler_fredholm(const Field& F, const EulerProduct& E, const std::vector<TVec>& fredholm,
                                   const Rational& trust_bound);

}  // namespace aswtower
