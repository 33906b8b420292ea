#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aswtower/rational.hpp"

namespace aswtower {

struct TowerProfile {
  std::uint32_t p;
  std::uint32_t d;
  TowerProfile(std::uint32_t p_, std::uint32_t d_);
};

struct Breaks {
  BigInt upper;  // s_n
  BigInt lower;  // d_n
  BigInt genus;  // g_n
};

Breaks breaks_and_genus(const TowerProfile& P, unsigned n);

// rev(a) = sum_m a_m p^{-m-1}
Rational rev(std::uint32_t p, std::uint64_t a);
// (d/(p+1)) (a + rev(a)), cross-checked against the digit-weighted sum
Rational xi(const TowerProfile& P, std::uint64_t a);
// sum_m p^{-m-1} a_m d_{m+1}
Rational xi_digit_sum(const TowerProfile& P, std::uint64_t a);

// closed form via digit comparison of (p+1)i/d
std::uint64_t mu(const TowerProfile& P, std::uint64_t i);

struct LatticeReport {
  unsigned n = 0;
  BigInt t;
  unsigned r = 1;
  BigInt count_right;  // #Delta_n(t)
  BigInt count_total;  // #Delta_n
  Rational formula_value;  // r(p-1)t(t+1)/(2d) + #Delta_n(t)
};

// #Delta_n(t) only
BigInt lattice_count(const TowerProfile& P, unsigned n, const BigInt& t);
LatticeReport lattice_counts(const TowerProfile& P, unsigned n, const BigInt& t, unsigned r = 1);
// whether the column sum for level n is small enough to run
bool lattice_feasible(const TowerProfile& P, unsigned n);

struct LambdaMode {
  enum class Kind { empirical, safe } kind = Kind::empirical;
  std::uint64_t scan = 0;  // 0 means d*p^4
  static LambdaMode safe_bound() { return {Kind::safe, 0}; }
  static LambdaMode empirical(std::uint64_t N = 0) { return {Kind::empirical, N}; }
  std::string describe(const TowerProfile& P) const;
};

LambdaMode parse_lambda_mode(const std::string& s);

struct CutoffReport {
  unsigned r = 1, n = 1;
  BigInt delta;
  BigInt t_n, t_prime_n, s_n_rem;
  Rational lambda;
  LambdaMode lambda_mode;
  Rational D_t, epsilon, C_pdr;
  bool exact_flag = false;
};

Rational lambda_value(const TowerProfile& P, const LambdaMode& mode);
CutoffReport cutoff_report(const TowerProfile& P, unsigned r, unsigned n, LambdaMode mode = {});

struct FormulaResult {
  BigInt value;     // F
  Rational lower;   // F - C
  bool exact_flag = false;
  BigInt t_used;
  BigInt lattice;   // #Delta_n(t_used); zero when the closed form was used
  std::string method;  // "lattice" or "closed_form_r1"
  CutoffReport cutoff;
};

FormulaResult anumber_formula(const TowerProfile& P, unsigned r, unsigned n, LambdaMode mode = {});

// exact r = 1 value for d | (p-1), p > 2
BigInt anumber_exact_r1(const TowerProfile& P, unsigned n);
// the displayed expression before the integrality check
Rational anumber_exact_r1_raw(const TowerProfile& P, unsigned n);

// f_n(x) = sum_{b < p^n} floor(x + xi_b)
BigInt fn_brute(const TowerProfile& P, unsigned n, const Rational& x);
// closed form, requires d | (p-1)
BigInt fn_closed(const TowerProfile& P, unsigned n, const Rational& x);

struct Asymptotics {
  Rational ratio;
  std::vector<Rational> m_densities;  // index i-1 holds the density of m(i)
};

Asymptotics asymptotics(const TowerProfile& P, unsigned r, unsigned imax = 10);

}  // namespace aswtower
