#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aswtower/field.hpp"
#include "aswtower/poly.hpp"
#include "aswtower/profile.hpp"

namespace aswtower {

enum class LiftConvention { teichmuller, integer };

std::string to_string(LiftConvention c);
LiftConvention parse_lift(const std::string& s);

struct TowerSpec {
  FieldParams field;
  unsigned levels = 1;
  LiftConvention lift = LiftConvention::teichmuller;
  std::optional<unsigned> declared_d;
  // exponent -> Witt coordinates exactly as written in the spec
  std::map<std::uint32_t, std::vector<Elem>> coeffs;
};

TowerSpec parse_tower_spec(const std::string& text);
TowerSpec load_tower_spec(const std::string& path);
std::string serialize_tower_spec(const TowerSpec& spec);
// FNV-1a 64 of the canonical serialization, as 16 hex digits
std::string spec_digest(const TowerSpec& spec);

// Witt coefficient vectors of length n after applying the lift convention;
// validates exponents and the break condition.
std::map<std::uint32_t, std::vector<Elem>> resolve_coefficients(const TowerSpec& spec, const Field* F, unsigned n);
// ramification invariant: degree of the coordinate-0 polynomial
unsigned spec_degree(const TowerSpec& spec);
// f([x]) as Witt coordinates over k[x]
std::vector<Poly> build_rhs(const TowerSpec& spec, const Field* F, unsigned n);

// Element of R_L = k[x, y_0..y_{L-1}] in reduced form: g[a] is the k[x]
// coefficient of y^a, where a = sum_i a_i p^i and every a_i < p.
struct FuncElem {
  unsigned level = 0;
  std::vector<Poly> g;

  bool is_zero() const;
  bool operator==(const FuncElem& o) const { return level == o.level && g == o.g; }
  bool operator!=(const FuncElem& o) const { return !(*this == o); }
};

struct Leading {
  std::int64_t pole;  // -ord
  std::size_t a;
  std::size_t e;
  Elem coeff;
};

// raw polynomial in x, y_0..y_{L-1} with unrestricted exponents
struct RawTerm {
  std::size_t xexp;
  std::vector<unsigned> yexp;
  Elem coeff;
};

class Tower {
 public:
  explicit Tower(const TowerSpec& spec);

  const TowerSpec& spec() const { return spec_; }
  const Field* field() const { return F_.get(); }
  FieldPtr field_ptr() const { return F_; }
  std::uint32_t p() const { return F_->p(); }
  unsigned levels() const { return levels_; }
  std::uint32_t d() const { return d_; }
  TowerProfile profile() const { return TowerProfile(p(), d_); }
  std::size_t dim(unsigned level) const { return pw_[level]; }  // p^level
  std::uint64_t p_pow(unsigned e) const { return pw_[e]; }

  // construction record
  const FuncElem& f(unsigned m) const { return f_[m]; }
  const FuncElem& substitution(unsigned m) const { return u_[m]; }
  Elem normalization(unsigned m) const { return c_[m]; }
  // d_{m+1} = -ord_m(f_m)
  std::int64_t lower_break(unsigned m1) const { return dbreak_[m1 - 1]; }
  const std::vector<Poly>& rhs() const { return w_; }

  // element constructors
  FuncElem zero(unsigned level) const;
  FuncElem constant(unsigned level, Elem c) const;
  FuncElem from_poly(unsigned level, const Poly& g) const;
  FuncElem monomial(unsigned level, std::size_t xexp, std::size_t a, Elem c = 1) const;
  FuncElem y(unsigned i, unsigned level) const;
  FuncElem embed(const FuncElem& e, unsigned level) const;

  FuncElem add(const FuncElem& a, const FuncElem& b) const;
  FuncElem sub(const FuncElem& a, const FuncElem& b) const;
  FuncElem neg(const FuncElem& a) const;
  FuncElem scale(const FuncElem& a, Elem c) const;
  FuncElem mul_poly(const FuncElem& a, const Poly& g) const;
  FuncElem mul(const FuncElem& a, const FuncElem& b) const;
  FuncElem pow(const FuncElem& a, std::uint64_t k) const;
  FuncElem reduce(unsigned level, const std::vector<RawTerm>& raw) const;

  // p^level * xi_a, an integer
  std::int64_t xi_scaled(unsigned level, std::size_t a) const { return xis_[level][a]; }
  std::optional<std::int64_t> ord(const FuncElem& e) const;
  std::optional<Leading> leading(const FuncElem& e) const;

  // Galois generator: gamma(y) = y (+) 1 in the original Witt coordinates
  const FuncElem& gamma_y(unsigned m) const { return gy_[m]; }
  FuncElem gamma(const FuncElem& e) const;
  FuncElem T(const FuncElem& e) const;

  std::string to_string(const FuncElem& e) const;

 private:
  void build();
  std::vector<Poly> mul_rec(unsigned L, const Poly* A, const Poly* B) const;
  std::vector<Poly> gamma_rec(unsigned L, const Poly* E) const;
  static bool block_zero(const Poly* A, std::size_t n);
  void fill_xi(unsigned level);
  void set_gamma_powers(unsigned m);

  TowerSpec spec_;
  FieldPtr F_;
  unsigned levels_;
  std::uint32_t d_;
  std::vector<std::uint64_t> pw_;
  std::vector<Poly> w_;
  std::vector<FuncElem> f_, u_;
  std::vector<Elem> c_;
  std::vector<std::int64_t> dbreak_;
  std::vector<std::vector<std::int64_t>> xis_;
  std::vector<FuncElem> gy_;
  std::vector<std::vector<FuncElem>> gpow_;  // gpow_[m][j] = gamma(y_m)^j at level m+1
};

// w_a^{(n)} = (-1)^n y^{p^n-1-a}, zero when a >= p^n
FuncElem omega_generator(const Tower& T, unsigned n, std::size_t a);

}  // namespace aswtower
