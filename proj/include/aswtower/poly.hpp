#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "aswtower/field.hpp"

namespace aswtower {

// Univariate polynomial over F_q, dense coefficient vector without trailing
// zeros. A null field pointer is allowed only for the zero polynomial.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Field* F) : F_(F) {}
  Poly(const Field* F, std::vector<Elem> c) : F_(F), c_(std::move(c)) { trim(); }
  static Poly constant(const Field* F, Elem c);
  static Poly monomial(const Field* F, Elem c, std::size_t e);
  static Poly x(const Field* F) { return monomial(F, 1, 1); }

  const Field* field() const { return F_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Elem coeff(std::size_t e) const { return e < c_.size() ? c_[e] : 0; }
  Elem leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<Elem>& coeffs() const { return c_; }
  std::size_t num_terms() const;

  void add_term(std::size_t e, Elem c);
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator-() const;
  Poly scaled(Elem s) const;
  Poly shifted(std::size_t k) const;  // times x^k
  // x-degree truncation: keep terms of degree <= bound
  Poly truncated(std::size_t bound) const;

  // p-th power map: coefficients through frobenius, x -> x^p
  Poly pth_power() const;
  // apply sigma^k to coefficients only
  Poly coeff_frobenius(long k) const;
  Elem eval(Elem v) const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string to_string(const std::string& var = "x") const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  const Field* F_ = nullptr;
  std::vector<Elem> c_;
};

// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly poly_gcd(Poly a, Poly b);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& a, std::uint64_t e, const Poly& m);
Poly make_monic(const Poly& a);
// Rabin's test over the coefficient field of f
bool is_irreducible(const Poly& f);
// all monic irreducibles of the given degree, in lexicographic order of the
// coefficient vector (low degree first)
std::vector<Poly> monic_irreducibles(const Field* F, int degree);

}  // namespace aswtower
