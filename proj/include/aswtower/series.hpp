#pragma once

#include <optional>
#include <vector>

#include "aswtower/poly.hpp"

namespace aswtower {

// Element of A_n[x] = k[x][T]/(T^N), N = p^n, stored as one x-polynomial per
// power of T.
class TruncSeries {
 public:
  TruncSeries() = default;
  TruncSeries(const Field* F, std::size_t p_power);
  static TruncSeries one(const Field* F, std::size_t p_power);

  const Field* field() const { return F_; }
  std::size_t p_power() const { return t_.size(); }
  const Poly& t_coeff(std::size_t j) const { return t_[j]; }
  Poly& t_coeff(std::size_t j) { return t_[j]; }
  Elem coeff(std::size_t xexp, std::size_t texp) const { return t_[texp].coeff(xexp); }
  void add_term(std::size_t xexp, std::size_t texp, Elem c);
  bool is_zero() const;
  long x_degree() const;
  // smallest j with a nonzero x^i coefficient at T^j, or nullopt
  std::optional<std::size_t> t_valuation_of_x(std::size_t i) const;

  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  bool operator==(const TruncSeries& o) const { return t_ == o.t_; }

  TruncSeries x_truncated(std::size_t bound) const;
  // sigma on A_n[x]: p-th power on k and x, T fixed
  TruncSeries sigma() const;

  // Inverse when the T^0 coefficient is a nonzero constant (exact), or when
  // its constant term is nonzero and an x-degree bound is supplied (then the
  // identity f*h = 1 holds modulo x^{bound+1}).
  TruncSeries inverse(std::optional<std::size_t> x_bound = std::nullopt) const;

 private:
  const Field* F_ = nullptr;
  std::vector<Poly> t_;
};

}  // namespace aswtower
