#include "aswtower/series.hpp"

#include <algorithm>

namespace aswtower {

TruncSeries::TruncSeries(const Field* F, std::size_t p_power) : F_(F), t_(p_power, Poly(F)) {
  if (p_power == 0) throw MathError("truncation modulus must be positive");
}

TruncSeries TruncSeries::one(const Field* F, std::size_t p_power) {
  TruncSeries s(F, p_power);
  s.t_[0] = Poly::constant(F, 1);
  return s;
}

void TruncSeries::add_term(std::size_t xexp, std::size_t texp, Elem c) {
  if (texp >= t_.size()) return;
  t_[texp].add_term(xexp, c);
}

bool TruncSeries::is_zero() const {
  for (const auto& c : t_)
    if (!c.is_zero()) return false;
  return true;
}

long TruncSeries::x_degree() const {
  long d = -1;
  for (const auto& c : t_) d = std::max(d, c.degree());
  return d;
}

std::optional<std::size_t> TruncSeries::t_valuation_of_x(std::size_t i) const {
  for (std::size_t j = 0; j < t_.size(); ++j)
    if (t_[j].coeff(i) != 0) return j;
  return std::nullopt;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  if (o.t_.size() != t_.size()) throw MathError("truncation mismatch");
  for (std::size_t j = 0; j < t_.size(); ++j) t_[j] += o.t_[j];
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  if (o.t_.size() != t_.size()) throw MathError("truncation mismatch");
  for (std::size_t j = 0; j < t_.size(); ++j) t_[j] -= o.t_[j];
  return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  if (a.t_.size() != b.t_.size()) throw MathError("truncation mismatch");
  const std::size_t N = a.t_.size();
  TruncSeries r(a.F_, N);
  for (std::size_t i = 0; i < N; ++i) {
    if (a.t_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < N; ++j)
      if (!b.t_[j].is_zero()) r.t_[i + j] += a.t_[i] * b.t_[j];
  }
  return r;
}

TruncSeries TruncSeries::x_truncated(std::size_t bound) const {
  TruncSeries r(*this);
  for (auto& c : r.t_) c = c.truncated(bound);
  return r;
}

TruncSeries TruncSeries::sigma() const {
  TruncSeries r(*this);
  for (auto& c : r.t_) c = c.pth_power();
  return r;
}

TruncSeries TruncSeries::inverse(std::optional<std::size_t> x_bound) const {
  const Poly& f0 = t_[0];
  if (f0.coeff(0) == 0) throw MathError("series is not a unit");
  const bool exact = f0.degree() == 0;
  if (!exact && !x_bound) throw MathError("inverse needs an x-degree bound");
  auto trunc = [&](Poly p) { return x_bound ? p.truncated(*x_bound) : p; };

  Poly h0(F_);
  if (exact) {
    h0 = Poly::constant(F_, F_->inv(f0.coeff(0)));
  } else {
    const std::size_t B = *x_bound;
    std::vector<Elem> h(B + 1, 0);
    Elem c0 = F_->inv(f0.coeff(0));
    h[0] = c0;
    for (std::size_t k = 1; k <= B; ++k) {
      Elem s = 0;
      for (std::size_t i = 1; i <= k; ++i) s = F_->add(s, F_->mul(f0.coeff(i), h[k - i]));
      h[k] = F_->neg(F_->mul(c0, s));
    }
    h0 = Poly(F_, std::move(h));
  }

  const std::size_t N = t_.size();
  TruncSeries r(F_, N);
  r.t_[0] = trunc(h0);
  for (std::size_t j = 1; j < N; ++j) {
    Poly s(F_);
    for (std::size_t i = 1; i <= j; ++i)
      if (!t_[i].is_zero() && !r.t_[j - i].is_zero()) s += trunc(t_[i] * r.t_[j - i]);
    r.t_[j] = trunc(-(h0 * s));
  }
  return r;
}

}  // namespace aswtower
