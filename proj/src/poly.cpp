#include "aswtower/poly.hpp"

#include <sstream>

namespace aswtower {

Poly Poly::constant(const Field* F, Elem c) { return Poly(F, std::vector<Elem>{c}); }

Poly Poly::monomial(const Field* F, Elem c, std::size_t e) {
  if (c == 0) return Poly(F);
  std::vector<Elem> v(e + 1, 0);
  v[e] = c;
  return Poly(F, std::move(v));
}

std::size_t Poly::num_terms() const {
  std::size_t n = 0;
  for (auto c : c_) n += (c != 0);
  return n;
}

void Poly::add_term(std::size_t e, Elem c) {
  if (c == 0) return;
  if (e >= c_.size()) c_.resize(e + 1, 0);
  c_[e] = F_->add(c_[e], c);
  trim();
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.empty()) return *this;
  if (!F_) F_ = o.F_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = F_->add(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.empty()) return *this;
  if (!F_) F_ = o.F_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = F_->sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& c : r.c_) c = F_->neg(c);
  return r;
}

Poly Poly::scaled(Elem s) const {
  if (s == 0 || c_.empty()) return Poly(F_);
  Poly r(*this);
  for (auto& c : r.c_) c = F_->mul(c, s);
  return r;
}

Poly Poly::shifted(std::size_t k) const {
  if (c_.empty() || k == 0) return *this;
  Poly r(F_);
  r.c_.assign(k, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly Poly::truncated(std::size_t bound) const {
  if (c_.size() <= bound + 1) return *this;
  return Poly(F_, std::vector<Elem>(c_.begin(), c_.begin() + bound + 1));
}

Poly Poly::pth_power() const {
  if (c_.empty()) return *this;
  const std::size_t p = F_->p();
  std::vector<Elem> v((c_.size() - 1) * p + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) v[i * p] = F_->frobenius(c_[i]);
  return Poly(F_, std::move(v));
}

Poly Poly::coeff_frobenius(long k) const {
  if (c_.empty() || F_->nu() == 1) return *this;
  Poly r(*this);
  for (auto& c : r.c_) c = F_->frobenius_power(c, k);
  return r;
}

Elem Poly::eval(Elem v) const {
  Elem r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = F_->add(F_->mul(r, v), c_[i]);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  const Field* F = a.F_ ? a.F_ : b.F_;
  if (a.c_.empty() || b.c_.empty()) return Poly(F);
  const std::size_t na = a.c_.size(), nb = b.c_.size();
  std::vector<Elem> out(na + nb - 1, 0);
  if (F->nu() == 1) {
    const std::uint64_t p = F->p();
    // products are < p^2; reduce the accumulator before it can overflow
    const std::uint64_t limit = ~std::uint64_t(0) / ((p - 1) * (p - 1) + 1) - 1;
    std::vector<std::uint64_t> acc(na + nb - 1, 0);
    std::size_t since = 0;
    for (std::size_t i = 0; i < na; ++i) {
      const std::uint64_t ai = a.c_[i];
      if (ai) {
        const Elem* bp = b.c_.data();
        std::uint64_t* dst = acc.data() + i;
        for (std::size_t j = 0; j < nb; ++j) dst[j] += ai * bp[j];
        if (++since >= limit) {
          for (auto& v : acc) v %= p;
          since = 0;
        }
      }
    }
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = static_cast<Elem>(acc[k] % p);
  } else {
    for (std::size_t i = 0; i < na; ++i) {
      if (!a.c_[i]) continue;
      for (std::size_t j = 0; j < nb; ++j)
        if (b.c_[j]) out[i + j] = F->add(out[i + j], F->mul(a.c_[i], b.c_[j]));
    }
  }
  return Poly(F, std::move(out));
}

std::string Poly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (!c_[i]) continue;
    if (!first) os << " + ";
    first = false;
    bool unit = c_[i] == 1;
    if (!unit || i == 0) os << F_->to_string(c_[i]);
    if (i > 0) {
      if (!unit) os << '*';
      os << var;
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  const Field* F = b.field();
  std::vector<Elem> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t nb = bc.size();
  if (r.size() < nb) return {Poly(F), a};
  std::vector<Elem> qv(r.size() - nb + 1, 0);
  Elem linv = F->inv(bc.back());
  for (std::size_t k = r.size() - 1;; --k) {
    Elem c = F->mul(r[k], linv);
    qv[k - nb + 1] = c;
    if (c)
      for (std::size_t j = 0; j < nb; ++j) r[k - nb + 1 + j] = F->sub(r[k - nb + 1 + j], F->mul(c, bc[j]));
    if (k == nb - 1) break;
  }
  r.resize(nb - 1);
  return {Poly(F, std::move(qv)), Poly(F, std::move(r))};
}

Poly make_monic(const Poly& a) {
  if (a.is_zero()) return a;
  return a.scaled(a.field()->inv(a.leading()));
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return divmod(a * b, m).second; }

Poly powmod(const Poly& a, std::uint64_t e, const Poly& m) {
  Poly r = divmod(Poly::constant(m.field(), 1), m).second;
  Poly base = divmod(a, m).second;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

namespace {

// x^{q^k} mod f by k successive q-th powerings
Poly x_qk(const Poly& f, int k) {
  const Field* F = f.field();
  Poly r = divmod(Poly::x(F), f).second;
  for (int i = 0; i < k; ++i) r = powmod(r, F->q(), f);
  return r;
}

}  // namespace

bool is_irreducible(const Poly& f) {
  const Field* F = f.field();
  const long n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  Poly fm = make_monic(f);
  Poly X = Poly::x(F);
  if (x_qk(fm, static_cast<int>(n)) != divmod(X, fm).second) return false;
  std::vector<long> primes;
  long m = n;
  for (long k = 2; k * k <= m; ++k)
    if (m % k == 0) {
      primes.push_back(k);
      while (m % k == 0) m /= k;
    }
  if (m > 1) primes.push_back(m);
  for (long r : primes) {
    Poly h = x_qk(fm, static_cast<int>(n / r)) - X;
    if (poly_gcd(fm, h).degree() != 0) return false;
  }
  return true;
}

std::vector<Poly> monic_irreducibles(const Field* F, int degree) {
  std::vector<Poly> out;
  if (degree < 1) return out;
  const std::uint64_t q = F->q();
  std::uint64_t count = 1;
  for (int i = 0; i < degree; ++i) count *= q;
  std::vector<Elem> c(degree + 1, 0);
  c[degree] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t t = idx;
    for (int i = 0; i < degree; ++i) {
      c[i] = static_cast<Elem>(t % q);
      t /= q;
    }
    Poly f(F, c);
    if (is_irreducible(f)) out.push_back(f);
  }
  return out;
}

}  // namespace aswtower
