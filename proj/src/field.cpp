#include "aswtower/field.hpp"

#include <sstream>

#include "aswtower/poly.hpp"

namespace aswtower {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) {
      out.push_back(k);
      while (n % k == 0) n /= k;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

Field::Field(FieldParams params) : params_(std::move(params)) {
  const std::uint32_t p = params_.p;
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
  if (params_.nu == 0) throw InputError("nu must be positive");
  if (params_.nu == 1) {
    if (!params_.modulus.empty() && params_.modulus != std::vector<std::uint32_t>{0, 1})
      throw InputError("modulus given for nu = 1");
    params_.modulus.clear();
  }
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < params_.nu; ++i) {
    q *= p;
    if (q > (1u << 16)) throw InputError("field too large (q > 65536)");
  }
  q_ = static_cast<std::uint32_t>(q);

  if (params_.nu > 1) {
    const auto& m = params_.modulus;
    if (m.size() != params_.nu + 1 || m.back() != 1)
      throw InputError("modulus must be monic of degree nu");
    for (auto c : m)
      if (c >= p) throw InputError("modulus coefficient out of range");
    auto fp = make_field(FieldParams{p, 1, {}});
    std::vector<Elem> coeffs(m.begin(), m.end());
    if (!is_irreducible(Poly(fp.get(), coeffs)))
      throw InputError("modulus is not irreducible over F_p");
  }

  neg_.resize(q_);
  for (Elem a = 0; a < q_; ++a) {
    auto c = coords(a);
    for (auto& x : c) x = (p - x) % p;
    neg_[a] = from_coords(c);
  }

  if (params_.nu > 1) {
    // find a generator of the multiplicative group, then tabulate
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    auto factors = prime_factors(q_ - 1);
    auto slow_pow = [&](Elem a, std::uint64_t e) {
      Elem r = 1;
      while (e) {
        if (e & 1) r = mul_by_modulus(r, a);
        a = mul_by_modulus(a, a);
        e >>= 1;
      }
      return r;
    };
    Elem g = 0;
    for (Elem c = 2; c < q_; ++c) {
      bool ok = true;
      for (auto r : factors)
        if (slow_pow(c, (q_ - 1) / r) == 1) { ok = false; break; }
      if (ok) { g = c; break; }
    }
    if (g == 0) throw MathError("no primitive element found");
    Elem x = 1;
    for (std::uint32_t k = 0; k + 1 < q_; ++k) {
      exp_[k] = x;
      log_[x] = k;
      x = mul_by_modulus(x, g);
    }
  }

  frob_.resize(q_);
  frob_inv_.resize(q_);
  for (Elem a = 0; a < q_; ++a) frob_[a] = pow(a, p);
  for (Elem a = 0; a < q_; ++a) frob_inv_[frob_[a]] = a;
}

Elem Field::add_slow(Elem a, Elem b) const {
  const std::uint32_t p = params_.p;
  Elem r = 0, scale = 1;
  while (a || b) {
    std::uint32_t s = a % p + b % p;
    if (s >= p) s -= p;
    r += s * scale;
    scale *= p;
    a /= p;
    b /= p;
  }
  return r;
}

Elem Field::mul_by_modulus(Elem a, Elem b) const {
  const std::uint32_t p = params_.p, nu = params_.nu;
  auto ca = coords(a), cb = coords(b);
  std::vector<std::uint64_t> prod(2 * nu, 0);
  for (std::uint32_t i = 0; i < nu; ++i)
    for (std::uint32_t j = 0; j < nu; ++j) prod[i + j] += (std::uint64_t)ca[i] * cb[j];
  for (auto& v : prod) v %= p;
  const auto& m = params_.modulus;
  for (std::size_t k = 2 * nu - 1; k >= nu; --k) {
    std::uint64_t c = prod[k];
    if (!c) continue;
    prod[k] = 0;
    for (std::uint32_t i = 0; i < nu; ++i)
      prod[k - nu + i] = (prod[k - nu + i] + c * (p - m[i])) % p;
  }
  std::vector<std::uint32_t> out(nu);
  for (std::uint32_t i = 0; i < nu; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return from_coords(out);
}

std::optional<Elem> Field::try_inv(Elem a) const {
  if (a == 0) return std::nullopt;
  if (params_.nu == 1) return pow(a, params_.p - 2);
  std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

Elem Field::inv(Elem a) const {
  auto r = try_inv(a);
  if (!r) throw MathError("division by zero in F_q");
  return *r;
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::frobenius_power(Elem a, long k) const {
  long nu = params_.nu;
  long s = ((k % nu) + nu) % nu;
  for (long i = 0; i < s; ++i) a = frob_[a];
  return a;
}

Elem Field::from_int(long long v) const {
  long long p = params_.p;
  return static_cast<Elem>(((v % p) + p) % p);
}

std::vector<std::uint32_t> Field::coords(Elem a) const {
  std::vector<std::uint32_t> c(params_.nu, 0);
  for (std::uint32_t i = 0; i < params_.nu; ++i) {
    c[i] = a % params_.p;
    a /= params_.p;
  }
  return c;
}

Elem Field::from_coords(const std::vector<std::uint32_t>& c) const {
  Elem r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * params_.p + c[i] % params_.p;
  return r;
}

std::string Field::to_string(Elem a) const {
  if (in_prime_field(a)) return std::to_string(a);
  auto c = coords(a);
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ')';
  return os.str();
}

Elem Field::parse(const std::string& s) const {
  auto bad = [&]() { return InputError("bad field element literal '" + s + "'"); };
  if (s.empty()) throw bad();
  if (s.front() == '(') {
    if (s.back() != ')') throw bad();
    std::vector<std::uint32_t> c;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw bad();
        c.push_back(from_int(v));
      } catch (const std::logic_error&) {
        throw bad();
      }
    }
    if (c.size() != params_.nu) throw bad();
    return from_coords(c);
  }
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw bad();
    return from_int(v);
  } catch (const std::logic_error&) {
    throw bad();
  }
}

FieldPtr make_field(const FieldParams& params) { return std::make_shared<const Field>(params); }

}  // namespace aswtower
