#include "aswtower/witt.hpp"

#include <cstdlib>
#include <memory>
#include <mutex>
#include <string>

namespace aswtower {

namespace {

using Key = std::vector<std::uint16_t>;

// integer polynomial with coefficients reduced mod `mod`
struct IntPoly {
  std::map<Key, std::uint64_t> t;
};

IntPoly ip_mul(const IntPoly& a, const IntPoly& b, std::uint64_t mod) {
  IntPoly r;
  for (const auto& [ka, ca] : a.t)
    for (const auto& [kb, cb] : b.t) {
      Key k(ka.size());
      for (std::size_t i = 0; i < k.size(); ++i) {
        unsigned e = unsigned(ka[i]) + kb[i];
        if (e > 0xFFFF) throw MathError("Witt exponent overflow");
        k[i] = static_cast<std::uint16_t>(e);
      }
      auto& slot = r.t[k];
      slot = (slot + (unsigned __int128)ca * cb % mod) % mod;
    }
  for (auto it = r.t.begin(); it != r.t.end();) it = it->second ? std::next(it) : r.t.erase(it);
  return r;
}

IntPoly ip_pow(IntPoly base, std::uint64_t e, std::size_t nvars, std::uint64_t mod) {
  IntPoly r;
  r.t[Key(nvars, 0)] = 1 % mod;
  while (e) {
    if (e & 1) r = ip_mul(r, base, mod);
    e >>= 1;
    if (e) base = ip_mul(base, base, mod);
  }
  return r;
}

void ip_add(IntPoly& acc, const IntPoly& x, std::uint64_t scale, std::uint64_t mod, bool negate) {
  for (const auto& [k, c] : x.t) {
    std::uint64_t v = (unsigned __int128)c * scale % mod;
    if (negate) v = (mod - v) % mod;
    auto& slot = acc.t[k];
    slot = (slot + v) % mod;
  }
  for (auto it = acc.t.begin(); it != acc.t.end();) it = it->second ? std::next(it) : acc.t.erase(it);
}

IntPoly variable(std::size_t idx, std::size_t nvars) {
  IntPoly v;
  Key k(nvars, 0);
  k[idx] = 1;
  v.t[k] = 1;
  return v;
}

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// Solve ghost_m(S) = ghost_m(a) +/- ghost_m(b) for each m < n.
std::vector<ModPoly> derive(std::uint32_t p, unsigned n, bool subtract) {
  const std::size_t nv = 2 * n;
  std::vector<IntPoly> S;  // lifted mod p representatives
  std::vector<ModPoly> out;
  for (unsigned m = 0; m < n; ++m) {
    const std::uint64_t mod = upow(p, m + 1);
    IntPoly N;
    for (unsigned i = 0; i <= m; ++i) {
      std::uint64_t w = upow(p, i);
      ip_add(N, ip_pow(variable(i, nv), upow(p, m - i), nv, mod), w, mod, false);
      ip_add(N, ip_pow(variable(n + i, nv), upow(p, m - i), nv, mod), w, mod, subtract);
    }
    for (unsigned i = 0; i < m; ++i)
      ip_add(N, ip_pow(S[i], upow(p, m - i), nv, mod), upow(p, i), mod, true);
    const std::uint64_t pm = upow(p, m);
    ModPoly mp;
    IntPoly lifted;
    for (const auto& [k, c] : N.t) {
      if (c % pm != 0) throw MathError("non-integral Witt carry coefficient");
      std::uint32_t v = static_cast<std::uint32_t>((c / pm) % p);
      if (!v) continue;
      mp.terms.emplace_back(k, v);
      lifted.t[k] = v;
    }
    S.push_back(std::move(lifted));
    out.push_back(std::move(mp));
  }
  return out;
}

}  // namespace

unsigned witt_length_cap() {
  if (const char* env = std::getenv("ASWTOWER_MAX_LEVEL")) {
    try {
      int v = std::stoi(env);
      if (v >= 1 && v <= 8) return static_cast<unsigned>(v);
    } catch (const std::logic_error&) {
    }
    throw InputError(std::string("bad ASWTOWER_MAX_LEVEL value '") + env + "'");
  }
  return 3;
}

const WittPolys& witt_carry_polys(std::uint32_t p, unsigned n) {
  static std::mutex mtx;
  static std::map<std::pair<std::uint32_t, unsigned>, std::unique_ptr<WittPolys>> cache;
  if (!is_prime(p)) throw InputError("p is not prime");
  if (n == 0) throw InputError("Witt length must be positive");
  if (n > witt_length_cap())
    throw InputError("Witt length " + std::to_string(n) + " exceeds the level cap " +
                     std::to_string(witt_length_cap()));
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[{p, n}];
  if (!slot) {
    auto w = std::make_unique<WittPolys>();
    w->p = p;
    w->n = n;
    w->sum = derive(p, n, false);
    w->diff = derive(p, n, true);
    slot = std::move(w);
  }
  return *slot;
}

std::vector<Elem> witt_of_integer(const Field* F, long long c, unsigned n) {
  const long long pn = static_cast<long long>(upow(F->p(), n));
  long long k = ((c % pn) + pn) % pn;
  std::vector<Elem> acc(n, 0), one(n, 0);
  one[0] = 1;
  ConstOps ops{F};
  for (long long i = 0; i < k; ++i) acc = witt_add(F->p(), acc, one, ops);
  return acc;
}

}  // namespace aswtower
