#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace aswtower {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline BigInt floor_q(const Rational& q) {
  BigInt n = num(q), d = den(q);
  BigInt r = n / d;
  if (n % d != 0 && n < 0) r -= 1;
  return r;
}

inline BigInt ceil_q(const Rational& q) {
  BigInt n = num(q), d = den(q);
  BigInt r = n / d;
  if (n % d != 0 && n > 0) r += 1;
  return r;
}

inline BigInt big_pow(std::uint64_t base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

inline std::string to_str(const BigInt& v) { return v.str(); }

inline std::string to_str(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

}  // namespace aswtower
