#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aswtower {

// Element of F_q stored as the integer sum_i coord_i p^i, coords in the
// power basis of the modulus.
using Elem = std::uint32_t;

struct FieldParams {
  std::uint32_t p = 2;
  std::uint32_t nu = 1;
  // ascending coefficients, monic, size nu+1; empty when nu == 1
  std::vector<std::uint32_t> modulus;

  bool operator==(const FieldParams&) const = default;
};

class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for bad user input (maps to exit code 2 in the CLI).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

class Field {
 public:
  explicit Field(FieldParams params);

  const FieldParams& params() const { return params_; }
  std::uint32_t p() const { return params_.p; }
  std::uint32_t nu() const { return params_.nu; }
  std::uint32_t q() const { return q_; }

  Elem add(Elem a, Elem b) const {
    if (params_.nu == 1) {
      Elem s = a + b;
      return s >= params_.p ? s - params_.p : s;
    }
    if (params_.p == 2) return a ^ b;
    return add_slow(a, b);
  }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (params_.nu == 1) return static_cast<Elem>((std::uint64_t)a * b % params_.p);
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  std::optional<Elem> try_inv(Elem a) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return frob_[a]; }
  Elem frobenius_inverse(Elem a) const { return frob_inv_[a]; }
  // sigma^k for any integer k
  Elem frobenius_power(Elem a, long k) const;

  Elem from_int(long long v) const;
  bool in_prime_field(Elem a) const { return a < params_.p; }
  std::vector<std::uint32_t> coords(Elem a) const;
  Elem from_coords(const std::vector<std::uint32_t>& c) const;

  // "3" for prime-field elements, "(c0,c1,...)" otherwise
  std::string to_string(Elem a) const;
  Elem parse(const std::string& s) const;

 private:
  Elem add_slow(Elem a, Elem b) const;
  Elem mul_by_modulus(Elem a, Elem b) const;

  FieldParams params_;
  std::uint32_t q_;
  std::vector<Elem> neg_, frob_, frob_inv_, exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(const FieldParams& params);

}  // namespace aswtower
