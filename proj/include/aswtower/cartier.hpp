#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aswtower/linalg.hpp"
#include "aswtower/tower.hpp"

namespace aswtower {

// h dx, h in R_level
struct Diff {
  FuncElem body;
};

struct BasisPair {
  std::size_t a;
  std::uint64_t nu;
  bool operator==(const BasisPair&) const = default;
  auto operator<=>(const BasisPair&) const = default;
};

struct RegularBasis {
  unsigned level = 0;
  std::vector<BasisPair> pairs;  // sorted by (a, nu)
  std::map<BasisPair, std::size_t> index;

  std::size_t size() const { return pairs.size(); }
};

// coordinates of h dx in the regular basis; nullopt when h dx is not regular
std::optional<std::vector<Elem>> diff_coordinates(const Tower& T, const RegularBasis& B, const FuncElem& h);

class Cartier {
 public:
  explicit Cartier(const Tower& T);

  const Tower& tower() const { return *T_; }

  // h = sum_j g_j^p x^j, j = 0..p-1
  std::vector<FuncElem> pth_power_decompose(const FuncElem& h) const;
  Diff apply(const Diff& w) const;
  FuncElem apply(const FuncElem& h) const { return apply(Diff{h}).body; }

  RegularBasis regular_basis(unsigned n) const;
  // x^{nu-1} w_a dx
  Diff basis_element(unsigned n, const BasisPair& bp) const;
  // column j holds the coordinates of V(basis_j); twist 1
  SemilinMatrix matrix(const RegularBasis& B, unsigned threads = 0) const;

 private:
  std::vector<std::vector<Poly>> decompose_rec(unsigned L, const Poly* h) const;

  const Tower* T_;
  std::vector<std::vector<FuncElem>> negf_pow_;  // (-f_m)^k, k < p
};

struct ANumbers {
  std::size_t genus = 0;
  std::vector<std::size_t> a;       // a[r] for r = 0..r_max, a[0] = 0
  std::vector<std::size_t> chain;   // a^{(r)} from the image chain until it reaches genus
  std::vector<std::int64_t> m;      // m[i-1] = m(i), i = 1..nilpotency index
  std::size_t nilpotency_index = 0;
  bool nilpotent = false;
  bool m_nonnegative = false;
  bool m_sum_ok = false;  // sum i m(i) = genus
  bool product_agrees = true;  // product nullity agrees with the image chain
};

ANumbers higher_anumbers(const Field& F, const SemilinMatrix& V, unsigned r_max);

// convenience: build basis, matrix and a-numbers
struct CartierRun {
  RegularBasis basis;
  SemilinMatrix matrix;
  ANumbers anumbers;
};
CartierRun run_cartier(const Tower& T, unsigned n, unsigned r_max, unsigned threads = 0);

}  // namespace aswtower
