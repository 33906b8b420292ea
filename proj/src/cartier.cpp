#include "aswtower/cartier.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace aswtower {

namespace {

std::uint32_t binom_mod(std::uint32_t n, std::uint32_t k, std::uint32_t p) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return static_cast<std::uint32_t>(r % p);
}

}  // namespace

Cartier::Cartier(const Tower& T) : T_(&T) {
  const std::uint32_t p = T.p();
  for (unsigned m = 0; m < T.levels(); ++m) {
    std::vector<FuncElem> pw{T.constant(m, 1)};
    FuncElem nf = T.neg(T.f(m));
    for (std::uint32_t k = 1; k < p; ++k) pw.push_back(T.mul(pw.back(), nf));
    negf_pow_.push_back(std::move(pw));
  }
}

std::vector<std::vector<Poly>> Cartier::decompose_rec(unsigned L, const Poly* h) const {
  const Field* F = T_->field();
  const std::uint32_t p = F->p();
  const std::size_t size = T_->dim(L);
  std::vector<std::vector<Poly>> parts(p, std::vector<Poly>(size, Poly(F)));
  if (L == 0) {
    const auto& c = h[0].coeffs();
    std::vector<std::vector<Elem>> q(p);
    for (std::size_t e = 0; e < c.size(); ++e) {
      if (!c[e]) continue;
      auto& v = q[e % p];
      if (v.size() <= e / p) v.resize(e / p + 1, 0);
      v[e / p] = F->frobenius_inverse(c[e]);
    }
    for (std::uint32_t j = 0; j < p; ++j) parts[j][0] = Poly(F, std::move(q[j]));
    return parts;
  }
  const std::size_t blk = T_->dim(L - 1);
  std::vector<char> nz(p);
  for (std::uint32_t b = 0; b < p; ++b)
    nz[b] = std::any_of(h + b * blk, h + (b + 1) * blk, [](const Poly& g) { return !g.is_zero(); });
  // y^b = (y^p - f)^b, so h = sum_c (y^c)^p Q_c
  for (std::uint32_t c = 0; c < p; ++c) {
    FuncElem Q = T_->zero(L - 1);
    bool any = false;
    for (std::uint32_t b = c; b < p; ++b) {
      if (!nz[b]) continue;
      std::uint32_t bc = binom_mod(b, c, p);
      if (!bc) continue;
      FuncElem hb{L - 1, std::vector<Poly>(h + b * blk, h + (b + 1) * blk)};
      FuncElem t = b == c ? hb : T_->mul(hb, negf_pow_[L - 1][b - c]);
      Q = T_->add(Q, T_->scale(t, F->from_int(bc)));
      any = true;
    }
    if (!any) continue;
    auto sub = decompose_rec(L - 1, Q.g.data());
    for (std::uint32_t j = 0; j < p; ++j)
      for (std::size_t i = 0; i < blk; ++i) parts[j][c * blk + i] = std::move(sub[j][i]);
  }
  return parts;
}

std::vector<FuncElem> Cartier::pth_power_decompose(const FuncElem& h) const {
  auto parts = decompose_rec(h.level, h.g.data());
  std::vector<FuncElem> out;
  for (auto& g : parts) out.push_back(FuncElem{h.level, std::move(g)});
  return out;
}

Diff Cartier::apply(const Diff& w) const {
  auto parts = decompose_rec(w.body.level, w.body.g.data());
  return Diff{FuncElem{w.body.level, std::move(parts.back())}};
}

RegularBasis Cartier::regular_basis(unsigned n) const {
  RegularBasis B;
  B.level = n;
  const std::int64_t pn = static_cast<std::int64_t>(T_->dim(n));
  for (std::size_t a = 0; a < T_->dim(n); ++a) {
    const std::int64_t xs = T_->xi_scaled(n, a);
    for (std::uint64_t nu = 1; static_cast<std::int64_t>(nu) * pn < xs; ++nu) {
      B.index.emplace(BasisPair{a, nu}, B.pairs.size());
      B.pairs.push_back({a, nu});
    }
  }
  const BigInt g = n == 0 ? BigInt(0) : breaks_and_genus(T_->profile(), n).genus;
  if (BigInt(B.pairs.size()) != g)
    throw MathError("regular basis has " + std::to_string(B.pairs.size()) + " elements, genus is " + g.str());
  return B;
}

Diff Cartier::basis_element(unsigned n, const BasisPair& bp) const {
  const Field* F = T_->field();
  Elem sign = n % 2 ? F->neg(1) : 1;
  return Diff{T_->monomial(n, bp.nu - 1, T_->dim(n) - 1 - bp.a, sign)};
}

std::optional<std::vector<Elem>> diff_coordinates(const Tower& T, const RegularBasis& B, const FuncElem& h) {
  const Field* F = T.field();
  const unsigned n = B.level;
  if (h.level > n) return std::nullopt;
  const std::size_t pn = T.dim(n);
  const Elem sign = n % 2 ? F->neg(1) : 1;
  std::vector<Elem> out(B.size(), 0);
  for (std::size_t b = 0; b < h.g.size(); ++b) {
    const auto& c = h.g[b].coeffs();
    for (std::size_t m = 0; m < c.size(); ++m) {
      if (!c[m]) continue;
      auto it = B.index.find(BasisPair{pn - 1 - b, m + 1});
      if (it == B.index.end()) return std::nullopt;
      out[it->second] = F->mul(c[m], sign);
    }
  }
  return out;
}

SemilinMatrix Cartier::matrix(const RegularBasis& B, unsigned threads) const {
  const unsigned n = B.level;
  const std::size_t g = B.size();
  SemilinMatrix M{Matrix(g, g), 1};
  auto column = [&](std::size_t j) {
    Diff v = apply(basis_element(n, B.pairs[j]));
    auto coords = diff_coordinates(*T_, B, v.body);
    if (!coords) throw MathError("Cartier image of basis element " + std::to_string(j) + " is not regular");
    for (std::size_t i = 0; i < g; ++i) M.A(i, j) = (*coords)[i];
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(g, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mtx;
  auto worker = [&] {
    for (;;) {
      std::size_t j = next++;
      if (j >= g) return;
      try {
        column(j);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mtx);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return M;
}

ANumbers higher_anumbers(const Field& F, const SemilinMatrix& V, unsigned r_max) {
  ANumbers R;
  const std::size_t g = V.dim();
  R.genus = g;
  // image chain: im V^r = A sigma^{-1}(im V^{r-1})
  R.chain.push_back(0);
  Matrix img = Matrix::identity(g);
  std::size_t prev_rank = g;
  while (prev_rank > 0) {
    img = column_basis(F, mat_mul(F, V.A, mat_frobenius(F, img, -V.twist)));
    R.chain.push_back(g - img.cols);
    if (img.cols == prev_rank) break;  // stalled: not nilpotent
    prev_rank = img.cols;
  }
  R.nilpotent = R.chain.back() == g;
  R.nilpotency_index = R.nilpotent ? R.chain.size() - 1 : 0;

  R.a.assign(r_max + 1, 0);
  SemilinMatrix P{Matrix::identity(g), 0};
  for (unsigned r = 1; r <= r_max; ++r) {
    P = P.compose(F, V);
    R.a[r] = g - mat_rank(F, P.A);
    std::size_t from_chain = r < R.chain.size() ? R.chain[r] : R.chain.back();
    if (from_chain != R.a[r]) R.product_agrees = false;
  }

  auto chain_at = [&](std::size_t i) { return i < R.chain.size() ? R.chain[i] : R.chain.back(); };
  R.m_nonnegative = true;
  std::int64_t weighted = 0;
  const std::size_t top = std::max<std::size_t>(R.chain.size() - 1, 1);
  for (std::size_t i = 1; i <= top; ++i) {
    std::int64_t mi = 2 * static_cast<std::int64_t>(chain_at(i)) - static_cast<std::int64_t>(chain_at(i - 1)) -
                      static_cast<std::int64_t>(chain_at(i + 1));
    R.m.push_back(mi);
    if (mi < 0) R.m_nonnegative = false;
    weighted += static_cast<std::int64_t>(i) * mi;
  }
  R.m_sum_ok = R.nilpotent && weighted == static_cast<std::int64_t>(g);
  return R;
}

CartierRun run_cartier(const Tower& T, unsigned n, unsigned r_max, unsigned threads) {
  if (n < 1 || n > T.levels()) throw InputError("level n must be between 1 and the tower's level count");
  Cartier C(T);
  CartierRun run;
  run.basis = C.regular_basis(n);
  run.matrix = C.matrix(run.basis, threads);
  run.anumbers = higher_anumbers(*T.field(), run.matrix, r_max);
  return run;
}

}  // namespace aswtower
