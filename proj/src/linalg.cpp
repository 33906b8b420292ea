#include "aswtower/linalg.hpp"

#include <sstream>

namespace aswtower {

Matrix Matrix::identity(std::size_t n) {
  Matrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

bool Matrix::is_zero() const {
  for (auto v : a)
    if (v) return false;
  return true;
}

Matrix mat_mul(const Field& F, const Matrix& A, const Matrix& B) {
  if (A.cols != B.rows) throw MathError("matrix shape mismatch");
  Matrix C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      Elem x = A(i, k);
      if (!x) continue;
      const Elem* brow = &B.a[k * B.cols];
      Elem* crow = &C.a[i * C.cols];
      for (std::size_t j = 0; j < B.cols; ++j)
        if (brow[j]) crow[j] = F.add(crow[j], F.mul(x, brow[j]));
    }
  return C;
}

Matrix mat_frobenius(const Field& F, const Matrix& A, long k) {
  if (F.nu() == 1 || k == 0) return A;
  Matrix B = A;
  for (auto& v : B.a) v = F.frobenius_power(v, k);
  return B;
}

namespace {

// row echelon form in place; returns pivot columns
std::vector<std::size_t> echelon(const Field& F, Matrix& A) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols && r < A.rows; ++c) {
    std::size_t piv = r;
    while (piv < A.rows && A(piv, c) == 0) ++piv;
    if (piv == A.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < A.cols; ++j) std::swap(A(piv, j), A(r, j));
    Elem inv = F.inv(A(r, c));
    for (std::size_t j = c; j < A.cols; ++j) A(r, j) = F.mul(A(r, j), inv);
    for (std::size_t i = r + 1; i < A.rows; ++i) {
      Elem f = A(i, c);
      if (!f) continue;
      Elem nf = F.neg(f);
      for (std::size_t j = c; j < A.cols; ++j)
        if (A(r, j)) A(i, j) = F.add(A(i, j), F.mul(nf, A(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Matrix transpose(const Matrix& A) {
  Matrix T(A.cols, A.rows);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

}  // namespace

std::size_t mat_rank(const Field& F, Matrix A) { return echelon(F, A).size(); }

Matrix column_basis(const Field& F, const Matrix& A) {
  Matrix T = transpose(A);
  std::size_t rk = echelon(F, T).size();
  Matrix B(A.rows, rk);
  for (std::size_t j = 0; j < rk; ++j)
    for (std::size_t i = 0; i < A.rows; ++i) B(i, j) = T(j, i);
  return B;
}

SemilinMatrix SemilinMatrix::compose(const Field& F, const SemilinMatrix& o) const {
  return {mat_mul(F, A, mat_frobenius(F, o.A, -twist)), twist + o.twist};
}

SemilinMatrix SemilinMatrix::power(const Field& F, unsigned r) const {
  SemilinMatrix acc{Matrix::identity(dim()), 0};
  for (unsigned i = 0; i < r; ++i) acc = acc.compose(F, *this);
  return acc;
}

std::string SemilinMatrix::serialize(const Field& F) const {
  std::ostringstream os;
  os << A.rows << 'x' << A.cols << " twist " << twist << '\n';
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) os << (j ? " " : "") << F.to_string(A(i, j));
    os << '\n';
  }
  return os.str();
}

}  // namespace aswtower
