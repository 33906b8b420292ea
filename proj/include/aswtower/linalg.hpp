#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "aswtower/field.hpp"

namespace aswtower {

// Dense row-major matrix over F_q.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Elem> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  static Matrix identity(std::size_t n);

  Elem& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool is_zero() const;
  bool operator==(const Matrix& o) const = default;
};

Matrix mat_mul(const Field& F, const Matrix& A, const Matrix& B);
// sigma^k applied entrywise
Matrix mat_frobenius(const Field& F, const Matrix& A, long k);
std::size_t mat_rank(const Field& F, Matrix A);
// basis of the column space, as the columns of the returned matrix
Matrix column_basis(const Field& F, const Matrix& A);

// v -> A * sigma^{-twist}(v) in coordinates
struct SemilinMatrix {
  Matrix A;
  long twist = 1;

  std::size_t dim() const { return A.rows; }
  // (A, e) o (B, f) = (A sigma^{-e}(B), e + f)
  SemilinMatrix compose(const Field& F, const SemilinMatrix& o) const;
  SemilinMatrix power(const Field& F, unsigned r) const;
  std::string serialize(const Field& F) const;
};

}  // namespace aswtower
