#pragma once

#include <cstddef>
#include <vector>

#include "fncalc/poly.hpp"

namespace fncalc {

// Dense matrix of polynomials sharing one variable count.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);

  static PolyMatrix identity(std::size_t size, std::size_t nvars);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nvars() const noexcept { return nvars_; }

  Poly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Poly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  PolyMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t nvars_ = 0;
  std::vector<Poly> data_;
};

// Fraction-free (Bareiss) elimination with exact polynomial division.
Poly determinant(const PolyMatrix& m);

struct InverseResult {
  enum class Status { ok, singular, non_polynomial };
  Status status = Status::singular;
  Poly det;
  PolyMatrix inverse;  // meaningful only when status == ok
};

// A polynomial matrix has a polynomial inverse iff its determinant is a
// nonzero constant; the inverse is then adj(m) / det.
InverseResult polynomial_inverse(const PolyMatrix& m);

// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

}  // namespace fncalc
