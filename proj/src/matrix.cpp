#include "fncalc/matrix.hpp"

#include <utility>

#include "fncalc/error.hpp"

namespace fncalc {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, Poly(nvars)) {}

PolyMatrix PolyMatrix::identity(std::size_t size, std::size_t nvars) {
  PolyMatrix m(size, size, nvars);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = Poly(nvars, Rational(1));
  return m;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  PolyMatrix s(rows.size(), cols.size(), nvars_);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) s(r, c) = (*this)(rows[r], cols[c]);
  }
  return s;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  PolyMatrix out(a.rows_, b.cols_, a.nvars_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Poly& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

Poly determinant(const PolyMatrix& input) {
  if (input.rows() != input.cols()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  const std::size_t nv = input.nvars();
  if (n == 0) return Poly(nv, Rational(1));
  PolyMatrix m = input;
  Poly prev(nv, Rational(1));
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m(p, k).is_zero()) ++p;
      if (p == n) return Poly(nv);
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        auto q = num.divide_exact(prev);
        if (!q) throw Error("internal: Bareiss step is not an exact division");
        m(i, j) = std::move(*q);
      }
      m(i, k) = Poly(nv);
    }
    prev = m(k, k);
  }
  Poly det = m(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det;
}

InverseResult polynomial_inverse(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  InverseResult result;
  result.det = determinant(m);
  if (result.det.is_zero()) {
    result.status = InverseResult::Status::singular;
    return result;
  }
  if (!result.det.is_constant()) {
    result.status = InverseResult::Status::non_polynomial;
    return result;
  }
  const Rational inv_det = Rational(1) / result.det.constant_term();
  result.inverse = PolyMatrix(n, n, m.nvars());
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t i = 0; i < n; ++i) {
        if (i != c) rows.push_back(i);
        if (i != r) cols.push_back(i);
      }
      Poly cof = determinant(m.submatrix(rows, cols));
      if ((r + c) % 2 == 1) cof = -cof;
      result.inverse(r, c) = cof * inv_det;
    }
  }
  result.status = InverseResult::Status::ok;
  return result;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace fncalc
