#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fncalc/error.hpp"
#include "fncalc/matrix.hpp"
#include "fncalc/poly.hpp"

namespace fncalc {

// Vector-valued tensor with `Rank` vector arguments on R^dim, stored as the
// full coefficient array A^k_{i1..iRank} in the coordinate frame. Every
// coefficient is a polynomial in dim variables.
//
//   A(X1, .., XR)^k = A^k_{i1..iR} X1^i1 .. XR^iR
//
// Rank 0 is a vector field, rank 1 a vector 1-form (endomorphism K^k_j).
template <std::size_t Rank>
class Tensor {
 public:
  static constexpr std::size_t rank = Rank;
  using Index = std::array<std::size_t, Rank + 1>;

  Tensor() = default;
  explicit Tensor(std::size_t dim) : dim_(dim), data_(count(dim), Poly(dim)) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return data_.size(); }

  template <class... I>
  Poly& operator()(std::size_t k, I... idx) {
    static_assert(sizeof...(I) == Rank, "wrong number of tensor indices");
    return data_[offset(Index{k, static_cast<std::size_t>(idx)...})];
  }
  template <class... I>
  const Poly& operator()(std::size_t k, I... idx) const {
    static_assert(sizeof...(I) == Rank, "wrong number of tensor indices");
    return data_[offset(Index{k, static_cast<std::size_t>(idx)...})];
  }

  Poly& at(const Index& idx) { return data_[offset(idx)]; }
  const Poly& at(const Index& idx) const { return data_[offset(idx)]; }

  std::span<Poly> data() noexcept { return data_; }
  std::span<const Poly> data() const noexcept { return data_; }

  // Multi-index of a flat position; index 0 is the value component.
  Index unflatten(std::size_t flat) const {
    Index idx{};
    for (std::size_t s = Rank + 1; s-- > 0;) {
      idx[s] = flat % dim_;
      flat /= dim_;
    }
    return idx;
  }

  bool is_zero() const {
    for (const auto& p : data_) {
      if (!p.is_zero()) return false;
    }
    return true;
  }

  Tensor& operator+=(const Tensor& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (!o.data_[i].is_zero()) data_[i] += o.data_[i];
    }
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (!o.data_[i].is_zero()) data_[i] -= o.data_[i];
    }
    return *this;
  }
  Tensor& operator*=(const Rational& c) {
    for (auto& p : data_) p *= c;
    return *this;
  }
  // Pointwise multiplication by a scalar function.
  Tensor& operator*=(const Poly& f) {
    for (auto& p : data_) {
      if (!p.is_zero()) p *= f;
    }
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, const Rational& c) { return a *= c; }
  friend Tensor operator*(const Rational& c, Tensor a) { return a *= c; }
  friend Tensor operator*(const Poly& f, Tensor a) { return a *= f; }
  Tensor operator-() const {
    Tensor r = *this;
    for (auto& p : r.data_) p = -p;
    return r;
  }
  friend bool operator==(const Tensor& a, const Tensor& b) { return a.dim_ == b.dim_ && a.data_ == b.data_; }

 private:
  static std::size_t count(std::size_t dim) {
    std::size_t c = 1;
    for (std::size_t i = 0; i <= Rank; ++i) c *= dim;
    return c;
  }
  std::size_t offset(const Index& idx) const {
    std::size_t off = 0;
    for (std::size_t s = 0; s <= Rank; ++s) off = off * dim_ + idx[s];
    return off;
  }
  void check(const Tensor& o) const {
    if (o.dim_ != dim_) throw DimensionError("tensor dimension mismatch");
  }

  std::size_t dim_ = 0;
  std::vector<Poly> data_;
};

using VecField = Tensor<0>;
using VecForm1 = Tensor<1>;
using Tensor12 = Tensor<2>;
using Tensor13 = Tensor<3>;
using Tensor14 = Tensor<4>;

// Vector 2-form: a rank-2 tensor antisymmetric in its two arguments.
class VecForm2 {
 public:
  VecForm2() = default;
  explicit VecForm2(std::size_t dim) : t_(dim) {}

  // Throws ValidationError if `t` is not antisymmetric.
  static VecForm2 from_tensor(Tensor12 t);

  std::size_t dim() const noexcept { return t_.dim(); }
  const Tensor12& tensor() const noexcept { return t_; }
  const Poly& operator()(std::size_t k, std::size_t i, std::size_t j) const { return t_(k, i, j); }
  // Writes K^k_{ij} and K^k_{ji} = -K^k_{ij}.
  void set(std::size_t k, std::size_t i, std::size_t j, const Poly& value);

  bool is_zero() const { return t_.is_zero(); }

  VecForm2& operator+=(const VecForm2& o) {
    t_ += o.t_;
    return *this;
  }
  VecForm2& operator-=(const VecForm2& o) {
    t_ -= o.t_;
    return *this;
  }
  VecForm2& operator*=(const Rational& c) {
    t_ *= c;
    return *this;
  }
  friend VecForm2 operator+(VecForm2 a, const VecForm2& b) { return a += b; }
  friend VecForm2 operator-(VecForm2 a, const VecForm2& b) { return a -= b; }
  friend VecForm2 operator*(const Rational& c, VecForm2 a) { return a *= c; }
  VecForm2 operator-() const {
    VecForm2 r;
    r.t_ = -t_;
    return r;
  }
  friend bool operator==(const VecForm2& a, const VecForm2& b) { return a.t_ == b.t_; }

 private:
  Tensor12 t_;
};

// --- construction -----------------------------------------------------------

VecField coordinate_field(std::size_t dim, std::size_t i);
VecForm1 identity_form(std::size_t dim);
VecForm1 from_matrix(const PolyMatrix& m);
PolyMatrix to_matrix(const VecForm1& k);
// Column j of K, i.e. the field K(e_j).
VecField column(const VecForm1& k, std::size_t j);

// --- algebra ----------------------------------------------------------------

// [X,Y]^k = X^i d_i Y^k - Y^i d_i X^k
VecField lie_bracket(const VecField& x, const VecField& y);

VecField apply(const VecForm1& k, const VecField& x);
VecField apply(const VecForm2& k, const VecField& x, const VecField& y);
VecField apply(const Tensor13& a, const VecField& x, const VecField& y, const VecField& z);

// (A o B)(X..) = A(B(X..))
template <std::size_t R>
Tensor<R> compose(const VecForm1& a, const Tensor<R>& b);
VecForm1 compose(const VecForm1& a, const VecForm1& b);
VecForm2 compose(const VecForm1& a, const VecForm2& b);

// A with argument `slot` replaced by K(argument).
template <std::size_t R>
Tensor<R> precompose(const Tensor<R>& a, std::size_t slot, const VecForm1& k);

// A with argument `slot` fixed to X; the remaining arguments keep their order.
template <std::size_t R>
Tensor<R - 1> insert(const Tensor<R>& a, std::size_t slot, const VecField& x);

// A with argument `slot` replaced by B(U,V); U and V take its place in the
// argument list: result(.., U, V, ..) = A(.., B(U,V), ..).
template <std::size_t R>
Tensor<R + 1> substitute(const Tensor<R>& a, std::size_t slot, const Tensor12& b);

// result(X_0..X_{R-1}) = A(X_perm[0], .., X_perm[R-1])
template <std::size_t R>
Tensor<R> permute(const Tensor<R>& a, const std::array<std::size_t, R>& perm);

// Lie derivative along Z:
//   ([Z,A])(X1..XR) = [Z, A(X1..XR)] - sum_s A(.., [Z,Xs], ..)
template <std::size_t R>
Tensor<R> lie_derivative(const VecField& z, const Tensor<R>& a);
VecForm2 lie_derivative(const VecField& z, const VecForm2& a);

// Frolicher-Nijenhuis bracket of two vector 1-forms:
//   [K,L](X,Y) = [KX,LY] + [LX,KY] + KL[X,Y] + LK[X,Y]
//              - K[LX,Y] - K[X,LY] - L[KX,Y] - L[X,KY]
VecForm2 fn_bracket(const VecForm1& k, const VecForm1& l);

// [K,S](X) = [KX,S] - K[X,S], i.e. -lie_derivative(S, K).
VecForm1 fn_bracket(const VecForm1& k, const VecField& s);

// (i_K B)(X,Y) = B(KX,Y) + B(X,KY)
VecForm2 interior_product(const VecForm1& k, const VecForm2& b);

// K°(X) = K(S,X) for a 2-form, K° = K(S) for a 1-form.
VecForm1 potential(const VecForm2& k, const VecField& s);
VecField potential(const VecForm1& k, const VecField& s);

// (SA)(X,Y,Z) = A(X,Y,Z) + A(Y,Z,X) + A(Z,X,Y)
Tensor13 cyclic_sum(const Tensor13& a);
// Cyclic sum over the first three arguments, the fourth held fixed.
Tensor14 cyclic_sum(const Tensor14& a);

// --- diagnostics -------------------------------------------------------------

// "A(e_x1, e_y2)[y1] = 2*x1" style label of the first nonzero coefficient,
// or empty when the tensor vanishes.
template <std::size_t R>
std::string first_nonzero(const std::string& name, const Tensor<R>& a);
inline std::string first_nonzero(const std::string& name, const VecForm2& a) { return first_nonzero(name, a.tensor()); }

}  // namespace fncalc

#include "fncalc/tensor_impl.hpp"
