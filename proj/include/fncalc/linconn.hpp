#pragma once

#include <cstddef>
#include <utility>

#include "fncalc/check.hpp"
#include "fncalc/lgeometry.hpp"
#include "fncalc/tensor.hpp"

namespace fncalc {

// Linear connection on R^dim given by gamma^k_{ij} = (D_{e_i} e_j)^k:
//   (D_X Y)^k = X^i (d_i Y^k + gamma^k_{ij} Y^j)
class LinearConnection {
 public:
  LinearConnection() = default;
  explicit LinearConnection(Tensor12 gamma) : gamma_(std::move(gamma)) {}
  static LinearConnection flat(std::size_t dim) { return LinearConnection(Tensor12(dim)); }

  std::size_t dim() const noexcept { return gamma_.dim(); }
  const Tensor12& christoffel() const noexcept { return gamma_; }

  VecField derivative(const VecField& x, const VecField& y) const;

  // Covariant differential with the direction in argument 0:
  //   (DA)(W, X1..XR) = (D_W A)(X1..XR)
  //                   = D_W(A(X1..XR)) - sum_s A(.., D_W Xs, ..)
  template <std::size_t R>
  Tensor<R + 1> differential(const Tensor<R>& a) const;

  // (D_W A) as a tensor of the same rank.
  template <std::size_t R>
  Tensor<R> derivative(const VecField& w, const Tensor<R>& a) const {
    return insert<R + 1>(differential<R>(a), 0, w);
  }

  friend bool operator==(const LinearConnection& a, const LinearConnection& b) { return a.gamma_ == b.gamma_; }

 private:
  Tensor12 gamma_;
};

// T(X,Y) = D_X Y - D_Y X - [X,Y]
VecForm2 bold_torsion(const LinearConnection& d);
// R(X,Y)Z = D_X D_Y Z - D_Y D_X Z - D_[X,Y] Z as A^k_{ijl} = (R(e_i,e_j)e_l)^k
Tensor13 bold_curvature(const LinearConnection& d);

// K(X) = D_X C and phi, the inverse of K on the vertical bundle, extended by
// zero on span(e_P). Only the action of phi on vertical fields is meaningful.
struct ConnectionMap {
  VecForm1 k;
  VecForm1 phi;
  // Matrix of K restricted to V in the basis L e_P, and its determinant.
  PolyMatrix vertical_block;
  Poly det;
};

// Throws ValidationError if D is not L-regular and NonPolynomialError if the
// vertical block of K has a non-constant determinant.
ConnectionMap connection_map(const LinearConnection& d, const LStructure& base);
// The same map for a connection read only on vertical fields: instead of
// DL = 0 it requires K to take vertical values.
ConnectionMap vertical_connection_map(const LinearConnection& dbar, const LStructure& base);

// DL = 0, i.e. D_X LY = L D_X Y.
Condition almost_tangent_condition(const LinearConnection& d, const LStructure& base);
// D L-almost-tangent and K invertible on V.
Condition regular_condition(const LinearConnection& d, const LStructure& base);
// D L-almost-tangent and D_{LX} C = LX.
Condition normal_condition(const LinearConnection& d, const LStructure& base);
// D Gamma = 0 for the L-connection induced by D; false if D is not regular.
Condition reducible_condition(const LinearConnection& d, const LStructure& base);

// (D K)(X,Y) = D_X(KY) - K(D_X Y), argument 0 the direction.
Tensor12 covariant_differential(const LinearConnection& d, const VecForm1& k);

// Gamma = I - 2 phi o K.
LConnection induced_connection(const LinearConnection& d, const LStructure& base);

// G = -F and H = 2L + F of the connection's almost-complex structure F.
std::pair<VecForm1, VecForm1> structures_gh(const LConnection& conn);

// The reducible connection D_X Y = F Dbar_X(LY) + Dbar_X(LFY) determined by
// the vertical action of Dbar, with F that of I - 2 phibar o Kbar.
LinearConnection extend_from_vertical(const LinearConnection& dbar, const LStructure& base);

// Dbar changed only on horizontal second arguments (those along e_P), which
// leaves its vertical action and its connection map unchanged.
LinearConnection change_horizontal_completion(const LinearConnection& dbar, const LStructure& base);

}  // namespace fncalc

#include "fncalc/linconn_impl.hpp"
