#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fncalc/check.hpp"
#include "fncalc/matrix.hpp"
#include "fncalc/tensor.hpp"

namespace fncalc {

// Standard almost-tangent structure on R^{2n}: d/dx^i -> d/dy^i.
VecForm1 standard_l(std::size_t n);
// Sum of y^i d/dy^i.
VecField standard_c(std::size_t n);

// The defining axioms of an L-structure as conditions, each reported with
// its own label: "rank L = n", "L^2 = 0", "[L,L] = 0", "[C,L] = -L".
std::vector<Condition> diagnose_l_structure(std::size_t n, const VecForm1& l, const VecField& c);

// A validated L-structure together with an adapted frame.
//
// The frame is E = [L e_P | e_P] for a set P of n coordinate directions whose
// L-images are independent; det E is a nonzero constant, so E^{-1} is
// polynomial. The first n coordinates of E^{-1} X are the coefficients of the
// vertical part of X along L e_P.
class LStructure {
 public:
  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return 2 * n_; }
  const VecForm1& l() const noexcept { return l_; }
  const VecField& c() const noexcept { return c_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  const PolyMatrix& frame() const noexcept { return frame_; }
  const PolyMatrix& frame_inverse() const noexcept { return frame_inv_; }

  // S0 = sum c_j e_{p_j} where C = sum c_j L e_{p_j}; L S0 = C.
  const VecField& canonical_semispray() const noexcept { return s0_; }
  // A second semispray, S0 plus a non-constant vertical field.
  VecField perturbed_semispray() const;

  friend LStructure validate_l_structure(std::size_t n, VecForm1 l, VecField c);

 private:
  std::size_t n_ = 0;
  VecForm1 l_;
  VecField c_;
  std::vector<std::size_t> pivots_;
  PolyMatrix frame_;
  PolyMatrix frame_inv_;
  VecField s0_;
};

// Throws ValidationError naming the first failed axiom, or NonPolynomialError
// when no adapted frame with constant determinant exists.
LStructure validate_l_structure(std::size_t n, VecForm1 l, VecField c);

// L o K = 0 and K vanishes on vertical arguments.
Condition semibasic_condition(const std::string& name, const VecForm1& k, const LStructure& base);
Condition semibasic_condition(const std::string& name, const VecForm2& k, const LStructure& base);
bool is_semibasic(const VecForm1& k, const LStructure& base);
bool is_semibasic(const VecForm2& k, const LStructure& base);

// LS - C.
VecField semispray_residual(const VecField& s, const LStructure& base);
// [C,S] - S.
VecField spray_residual(const VecField& s, const LStructure& base);
bool is_semispray(const VecField& s, const LStructure& base);
bool is_spray(const VecField& s, const LStructure& base);

// [C,K] - (r-1) K, zero iff K is homogeneous of degree r.
VecForm1 homogeneity_residual(const VecForm1& k, const VecField& c, int r);
VecForm2 homogeneity_residual(const VecForm2& k, const VecField& c, int r);

// A nonlinear L-connection with its derived tensors, computed once at
// construction:
//   v = (I - G)/2, h = (I + G)/2, F with FL = h and Fh = -L,
//   T = [L,G]/2, Omega = -[h,h]/2, t = T(S0, .) + [C,v].
class LConnection {
 public:
  // The axioms LG = L, GL = -L and G^2 = I as labelled conditions.
  static std::vector<Condition> diagnose(const LStructure& base, const VecForm1& gamma);
  // Throws ValidationError on the first failed axiom.
  static LConnection make(const LStructure& base, VecForm1 gamma);

  const LStructure& base() const noexcept { return base_; }
  const VecForm1& gamma() const noexcept { return gamma_; }
  const VecForm1& v() const noexcept { return v_; }
  const VecForm1& h() const noexcept { return h_; }
  const VecForm1& f() const noexcept { return f_; }
  const VecForm2& torsion() const noexcept { return t2_; }
  const VecForm2& curvature() const noexcept { return omega_; }
  const VecForm1& strong_torsion() const noexcept { return t1_; }

  // [C, Gamma] = 0.
  bool is_homogeneous() const { return homogeneity_residual(gamma_, base_.c(), 1).is_zero(); }

 private:
  LStructure base_;
  VecForm1 gamma_, v_, h_, f_, t1_;
  VecForm2 t2_, omega_;
};

// Gamma = [L,S] for a spray S. Throws ValidationError if S is not a spray.
LConnection conservative(const LStructure& base, const VecField& s);

// T(S, .) + [C,v] for the semispray S.
VecForm1 strong_torsion(const LConnection& conn, const VecField& s);

bool is_strongly_flat(const LConnection& conn);

// h S0 is the only candidate spray with [L,S] = Gamma; returns it when it is a
// spray generating Gamma.
std::optional<VecField> generating_spray(const LConnection& conn);
// Residuals of [C, hS0] = hS0 and [L, hS0] = Gamma.
Condition conservative_condition(const LConnection& conn);

}  // namespace fncalc
