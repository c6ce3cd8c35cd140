#pragma once

#include "fncalc/check.hpp"
#include "fncalc/lgeometry.hpp"
#include "fncalc/linconn.hpp"

namespace fncalc {

// An L-connection with a semibasic vector 2-form B such that B° + [C,h] = 0.
struct LiftInput {
  LConnection conn;
  VecForm2 b;
};

// "B is semibasic" and "B° + [C,h] = 0", the potential taken along S0.
std::vector<Condition> lift_input_conditions(const LConnection& conn, const VecForm2& b);
// Throws ValidationError naming the failed condition.
LiftInput make_lift_input(LConnection conn, VecForm2 b);

// D_X Y = h([LY,F]X) + L([vY,F]X) + F B(X,Y) + B(X,FY), where [Z,F] is the
// Lie derivative of F along Z.
LinearConnection reducible_l_lift(const LiftInput& input);
// The reducible lift with B = 0. Throws ValidationError unless [C,Gamma] = 0.
LinearConnection berwald_lift(const LConnection& conn);

// R(X,Y)Z = R(hX,hY)LZ, P(X,Y)Z = R(hX,LY)LZ, Q(X,Y)Z = R(LX,LY)LZ for the
// curvature R of D, as A^k_{ijl} = (A(e_i,e_j)e_l)^k.
struct CurvatureTriple {
  Tensor13 r, p, q;
};
CurvatureTriple curvature_triple(const LinearConnection& d, const LConnection& conn);

// --- defining rules of the reducible lift, as residual 2-tensors A(X,Y) ---

// D_{LX}LY - L[LX,Y]
Tensor12 vertical_rule_residual(const LinearConnection& d, const LConnection& conn);
// D_{hX}LY - v[hX,LY] - B(X,Y)
Tensor12 horizontal_rule_residual(const LinearConnection& d, const LiftInput& input);
// D_X LY - L[vX,Y] - v[hX,LY] - B(X,Y)
Tensor12 combined_rule_residual(const LinearConnection& d, const LiftInput& input);
// T(LX,Y) - B(X,Y) for the torsion T of D.
Tensor12 torsion_on_vertical_residual(const LinearConnection& d, const LiftInput& input);

// --- torsion -----------------------------------------------------------------

// F o T + Omega + i_F B + 2 F o B
VecForm2 lift_torsion_formula(const LiftInput& input);
// [F,F](hX,hY) / 2
Tensor12 h_star_ff(const LConnection& conn);

// Residuals of the horizontal/vertical split of the lift torsion:
//   T(hX,hY) - h*[F,F](X,Y) - 2FB(X,Y),  T(hX,LFY) - B(X,FY),
//   T(LFX,hY) - B(FX,Y),  h*[F,F] - F o T - Omega.
struct TorsionSplit {
  Tensor12 hh, hv, vh, ff;
};
TorsionSplit torsion_split_residuals(const LinearConnection& d, const LiftInput& input);

// --- curvature formulas --------------------------------------------------------

// (D_{LZ}Omega)(X,Y) + (D_{hY}B)(Z,X) - (D_{hX}B)(Z,Y)
//   + B(FB(Z,X),Y) - B(FB(Z,Y),X) + B(FT(X,Y),Z)
Tensor13 curvature_r_formula(const LinearConnection& d, const LiftInput& input);
// (D_{LY}B)(Z,X) + v[hX,L[LY,Z]] + v[LZ,[hX,LY]] - L[LY,F[hX,LZ]] - L[LZ,F[hX,LY]]
Tensor13 curvature_p_formula(const LinearConnection& d, const LiftInput& input);

// S R(X,Y)Z - S{T(T(X,Y),Z) + (D_X T)(Y,Z)}
Tensor13 first_bianchi_residual(const LinearConnection& d);
// S{R(T(X,Y),Z)W + (D_X R)(Y,Z)W}
Tensor14 second_bianchi_residual(const LinearConnection& d);
// S R(X,Y)Z - S (D_X Omega)(Y,Z)
Tensor13 reduced_first_bianchi_residual(const LinearConnection& d, const VecForm2& omega);
// S{R(Omega(X,Y),Z)W + (D_X R)(Y,Z)W}
Tensor14 reduced_second_bianchi_residual(const LinearConnection& d, const VecForm2& omega);

// --- identities of the Berwald lift -------------------------------------------

// D_C LX - L[C,X]
VecForm1 c_parallel_residual(const LinearConnection& d, const LStructure& base);
// [C, D_Y LX] - D_{[C,Y]} LX - D_Y [C,LX], stored as A(X,Y).
Tensor12 c_commutation_residual(const LinearConnection& d, const LStructure& base);
// R(X,Y)Z - (D_{LZ}Omega)(X,Y)
Tensor13 r_from_curvature_residual(const LinearConnection& d, const LConnection& conn, const CurvatureTriple& c);
// R(X,Y)S - Omega(X,Y)
Tensor12 r_on_semispray_residual(const CurvatureTriple& c, const LConnection& conn, const VecField& s);
// D_C Omega - Omega
Tensor12 dc_curvature_residual(const LinearConnection& d, const LConnection& conn);

// S (D_{hX}R)(Y,Z)W - S P(X, F Omega(Y,Z), W)
Tensor14 dr_horizontal_cyclic_residual(const LinearConnection& d, const LConnection& conn, const CurvatureTriple& c);
// (D_{LZ}R)(X,Y)W - (D_{hY}P)(X,Z)W + (D_{hX}P)(Y,Z)W
Tensor14 dr_vertical_residual(const LinearConnection& d, const LConnection& conn, const CurvatureTriple& c);
// (D_{LZ}P)(X,Y)W - (D_{LY}P)(X,Z)W
Tensor14 dp_symmetry_residual(const LinearConnection& d, const LConnection& conn, const CurvatureTriple& c);
// P(X,Y)Z - P(Y,X)Z and P(X,Y)Z - P(Z,X)Y
std::pair<Tensor13, Tensor13> p_symmetry_residuals(const CurvatureTriple& c);
// S (D_{KX}Omega)(Y,Z) for K = h or L.
Tensor13 domega_cyclic(const LinearConnection& d, const LConnection& conn, const VecForm1& k);
// S (D_{LX}R)(Y,Z)W
Tensor14 dr_vertical_cyclic(const LinearConnection& d, const LConnection& conn, const CurvatureTriple& c);

}  // namespace fncalc
