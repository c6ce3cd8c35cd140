#include "fncalc/lifts.hpp"

namespace fncalc {

namespace {

// A(e_i, e_j) = fn(i, j)
template <class Fn>
Tensor12 on_frame2(std::size_t dim, Fn fn) {
  Tensor12 out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const VecField val = fn(i, j);
      for (std::size_t k = 0; k < dim; ++k) out(k, i, j) = val(k);
    }
  }
  return out;
}

// A(e_i, e_j, e_l) = fn(i, j, l)
template <class Fn>
Tensor13 on_frame3(std::size_t dim, Fn fn) {
  Tensor13 out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t l = 0; l < dim; ++l) {
        const VecField val = fn(i, j, l);
        for (std::size_t k = 0; k < dim; ++k) out(k, i, j, l) = val(k);
      }
    }
  }
  return out;
}

VecField b_apply(const VecForm2& b, const VecField& x, const VecField& y) { return apply(b, x, y); }

}  // namespace

std::vector<Condition> lift_input_conditions(const LConnection& conn, const VecForm2& b) {
  const LStructure& base = conn.base();
  std::vector<Condition> out;
  out.push_back(semibasic_condition("B", b, base));
  const VecForm1 pot = potential(b, base.canonical_semispray()) + lie_derivative<1>(base.c(), conn.h());
  out.push_back({"B° + [C,h] = 0", {residual("B° + [C,h]", pot)}});
  return out;
}

LiftInput make_lift_input(LConnection conn, VecForm2 b) {
  if (b.dim() != conn.base().dim()) throw DimensionError("lift input: dimension mismatch");
  for (const auto& cond : lift_input_conditions(conn, b)) {
    for (const auto& r : cond.residuals) {
      if (!r.is_zero()) throw ValidationError(cond.label, r.witness());
    }
  }
  return LiftInput{std::move(conn), std::move(b)};
}

LinearConnection reducible_l_lift(const LiftInput& input) {
  const LConnection& conn = input.conn;
  const VecForm1& l = conn.base().l();
  const VecForm1& h = conn.h();
  const VecForm1& v = conn.v();
  const VecForm1& f = conn.f();
  const std::size_t n = conn.base().dim();
  Tensor12 g(n);
  for (std::size_t j = 0; j < n; ++j) {
    const VecForm1 hlf = compose(h, lie_derivative<1>(column(l, j), f));
    const VecForm1 llf = compose(l, lie_derivative<1>(column(v, j), f));
    const VecField fej = column(f, j);
    for (std::size_t i = 0; i < n; ++i) {
      const VecField ei = coordinate_field(n, i);
      VecField val = column(hlf, i) + column(llf, i);
      if (!input.b.is_zero()) {
        val += apply(f, b_apply(input.b, ei, coordinate_field(n, j))) + b_apply(input.b, ei, fej);
      }
      for (std::size_t k = 0; k < n; ++k) g(k, i, j) = val(k);
    }
  }
  return LinearConnection(std::move(g));
}

LinearConnection berwald_lift(const LConnection& conn) {
  const VecForm1 hr = homogeneity_residual(conn.gamma(), conn.base().c(), 1);
  if (!hr.is_zero()) throw ValidationError("Gamma is homogeneous", first_nonzero("[C,Gamma]", hr));
  return reducible_l_lift(LiftInput{conn, VecForm2(conn.base().dim())});
}

CurvatureTriple curvature_triple(const LinearConnection& d, const LConnection& conn) {
  const Tensor13 rb = bold_curvature(d);
  const VecForm1& h = conn.h();
  const VecForm1& l = conn.base().l();
  auto project = [&](const VecForm1& a, const VecForm1& b) {
    return precompose<3>(precompose<3>(precompose<3>(rb, 0, a), 1, b), 2, l);
  };
  return CurvatureTriple{project(h, h), project(h, l), project(l, l)};
}

Tensor12 vertical_rule_residual(const LinearConnection& d, const LConnection& conn) {
  const VecForm1& l = conn.base().l();
  const std::size_t n = d.dim();
  return on_frame2(n, [&](std::size_t i, std::size_t j) {
    const VecField lx = column(l, i);
    return d.derivative(lx, column(l, j)) - apply(l, lie_bracket(lx, coordinate_field(n, j)));
  });
}

Tensor12 horizontal_rule_residual(const LinearConnection& d, const LiftInput& input) {
  const LConnection& conn = input.conn;
  const VecForm1& l = conn.base().l();
  const std::size_t n = d.dim();
  return on_frame2(n, [&](std::size_t i, std::size_t j) {
    const VecField hx = column(conn.h(), i);
    const VecField ly = column(l, j);
    return d.derivative(hx, ly) - apply(conn.v(), lie_bracket(hx, ly)) -
           b_apply(input.b, coordinate_field(n, i), coordinate_field(n, j));
  });
}

Tensor12 combined_rule_residual(const LinearConnection& d, const LiftInput& input) {
  const LConnection& conn = input.conn;
  const VecForm1& l = conn.base().l();
  const std::size_t n = d.dim();
  return on_frame2(n, [&](std::size_t i, std::size_t j) {
    const VecField ei = coordinate_field(n, i);
    const VecField ej = coordinate_field(n, j);
    return d.derivative(ei, column(l, j)) - apply(l, lie_bracket(column(conn.v(), i), ej)) -
           apply(conn.v(), lie_bracket(column(conn.h(), i), column(l, j))) - b_apply(input.b, ei, ej);
  });
}

Tensor12 torsion_on_vertical_residual(const LinearConnection& d, const LiftInput& input) {
  return precompose<2>(bold_torsion(d).tensor(), 0, input.conn.base().l()) - input.b.tensor();
}

VecForm2 lift_torsion_formula(const LiftInput& input) {
  const LConnection& conn = input.conn;
  const VecForm1& f = conn.f();
  return compose(f, conn.torsion()) + conn.curvature() + interior_product(f, input.b) +
         Rational(2) * compose(f, input.b);
}

Tensor12 h_star_ff(const LConnection& conn) {
  const Tensor12 ff = fn_bracket(conn.f(), conn.f()).tensor();
  return Rational(1, 2) * precompose<2>(precompose<2>(ff, 0, conn.h()), 1, conn.h());
}

TorsionSplit torsion_split_residuals(const LinearConnection& d, const LiftInput& input) {
  const LConnection& conn = input.conn;
  const VecForm1& f = conn.f();
  const VecForm1& h = conn.h();
  const VecForm1 lf = compose(conn.base().l(), f);
  const Tensor12 t = bold_torsion(d).tensor();
  const Tensor12& b = input.b.tensor();
  const Tensor12 hff = h_star_ff(conn);
  TorsionSplit s;
  s.hh = precompose<2>(precompose<2>(t, 0, h), 1, h) - hff - Rational(2) * compose<2>(f, b);
  s.hv = precompose<2>(precompose<2>(t, 0, h), 1, lf) - precompose<2>(b, 1, f);
  s.vh = precompose<2>(precompose<2>(t, 0, lf), 1, h) - precompose<2>(b, 0, f);
  s.ff = hff - compose(f, conn.torsion()).tensor() - conn.curvature().tensor();
  return s;
}

Tensor13 curvature_r_formula(const LinearConnection& d, const LiftInput& input) {
  const LConnection& conn = input.conn;
  const VecForm1& l = conn.base().l();
  const VecForm1& h = conn.h();
  const VecForm1& f = conn.f();
  const Tensor12& b = input.b.tensor();
  const Tensor13 domega = d.differential<2>(conn.curvature().tensor());
  const Tensor13 db = d.differential<2>(b);
  // Each term is brought to argument order (X,Y,Z).
  Tensor13 out = permute<3>(precompose<3>(domega, 0, l), {2, 0, 1});
  const Tensor13 dbh = precompose<3>(db, 0, h);
  out += permute<3>(dbh, {1, 2, 0});
  out -= permute<3>(dbh, {0, 2, 1});
  const Tensor13 bfb = substitute<2>(b, 0, compose<2>(f, b));
  out += permute<3>(bfb, {2, 0, 1});
  out -= permute<3>(bfb, {2, 1, 0});
  out += substitute<2>(b, 0, compose(f, conn.torsion()).tensor());
  return out;
}

Tensor13 curvature_p_formula(const LinearConnection& d, const LiftInput& input) {
  const LConnection& conn = input.conn;
  const VecForm1& l = conn.base().l();
  const VecForm1& h = conn.h();
  const VecForm1& v = conn.v();
  const VecForm1& f = conn.f();
  const std::size_t n = d.dim();
  const Tensor13 dbl = precompose<3>(d.differential<2>(input.b.tensor()), 0, l);
  Tensor13 out = permute<3>(dbl, {1, 2, 0});
  out += on_frame3(n, [&](std::size_t i, std::size_t j, std::size_t k) {
    const VecField hx = column(h, i);
    const VecField ly = column(l, j);
    const VecField lz = column(l, k);
    const VecField z = coordinate_field(n, k);
    return apply(v, lie_bracket(hx, apply(l, lie_bracket(ly, z)))) + apply(v, lie_bracket(lz, lie_bracket(hx, ly))) -
           apply(l, lie_bracket(ly, apply(f, lie_bracket(hx, lz)))) -
           apply(l, lie_bracket(lz, apply(f, lie_bracket(hx, ly))));
  });
  return out;
}

Tensor13 first_bianchi_residual(const LinearConnection& d) {
  const Tensor12 t = bold_torsion(d).tensor();
  return cyclic_sum(bold_curvature(d)) - cyclic_sum(substitute<2>(t, 0, t) + d.differential<2>(t));
}

Tensor14 second_bianchi_residual(const LinearConnection& d) {
  const Tensor13 r = bold_curvature(d);
  return cyclic_sum(substitute<3>(r, 0, bold_torsion(d).tensor()) + d.differential<3>(r));
}

Tensor13 reduced_first_bianchi_residual(const LinearConnection& d, const VecForm2& omega) {
  return cyclic_sum(bold_curvature(d)) - cyclic_sum(d.differential<2>(omega.tensor()));
}

Tensor14 reduced_second_bianchi_residual(const LinearConnection& d, const VecForm2& omega) {
  const Tensor13 r = bold_curvature(d);
  return cyclic_sum(substitute<3>(r, 0, omega.tensor()) + d.differential<3>(r));
}

VecForm1 c_parallel_residual(const LinearConnection& d, const LStructure& base) {
  const std::size_t n = base.dim();
  VecForm1 out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VecField val =
        d.derivative(base.c(), column(base.l(), i)) - apply(base.l(), lie_bracket(base.c(), coordinate_field(n, i)));
    for (std::size_t k = 0; k < n; ++k) out(k, i) = val(k);
  }
  return out;
}

Tensor12 c_commutation_residual(const LinearConnection& d, const LStructure& base) {
  const std::size_t n = base.dim();
  const VecField& c = base.c();
  return on_frame2(n, [&](std::size_t i, std::size_t j) {
    const VecField lx = column(base.l(), i);
    const VecField y = coordinate_field(n, j);
    return lie_bracket(c, d.derivative(y, lx)) - d.derivative(lie_bracket(c, y), lx) -
           d.derivative(y, lie_bracket(c, lx));
  });
}

Tensor13 r_from_curvature_residual(const LinearConnection& d, const LConnection& conn, const CurvatureTriple& c) {
  const Tensor13 dol = precompose<3>(d.differential<2>(conn.curvature().tensor()), 0, conn.base().l());
  return c.r - permute<3>(dol, {2, 0, 1});
}

Tensor12 r_on_semispray_residual(const CurvatureTriple& c, const LConnection& conn, const VecField& s) {
  return insert<3>(c.r, 2, s) - conn.curvature().tensor();
}

Tensor12 dc_curvature_residual(const LinearConnection& d, const LConnection& conn) {
  return d.derivative(conn.base().c(), conn.curvature().tensor()) - conn.curvature().tensor();
}

Tensor14 dr_horizontal_cyclic_residual(const LinearConnection& d, const LConnection& conn, const CurvatureTriple& c) {
  const Tensor14 lhs = precompose<4>(d.differential<3>(c.r), 0, conn.h());
  const Tensor14 rhs = substitute<3>(c.p, 1, compose(conn.f(), conn.curvature()).tensor());
  return cyclic_sum(lhs) - cyclic_sum(rhs);
}

Tensor14 dr_vertical_residual(const LinearConnection& d, const LConnection& conn, const CurvatureTriple& c) {
  const Tensor14 drl = precompose<4>(d.differential<3>(c.r), 0, conn.base().l());
  const Tensor14 dph = precompose<4>(d.differential<3>(c.p), 0, conn.h());
  return permute<4>(drl, {2, 0, 1, 3}) - permute<4>(dph, {1, 0, 2, 3}) + dph;
}

Tensor14 dp_symmetry_residual(const LinearConnection& d, const LConnection& conn, const CurvatureTriple& c) {
  const Tensor14 dpl = precompose<4>(d.differential<3>(c.p), 0, conn.base().l());
  return permute<4>(dpl, {2, 0, 1, 3}) - permute<4>(dpl, {1, 0, 2, 3});
}

std::pair<Tensor13, Tensor13> p_symmetry_residuals(const CurvatureTriple& c) {
  return {c.p - permute<3>(c.p, {1, 0, 2}), c.p - permute<3>(c.p, {2, 0, 1})};
}

Tensor13 domega_cyclic(const LinearConnection& d, const LConnection& conn, const VecForm1& k) {
  return cyclic_sum(precompose<3>(d.differential<2>(conn.curvature().tensor()), 0, k));
}

Tensor14 dr_vertical_cyclic(const LinearConnection& d, const LConnection& conn, const CurvatureTriple& c) {
  return cyclic_sum(precompose<4>(d.differential<3>(c.r), 0, conn.base().l()));
}

}  // namespace fncalc
