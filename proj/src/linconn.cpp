#include "fncalc/linconn.hpp"

namespace fncalc {

VecField LinearConnection::derivative(const VecField& x, const VecField& y) const {
  return insert<1>(differential<0>(y), 0, x);
}

VecForm2 bold_torsion(const LinearConnection& d) {
  const Tensor12& g = d.christoffel();
  const std::size_t n = d.dim();
  VecForm2 t(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) t.set(k, i, j, g(k, i, j) - g(k, j, i));
    }
  }
  return t;
}

Tensor13 bold_curvature(const LinearConnection& d) {
  const Tensor12& g = d.christoffel();
  const std::size_t n = d.dim();
  Tensor13 r(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        for (std::size_t l = 0; l < n; ++l) {
          Poly acc = g(k, j, l).diff(i) - g(k, i, l).diff(j);
          for (std::size_t m = 0; m < n; ++m) {
            if (!g(k, i, m).is_zero() && !g(m, j, l).is_zero()) acc += g(k, i, m) * g(m, j, l);
            if (!g(k, j, m).is_zero() && !g(m, i, l).is_zero()) acc -= g(k, j, m) * g(m, i, l);
          }
          r(k, i, j, l) = std::move(acc);
        }
      }
    }
  }
  return r;
}

Tensor12 covariant_differential(const LinearConnection& d, const VecForm1& k) { return d.differential<1>(k); }

namespace {

// Coordinates of the field x in the adapted frame: E^{-1} x.
VecField frame_coords(const LStructure& base, const VecField& x) {
  const std::size_t dim = base.dim();
  VecField out(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    Poly acc(dim);
    for (std::size_t m = 0; m < dim; ++m) {
      const Poly& e = base.frame_inverse()(r, m);
      if (!e.is_zero() && !x(m).is_zero()) acc += e * x(m);
    }
    out(r) = std::move(acc);
  }
  return out;
}

struct VerticalBlock {
  VecForm1 k;
  PolyMatrix m;
  Poly det;
};

VerticalBlock vertical_block(const LinearConnection& d, const LStructure& base) {
  const std::size_t n = base.n();
  VerticalBlock b{d.differential<0>(base.c()), PolyMatrix(n, n, base.dim()), Poly(base.dim())};
  for (std::size_t j = 0; j < n; ++j) {
    const VecField kj = apply(b.k, column(base.l(), base.pivots()[j]));
    const VecField coords = frame_coords(base, kj);
    for (std::size_t i = 0; i < n; ++i) b.m(i, j) = coords(i);
  }
  b.det = determinant(b.m);
  return b;
}

}  // namespace

Condition almost_tangent_condition(const LinearConnection& d, const LStructure& base) {
  return {"D is L-almost-tangent", {residual("DL", covariant_differential(d, base.l()))}};
}

Condition regular_condition(const LinearConnection& d, const LStructure& base) {
  Condition c = almost_tangent_condition(d, base);
  c.label = "D is L-regular";
  const bool invertible = holds_exactly(c) && !vertical_block(d, base).det.is_zero();
  c.residuals.push_back(flag_residual("K invertible on V", invertible, base.dim()));
  return c;
}

Condition normal_condition(const LinearConnection& d, const LStructure& base) {
  Condition c = almost_tangent_condition(d, base);
  c.label = "D is L-normal";
  const VecForm1 k = d.differential<0>(base.c());
  c.residuals.push_back(residual("K o L - L", compose(k, base.l()) - base.l()));
  return c;
}

namespace {

ConnectionMap build_map(const LinearConnection& d, const LStructure& base, bool whole_bundle) {
  if (d.dim() != base.dim()) throw DimensionError("connection map: dimension mismatch");
  const std::size_t n = base.n();
  const std::size_t dim = base.dim();
  if (whole_bundle) {
    const Condition at = almost_tangent_condition(d, base);
    if (!holds_exactly(at)) throw ValidationError("D is L-almost-tangent", at.residuals[0].witness());
  }
  VerticalBlock b = vertical_block(d, base);
  if (!whole_bundle) {
    for (std::size_t j = 0; j < dim; ++j) {
      const VecField coords = frame_coords(base, column(b.k, j));
      for (std::size_t i = n; i < dim; ++i) {
        if (!coords(i).is_zero()) {
          throw ValidationError("K takes vertical values", "horizontal coordinate of K(e_" +
                                                               variable_names(dim)[j] + ") = " +
                                                               coords(i).to_string(variable_names(dim)));
        }
      }
    }
  }
  if (b.det.is_zero()) throw ValidationError("K is invertible on V", "det of K on V is 0");
  InverseResult inv = polynomial_inverse(b.m);
  if (inv.status != InverseResult::Status::ok) {
    throw NonPolynomialError("phi is not polynomial: det of K on V = " + b.det.to_string(variable_names(dim)));
  }
  // phi = [L e_P] M^{-1} (top n rows of E^{-1})
  PolyMatrix basis(dim, n, dim), top(n, dim, dim);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t r = 0; r < dim; ++r) basis(r, j) = base.l()(r, base.pivots()[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < dim; ++c) top(i, c) = base.frame_inverse()(i, c);
  }
  ConnectionMap out;
  out.k = std::move(b.k);
  out.phi = from_matrix(basis * inv.inverse * top);
  out.vertical_block = std::move(b.m);
  out.det = std::move(b.det);
  return out;
}

LConnection induced_from_map(const ConnectionMap& cm, const LStructure& base) {
  return LConnection::make(base, identity_form(base.dim()) - Rational(2) * compose(cm.phi, cm.k));
}

}  // namespace

ConnectionMap connection_map(const LinearConnection& d, const LStructure& base) { return build_map(d, base, true); }

ConnectionMap vertical_connection_map(const LinearConnection& dbar, const LStructure& base) {
  return build_map(dbar, base, false);
}

Condition reducible_condition(const LinearConnection& d, const LStructure& base) {
  if (!holds_exactly(regular_condition(d, base))) {
    return {"D is reducible", {flag_residual("D is L-regular", false, base.dim())}};
  }
  const ConnectionMap cm = connection_map(d, base);
  const VecForm1 gamma = identity_form(base.dim()) - Rational(2) * compose(cm.phi, cm.k);
  return {"D is reducible", {residual("D Gamma", covariant_differential(d, gamma))}};
}

LConnection induced_connection(const LinearConnection& d, const LStructure& base) {
  return induced_from_map(connection_map(d, base), base);
}

std::pair<VecForm1, VecForm1> structures_gh(const LConnection& conn) {
  const VecForm1& f = conn.f();
  return {-f, Rational(2) * conn.base().l() + f};
}

LinearConnection extend_from_vertical(const LinearConnection& dbar, const LStructure& base) {
  const LConnection gbar = induced_from_map(vertical_connection_map(dbar, base), base);
  const VecForm1& f = gbar.f();
  const VecForm1& l = base.l();
  const std::size_t n = base.dim();
  const VecForm1 lf = compose(l, f);
  Tensor12 g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VecField ei = coordinate_field(n, i);
    for (std::size_t j = 0; j < n; ++j) {
      const VecField val =
          apply(f, dbar.derivative(ei, column(l, j))) + dbar.derivative(ei, column(lf, j));
      for (std::size_t k = 0; k < n; ++k) g(k, i, j) = val(k);
    }
  }
  return LinearConnection(std::move(g));
}

LinearConnection change_horizontal_completion(const LinearConnection& dbar, const LStructure& base) {
  const std::size_t n = base.dim();
  Tensor12 g = dbar.christoffel();
  // Row n of E^{-1} is a 1-form vanishing on V.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Poly& a = base.frame_inverse()(base.n(), j);
      if (!a.is_zero()) g(0, i, j) += (Poly(n, Rational(1)) + Poly::variable(n, i)) * a;
    }
  }
  return LinearConnection(std::move(g));
}

}  // namespace fncalc
