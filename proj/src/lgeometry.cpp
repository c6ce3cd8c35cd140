#include "fncalc/lgeometry.hpp"

namespace fncalc {

namespace {

Poly one(std::size_t nv) { return Poly(nv, Rational(1)); }

// First nonzero k-minor of m restricted to the given columns, if any.
std::optional<Poly> nonzero_minor(const PolyMatrix& m, const std::vector<std::size_t>& cols) {
  for (const auto& rows : subsets(m.rows(), cols.size())) {
    Poly d = determinant(m.submatrix(rows, cols));
    if (!d.is_zero()) return d;
  }
  return std::nullopt;
}

Residual rank_residual(std::size_t n, const PolyMatrix& m) {
  const std::size_t dim = 2 * n;
  // Some n x n minor must be nonzero.
  bool has_n_minor = false;
  for (const auto& cols : subsets(dim, n)) {
    if (nonzero_minor(m, cols)) {
      has_n_minor = true;
      break;
    }
  }
  if (!has_n_minor) return flag_residual("rank L >= n", false, dim);
  // Every (n+1) x (n+1) minor must vanish.
  Residual r{"(n+1)-minors of L", dim, 0, std::vector<Poly>(dim, Poly(dim))};
  for (const auto& cols : subsets(dim, n + 1)) {
    if (auto d = nonzero_minor(m, cols)) {
      r.entries[0] = *d;
      return r;
    }
  }
  return r;
}

}  // namespace

VecForm1 standard_l(std::size_t n) {
  VecForm1 l(2 * n);
  for (std::size_t i = 0; i < n; ++i) l(n + i, i) = one(2 * n);
  return l;
}

VecField standard_c(std::size_t n) {
  VecField c(2 * n);
  for (std::size_t i = 0; i < n; ++i) c(n + i) = Poly::variable(2 * n, n + i);
  return c;
}

std::vector<Condition> diagnose_l_structure(std::size_t n, const VecForm1& l, const VecField& c) {
  if (n == 0) throw DimensionError("L-structure needs n >= 1");
  if (l.dim() != 2 * n || c.dim() != 2 * n) throw DimensionError("L-structure: dimension must be 2n");
  std::vector<Condition> out;
  out.push_back({"rank L = n", {rank_residual(n, to_matrix(l))}});
  out.push_back({"L^2 = 0", {residual("L o L", compose(l, l))}});
  out.push_back({"[L,L] = 0", {residual("[L,L]", fn_bracket(l, l))}});
  out.push_back({"[C,L] = -L", {residual("[C,L] + L", lie_derivative<1>(c, l) + l)}});
  return out;
}

LStructure validate_l_structure(std::size_t n, VecForm1 l, VecField c) {
  for (const auto& cond : diagnose_l_structure(n, l, c)) {
    for (const auto& r : cond.residuals) {
      if (!r.is_zero()) throw ValidationError(cond.label, r.witness());
    }
  }
  const std::size_t dim = 2 * n;
  const PolyMatrix lm = to_matrix(l);
  LStructure s;
  s.n_ = n;
  for (const auto& cols : subsets(dim, n)) {
    if (!nonzero_minor(lm, cols)) continue;
    PolyMatrix e(dim, dim, dim);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0; r < dim; ++r) e(r, j) = lm(r, cols[j]);
      e(cols[j], n + j) = one(dim);
    }
    InverseResult inv = polynomial_inverse(e);
    if (inv.status != InverseResult::Status::ok) continue;
    s.pivots_ = cols;
    s.frame_ = std::move(e);
    s.frame_inv_ = std::move(inv.inverse);
    break;
  }
  if (s.pivots_.empty()) {
    throw NonPolynomialError("L is not in adapted coordinates: no frame [L e_P | e_P] has constant determinant");
  }
  // C must be vertical: its coordinates along e_P vanish.
  VecField coords(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    Poly acc(dim);
    for (std::size_t m = 0; m < dim; ++m) {
      if (!s.frame_inv_(r, m).is_zero() && !c(m).is_zero()) acc += s.frame_inv_(r, m) * c(m);
    }
    coords(r) = std::move(acc);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!coords(n + j).is_zero()) {
      throw ValidationError("C is vertical", "component of C along e_" + variable_names(dim)[s.pivots_[j]] +
                                                 " = " + coords(n + j).to_string(variable_names(dim)));
    }
  }
  s.s0_ = VecField(dim);
  for (std::size_t j = 0; j < n; ++j) s.s0_(s.pivots_[j]) = coords(j);
  s.l_ = std::move(l);
  s.c_ = std::move(c);
  return s;
}

VecField LStructure::perturbed_semispray() const {
  const std::size_t p = pivots_.front();
  const Poly f = one(dim()) + Poly::variable(dim(), p);
  return s0_ + f * column(l_, p);
}

Condition semibasic_condition(const std::string& name, const VecForm1& k, const LStructure& base) {
  return {name + " is semibasic",
          {residual("L o " + name, compose(base.l(), k)), residual(name + " o L", compose(k, base.l()))}};
}

Condition semibasic_condition(const std::string& name, const VecForm2& k, const LStructure& base) {
  // Antisymmetry makes the first slot enough for vertical arguments.
  return {name + " is semibasic",
          {residual("L o " + name, compose(base.l(), k)),
           residual(name + "(L., .)", precompose<2>(k.tensor(), 0, base.l()))}};
}

bool is_semibasic(const VecForm1& k, const LStructure& base) {
  return holds_exactly(semibasic_condition("K", k, base));
}

bool is_semibasic(const VecForm2& k, const LStructure& base) {
  return holds_exactly(semibasic_condition("K", k, base));
}

VecField semispray_residual(const VecField& s, const LStructure& base) { return apply(base.l(), s) - base.c(); }

VecField spray_residual(const VecField& s, const LStructure& base) { return lie_bracket(base.c(), s) - s; }

bool is_semispray(const VecField& s, const LStructure& base) { return semispray_residual(s, base).is_zero(); }

bool is_spray(const VecField& s, const LStructure& base) {
  return is_semispray(s, base) && spray_residual(s, base).is_zero();
}

VecForm1 homogeneity_residual(const VecForm1& k, const VecField& c, int r) {
  return lie_derivative<1>(c, k) - Rational(r - 1) * k;
}

VecForm2 homogeneity_residual(const VecForm2& k, const VecField& c, int r) {
  return lie_derivative(c, k) - Rational(r - 1) * k;
}

std::vector<Condition> LConnection::diagnose(const LStructure& base, const VecForm1& gamma) {
  if (gamma.dim() != base.dim()) throw DimensionError("L-connection: dimension mismatch");
  const VecForm1& l = base.l();
  std::vector<Condition> out;
  out.push_back({"L Gamma = L", {residual("L o Gamma - L", compose(l, gamma) - l)}});
  out.push_back({"Gamma L = -L", {residual("Gamma o L + L", compose(gamma, l) + l)}});
  out.push_back({"Gamma^2 = I", {residual("Gamma o Gamma - I", compose(gamma, gamma) - identity_form(base.dim()))}});
  return out;
}

LConnection LConnection::make(const LStructure& base, VecForm1 gamma) {
  for (const auto& cond : diagnose(base, gamma)) {
    for (const auto& r : cond.residuals) {
      if (!r.is_zero()) throw ValidationError(cond.label, r.witness());
    }
  }
  const std::size_t n = base.n();
  const std::size_t dim = base.dim();
  const Rational half(1, 2);
  const VecForm1 id = identity_form(dim);
  LConnection c;
  c.base_ = base;
  c.gamma_ = std::move(gamma);
  c.v_ = half * (id - c.gamma_);
  c.h_ = half * (id + c.gamma_);

  // F [L e_P | h e_P] = [h e_P | -L e_P]
  PolyMatrix a(dim, dim, dim), b(dim, dim, dim);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t p = base.pivots()[j];
    for (std::size_t r = 0; r < dim; ++r) {
      a(r, j) = base.l()(r, p);
      a(r, n + j) = c.h_(r, p);
      b(r, j) = c.h_(r, p);
      b(r, n + j) = -base.l()(r, p);
    }
  }
  InverseResult inv = polynomial_inverse(a);
  if (inv.status != InverseResult::Status::ok) {
    throw NonPolynomialError("almost-complex structure F: frame [L e_P | h e_P] has non-constant determinant");
  }
  c.f_ = from_matrix(b * inv.inverse);

  c.t2_ = half * fn_bracket(base.l(), c.gamma_);
  c.omega_ = Rational(-1, 2) * fn_bracket(c.h_, c.h_);
  c.t1_ = fncalc::strong_torsion(c, base.canonical_semispray());
  return c;
}

LConnection conservative(const LStructure& base, const VecField& s) {
  if (!is_semispray(s, base)) {
    throw ValidationError("S is a semispray", first_nonzero("LS - C", semispray_residual(s, base)));
  }
  if (!is_spray(s, base)) {
    throw ValidationError("S is a spray", first_nonzero("[C,S] - S", spray_residual(s, base)));
  }
  LConnection conn = LConnection::make(base, fn_bracket(base.l(), s));
  if (!conn.is_homogeneous()) {
    throw Error("conservative connection is not homogeneous: " +
                first_nonzero("[C,Gamma]", homogeneity_residual(conn.gamma(), base.c(), 1)));
  }
  if (!conn.torsion().is_zero()) {
    throw Error("conservative connection has torsion: " + first_nonzero("T", conn.torsion().tensor()));
  }
  return conn;
}

VecForm1 strong_torsion(const LConnection& conn, const VecField& s) {
  return potential(conn.torsion(), s) + lie_derivative<1>(conn.base().c(), conn.v());
}

bool is_strongly_flat(const LConnection& conn) {
  return conn.curvature().is_zero() && conn.strong_torsion().is_zero();
}

namespace {

VecField horizontal_spray(const LConnection& conn) {
  return apply(conn.h(), conn.base().canonical_semispray());
}

}  // namespace

Condition conservative_condition(const LConnection& conn) {
  const VecField s = horizontal_spray(conn);
  return {"Gamma = [L,S] for the spray S = h S0",
          {residual("[C,S] - S", spray_residual(s, conn.base())),
           residual("[L,S] - Gamma", fn_bracket(conn.base().l(), s) - conn.gamma())}};
}

std::optional<VecField> generating_spray(const LConnection& conn) {
  if (!holds_exactly(conservative_condition(conn))) return std::nullopt;
  return horizontal_spray(conn);
}

}  // namespace fncalc
