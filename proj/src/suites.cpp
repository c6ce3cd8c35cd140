#include <algorithm>
#include <functional>
#include <map>

#include "fncalc/harness.hpp"
#include "fncalc/lifts.hpp"

namespace fncalc {

namespace {

using K = CheckKind;

const std::vector<CatalogEntry> kCatalog = {
    // structure: the L-structure and the L-connection of the model
    {"structure", "structure.l_rank", "rank L = n", K::identity},
    {"structure", "structure.l_square", "L o L = 0", K::identity},
    {"structure", "structure.l_integrable", "[L,L] = 0", K::identity},
    {"structure", "structure.c_homogeneity", "[C,L] = -L", K::identity},
    {"structure", "structure.canonical_semispray", "L S0 = C for the canonical semispray S0", K::identity},
    {"structure", "structure.model_spray", "L S = C and [C,S] = S for the model spray S", K::identity},
    {"structure", "structure.connection_axioms", "L Gamma = L, Gamma L = -L, Gamma^2 = I", K::identity},
    {"structure", "structure.projectors", "v + h = I, v^2 = v, h^2 = h, vh = hv = 0", K::identity},
    {"structure", "structure.projectors_l", "Lv = 0, vL = L, Lh = L, hL = 0", K::identity},
    {"structure", "structure.almost_complex", "F^2 = -I, FL = h, Fh = -L, LF = v", K::identity},
    {"structure", "structure.torsion_semibasic", "T = [L,Gamma]/2 is semibasic", K::identity},
    {"structure", "structure.curvature_semibasic", "Omega = -[h,h]/2 is semibasic", K::identity},
    {"structure", "structure.strong_torsion_semibasic", "t = T(S,.) + [C,v] is semibasic", K::identity},
    {"structure", "structure.strong_torsion_independent", "t = T(S,.) + [C,v] is the same for two semisprays S", K::identity},
    {"structure", "structure.curvature_potential_independent", "Omega(S,.) is the same for two semisprays S", K::identity},
    {"structure", "structure.strong_torsion_criterion", "t = 0 iff ([C,Gamma] = 0 and T = 0)", K::agreement},
    {"structure", "structure.homogeneous_curvature", "[C,Gamma] = 0 implies [C,T] = 0 and [C,Omega] = 0", K::identity},
    {"structure", "structure.conservative_torsion", "Gamma = [L,S] for a spray S implies [C,Gamma] = 0 and T = 0",
     K::identity},

    // connection: the linear connection D of the model (given, or a lift of Gamma)
    {"connection", "connection.almost_tangent", "DL = 0", K::identity},
    {"connection", "connection.regular", "DL = 0 and K: X -> D_X C is invertible on V", K::identity},
    {"connection", "connection.normal", "DL = 0 and D_{LX} C = LX", K::identity},
    {"connection", "connection.reducible", "D Gamma = 0 for the induced Gamma", K::identity},
    {"connection", "connection.phi_inverse", "phi K = K phi = I on V", K::identity},
    {"connection", "connection.torsion_vertical_pair", "DL = 0 implies T(LX,LY) = L T(LX,Y) + L T(X,LY)",
     K::identity},
    {"connection", "connection.curvature_l", "DL = 0 implies R(X,Y)LZ = L R(X,Y)Z", K::identity},
    {"connection", "connection.normal_torsion",
     "given DL = 0 and D_C LX = L[C,X]: D_{LX} C = LX iff T(C,LX) = 0", K::agreement},
    {"connection", "connection.reducibility_equivalence", "D Gamma = 0 iff DF = 0 iff Dv = Dh = 0", K::agreement},
    {"connection", "connection.parallel_f", "DF = 0 implies D Gamma = 0", K::identity},
    {"connection", "connection.extension_vertical", "extension E of D: E_X LY = D_X LY", K::identity},
    {"connection", "connection.extension_connection_map", "extension E of D: E_X C = D_X C", K::identity},
    {"connection", "connection.extension_reducible", "extension E of D is reducible", K::identity},
    {"connection", "connection.extension_projection", "extension E of D induces I - 2 phi o K of D", K::identity},
    {"connection", "connection.extension_f_parallel", "extension E of D: EF = 0", K::identity},
    {"connection", "connection.extension_reproduces", "D reducible implies D equals its extension", K::identity},
    {"connection", "connection.extension_completion",
     "the extension of D does not depend on D along horizontal second arguments", K::identity},

    // induced: the L-connection induced by D and its structures G, H
    {"induced", "induced.projectors_from_map", "v = phi o K, h = I - phi o K", K::identity},
    {"induced", "induced.k_on_projectors", "K(vX) = K(X), K(hX) = 0", K::identity},
    {"induced", "induced.gamma_h_minus_v", "Gamma = h - v", K::identity},
    {"induced", "induced.gamma_projector_products", "Gamma h = h Gamma = h, Gamma v = v Gamma = -v", K::identity},
    {"induced", "induced.g_frame", "G(LX) = -hX, G(hX) = LX", K::identity},
    {"induced", "induced.h_frame", "H(LX) = hX, H(hX) = LX", K::identity},
    {"induced", "induced.g_identities", "GL = -h, Gh = L, LG = -v, Gv = hG = G - L, vG = G - Gv = L, GL + LG = -I, Gh + hG = G",
     K::identity},
    {"induced", "induced.h_identities",
     "HL = h, Hh = L, LH = v, Hv = hH = H - L = -hG, vH = H - Hv = L, HL + LH = I, Hh + hH = H, GH = -HG, G + H = 2L",
     K::identity},
    {"induced", "induced.quaternionic", "G^2 = -H^2 = -I, GH + HG = 0", K::identity},
    {"induced", "induced.gamma_from_gh", "Gamma = HG, (HG)^2 = I, L(HG) = L, (HG)L = -L", K::identity},
    {"induced", "induced.homogeneity", "[C,Gamma] = 0 iff [C,K] = 0", K::agreement},
    {"induced", "induced.vertical_projector_bracket", "[C,v] = phi o [C,K] o h", K::identity},

    // lift: the reducible L-lift of Gamma with the model's B (default 0)
    {"lift", "lift.b_admissible", "B is semibasic and B(S,.) + [C,h] = 0", K::identity},
    {"lift", "lift.normal", "the lift is L-normal", K::identity},
    {"lift", "lift.reducible", "the lift is reducible", K::identity},
    {"lift", "lift.projection", "the lift induces Gamma", K::identity},
    {"lift", "lift.torsion_on_vertical", "T(LX,Y) = B(X,Y)", K::identity},
    {"lift", "lift.vertical_rule", "D_{LX} LY = L[LX,Y]", K::identity},
    {"lift", "lift.horizontal_rule", "D_{hX} LY = v[hX,LY] + B(X,Y)", K::identity},
    {"lift", "lift.combined_rule", "D_X LY = L[vX,Y] + v[hX,LY] + B(X,Y)", K::identity},
    {"lift", "lift.torsion_formula", "T = F o T + Omega + i_F B + 2 F o B", K::identity},
    {"lift", "lift.torsion_split",
     "T(hX,hY) = h*[F,F](X,Y) + 2FB(X,Y), T(hX,LFY) = B(X,FY), T(LFX,hY) = B(FX,Y), h*[F,F] = F o T + Omega",
     K::identity},
    {"lift", "lift.symmetric_lift_criterion",
     "Gamma strongly flat iff some reducible lift is symmetric ([C,h] = 0 and F o T + Omega = 0)", K::agreement},
    {"lift", "lift.symmetric_lift", "Gamma strongly flat implies its Berwald lift has T = 0", K::identity},
    {"lift", "lift.q_vanishes", "Q(X,Y)Z = R(LX,LY)LZ = 0", K::identity},
    {"lift", "lift.r_formula",
     "R(X,Y)Z = (D_{LZ}Omega)(X,Y) + (D_{hY}B)(Z,X) - (D_{hX}B)(Z,Y) + B(FB(Z,X),Y) - B(FB(Z,Y),X) + B(FT(X,Y),Z)",
     K::formula},
    {"lift", "lift.p_formula",
     "P(X,Y)Z = (D_{LY}B)(Z,X) + v[hX,L[LY,Z]] + v[LZ,[hX,LY]] - L[LY,F[hX,LZ]] - L[LZ,F[hX,LY]]", K::formula},
    {"lift", "lift.first_bianchi", "S R(X,Y)Z = S{T(T(X,Y),Z) + (D_X T)(Y,Z)}", K::identity},
    {"lift", "lift.second_bianchi", "S{R(T(X,Y),Z)W + (D_X R)(Y,Z)W} = 0", K::identity},
    {"lift", "lift.vertical_values", "L o Omega = 0, L o R = 0, L o P = 0, L o Q = 0", K::identity},
    {"lift", "lift.r_antisymmetric", "R(X,Y)Z = -R(Y,X)Z", K::identity},

    // berwald: the Berwald lift of a homogeneous Gamma
    {"berwald", "berwald.round_trip", "the Berwald lift induces Gamma", K::identity},
    {"berwald", "berwald.torsion_on_vertical", "T(LX,Y) = 0", K::identity},
    {"berwald", "berwald.c_parallel", "D_C LX = L[C,X]", K::identity},
    {"berwald", "berwald.c_commutation", "[C, D_Y LX] - D_{[C,Y]} LX = D_Y [C,LX]", K::formula},
    {"berwald", "berwald.torsion", "T = F o T + Omega", K::identity},
    {"berwald", "berwald.torsion_conservative", "Gamma conservative implies T = Omega", K::identity},
    {"berwald", "berwald.torsion_semibasic", "Gamma conservative implies T is semibasic", K::identity},
    {"berwald", "berwald.r_formula", "R(X,Y)Z = (D_{LZ}Omega)(X,Y)", K::identity},
    {"berwald", "berwald.r_on_semispray", "R(X,Y)S = Omega(X,Y) for two semisprays S", K::identity},
    {"berwald", "berwald.dc_curvature", "D_C Omega = Omega", K::identity},
    {"berwald", "berwald.r_omega_agreement", "R = 0 iff Omega = 0", K::agreement},
    {"berwald", "berwald.first_bianchi_reduced", "Gamma conservative implies S R(X,Y)Z = S (D_X Omega)(Y,Z)",
     K::identity},
    {"berwald", "berwald.second_bianchi_reduced",
     "Gamma conservative implies S{R(Omega(X,Y),Z)W + (D_X R)(Y,Z)W} = 0", K::identity},
    {"berwald", "berwald.r_cyclic", "Gamma conservative implies S R(X,Y)Z = 0", K::identity},
    {"berwald", "berwald.dr_horizontal_cyclic", "Gamma conservative implies S (D_{hX}R)(Y,Z)W = S P(X, F Omega(Y,Z), W)",
     K::formula},
    {"berwald", "berwald.dr_vertical", "Gamma conservative implies (D_{LZ}R)(X,Y) = (D_{hY}P)(X,Z) - (D_{hX}P)(Y,Z)",
     K::identity},
    {"berwald", "berwald.dp_symmetric", "Gamma conservative implies (D_{LZ}P)(X,Y) = (D_{LY}P)(X,Z)", K::identity},
    {"berwald", "berwald.p_symmetric", "Gamma conservative implies P(X,Y)Z = P(Y,X)Z = P(Z,X)Y", K::identity},
    {"berwald", "berwald.domega_horizontal_cyclic", "Gamma conservative implies S (D_{hX}Omega)(Y,Z) = 0", K::identity},
    {"berwald", "berwald.domega_vertical_cyclic", "Gamma conservative implies S (D_{LX}Omega)(Y,Z) = 0", K::identity},
    {"berwald", "berwald.dr_vertical_cyclic", "Gamma conservative implies S (D_{LX}R)(Y,Z) = 0", K::identity},
    {"berwald", "berwald.flatness_equivalence",
     "Gamma conservative: Omega(S,.) = 0, Omega = 0, R = 0, [F,F] = 0 agree (horizontal integrability certified by Omega = 0)",
     K::agreement},
};

const std::vector<std::string> kSuites = {"structure", "connection", "induced", "lift", "berwald"};

// Lazily computed objects shared by the suites. Every getter returns nullptr
// (and sets a reason) when its object does not exist for the model.
class Objects {
 public:
  explicit Objects(const Model& m) : m_(m) {}

  const Model& model() const { return m_; }
  const LStructure* base() const { return m_.base ? &*m_.base : nullptr; }
  const LConnection* conn() const { return m_.conn ? &*m_.conn : nullptr; }
  std::string base_reason() const { return "no L-structure: " + m_.base_error; }
  std::string conn_reason() const {
    if (!m_.base) return base_reason();
    return "no L-connection: " + m_.conn_error;
  }

  // The Berwald lift, when Gamma is homogeneous.
  const LinearConnection* berwald() {
    if (!berwald_done_) {
      berwald_done_ = true;
      if (!conn()) {
        berwald_reason_ = conn_reason();
      } else if (!conn()->is_homogeneous()) {
        berwald_reason_ = "Gamma is not homogeneous: " +
                          first_nonzero("[C,Gamma]", homogeneity_residual(conn()->gamma(), base()->c(), 1));
      } else {
        berwald_ = berwald_lift(*conn());
      }
    }
    return berwald_ ? &*berwald_ : nullptr;
  }
  const std::string& berwald_reason() {
    berwald();
    return berwald_reason_;
  }

  // The lift input (Gamma, B) and its admissibility conditions.
  const std::vector<Condition>* lift_conditions() {
    if (!conn()) return nullptr;
    if (!lift_conditions_) lift_conditions_ = lift_input_conditions(*conn(), m_.b);
    return &*lift_conditions_;
  }
  const LiftInput* lift_input() {
    if (!lift_done_) {
      lift_done_ = true;
      if (!conn()) {
        lift_reason_ = conn_reason();
      } else {
        bool ok = true;
        for (const auto& c : *lift_conditions()) ok = ok && holds_exactly(c);
        if (ok) {
          lift_input_ = LiftInput{*conn(), m_.b};
        } else {
          lift_reason_ = m_.b_given ? "B is not admissible" : "B = 0 is not admissible since [C,h] != 0";
        }
      }
    }
    return lift_input_ ? &*lift_input_ : nullptr;
  }
  const std::string& lift_reason() {
    lift_input();
    return lift_reason_;
  }
  const LinearConnection* lift() {
    if (!lift_ && lift_input()) lift_ = reducible_l_lift(*lift_input());
    return lift_ ? &*lift_ : nullptr;
  }

  // The linear connection under test: the given one, else the Berwald lift,
  // else the reducible lift with the model's B.
  const LinearConnection* subject() {
    if (!subject_done_) {
      subject_done_ = true;
      if (m_.linear) {
        subject_ = *m_.linear;
      } else if (berwald()) {
        subject_ = *berwald();
      } else if (lift()) {
        subject_ = *lift();
      } else {
        subject_reason_ = "no linear connection: " + (conn() ? lift_reason() : conn_reason());
      }
      if (subject_ && !base()) {
        subject_.reset();
        subject_reason_ = base_reason();
      }
    }
    return subject_ ? &*subject_ : nullptr;
  }
  const std::string& subject_reason() {
    subject();
    return subject_reason_;
  }
  // Connection map of the subject when it is L-regular with polynomial phi.
  const ConnectionMap* subject_map() {
    if (!map_done_) {
      map_done_ = true;
      if (!subject()) {
        map_reason_ = subject_reason();
      } else {
        try {
          map_ = connection_map(*subject(), *base());
        } catch (const Error& e) {
          map_reason_ = std::string("D is not L-regular: ") + e.what();
        }
      }
    }
    return map_ ? &*map_ : nullptr;
  }
  const std::string& map_reason() {
    subject_map();
    return map_reason_;
  }
  // L-connection induced by the subject.
  const LConnection* subject_conn() {
    if (!subject_conn_ && subject_map()) {
      subject_conn_ = LConnection::make(*base(), identity_form(base()->dim()) -
                                                     Rational(2) * compose(subject_map()->phi, subject_map()->k));
    }
    return subject_conn_ ? &*subject_conn_ : nullptr;
  }

 private:
  const Model& m_;
  bool berwald_done_ = false, lift_done_ = false, subject_done_ = false, map_done_ = false;
  std::optional<LinearConnection> berwald_, lift_, subject_;
  std::string berwald_reason_, lift_reason_, subject_reason_, map_reason_;
  std::optional<std::vector<Condition>> lift_conditions_;
  std::optional<LiftInput> lift_input_;
  std::optional<ConnectionMap> map_;
  std::optional<LConnection> subject_conn_;
};

class Rows {
 public:
  Check& identity(const std::string& id, std::vector<Residual> residuals) {
    const CatalogEntry& e = catalog_entry(id);
    Check c = e.kind == K::formula ? formula_check(e.suite, e.id, e.statement, std::move(residuals))
                                   : identity_check(e.suite, e.id, e.statement, std::move(residuals));
    return push(std::move(c));
  }
  Check& identity(const std::string& id, const Condition& c) { return identity(id, c.residuals); }
  Check& agreement(const std::string& id, std::vector<Condition> conditions) {
    const CatalogEntry& e = catalog_entry(id);
    return push(agreement_check(e.suite, e.id, e.statement, std::move(conditions)));
  }
  void skip(const std::string& id, const std::string& reason) {
    const CatalogEntry& e = catalog_entry(id);
    push(skipped_check(e.suite, e.id, e.statement, reason));
  }
  // Skips every catalog row of `suite` not yet emitted.
  void skip_rest(const std::string& suite, const std::string& reason) {
    for (const auto& e : kCatalog) {
      if (e.suite == suite && !emitted(e.id)) skip(e.id, reason);
    }
  }
  std::vector<Check> take() { return std::move(out_); }

 private:
  Check& push(Check c) {
    out_.push_back(std::move(c));
    return out_.back();
  }
  bool emitted(const std::string& id) const {
    return std::any_of(out_.begin(), out_.end(), [&](const Check& c) { return c.id == id; });
  }
  std::vector<Check> out_;
};

VecForm1 lie(const VecField& c, const VecForm1& k) { return lie_derivative<1>(c, k); }

Condition cond(std::string label, std::vector<Residual> residuals) { return {std::move(label), std::move(residuals)}; }

// --- structure -------------------------------------------------------------

void structure_suite(Objects& o, Rows& rows) {
  const Model& m = o.model();
  const char* axiom_ids[] = {"structure.l_rank", "structure.l_square", "structure.l_integrable",
                             "structure.c_homogeneity"};
  for (std::size_t i = 0; i < 4 && i < m.l_axioms.size(); ++i) rows.identity(axiom_ids[i], m.l_axioms[i]);
  const LStructure* base = o.base();
  if (!base) return rows.skip_rest("structure", o.base_reason());
  const std::size_t dim = base->dim();
  const VecForm1& l = base->l();
  const VecField& c = base->c();
  const VecField s0 = base->canonical_semispray();
  const VecField s1 = base->perturbed_semispray();

  rows.identity("structure.canonical_semispray", {residual("L S0 - C", semispray_residual(s0, *base))});
  if (m.spray) {
    rows.identity("structure.model_spray", {residual("L S - C", semispray_residual(*m.spray, *base)),
                                            residual("[C,S] - S", spray_residual(*m.spray, *base))});
  } else {
    rows.skip("structure.model_spray", "model has no spray");
  }

  if (m.connection_axioms.empty()) return rows.skip_rest("structure", o.conn_reason());
  std::vector<Residual> ax;
  for (const auto& cnd : m.connection_axioms) ax.insert(ax.end(), cnd.residuals.begin(), cnd.residuals.end());
  rows.identity("structure.connection_axioms", std::move(ax));
  const LConnection* conn = o.conn();
  if (!conn) return rows.skip_rest("structure", o.conn_reason());

  const VecForm1 id = identity_form(dim);
  const VecForm1 &v = conn->v(), &h = conn->h(), &f = conn->f();
  rows.identity("structure.projectors",
                {residual("v + h - I", v + h - id), residual("v^2 - v", compose(v, v) - v),
                 residual("h^2 - h", compose(h, h) - h), residual("vh", compose(v, h)), residual("hv", compose(h, v))});
  rows.identity("structure.projectors_l", {residual("Lv", compose(l, v)), residual("vL - L", compose(v, l) - l),
                                           residual("Lh - L", compose(l, h) - l), residual("hL", compose(h, l))});
  rows.identity("structure.almost_complex",
                {residual("F^2 + I", compose(f, f) + id), residual("FL - h", compose(f, l) - h),
                 residual("Fh + L", compose(f, h) + l), residual("LF - v", compose(l, f) - v)});
  rows.identity("structure.torsion_semibasic", semibasic_condition("T", conn->torsion(), *base));
  rows.identity("structure.curvature_semibasic", semibasic_condition("Omega", conn->curvature(), *base));
  rows.identity("structure.strong_torsion_semibasic", semibasic_condition("t", conn->strong_torsion(), *base));
  rows.identity("structure.strong_torsion_independent",
                {residual("t(S0) - t(S1)", strong_torsion(*conn, s0) - strong_torsion(*conn, s1))});
  rows.identity("structure.curvature_potential_independent",
                {residual("Omega(S0,.) - Omega(S1,.)",
                          potential(conn->curvature(), s0) - potential(conn->curvature(), s1))});

  const Condition homogeneous = cond("[C,Gamma] = 0", {residual("[C,Gamma]", lie(c, conn->gamma()))});
  rows.agreement("structure.strong_torsion_criterion",
                 {cond("t = 0", {residual("t", conn->strong_torsion())}),
                  cond("[C,Gamma] = 0 and T = 0",
                       {residual("[C,Gamma]", lie(c, conn->gamma())), residual("T", conn->torsion())})});
  rows.identity("structure.homogeneous_curvature",
                {residual("[C,T]", lie_derivative(c, conn->torsion())),
                 residual("[C,Omega]", lie_derivative(c, conn->curvature()))})
      .given(homogeneous);
  if (m.spray) {
    rows.identity("structure.conservative_torsion",
                  {residual("[C,Gamma]", lie(c, conn->gamma())), residual("T", conn->torsion())})
        .given(cond("S is a spray", {residual("L S - C", semispray_residual(*m.spray, *base)),
                                     residual("[C,S] - S", spray_residual(*m.spray, *base))}));
  } else {
    rows.skip("structure.conservative_torsion", "model has no spray");
  }
}

// --- connection -----------------------------------------------------------

void connection_suite(Objects& o, Rows& rows) {
  const LinearConnection* d = o.subject();
  if (!d) return rows.skip_rest("connection", o.subject_reason());
  const LStructure& base = *o.base();
  const VecForm1& l = base.l();
  const VecField& c = base.c();
  const Condition almost_tangent = almost_tangent_condition(*d, base);

  rows.identity("connection.almost_tangent", almost_tangent);
  rows.identity("connection.regular", regular_condition(*d, base));
  rows.identity("connection.normal", normal_condition(*d, base));
  rows.identity("connection.reducible", reducible_condition(*d, base));

  const Tensor12 bt = bold_torsion(*d).tensor();
  const Tensor13 br = bold_curvature(*d);
  rows.identity("connection.torsion_vertical_pair",
                {residual("T(LX,LY) - L T(LX,Y) - L T(X,LY)",
                          precompose<2>(precompose<2>(bt, 0, l), 1, l) - compose<2>(l, precompose<2>(bt, 0, l)) -
                              compose<2>(l, precompose<2>(bt, 1, l)))})
      .given(almost_tangent);
  rows.identity("connection.curvature_l",
                {residual("R(X,Y)LZ - L R(X,Y)Z", precompose<3>(br, 2, l) - compose<3>(l, br))})
      .given(almost_tangent);
  const VecForm1 k = d->differential<0>(c);
  rows.agreement("connection.normal_torsion",
                 {cond("D_{LX} C = LX", {residual("K o L - L", compose(k, l) - l)}),
                  cond("T(C,LX) = 0", {residual("T(C,LX)", precompose<1>(insert<2>(bt, 0, c), 0, l))})})
      .given(almost_tangent)
      .given(cond("D_C LX = L[C,X]", {residual("D_C LX - L[C,X]", c_parallel_residual(*d, base))}));

  const ConnectionMap* cm = o.subject_map();
  const LConnection* gd = o.subject_conn();
  if (!cm || !gd) {
    const std::string reason = o.map_reason();
    for (const char* id : {"connection.phi_inverse", "connection.reducibility_equivalence", "connection.parallel_f",
                           "connection.extension_reproduces"}) {
      rows.skip(id, reason);
    }
  } else {
    rows.identity("connection.phi_inverse", {residual("phi K L - L", compose(cm->phi, compose(cm->k, l)) - l),
                                             residual("K phi L - L", compose(cm->k, compose(cm->phi, l)) - l)});
    const Condition reducible = cond("D Gamma = 0", {residual("D Gamma", covariant_differential(*d, gd->gamma()))});
    const Condition f_parallel = cond("DF = 0", {residual("DF", covariant_differential(*d, gd->f()))});
    rows.agreement("connection.reducibility_equivalence",
                   {reducible, f_parallel,
                    cond("Dv = Dh = 0", {residual("Dv", covariant_differential(*d, gd->v())),
                                         residual("Dh", covariant_differential(*d, gd->h()))})});
    rows.identity("connection.parallel_f", reducible).given(f_parallel);
  }

  // The extension reads D only on vertical second arguments.
  std::optional<LinearConnection> ext;
  std::optional<ConnectionMap> vmap;
  std::string ext_reason;
  try {
    vmap = vertical_connection_map(*d, base);
    ext = extend_from_vertical(*d, base);
  } catch (const Error& e) {
    ext_reason = std::string("extension undefined: ") + e.what();
  }
  if (!ext) return rows.skip_rest("connection", ext_reason);
  const std::size_t dim = base.dim();
  Tensor12 vert_diff(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const VecField ei = coordinate_field(dim, i);
    for (std::size_t j = 0; j < dim; ++j) {
      const VecField diff = ext->derivative(ei, column(l, j)) - d->derivative(ei, column(l, j));
      for (std::size_t q = 0; q < dim; ++q) vert_diff(q, i, j) = diff(q);
    }
  }
  rows.identity("connection.extension_vertical", {residual("E_X LY - D_X LY", vert_diff)});
  rows.identity("connection.extension_connection_map",
                {residual("E C - D C", ext->differential<0>(c) - d->differential<0>(c))});
  rows.identity("connection.extension_reducible", reducible_condition(*ext, base));
  const VecForm1 gbar = identity_form(dim) - Rational(2) * compose(vmap->phi, vmap->k);
  try {
    rows.identity("connection.extension_projection",
                  {residual("Gamma_E - Gamma_D", induced_connection(*ext, base).gamma() - gbar)});
    const LConnection ge = LConnection::make(base, gbar);
    rows.identity("connection.extension_f_parallel", {residual("EF", covariant_differential(*ext, ge.f()))});
  } catch (const Error& e) {
    rows.skip("connection.extension_projection", e.what());
    rows.skip("connection.extension_f_parallel", e.what());
  }
  if (cm && gd) {
    rows.identity("connection.extension_reproduces", {residual("E - D", ext->christoffel() - d->christoffel())})
        .given(reducible_condition(*d, base));
  }
  const LinearConnection other = extend_from_vertical(change_horizontal_completion(*d, base), base);
  rows.identity("connection.extension_completion",
                {residual("E(D') - E(D)", other.christoffel() - ext->christoffel())});
}

// --- induced --------------------------------------------------------------

void induced_suite(Objects& o, Rows& rows) {
  const ConnectionMap* cm = o.subject_map();
  const LConnection* g = o.subject_conn();
  if (!cm || !g) return rows.skip_rest("induced", o.map_reason());
  const LStructure& base = *o.base();
  const std::size_t dim = base.dim();
  const VecForm1 id = identity_form(dim);
  const VecForm1& l = base.l();
  const VecField& c = base.c();
  const VecForm1 &v = g->v(), &h = g->h(), &gamma = g->gamma(), &k = cm->k, &phi = cm->phi;
  const auto [gg, hh] = structures_gh(*g);
  auto cp = [](const VecForm1& a, const VecForm1& b) { return compose(a, b); };

  rows.identity("induced.projectors_from_map",
                {residual("v - phi K", v - cp(phi, k)), residual("h - (I - phi K)", h - (id - cp(phi, k)))});
  rows.identity("induced.k_on_projectors", {residual("K v - K", cp(k, v) - k), residual("K h", cp(k, h))});
  rows.identity("induced.gamma_h_minus_v", {residual("Gamma - (h - v)", gamma - (h - v))});
  rows.identity("induced.gamma_projector_products",
                {residual("Gamma h - h", cp(gamma, h) - h), residual("h Gamma - h", cp(h, gamma) - h),
                 residual("Gamma v + v", cp(gamma, v) + v), residual("v Gamma + v", cp(v, gamma) + v)});
  rows.identity("induced.g_frame", {residual("G L + h", cp(gg, l) + h), residual("G h - L", cp(gg, h) - l)});
  rows.identity("induced.h_frame", {residual("H L - h", cp(hh, l) - h), residual("H h - L", cp(hh, h) - l)});
  rows.identity("induced.g_identities",
                {residual("GL + h", cp(gg, l) + h), residual("Gh - L", cp(gg, h) - l), residual("LG + v", cp(l, gg) + v),
                 residual("Gv - hG", cp(gg, v) - cp(h, gg)), residual("hG - (G - L)", cp(h, gg) - (gg - l)),
                 residual("vG - (G - Gv)", cp(v, gg) - (gg - cp(gg, v))), residual("vG - L", cp(v, gg) - l),
                 residual("GL + LG + I", cp(gg, l) + cp(l, gg) + id), residual("Gh + hG - G", cp(gg, h) + cp(h, gg) - gg)});
  rows.identity("induced.h_identities",
                {residual("HL - h", cp(hh, l) - h), residual("Hh - L", cp(hh, h) - l), residual("LH - v", cp(l, hh) - v),
                 residual("Hv - hH", cp(hh, v) - cp(h, hh)), residual("hH - (H - L)", cp(h, hh) - (hh - l)),
                 residual("hH + hG", cp(h, hh) + cp(h, gg)), residual("vH - (H - Hv)", cp(v, hh) - (hh - cp(hh, v))),
                 residual("vH - L", cp(v, hh) - l), residual("HL + LH - I", cp(hh, l) + cp(l, hh) - id),
                 residual("Hh + hH - H", cp(hh, h) + cp(h, hh) - hh), residual("GH + HG", cp(gg, hh) + cp(hh, gg)),
                 residual("G + H - 2L", gg + hh - Rational(2) * l)});
  rows.identity("induced.quaternionic", {residual("G^2 + I", cp(gg, gg) + id), residual("H^2 - I", cp(hh, hh) - id),
                                         residual("GH + HG", cp(gg, hh) + cp(hh, gg))});
  const VecForm1 hg = cp(hh, gg);
  rows.identity("induced.gamma_from_gh",
                {residual("HG - Gamma", hg - gamma), residual("(HG)^2 - I", cp(hg, hg) - id),
                 residual("L HG - L", cp(l, hg) - l), residual("HG L + L", cp(hg, l) + l)});
  rows.agreement("induced.homogeneity", {cond("[C,Gamma] = 0", {residual("[C,Gamma]", lie(c, gamma))}),
                                         cond("[C,K] = 0", {residual("[C,K]", lie(c, k))})});
  rows.identity("induced.vertical_projector_bracket",
                {residual("[C,v] - phi [C,K] h", lie(c, v) - cp(phi, cp(lie(c, k), h)))});
}

// --- lift -------------------------------------------------------------------

void lift_suite(Objects& o, Rows& rows) {
  const LConnection* conn = o.conn();
  if (!conn) return rows.skip_rest("lift", o.conn_reason());
  const Model& m = o.model();
  const LStructure& base = conn->base();
  const VecForm1& l = base.l();
  if (m.b_given) {
    std::vector<Residual> rs;
    for (const auto& c : *o.lift_conditions()) rs.insert(rs.end(), c.residuals.begin(), c.residuals.end());
    rows.identity("lift.b_admissible", std::move(rs));
  } else {
    rows.skip("lift.b_admissible", "model has no B; B = 0 is used when [C,h] = 0");
  }

  // The symmetric-lift rows concern Gamma alone.
  const Condition strongly_flat =
      cond("Omega = 0 and t = 0", {residual("Omega", conn->curvature()), residual("t", conn->strong_torsion())});
  rows.agreement("lift.symmetric_lift_criterion",
                 {strongly_flat, cond("[C,h] = 0 and F o T + Omega = 0",
                                      {residual("[C,h]", lie(base.c(), conn->h())),
                                       residual("F o T + Omega", compose(conn->f(), conn->torsion()) + conn->curvature())})});
  if (const LinearConnection* bw = o.berwald()) {
    rows.identity("lift.symmetric_lift", {residual("T", bold_torsion(*bw))}).given(strongly_flat);
  } else {
    rows.skip("lift.symmetric_lift", o.berwald_reason());
  }

  const LiftInput* in = o.lift_input();
  const LinearConnection* d = o.lift();
  if (!in || !d) return rows.skip_rest("lift", o.lift_reason());
  rows.identity("lift.normal", normal_condition(*d, base));
  rows.identity("lift.reducible", reducible_condition(*d, base));
  try {
    rows.identity("lift.projection", {residual("Gamma_D - Gamma", induced_connection(*d, base).gamma() - conn->gamma())});
  } catch (const Error& e) {
    rows.skip("lift.projection", e.what());
  }
  rows.identity("lift.torsion_on_vertical", {residual("T(LX,Y) - B(X,Y)", torsion_on_vertical_residual(*d, *in))});
  rows.identity("lift.vertical_rule", {residual("D_{LX} LY - L[LX,Y]", vertical_rule_residual(*d, *conn))});
  rows.identity("lift.horizontal_rule",
                {residual("D_{hX} LY - v[hX,LY] - B(X,Y)", horizontal_rule_residual(*d, *in))});
  rows.identity("lift.combined_rule",
                {residual("D_X LY - L[vX,Y] - v[hX,LY] - B(X,Y)", combined_rule_residual(*d, *in))});
  rows.identity("lift.torsion_formula", {residual("T - formula", bold_torsion(*d) - lift_torsion_formula(*in))});
  const TorsionSplit ts = torsion_split_residuals(*d, *in);
  rows.identity("lift.torsion_split",
                {residual("T(hX,hY) - h*[F,F] - 2FB", ts.hh), residual("T(hX,LFY) - B(X,FY)", ts.hv),
                 residual("T(LFX,hY) - B(FX,Y)", ts.vh), residual("h*[F,F] - F o T - Omega", ts.ff)});

  const CurvatureTriple tr = curvature_triple(*d, *conn);
  rows.identity("lift.q_vanishes", {residual("Q", tr.q)});
  rows.identity("lift.r_formula", {residual("R - formula", tr.r - curvature_r_formula(*d, *in))});
  rows.identity("lift.p_formula", {residual("P - formula", tr.p - curvature_p_formula(*d, *in))});
  rows.identity("lift.first_bianchi", {residual("first Bianchi", first_bianchi_residual(*d))});
  rows.identity("lift.second_bianchi", {residual("second Bianchi", second_bianchi_residual(*d))});
  rows.identity("lift.vertical_values",
                {residual("L o Omega", compose(l, conn->curvature())), residual("L o R", compose<3>(l, tr.r)),
                 residual("L o P", compose<3>(l, tr.p)), residual("L o Q", compose<3>(l, tr.q))});
  rows.identity("lift.r_antisymmetric", {residual("R(X,Y)Z + R(Y,X)Z", tr.r + permute<3>(tr.r, {1, 0, 2}))});
}

// --- berwald --------------------------------------------------------------

void berwald_suite(Objects& o, Rows& rows) {
  const LinearConnection* d = o.berwald();
  if (!d) return rows.skip_rest("berwald", o.berwald_reason());
  const LConnection& conn = *o.conn();
  const LStructure& base = conn.base();
  const VecForm2 bt = bold_torsion(*d);
  const Condition conservative = conservative_condition(conn);

  rows.identity("berwald.round_trip", {residual("Gamma_D - Gamma", induced_connection(*d, base).gamma() - conn.gamma())});
  rows.identity("berwald.torsion_on_vertical", {residual("T(LX,Y)", precompose<2>(bt.tensor(), 0, base.l()))});
  rows.identity("berwald.c_parallel", {residual("D_C LX - L[C,X]", c_parallel_residual(*d, base))});
  rows.identity("berwald.c_commutation",
                {residual("[C,D_Y LX] - D_[C,Y] LX - D_Y [C,LX]", c_commutation_residual(*d, base))});
  rows.identity("berwald.torsion",
                {residual("T - F o T - Omega", bt - compose(conn.f(), conn.torsion()) - conn.curvature())});
  rows.identity("berwald.torsion_conservative", {residual("T - Omega", bt - conn.curvature())}).given(conservative);
  rows.identity("berwald.torsion_semibasic", semibasic_condition("T", bt, base)).given(conservative);

  const CurvatureTriple tr = curvature_triple(*d, conn);
  rows.identity("berwald.r_formula", {residual("R - D_{LZ}Omega", r_from_curvature_residual(*d, conn, tr))});
  rows.identity("berwald.r_on_semispray",
                {residual("R(X,Y)S0 - Omega(X,Y)", r_on_semispray_residual(tr, conn, base.canonical_semispray())),
                 residual("R(X,Y)S1 - Omega(X,Y)", r_on_semispray_residual(tr, conn, base.perturbed_semispray()))});
  rows.identity("berwald.dc_curvature", {residual("D_C Omega - Omega", dc_curvature_residual(*d, conn))});
  rows.agreement("berwald.r_omega_agreement",
                 {cond("R = 0", {residual("R", tr.r)}), cond("Omega = 0", {residual("Omega", conn.curvature())})});

  const VecForm2& omega = conn.curvature();
  rows.identity("berwald.first_bianchi_reduced",
                {residual("S R - S D Omega", reduced_first_bianchi_residual(*d, omega))})
      .given(conservative);
  rows.identity("berwald.second_bianchi_reduced",
                {residual("S{R(Omega,.) + D R}", reduced_second_bianchi_residual(*d, omega))})
      .given(conservative);
  rows.identity("berwald.r_cyclic", {residual("S R", cyclic_sum(tr.r))}).given(conservative);
  rows.identity("berwald.dr_horizontal_cyclic",
                {residual("S D_h R - S P(., F Omega)", dr_horizontal_cyclic_residual(*d, conn, tr))})
      .given(conservative);
  rows.identity("berwald.dr_vertical", {residual("D_{LZ}R - D_{hY}P + D_{hX}P", dr_vertical_residual(*d, conn, tr))})
      .given(conservative);
  rows.identity("berwald.dp_symmetric", {residual("D_{LZ}P - D_{LY}P", dp_symmetry_residual(*d, conn, tr))})
      .given(conservative);
  const auto [p1, p2] = p_symmetry_residuals(tr);
  rows.identity("berwald.p_symmetric", {residual("P(X,Y)Z - P(Y,X)Z", p1), residual("P(X,Y)Z - P(Z,X)Y", p2)})
      .given(conservative);
  rows.identity("berwald.domega_horizontal_cyclic", {residual("S D_h Omega", domega_cyclic(*d, conn, conn.h()))})
      .given(conservative);
  rows.identity("berwald.domega_vertical_cyclic", {residual("S D_L Omega", domega_cyclic(*d, conn, base.l()))})
      .given(conservative);
  rows.identity("berwald.dr_vertical_cyclic", {residual("S D_L R", dr_vertical_cyclic(*d, conn, tr))})
      .given(conservative);
  rows.agreement("berwald.flatness_equivalence",
                 {cond("Omega(S,.) = 0", {residual("Omega(S0,.)", potential(omega, base.canonical_semispray()))}),
                  cond("Omega = 0", {residual("Omega", omega)}), cond("R = 0", {residual("R", tr.r)}),
                  cond("[F,F] = 0", {residual("[F,F]", fn_bracket(conn.f(), conn.f()))})})
      .given(conservative);
}

}  // namespace

const std::vector<std::string>& suite_names() { return kSuites; }

const std::vector<CatalogEntry>& catalog() { return kCatalog; }

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : kCatalog) {
    if (e.id == id) return e;
  }
  throw Error("unknown statement id: " + id);
}

std::vector<Check> build_checks(const Model& model, const std::vector<std::string>& suites) {
  std::vector<std::string> selected;
  for (const auto& s : suites) {
    if (s == "all") {
      selected = kSuites;
      break;
    }
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) throw Error("unknown suite id: " + s);
    if (std::find(selected.begin(), selected.end(), s) == selected.end()) selected.push_back(s);
  }
  static const std::map<std::string, std::function<void(Objects&, Rows&)>> builders = {
      {"structure", structure_suite}, {"connection", connection_suite}, {"induced", induced_suite},
      {"lift", lift_suite},           {"berwald", berwald_suite}};
  Objects objects(model);
  Rows rows;
  for (const auto& s : kSuites) {
    if (std::find(selected.begin(), selected.end(), s) == selected.end()) continue;
    builders.at(s)(objects, rows);
    rows.skip_rest(s, "not evaluated");
  }
  return rows.take();
}

}  // namespace fncalc
