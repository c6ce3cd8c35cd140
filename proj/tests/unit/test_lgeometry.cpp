#include <doctest.h>

#include "helpers.hpp"

using namespace fnt;

TEST_CASE("L-structure validation") {
  CHECK_NOTHROW(validate_l_structure(1, standard_l(1), standard_c(1)));
  CHECK_NOTHROW(validate_l_structure(2, standard_l(2), standard_c(2)));
  CHECK_THROWS_AS(validate_l_structure(1, identity_form(2), standard_c(1)), ValidationError);
  try {
    validate_l_structure(1, identity_form(2), standard_c(1));
  } catch (const ValidationError& e) {
    CHECK(e.axiom() == "rank L = n");
  }
  CHECK_THROWS_AS(validate_l_structure(1, standard_l(1), field(2, {"0", "2*y"})), ValidationError);
}

TEST_CASE("diagnosis names each axiom") {
  const auto conds = diagnose_l_structure(1, identity_form(2), standard_c(1));
  REQUIRE(conds.size() == 4);
  CHECK(conds[0].label == "rank L = n");
  CHECK_FALSE(holds_exactly(conds[1]));
  for (const auto& c : diagnose_l_structure(2, standard_l(2), standard_c(2))) CHECK(holds_exactly(c));
}

TEST_CASE("semisprays of the standard structure") {
  const LStructure base = validate_l_structure(1, standard_l(1), standard_c(1));
  CHECK(is_spray(field(2, {"y", "-2*x*y^2"}), base));
  CHECK(is_semispray(field(2, {"y", "x"}), base));
  CHECK_FALSE(is_spray(field(2, {"y", "x"}), base));
  CHECK_FALSE(is_semispray(field(2, {"x", "0"}), base));
  CHECK(is_semispray(base.canonical_semispray(), base));
  CHECK(is_semispray(base.perturbed_semispray(), base));
  CHECK_FALSE(base.perturbed_semispray() == base.canonical_semispray());
}

TEST_CASE("semibasic forms") {
  const auto& m = r2();
  const auto& base = m.conn->base();
  CHECK(is_semibasic(m.conn->curvature(), base));
  CHECK(is_semibasic(m.conn->torsion(), base));
  CHECK(is_semibasic(VecForm2(4), base));
  CHECK_FALSE(is_semibasic(identity_form(4), base));
  // L o L = 0 and L kills verticals, so L itself is semibasic.
  CHECK(is_semibasic(standard_l(2), base));
}

TEST_CASE("flat connection") {
  const auto& c = *f1().conn;
  CHECK(c.gamma() == form1(2, {{"1", "0"}, {"0", "-1"}}));
  CHECK(c.v() == form1(2, {{"0", "0"}, {"0", "1"}}));
  CHECK(c.h() == form1(2, {{"1", "0"}, {"0", "0"}}));
  CHECK(c.torsion().is_zero());
  CHECK(c.curvature().is_zero());
  CHECK(c.strong_torsion().is_zero());
  CHECK(is_strongly_flat(c));
}

TEST_CASE("Q1 connection golden values") {
  const auto& c = *q1().conn;
  CHECK(apply(c.gamma(), coordinate_field(2, 0)) == field(2, {"1", "-4*x*y"}));
  CHECK(c.gamma() == form1(2, {{"1", "0"}, {"-4*x*y", "-1"}}));
  CHECK(c.h() == form1(2, {{"1", "0"}, {"-2*x*y", "0"}}));
  CHECK(c.f() == form1(2, {{"2*x*y", "1"}, {"-4*x^2*y^2 - 1", "-2*x*y"}}));
  CHECK(c.curvature().is_zero());
  CHECK(c.strong_torsion().is_zero());
  CHECK(is_strongly_flat(c));
  CHECK(c.is_homogeneous());
}

TEST_CASE("conservative connection of a spray") {
  const LStructure base = validate_l_structure(1, standard_l(1), standard_c(1));
  CHECK(conservative(base, field(2, {"y", "0"})).gamma() == f1().conn->gamma());
  CHECK(conservative(base, field(2, {"y", "-2*x*y^2"})).gamma() == q1().conn->gamma());
  CHECK_THROWS_AS(conservative(base, field(2, {"y", "x"})), ValidationError);
}

TEST_CASE("connection axioms") {
  const LStructure base = validate_l_structure(1, standard_l(1), standard_c(1));
  CHECK_THROWS_AS(LConnection::make(base, identity_form(2)), ValidationError);
  const auto conds = LConnection::diagnose(base, identity_form(2));
  bool any_failed = false;
  for (const auto& c : conds) any_failed |= !holds_exactly(c);
  CHECK(any_failed);
}

TEST_CASE("sheared Q1 has nonzero strong torsion") {
  const auto& q = *q1().conn;
  VecForm1 g = q.gamma();
  g(1, 0) -= P("2*y^2", 2);
  const LConnection sheared = LConnection::make(q.base(), g);
  CHECK_FALSE(sheared.strong_torsion().is_zero());
  CHECK_FALSE(sheared.is_homogeneous());
  CHECK_FALSE(is_strongly_flat(sheared));
  CHECK_FALSE(generating_spray(sheared));
}

TEST_CASE("R2 is conservative with nonzero curvature") {
  const auto& c = *r2().conn;
  CHECK(c.torsion().is_zero());
  CHECK_FALSE(c.curvature().is_zero());
  CHECK_FALSE(is_strongly_flat(c));
  CHECK(holds_exactly(conservative_condition(c)));
  REQUIRE(generating_spray(c));
  CHECK(conservative(c.base(), *generating_spray(c)).gamma() == c.gamma());
}

TEST_CASE("projector and almost-complex algebra on every model") {
  for (const Model* m : {&f1(), &q1(), &r2()}) {
    const LConnection& c = *m->conn;
    const std::size_t d = c.base().dim();
    const VecForm1 id = identity_form(d), l = c.base().l();
    CHECK(compose(c.h(), c.h()) == c.h());
    CHECK(compose(c.v(), c.v()) == c.v());
    CHECK(compose(c.h(), c.v()).is_zero());
    CHECK(c.h() + c.v() == id);
    CHECK(compose(c.gamma(), c.gamma()) == id);
    CHECK(compose(l, c.gamma()) == l);
    CHECK(compose(c.gamma(), l) == -l);
    CHECK(compose(c.f(), c.f()) == -id);
    CHECK(compose(c.f(), l) == c.h());
    CHECK(compose(c.f(), c.h()) == -l);
    CHECK(compose(l, c.f()) == c.v());
    CHECK(c.curvature() == Rational(-1, 2) * fn_bracket(c.h(), c.h()));
    CHECK(c.torsion() == Rational(1, 2) * fn_bracket(l, c.gamma()));
    const auto [g, h] = structures_gh(c);
    CHECK(compose(g, g) == -id);
    CHECK(compose(h, h) == id);
    CHECK(compose(g, h) == -compose(h, g));
    CHECK(g + h == Rational(2) * l);
    CHECK(compose(h, g) == c.gamma());
  }
}

TEST_CASE("strong torsion does not depend on the semispray") {
  for (const Model* m : {&f1(), &q1(), &r2()}) {
    const LConnection& c = *m->conn;
    CHECK(strong_torsion(c, c.base().perturbed_semispray()) == c.strong_torsion());
  }
}

TEST_CASE("homogeneity degrees") {
  const auto& c = *r2().conn;
  const VecField& cf = c.base().c();
  CHECK(homogeneity_residual(c.gamma(), cf, 1).is_zero());
  CHECK(homogeneity_residual(c.torsion(), cf, 1).is_zero());
  CHECK(homogeneity_residual(c.curvature(), cf, 1).is_zero());
  CHECK_FALSE(homogeneity_residual(c.curvature(), cf, 2).is_zero());
  CHECK(homogeneity_residual(c.base().l(), cf, 0).is_zero());
}
