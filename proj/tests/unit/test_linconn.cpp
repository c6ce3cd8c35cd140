#include <doctest.h>

#include "helpers.hpp"

using namespace fnt;

namespace {

const LStructure& base1() {
  static const LStructure b = validate_l_structure(1, standard_l(1), standard_c(1));
  return b;
}

}  // namespace

TEST_CASE("flat connection differentiates coefficients") {
  const LinearConnection d = LinearConnection::flat(2);
  const VecField x = field(2, {"x", "y"}), y = field(2, {"x^2*y", "y^3"});
  CHECK(d.derivative(x, y) == field(2, {"3*x^2*y", "3*y^3"}));
  CHECK(bold_torsion(d).is_zero());
  CHECK(bold_curvature(d).is_zero());
}

TEST_CASE("covariant derivative is tensorial in the direction and Leibniz in the argument") {
  std::mt19937_64 rng(21);
  const LinearConnection d(random_tensor<2>(rng, 2, 1));
  const VecField x = random_tensor<0>(rng, 2), y = random_tensor<0>(rng, 2);
  const Poly f = P("x^2", 2);
  CHECK(d.derivative(f * x, y) == f * d.derivative(x, y));
  VecField fy = f * y;
  VecField expect = f * d.derivative(x, y);
  for (std::size_t k = 0; k < 2; ++k) expect(k) += (x(0) * f.diff(0) + x(1) * f.diff(1)) * y(k);
  CHECK(d.derivative(x, fy) == expect);
  const auto k = random_tensor<1>(rng, 2);
  CHECK(d.derivative(x, apply(k, y)) == apply(d.derivative<1>(x, k), y) + apply(k, d.derivative(x, y)));
  CHECK(apply(insert<2>(covariant_differential(d, k), 0, x), y) == apply(d.derivative<1>(x, k), y));
}

TEST_CASE("torsion and curvature by definition") {
  std::mt19937_64 rng(22);
  const LinearConnection d(random_tensor<2>(rng, 2, 1));
  const VecField x = random_tensor<0>(rng, 2, 1), y = random_tensor<0>(rng, 2, 1), z = random_tensor<0>(rng, 2, 1);
  CHECK(apply(bold_torsion(d), x, y) == d.derivative(x, y) - d.derivative(y, x) - lie_bracket(x, y));
  const VecField r = d.derivative(x, d.derivative(y, z)) - d.derivative(y, d.derivative(x, z)) -
                     d.derivative(lie_bracket(x, y), z);
  CHECK(apply(bold_curvature(d), x, y, z) == r);
  CHECK(first_bianchi_residual(d).is_zero());
  CHECK(second_bianchi_residual(d).is_zero());
}

TEST_CASE("Berwald lift of Q1 golden values") {
  const LinearConnection d = berwald_lift(*q1().conn);
  const VecField ex = coordinate_field(2, 0), ey = coordinate_field(2, 1);
  CHECK(d.derivative(ex, ey) == field(2, {"0", "2*x"}));
  CHECK(d.derivative(ey, ey).is_zero());
  CHECK(d.derivative(ey, ex) == field(2, {"0", "2*x"}));
  // Value from the independent sympy route (bracket formula with DF = 0), not 2y + 4x^2y.
  CHECK(d.derivative(ex, ex) == field(2, {"2*x", "2*y"}));
  const ConnectionMap km = connection_map(d, q1().conn->base());
  CHECK(apply(km.k, ex) == field(2, {"0", "2*x*y"}));
  CHECK(apply(km.k, ey) == field(2, {"0", "1"}));
  CHECK(holds_exactly(almost_tangent_condition(d, base1())));
  CHECK(holds_exactly(regular_condition(d, base1())));
  CHECK(holds_exactly(normal_condition(d, base1())));
  CHECK(holds_exactly(reducible_condition(d, base1())));
  CHECK(induced_connection(d, base1()).gamma() == q1().conn->gamma());
  CHECK(bold_torsion(d).is_zero());
}

TEST_CASE("flat connection predicates and induced connection") {
  const LinearConnection d = LinearConnection::flat(2);
  const ConnectionMap km = connection_map(d, base1());
  CHECK(apply(km.k, coordinate_field(2, 1)) == coordinate_field(2, 1));
  CHECK(apply(km.k, coordinate_field(2, 0)).is_zero());
  CHECK(apply(km.phi, coordinate_field(2, 1)) == coordinate_field(2, 1));
  CHECK(holds_exactly(almost_tangent_condition(d, base1())));
  CHECK(holds_exactly(regular_condition(d, base1())));
  CHECK(holds_exactly(normal_condition(d, base1())));
  CHECK(holds_exactly(reducible_condition(d, base1())));
  CHECK(induced_connection(d, base1()).gamma() == form1(2, {{"1", "0"}, {"0", "-1"}}));
  const auto [g, h] = structures_gh(induced_connection(d, base1()));
  CHECK(apply(g, coordinate_field(2, 0)) == coordinate_field(2, 1));
  CHECK(apply(g, coordinate_field(2, 1)) == -coordinate_field(2, 0));
  CHECK(apply(h, coordinate_field(2, 0)) == coordinate_field(2, 1));
  CHECK(apply(h, coordinate_field(2, 1)) == coordinate_field(2, 0));
}

TEST_CASE("a horizontal component in D_dy dx breaks almost-tangency") {
  Tensor12 g(2);
  g(0, 1, 0) = P("1", 2);
  const LinearConnection d(g);
  CHECK_FALSE(holds_exactly(almost_tangent_condition(d, base1())));
  CHECK_FALSE(holds_exactly(regular_condition(d, base1())));
  CHECK_FALSE(holds_exactly(reducible_condition(d, base1())));
}

TEST_CASE("connection map with a non-constant vertical determinant") {
  Tensor12 g(2);
  g(0, 1, 0) = P("1", 2);
  g(1, 1, 1) = P("1", 2);
  const LinearConnection d(g);
  CHECK(holds_exactly(almost_tangent_condition(d, base1())));
  CHECK_THROWS_AS(connection_map(d, base1()), NonPolynomialError);
}

TEST_CASE("an L-normal connection has phi = I on verticals") {
  for (const Model* m : {&q1(), &r2()}) {
    const LinearConnection d = berwald_lift(*m->conn);
    const auto& base = m->conn->base();
    const ConnectionMap km = connection_map(d, base);
    for (std::size_t j = 0; j < base.n(); ++j) {
      const VecField vj = coordinate_field(base.dim(), base.n() + j);
      CHECK(apply(km.phi, vj) == vj);
    }
    CHECK(induced_connection(d, base).gamma() == identity_form(base.dim()) - Rational(2) * km.k);
  }
}

TEST_CASE("Berwald lift of R2") {
  const auto& c = *r2().conn;
  const LinearConnection d = berwald_lift(c);
  CHECK(induced_connection(d, c.base()).gamma() == c.gamma());
  CHECK(bold_torsion(d) == c.curvature());
  CHECK_FALSE(bold_torsion(d).is_zero());
  CHECK(holds_exactly(reducible_condition(d, c.base())));
  CHECK(covariant_differential(d, c.f()).is_zero());
  CHECK(covariant_differential(d, c.h()).is_zero());
}

TEST_CASE("extension from the vertical action reproduces the lift") {
  for (const Model* m : {&q1(), &r2()}) {
    const LinearConnection d = berwald_lift(*m->conn);
    const auto& base = m->conn->base();
    CHECK(extend_from_vertical(d, base) == d);
    const LinearConnection changed = change_horizontal_completion(d, base);
    CHECK_FALSE(changed == d);
    CHECK(extend_from_vertical(changed, base) == d);
  }
  CHECK(extend_from_vertical(LinearConnection::flat(2), base1()) == LinearConnection::flat(2));
}

TEST_CASE("changing the horizontal completion gives a non-reducible witness") {
  const auto& c = *r2().conn;
  const LinearConnection d = change_horizontal_completion(berwald_lift(c), c.base());
  CHECK_FALSE(holds_exactly(reducible_condition(d, c.base())));
  CHECK_FALSE(covariant_differential(d, c.f()).is_zero());
  CHECK_FALSE(covariant_differential(d, c.h()).is_zero());
  CHECK_THROWS_AS(induced_connection(d, c.base()), ValidationError);
}

TEST_CASE("a regular non-reducible witness fails all three reducibility conditions") {
  const auto& c = *r2().conn;
  const LinearConnection d(perturbed_r2_lift());
  CHECK(holds_exactly(almost_tangent_condition(d, c.base())));
  CHECK(holds_exactly(regular_condition(d, c.base())));
  const LConnection induced = induced_connection(d, c.base());
  CHECK(induced.gamma() == c.gamma());
  CHECK_FALSE(holds_exactly(reducible_condition(d, c.base())));
  CHECK_FALSE(covariant_differential(d, induced.gamma()).is_zero());
  CHECK_FALSE(covariant_differential(d, induced.f()).is_zero());
  CHECK_FALSE(covariant_differential(d, induced.h()).is_zero());
}
