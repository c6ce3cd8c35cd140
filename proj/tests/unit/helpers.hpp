#pragma once

#include <random>
#include <string>
#include <vector>

#include "fncalc/harness.hpp"
#include "fncalc/lifts.hpp"

namespace fnt {

using namespace fncalc;

inline Poly P(std::string_view text, std::size_t nvars) {
  const auto names = variable_names(nvars);
  return parse_poly(text, names);
}

inline VecField field(std::size_t dim, const std::vector<std::string>& comps) {
  VecField x(dim);
  for (std::size_t k = 0; k < comps.size(); ++k) x(k) = P(comps[k], dim);
  return x;
}

// rows[k][j] = K^k_j
inline VecForm1 form1(std::size_t dim, const std::vector<std::vector<std::string>>& rows) {
  VecForm1 k(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) k(r, c) = P(rows[r][c], dim);
  }
  return k;
}

inline Rational random_rational(std::mt19937_64& rng) {
  Rational q(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 3) + 1);
  q.canonicalize();
  return q;
}

// Sparse polynomial with up to `terms` monomials of degree <= `degree`.
inline Poly random_poly(std::mt19937_64& rng, std::size_t nvars, std::size_t terms, std::uint32_t degree) {
  std::vector<Term> ts;
  for (std::size_t t = 0; t < terms; ++t) {
    Exponents e(nvars, 0);
    for (auto& x : e) x = static_cast<std::uint32_t>(rng() % (degree + 1));
    ts.push_back({e, random_rational(rng)});
  }
  return Poly::from_terms(nvars, std::move(ts));
}

template <std::size_t R>
Tensor<R> random_tensor(std::mt19937_64& rng, std::size_t dim, std::uint32_t degree = 2) {
  Tensor<R> t(dim);
  for (auto& p : t.data()) p = random_poly(rng, dim, 2, degree);
  return t;
}

inline VecForm2 random_form2(std::mt19937_64& rng, std::size_t dim, std::uint32_t degree = 2) {
  VecForm2 b(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i + 1; j < dim; ++j) b.set(k, i, j, random_poly(rng, dim, 2, degree));
    }
  }
  return b;
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t dim) {
  std::vector<Rational> p(dim);
  for (auto& q : p) q = random_rational(rng);
  return p;
}

inline Model model(ModelKind kind, std::size_t n = 1) { return build_model(generate(kind, n, 1, 42)); }

inline const Model& f1() {
  static const Model m = model(ModelKind::flat);
  return m;
}
inline const Model& q1() {
  static const Model m = model(ModelKind::q1);
  return m;
}
inline const Model& r2() {
  static const Model m = model(ModelKind::r2, 2);
  return m;
}

// Berwald lift of R2 plus dx1 (x) M, where M acts by the same matrix N on
// the x and y blocks and N y = 0. M commutes with L and kills C, so DL = 0 and
// the connection map are unchanged, while M does not commute with F.
inline Tensor12 perturbed_r2_lift() {
  Tensor12 g = berwald_lift(*r2().conn).christoffel();
  const std::vector<std::vector<std::string>> nmat{{"-y1*y2", "y1^2"}, {"-y2^2", "y1*y2"}};
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      g(a, 0, b) += P(nmat[a][b], 4);
      g(2 + a, 0, 2 + b) += P(nmat[a][b], 4);
    }
  }
  return g;
}

}  // namespace fnt
