#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

namespace fncalc {

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator.
using Rational = mpq_class;

// Exponent vector of a monomial, one entry per variable.
using Exponents = boost::container::small_vector<std::uint32_t, 8>;

struct Term {
  Exponents exps;
  Rational coeff;
};

// Parses "3", "-1/2", "7/4" into a canonical rational. Throws Error on junk.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

// Exact multivariate polynomial over the rationals in a fixed number of
// variables. The variable order used throughout fncalc is
// (x1..xn, y1..yn).
//
// Terms are stored sorted by exponent vector (lexicographic, ascending) with
// no zero coefficients, so equal polynomials have identical term lists.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}
  Poly(std::size_t nvars, const Rational& c);

  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly monomial(Exponents exps, const Rational& coeff);
  // Sums duplicate monomials and drops zeros; terms may arrive unsorted.
  static Poly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  Rational constant_term() const;
  std::size_t degree() const noexcept;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  friend bool operator==(const Poly& a, const Poly& b);

  Poly diff(std::size_t var) const;
  Rational eval(std::span<const Rational> point) const;

  // Quotient when `divisor` divides this polynomial exactly, else nullopt.
  std::optional<Poly> divide_exact(const Poly& divisor) const;

  // Substitutes images[i] for variable i. All images share one variable
  // count, which becomes the variable count of the result.
  Poly compose(std::span<const Poly> images) const;

  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void check_same_ring(const Poly& other, const char* op) const;

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

// x, y for two variables; x1..xn, y1..yn for 2n; z1..zm otherwise.
std::vector<std::string> variable_names(std::size_t nvars);

// Parses expressions such as "x1*y2^2 - 1/2*y1 + 3". The empty string is the
// zero polynomial.
Poly parse_poly(std::string_view text, std::span<const std::string> names);

}  // namespace fncalc
