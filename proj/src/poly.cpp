#include "fncalc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "fncalc/error.hpp"

namespace fncalc {

namespace {

bool exps_less(const Exponents& a, const Exponents& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Sorts, merges duplicate monomials and drops zero coefficients.
void normalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return exps_less(a.exps, b.exps); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational sum = std::move(terms[i].coeff);
    while (j < terms.size() && terms[j].exps == terms[i].exps) {
      sum += terms[j].coeff;
      ++j;
    }
    if (sgn(sum) != 0) {
      if (out != i) terms[out].exps = std::move(terms[i].exps);
      terms[out].coeff = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

// Adds (sign = +1) or subtracts (sign = -1) two sorted term lists.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && exps_less(a[i].exps, b[j].exps))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || exps_less(b[j].exps, a[i].exps)) {
      out.push_back(b[j++]);
      if (sign < 0) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = sign > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
      if (sgn(c) != 0) out.push_back(Term{a[i].exps, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw Error("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  const auto slash = s.find('/');
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && t.front() == '-') t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  if (!valid_int(s.substr(0, slash)) ||
      (slash != std::string::npos && !valid_int(std::string_view(s).substr(slash + 1)))) {
    throw Error("malformed rational literal '" + std::string(text) + "'");
  }
  Rational q(s, 10);
  if (sgn(q.get_den()) == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Poly::Poly(std::size_t nvars, const Rational& c) : nvars_(nvars) {
  if (sgn(c) != 0) terms_.push_back(Term{Exponents(nvars, 0), c});
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DimensionError("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(std::move(e), Rational(1));
}

Poly Poly::monomial(Exponents exps, const Rational& coeff) {
  Poly p(exps.size());
  if (sgn(coeff) != 0) p.terms_.push_back(Term{std::move(exps), coeff});
  return p;
}

Poly Poly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.exps.size() != nvars) throw DimensionError("exponent vector length differs from variable count");
  }
  normalize(terms);
  Poly p(nvars);
  p.terms_ = std::move(terms);
  return p;
}

bool Poly::is_constant() const noexcept {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  return std::all_of(terms_[0].exps.begin(), terms_[0].exps.end(), [](auto e) { return e == 0; });
}

Rational Poly::constant_term() const {
  // The zero monomial sorts first.
  if (!terms_.empty() &&
      std::all_of(terms_[0].exps.begin(), terms_[0].exps.end(), [](auto e) { return e == 0; })) {
    return terms_[0].coeff;
  }
  return Rational(0);
}

std::size_t Poly::degree() const noexcept {
  std::size_t d = 0;
  for (const auto& t : terms_) {
    std::size_t s = 0;
    for (auto e : t.exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

void Poly::check_same_ring(const Poly& other, const char* op) const {
  if (nvars_ != other.nvars_) {
    throw DimensionError(std::string("variable count mismatch in ") + op + ": " + std::to_string(nvars_) +
                         " vs " + std::to_string(other.nvars_));
  }
}

Poly& Poly::operator+=(const Poly& other) {
  check_same_ring(other, "add");
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  terms_ = merge(terms_, other.terms_, +1);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_same_ring(other, "sub");
  if (other.terms_.empty()) return *this;
  terms_ = merge(terms_, other.terms_, -1);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same_ring(b, "mul");
  Poly out(a.nvars_);
  if (a.is_zero() || b.is_zero()) return out;
  out.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Term t{ta.exps, ta.coeff * tb.coeff};
      for (std::size_t v = 0; v < t.exps.size(); ++v) t.exps[v] += tb.exps[v];
      out.terms_.push_back(std::move(t));
    }
  }
  if (a.terms_.size() > 1 && b.terms_.size() > 1) normalize(out.terms_);
  return out;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exps != b.terms_[i].exps || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

Poly Poly::diff(std::size_t var) const {
  if (var >= nvars_) throw DimensionError("differentiation variable out of range");
  Poly out(nvars_);
  // Decrementing the same slot in every surviving term keeps the order.
  for (const auto& t : terms_) {
    const auto e = t.exps[var];
    if (e == 0) continue;
    Term d{t.exps, t.coeff * e};
    d.exps[var] = e - 1;
    out.terms_.push_back(std::move(d));
  }
  return out;
}

Rational Poly::eval(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw DimensionError("evaluation point has wrong length");
  std::vector<std::vector<Rational>> powers(nvars_);
  for (const auto& t : terms_) {
    for (std::size_t v = 0; v < nvars_; ++v) {
      auto& pw = powers[v];
      if (pw.empty()) pw.emplace_back(1);
      while (pw.size() <= t.exps[v]) pw.push_back(pw.back() * point[v]);
    }
  }
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational m = t.coeff;
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (t.exps[v] != 0) m *= powers[v][t.exps[v]];
    }
    sum += m;
  }
  return sum;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  check_same_ring(divisor, "divide");
  if (divisor.is_zero()) throw Error("division by the zero polynomial");
  Poly quotient(nvars_);
  Poly rem = *this;
  const Term& lead = divisor.terms_.back();
  std::vector<Term> qterms;
  while (!rem.is_zero()) {
    const Term& r = rem.terms_.back();
    Term q{r.exps, r.coeff / lead.coeff};
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (r.exps[v] < lead.exps[v]) return std::nullopt;
      q.exps[v] = r.exps[v] - lead.exps[v];
    }
    Poly qp = Poly::monomial(q.exps, q.coeff);
    rem -= qp * divisor;
    qterms.push_back(std::move(q));
  }
  return Poly::from_terms(nvars_, std::move(qterms));
}

Poly Poly::compose(std::span<const Poly> images) const {
  if (images.size() != nvars_) throw DimensionError("compose needs one image per variable");
  const std::size_t target = images.empty() ? 0 : images[0].nvars();
  for (const auto& im : images) {
    if (im.nvars() != target) throw DimensionError("compose images live in different rings");
  }
  std::vector<std::vector<Poly>> powers(nvars_);
  Poly out(target);
  for (const auto& t : terms_) {
    Poly m(target, t.coeff);
    for (std::size_t v = 0; v < nvars_; ++v) {
      auto& pw = powers[v];
      if (pw.empty()) pw.emplace_back(target, Rational(1));
      while (pw.size() <= t.exps[v]) pw.push_back(pw.back() * images[v]);
      if (t.exps[v] != 0) m *= pw[t.exps[v]];
    }
    out += m;
  }
  return out;
}

std::string Poly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::vector<std::string> fallback;
  if (names.size() < nvars_) {
    fallback = variable_names(nvars_);
    names = fallback;
  }
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Term& t = *it;
    const bool negative = sgn(t.coeff) < 0;
    Rational mag = abs(t.coeff);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (t.exps[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[v];
      if (t.exps[v] > 1) mono += "^" + std::to_string(t.exps[v]);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

std::vector<std::string> variable_names(std::size_t nvars) {
  std::vector<std::string> names;
  if (nvars == 2) return {"x", "y"};
  if (nvars % 2 == 0) {
    for (std::size_t i = 0; i < nvars / 2; ++i) names.push_back("x" + std::to_string(i + 1));
    for (std::size_t i = 0; i < nvars / 2; ++i) names.push_back("y" + std::to_string(i + 1));
  } else {
    for (std::size_t i = 0; i < nvars; ++i) names.push_back("z" + std::to_string(i + 1));
  }
  return names;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

  Poly parse() {
    skip_ws();
    if (pos_ == text_.size()) return Poly(names_.size());
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error("cannot parse polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                ": " + why);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc(names_.size());
    bool first = true;
    for (;;) {
      int sign = 1;
      if (accept('-')) {
        sign = -1;
      } else if (accept('+')) {
      } else if (!first) {
        break;
      }
      Poly t = term();
      if (sign < 0) t = -t;
      acc += t;
      first = false;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        Rational d(integer());
        if (sgn(d) == 0) fail("division by zero");
        acc *= Rational(1) / d;
      } else {
        return acc;
      }
    }
  }

  mpz_class integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  unsigned exponent() {
    if (!accept('^')) return 1;
    mpz_class e = integer();
    if (!e.fits_uint_p()) fail("exponent too large");
    return static_cast<unsigned>(e.get_ui());
  }

  Poly factor() {
    skip_ws();
    if (pos_ == text_.size()) fail("unexpected end of input");
    Poly base(names_.size());
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!accept(')')) fail("expected ')'");
    } else if (c == '-') {
      ++pos_;
      return -factor();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      base = Poly(names_.size(), Rational(integer()));
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const auto name = text_.substr(start, pos_ - start);
      const auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end()) fail("unknown variable '" + std::string(name) + "'");
      base = Poly::variable(names_.size(), static_cast<std::size_t>(it - names_.begin()));
    } else {
      fail("unexpected character");
    }
    const unsigned e = exponent();
    Poly r(names_.size(), Rational(1));
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, std::span<const std::string> names) {
  return Parser(text, names).parse();
}

}  // namespace fncalc
