#include "fncalc/model.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fncalc {

using nlohmann::json;

VecField spray_from_g(std::size_t n, const std::vector<Poly>& g) {
  if (g.size() != n) throw DimensionError("spray: expected n components G^i");
  const std::size_t dim = 2 * n;
  VecField s(dim);
  for (std::size_t i = 0; i < n; ++i) {
    s(i) = Poly::variable(dim, n + i);
    s(n + i) = Rational(-2) * g[i];
  }
  return s;
}

namespace {

// --- reading ------------------------------------------------------------------

[[noreturn]] void schema(const std::string& path, const std::string& what) { throw SchemaError(path + ": " + what); }

Rational read_rational(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    schema(path, e.what());
  }
  schema(path, "expected an integer or a rational string");
}

Poly read_poly(const json& j, const std::string& path, std::size_t nvars) {
  if (j.is_string()) {
    try {
      return parse_poly(j.get<std::string>(), variable_names(nvars));
    } catch (const Error& e) {
      schema(path, e.what());
    }
  }
  if (j.is_number_integer()) return Poly(nvars, Rational(j.get<long>()));
  if (!j.is_array()) schema(path, "expected a polynomial (string, integer or term list)");
  std::vector<Term> terms;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tp = path + "[" + std::to_string(t) + "]";
    const json& term = j[t];
    if (!term.is_object() || !term.contains("coeffs") || !term.contains("exps")) {
      schema(tp, "expected {\"coeffs\", \"exps\"}");
    }
    const json& exps = term["exps"];
    if (!exps.is_array() || exps.size() != nvars) {
      schema(tp + ".exps", "expected " + std::to_string(nvars) + " exponents");
    }
    Term out{Exponents(nvars, 0), read_rational(term["coeffs"], tp + ".coeffs")};
    for (std::size_t v = 0; v < nvars; ++v) {
      if (!exps[v].is_number_unsigned()) schema(tp + ".exps[" + std::to_string(v) + "]", "expected a natural number");
      out.exps[v] = exps[v].get<std::uint32_t>();
    }
    terms.push_back(std::move(out));
  }
  return Poly::from_terms(nvars, std::move(terms));
}

template <std::size_t R>
Tensor<R> read_tensor(const json& j, const std::string& path, std::size_t dim) {
  Tensor<R> t(dim);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    const auto idx = t.unflatten(flat);
    const json* cur = &j;
    std::string p = path;
    for (std::size_t s = 0; s <= R; ++s) {
      if (!cur->is_array() || cur->size() != dim) schema(p, "expected an array of " + std::to_string(dim) + " entries");
      cur = &(*cur)[idx[s]];
      p += "[" + std::to_string(idx[s]) + "]";
    }
    t.data()[flat] = read_poly(*cur, p, dim);
  }
  return t;
}

// --- writing ------------------------------------------------------------------

json write_poly(const Poly& p) {
  json out = json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    json exps = json::array();
    for (auto e : it->exps) exps.push_back(e);
    out.push_back({{"coeffs", to_string(it->coeff)}, {"exps", std::move(exps)}});
  }
  return out;
}

template <std::size_t R>
json write_tensor(const Tensor<R>& t) {
  // Builds nested arrays by recursion on the flat layout.
  auto build = [&t](auto&& self, std::size_t depth, std::size_t base) -> json {
    json out = json::array();
    for (std::size_t i = 0; i < t.dim(); ++i) {
      const std::size_t flat = base * t.dim() + i;
      out.push_back(depth == R ? write_poly(t.data()[flat]) : self(self, depth + 1, flat));
    }
    return out;
  };
  return build(build, 0, 0);
}

// --- frame change ---------------------------------------------------------------

using RMatrix = std::vector<std::vector<Rational>>;

RMatrix invert(RMatrix a) {
  const std::size_t n = a.size();
  RMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) schema("frame_change", "matrix is singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

// Pullback along w = A z: the value index transforms with A^{-1}, every
// argument slot with A, and coefficients are composed with w = A z.
class Pullback {
 public:
  explicit Pullback(const RMatrix& a) : a_(a), inv_(invert(a)) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
      Poly w(n);
      for (std::size_t j = 0; j < n; ++j) {
        if (a[i][j] != 0) w += Poly::variable(n, j) * a[i][j];
      }
      images_.push_back(std::move(w));
    }
  }

  template <std::size_t R>
  Tensor<R> operator()(const Tensor<R>& t) const {
    Tensor<R> cur(t.dim());
    for (std::size_t f = 0; f < t.size(); ++f) cur.data()[f] = t.data()[f].compose(images_);
    for (std::size_t s = 0; s <= R; ++s) cur = transform_slot(cur, s);
    return cur;
  }

 private:
  template <std::size_t R>
  Tensor<R> transform_slot(const Tensor<R>& t, std::size_t slot) const {
    Tensor<R> out(t.dim());
    for (std::size_t f = 0; f < t.size(); ++f) {
      auto idx = t.unflatten(f);
      const std::size_t target = idx[slot];
      Poly acc(t.dim());
      for (std::size_t m = 0; m < t.dim(); ++m) {
        const Rational& coef = slot == 0 ? inv_[target][m] : a_[m][target];
        if (coef == 0) continue;
        idx[slot] = m;
        const Poly& src = t.at(idx);
        if (!src.is_zero()) acc += src * coef;
      }
      out.data()[f] = std::move(acc);
    }
    return out;
  }

  RMatrix a_, inv_;
  std::vector<Poly> images_;
};

// --- generators -------------------------------------------------------------

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  Rational rational() {
    const long num = static_cast<long>(rng_() % 7) - 3;
    const long den = static_cast<long>(rng_() % 2) + 1;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

 private:
  std::mt19937_64 rng_;
};

// Exponent vectors of the monomials in x of total degree <= d.
std::vector<Exponents> x_monomials(std::size_t n, std::size_t d) {
  std::vector<Exponents> out;
  Exponents e(2 * n, 0);
  auto rec = [&](auto&& self, std::size_t var, std::size_t left) -> void {
    if (var == n) {
      out.push_back(e);
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      e[var] = static_cast<std::uint32_t>(k);
      self(self, var + 1, left - k);
    }
    e[var] = 0;
  };
  rec(rec, 0, d);
  return out;
}

std::vector<Poly> random_quadratic_g(std::size_t n, std::size_t degree, std::uint64_t seed) {
  const std::size_t dim = 2 * n;
  Draw draw(seed);
  const auto monos = x_monomials(n, degree);
  std::vector<Poly> g(n, Poly(dim));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        std::vector<Term> terms;
        for (const auto& m : monos) {
          Exponents e = m;
          ++e[n + j];
          ++e[n + k];
          terms.push_back({std::move(e), draw.rational()});
        }
        g[i] += Poly::from_terms(dim, std::move(terms));
      }
    }
  }
  return g;
}

Poly parse(const std::string& s, std::size_t dim) { return parse_poly(s, variable_names(dim)); }

ModelSpec spray_model(std::string id, std::size_t n, const std::vector<Poly>& g) {
  ModelSpec spec;
  spec.id = std::move(id);
  spec.n = n;
  spec.spray = spray_from_g(n, g);
  return spec;
}

VecForm1 conservative_gamma(std::size_t n, const VecField& s) {
  return conservative(validate_l_structure(n, standard_l(n), standard_c(n)), s).gamma();
}

ModelSpec q1_model() { return spray_model("q1", 1, {parse("x*y^2", 2)}); }

ModelSpec explicit_gamma_model(std::string id, std::size_t n, VecForm1 gamma) {
  ModelSpec spec;
  spec.id = std::move(id);
  spec.n = n;
  spec.connection = std::move(gamma);
  return spec;
}

ModelSpec r2_model(std::size_t n, std::size_t degree, std::uint64_t seed) {
  if (n < 2) throw Error("generate r2: n >= 2 is required for nonzero curvature");
  const LStructure base = validate_l_structure(n, standard_l(n), standard_c(n));
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    const std::uint64_t s = seed + attempt;
    const auto g = random_quadratic_g(n, degree, s);
    if (!conservative(base, spray_from_g(n, g)).curvature().is_zero()) {
      return spray_model("r2-n" + std::to_string(n) + "-d" + std::to_string(degree) + "-s" + std::to_string(s), n, g);
    }
  }
  throw Error("generate r2: no curved model found in 64 seeds");
}

}  // namespace

ModelSpec model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    schema("$", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) schema("$", "expected an object");
  static const char* known[] = {"id", "n", "l_form", "canonical_field", "spray", "gamma", "connection", "b_form", "frame_change"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) schema(key, "unknown field");
  }
  ModelSpec spec;
  spec.id = j.value("id", std::string("model"));
  if (!j.contains("n") || !j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0) {
    schema("n", "expected a positive integer");
  }
  spec.n = j["n"].get<std::size_t>();
  const std::size_t n = spec.n;
  const std::size_t dim = 2 * n;
  if (j.contains("l_form")) spec.l_form = read_tensor<1>(j["l_form"], "l_form", dim);
  if (j.contains("canonical_field")) spec.canonical_field = read_tensor<0>(j["canonical_field"], "canonical_field", dim);
  if (j.contains("spray")) {
    const json& s = j["spray"];
    if (!s.is_array() || (s.size() != n && s.size() != dim)) {
      schema("spray", "expected n components G^i or 2n components of S");
    }
    if (s.size() == dim) {
      spec.spray = read_tensor<0>(s, "spray", dim);
    } else {
      std::vector<Poly> g;
      for (std::size_t i = 0; i < n; ++i) g.push_back(read_poly(s[i], "spray[" + std::to_string(i) + "]", dim));
      spec.spray = spray_from_g(n, g);
    }
  }
  if (j.contains("gamma")) spec.gamma = read_tensor<2>(j["gamma"], "gamma", dim);
  if (j.contains("connection")) spec.connection = read_tensor<1>(j["connection"], "connection", dim);
  if (j.contains("b_form")) spec.b_form = read_tensor<2>(j["b_form"], "b_form", dim);
  if (j.contains("frame_change")) {
    const json& a = j["frame_change"];
    if (!a.is_array() || a.size() != dim) schema("frame_change", "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    RMatrix m;
    for (std::size_t r = 0; r < dim; ++r) {
      const std::string rp = "frame_change[" + std::to_string(r) + "]";
      if (!a[r].is_array() || a[r].size() != dim) schema(rp, "expected " + std::to_string(dim) + " entries");
      m.emplace_back();
      for (std::size_t c = 0; c < dim; ++c) m.back().push_back(read_rational(a[r][c], rp + "[" + std::to_string(c) + "]"));
    }
    spec.frame_change = std::move(m);
  }
  const int sources = int(spec.spray.has_value()) + int(spec.gamma.has_value()) + int(spec.connection.has_value());
  if (sources != 1) schema("$", "exactly one of spray, gamma, connection is required");
  return spec;
}

std::string model_to_json(const ModelSpec& spec) {
  nlohmann::ordered_json j;
  j["id"] = spec.id;
  j["n"] = spec.n;
  const std::size_t n = spec.n;
  if (spec.l_form) j["l_form"] = write_tensor(*spec.l_form);
  if (spec.canonical_field) j["canonical_field"] = write_tensor(*spec.canonical_field);
  if (spec.spray) {
    const VecField& s = *spec.spray;
    bool standard = true;
    for (std::size_t i = 0; i < n; ++i) standard = standard && s(i) == Poly::variable(2 * n, n + i);
    if (standard) {
      json g = json::array();
      for (std::size_t i = 0; i < n; ++i) g.push_back(write_poly(s(n + i) * Rational(-1, 2)));
      j["spray"] = std::move(g);
    } else {
      j["spray"] = write_tensor(s);
    }
  }
  if (spec.gamma) j["gamma"] = write_tensor(*spec.gamma);
  if (spec.connection) j["connection"] = write_tensor(*spec.connection);
  if (spec.b_form) j["b_form"] = write_tensor(*spec.b_form);
  if (spec.frame_change) {
    json a = json::array();
    for (const auto& row : *spec.frame_change) {
      json r = json::array();
      for (const auto& q : row) r.push_back(to_string(q));
      a.push_back(std::move(r));
    }
    j["frame_change"] = std::move(a);
  }
  return j.dump(2) + "\n";
}

ModelSpec load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

ModelKind parse_model_kind(const std::string& name) {
  static const std::pair<const char*, ModelKind> table[] = {
      {"flat", ModelKind::flat}, {"q1", ModelKind::q1},   {"r2", ModelKind::r2},
      {"random", ModelKind::random}, {"r2b", ModelKind::r2b}, {"q1-sheared", ModelKind::q1_sheared},
      {"corrupted", ModelKind::corrupted}};
  for (const auto& [key, kind] : table) {
    if (name == key) return kind;
  }
  throw Error("unknown model kind: " + name);
}

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::flat: return "flat";
    case ModelKind::q1: return "q1";
    case ModelKind::r2: return "r2";
    case ModelKind::random: return "random";
    case ModelKind::r2b: return "r2b";
    case ModelKind::q1_sheared: return "q1-sheared";
    case ModelKind::corrupted: return "corrupted";
  }
  return "?";
}

ModelSpec generate(ModelKind kind, std::size_t n, std::size_t degree, std::uint64_t seed) {
  if (n == 0) throw Error("generate: n >= 1 is required");
  auto require_n1 = [&](const char* what) {
    if (n != 1) throw Error(std::string("generate ") + what + ": defined for n = 1");
  };
  switch (kind) {
    case ModelKind::flat: {
      ModelSpec spec = spray_model("flat-n" + std::to_string(n), n, std::vector<Poly>(n, Poly(2 * n)));
      return spec;
    }
    case ModelKind::q1:
      require_n1("q1");
      return q1_model();
    case ModelKind::r2:
      return r2_model(n, degree, seed);
    case ModelKind::random:
      return spray_model("random-n" + std::to_string(n) + "-d" + std::to_string(degree) + "-s" + std::to_string(seed), n,
                         random_quadratic_g(n, degree, seed));
    case ModelKind::r2b: {
      // Gamma + 2 alpha (x) U with B = (dx1 ^ dx2) (x) U, where
      // alpha = y2 dx1 - y1 dx2 and U = y1 d/dy1; then B° + [C,h] = 0.
      ModelSpec r2 = r2_model(n, degree, seed);
      const std::size_t dim = 2 * n;
      VecForm1 gamma = conservative_gamma(n, *r2.spray);
      const Poly y1 = Poly::variable(dim, n), y2 = Poly::variable(dim, n + 1);
      gamma(n, 0) += Rational(2) * y1 * y2;
      gamma(n, 1) -= Rational(2) * y1 * y1;
      ModelSpec spec = explicit_gamma_model("r2b" + r2.id.substr(2), n, std::move(gamma));
      Tensor12 b(dim);
      b(n, 0, 1) = y1;
      b(n, 1, 0) = -y1;
      spec.b_form = std::move(b);
      return spec;
    }
    case ModelKind::q1_sheared: {
      // Gamma_Q1 - 2 y^2 dx (x) d/dy: an L-connection that is not homogeneous.
      require_n1("q1-sheared");
      VecForm1 gamma = conservative_gamma(1, *q1_model().spray);
      gamma(1, 0) -= parse("2*y^2", 2);
      return explicit_gamma_model("q1-sheared", 1, std::move(gamma));
    }
    case ModelKind::corrupted: {
      // Gamma_Q1 + dy (x) d/dx, which breaks L Gamma = L.
      require_n1("corrupted");
      VecForm1 gamma = conservative_gamma(1, *q1_model().spray);
      gamma(0, 1) += Poly(2, Rational(1));
      return explicit_gamma_model("corrupted", 1, std::move(gamma));
    }
  }
  throw Error("generate: unknown kind");
}

Model build_model(const ModelSpec& spec) {
  if (spec.n == 0) throw SchemaError("n: expected a positive integer");
  const std::size_t n = spec.n;
  const std::size_t dim = 2 * n;
  auto check_dim = [dim](const char* field, std::size_t d, std::size_t nvars) {
    if (d != dim || nvars != dim) throw SchemaError(std::string(field) + ": expected dimension " + std::to_string(dim));
  };
  auto nvars_of = [](const auto& t) { return t.size() ? t.data()[0].nvars() : 0; };
  if (spec.l_form) check_dim("l_form", spec.l_form->dim(), nvars_of(*spec.l_form));
  if (spec.canonical_field) check_dim("canonical_field", spec.canonical_field->dim(), nvars_of(*spec.canonical_field));
  if (spec.spray) check_dim("spray", spec.spray->dim(), nvars_of(*spec.spray));
  if (spec.gamma) check_dim("gamma", spec.gamma->dim(), nvars_of(*spec.gamma));
  if (spec.connection) check_dim("connection", spec.connection->dim(), nvars_of(*spec.connection));
  if (spec.b_form) check_dim("b_form", spec.b_form->dim(), nvars_of(*spec.b_form));
  const int sources = int(spec.spray.has_value()) + int(spec.gamma.has_value()) + int(spec.connection.has_value());
  if (sources != 1) throw SchemaError("$: exactly one of spray, gamma, connection is required");

  std::optional<Pullback> pull;
  if (spec.frame_change) {
    if (spec.frame_change->size() != dim) throw SchemaError("frame_change: expected a square matrix of size 2n");
    pull.emplace(*spec.frame_change);
  }
  auto adapt = [&pull](auto t) { return pull ? (*pull)(t) : t; };

  Model m;
  m.spec = spec;
  m.n = n;
  m.l = adapt(spec.l_form ? *spec.l_form : standard_l(n));
  m.c = adapt(spec.canonical_field ? *spec.canonical_field : standard_c(n));
  m.l_axioms = diagnose_l_structure(n, m.l, m.c);
  bool axioms = true;
  for (const auto& c : m.l_axioms) axioms = axioms && holds_exactly(c);
  if (axioms) {
    try {
      m.base = validate_l_structure(n, m.l, m.c);
    } catch (const Error& e) {
      m.base_error = e.what();
    }
  } else {
    m.base_error = "L-structure axioms fail";
  }

  if (spec.b_form) {
    try {
      m.b = VecForm2::from_tensor(adapt(*spec.b_form));
    } catch (const ValidationError& e) {
      throw SchemaError(std::string("b_form: not antisymmetric: ") + e.witness());
    }
    m.b_given = true;
  } else {
    m.b = VecForm2(dim);
  }

  if (spec.spray) m.spray = adapt(*spec.spray);
  if (spec.gamma) m.linear = LinearConnection(adapt(*spec.gamma));
  if (!m.base) {
    m.conn_error = "no L-structure";
    return m;
  }
  try {
    if (m.spray) {
      m.gamma = fn_bracket(m.l, *m.spray);
    } else if (m.linear) {
      m.gamma = induced_connection(*m.linear, *m.base).gamma();
    } else {
      m.gamma = adapt(*spec.connection);
    }
  } catch (const Error& e) {
    m.conn_error = e.what();
    return m;
  }
  m.connection_axioms = LConnection::diagnose(*m.base, *m.gamma);
  bool ok = true;
  for (const auto& c : m.connection_axioms) ok = ok && holds_exactly(c);
  if (ok) {
    m.conn = LConnection::make(*m.base, *m.gamma);
  } else {
    m.conn_error = "L-connection axioms fail";
  }
  return m;
}

}  // namespace fncalc
