#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fncalc/lgeometry.hpp"
#include "fncalc/linconn.hpp"
#include "fncalc/tensor.hpp"

namespace fncalc {

// Input description of a geometric model on R^{2n}. Exactly one connection
// source is set: a spray (Gamma = [L,S]), Christoffel symbols of a linear
// connection (Gamma induced by it), or Gamma itself.
//
// All data, defaults included, live in the model's coordinates w. When a
// frame change A is given the engine works in coordinates z with w = A z and
// every object is pulled back.
struct ModelSpec {
  std::string id;
  std::size_t n = 0;
  std::optional<VecForm1> l_form;           // default: standard L
  std::optional<VecField> canonical_field;  // default: sum y^i d/dy^i
  std::optional<VecField> spray;            // full 2n components
  std::optional<Tensor12> gamma;            // gamma^k_{ij}
  std::optional<VecForm1> connection;       // Gamma
  std::optional<Tensor12> b_form;           // semibasic vector 2-form
  std::optional<std::vector<std::vector<Rational>>> frame_change;
};

// S = y^i d/dx^i - 2 G^i d/dy^i
VecField spray_from_g(std::size_t n, const std::vector<Poly>& g);

// JSON. Polynomials are read from a string expression ("x1*y2^2 - 1/2"), a
// number, or a term list [{"coeffs": "1/2", "exps": [..]}]; they are written
// as term lists. Throws SchemaError whose message starts with the field path.
ModelSpec model_from_json(const std::string& text);
std::string model_to_json(const ModelSpec& spec);
ModelSpec load_model(const std::string& path);

enum class ModelKind { flat, q1, r2, random, r2b, q1_sheared, corrupted };
ModelKind parse_model_kind(const std::string& name);
std::string to_string(ModelKind kind);

// Deterministic built-in models. r2 (n >= 2) draws a quadratic spray
// G^i = c^i_{jk}(x) y^j y^k with random polynomial coefficients of the given
// degree in x, retrying with the next seed until the curvature is nonzero.
ModelSpec generate(ModelKind kind, std::size_t n, std::size_t degree, std::uint64_t seed);

// Objects of a model in engine coordinates. Axiom failures are recorded, not
// thrown, so that a report can show them.
struct Model {
  ModelSpec spec;
  std::size_t n = 0;
  VecForm1 l;
  VecField c;
  std::vector<Condition> l_axioms;
  std::optional<LStructure> base;
  std::string base_error;

  std::optional<VecField> spray;
  std::optional<LinearConnection> linear;
  std::optional<VecForm1> gamma;
  std::vector<Condition> connection_axioms;
  std::optional<LConnection> conn;
  std::string conn_error;

  VecForm2 b;
  bool b_given = false;
};

// Throws SchemaError for inconsistent specs.
Model build_model(const ModelSpec& spec);

}  // namespace fncalc
