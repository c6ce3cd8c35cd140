#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fncalc/check.hpp"
#include "fncalc/model.hpp"

namespace fncalc {

// Points-backend threshold on |residual| after conversion to double.
inline constexpr double kPointTolerance = 1e-9;

// Suites in report order.
const std::vector<std::string>& suite_names();

struct CatalogEntry {
  std::string suite;
  std::string id;
  std::string statement;
  CheckKind kind;
};
// Every statement the harness can report, one entry per row id.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& id);

// Symbolic rows for the selected suites ("all" selects every suite). Throws
// Error on an unknown suite id.
std::vector<Check> build_checks(const Model& model, const std::vector<std::string>& suites);

enum class Backend { exact, points };
enum class Verdict { pass, fail, fail_formula, skipped };
std::string to_string(Backend b);
std::string to_string(Verdict v);
Backend parse_backend(const std::string& name);

struct RunOptions {
  std::vector<std::string> suites{"all"};
  Backend backend = Backend::exact;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
};

struct Row {
  std::string suite;
  std::string id;
  std::string statement;
  Verdict verdict = Verdict::pass;
  std::string witness;
  std::string reason;
  std::optional<double> residual_norm;
  // Truth value of each condition under the backend, in row order.
  std::vector<std::pair<std::string, bool>> conditions;
};

struct Report {
  std::string model_id;
  Backend backend = Backend::exact;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Row> rows;  // sorted by (suite order, id)
};

// Rational sample points with numerators in [-9,9] and denominators in 1..4.
std::vector<std::vector<Rational>> sample_points(std::size_t dim, std::size_t count, std::uint64_t seed);

Row evaluate(const Check& check, Backend backend, const std::vector<std::vector<Rational>>& points);

Report run_suites(const ModelSpec& spec, const RunOptions& options);

std::string emit_text(const Report& report);
std::string emit_json(const Report& report);
// 0 if no row fails, 1 if some row is FAIL, 2 if the only failures are
// FAIL-FORMULA.
int exit_code(const Report& report);

}  // namespace fncalc
