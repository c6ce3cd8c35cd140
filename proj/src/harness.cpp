#include "fncalc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fncalc {

std::string to_string(Backend b) { return b == Backend::exact ? "exact" : "points"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::fail_formula: return "FAIL-FORMULA";
    case Verdict::skipped: return "SKIPPED";
  }
  return "?";
}

Backend parse_backend(const std::string& name) {
  if (name == "exact") return Backend::exact;
  if (name == "points") return Backend::points;
  throw Error("unknown backend: " + name);
}

std::vector<std::vector<Rational>> sample_points(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Rational>> pts(count, std::vector<Rational>(dim));
  for (auto& p : pts) {
    for (auto& q : p) {
      const long num = static_cast<long>(rng() % 19) - 9;
      const long den = static_cast<long>(rng() % 4) + 1;
      q = Rational(num, den);
      q.canonicalize();
    }
  }
  return pts;
}

namespace {

struct Outcome {
  bool holds = true;
  std::string witness;
  double norm = 0;
};

std::string point_string(const std::vector<Rational>& p) {
  const auto names = variable_names(p.size());
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? ", " : "") + names[i] + "=" + to_string(p[i]);
  return out + ")";
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

Outcome evaluate_condition(const Condition& c, Backend backend, const std::vector<std::vector<Rational>>& points) {
  Outcome out;
  for (const Residual& r : c.residuals) {
    if (backend == Backend::exact) {
      if (out.holds && !r.is_zero()) {
        out.holds = false;
        out.witness = r.witness();
      }
      continue;
    }
    for (std::size_t f = 0; f < r.entries.size(); ++f) {
      const Poly& p = r.entries[f];
      if (p.is_zero()) continue;
      for (const auto& pt : points) {
        const double value = std::fabs(p.eval(pt).get_d());
        out.norm = std::max(out.norm, value);
        if (value >= kPointTolerance && out.holds) {
          out.holds = false;
          out.witness = r.label(f) + " = " + format_double(p.eval(pt).get_d()) + " at " + point_string(pt);
        }
      }
    }
  }
  return out;
}

}  // namespace

Row evaluate(const Check& check, Backend backend, const std::vector<std::vector<Rational>>& points) {
  Row row{check.suite, check.id, check.statement, Verdict::pass, {}, {}, std::nullopt, {}};
  if (check.skip_reason) {
    row.verdict = Verdict::skipped;
    row.reason = *check.skip_reason;
    return row;
  }
  for (const Condition& p : check.premises) {
    const Outcome o = evaluate_condition(p, backend, points);
    if (!o.holds) {
      row.verdict = Verdict::skipped;
      row.reason = "premise fails: " + p.label;
      row.witness = o.witness;
      return row;
    }
  }
  double norm = 0;
  std::size_t held = 0;
  std::string first_witness;
  for (const Condition& c : check.conditions) {
    const Outcome o = evaluate_condition(c, backend, points);
    norm = std::max(norm, o.norm);
    row.conditions.emplace_back(c.label, o.holds);
    if (o.holds) {
      ++held;
    } else if (first_witness.empty()) {
      first_witness = o.witness;
    }
  }
  if (backend == Backend::points) row.residual_norm = norm;
  row.witness = first_witness;
  const bool ok = check.kind == CheckKind::agreement ? (held == 0 || held == check.conditions.size())
                                                       : held == check.conditions.size();
  if (!ok) {
    row.verdict = check.kind == CheckKind::formula ? Verdict::fail_formula : Verdict::fail;
    if (check.kind == CheckKind::agreement) {
      std::string split;
      for (const auto& [label, holds] : row.conditions) split += (split.empty() ? "" : "; ") + label + (holds ? ": holds" : ": fails");
      row.reason = "conditions disagree: " + split;
    }
  }
  return row;
}

Report run_suites(const ModelSpec& spec, const RunOptions& options) {
  const Model model = build_model(spec);
  const std::vector<Check> checks = build_checks(model, options.suites);
  Report report;
  report.model_id = spec.id;
  report.backend = options.backend;
  report.samples = options.backend == Backend::points ? options.samples : 0;
  report.seed = options.seed;
  report.metadata = {
      {"semibasic_reading", "L o K = 0 and K vanishes when any argument is vertical (i_X K = 0 for vertical X)"},
      {"c_commutation_reading", "[C, D_Y LX] - D_{[C,Y]} LX = D_Y [C,LX] (Lie derivative of Y -> D_Y LX)"},
      {"dr_horizontal_cyclic_reading", "P(X, F Omega(Y,Z)) taken as P(X, F Omega(Y,Z), W) on the free slot W"},
      {"horizontal_integrability", "certified via Omega = 0"},
      {"formula_policy", "displayed curvature formulas are compared against the direct curvature; mismatch is FAIL-FORMULA"},
      {"point_tolerance", "1e-09"},
  };
  const auto points =
      options.backend == Backend::points ? sample_points(2 * model.n, options.samples, options.seed)
                                         : std::vector<std::vector<Rational>>{};
  for (const Check& c : checks) report.rows.push_back(evaluate(c, options.backend, points));
  const auto& suites = suite_names();
  auto order = [&](const Row& r) {
    return std::find(suites.begin(), suites.end(), r.suite) - suites.begin();
  };
  std::stable_sort(report.rows.begin(), report.rows.end(), [&](const Row& a, const Row& b) {
    if (order(a) != order(b)) return order(a) < order(b);
    return a.id < b.id;
  });
  return report;
}

std::string emit_text(const Report& report) {
  std::ostringstream os;
  os << "model " << report.model_id << "  backend " << to_string(report.backend);
  if (report.backend == Backend::points) os << "  samples " << report.samples << "  seed " << report.seed;
  os << "\n";
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const Row& r : report.rows) {
    ++counts[static_cast<int>(r.verdict)];
    std::string v = to_string(r.verdict);
    v.resize(13, ' ');
    os << v << r.id << "  " << r.statement << "\n";
    if (!r.reason.empty()) os << "             reason: " << r.reason << "\n";
    if (!r.witness.empty() && r.verdict != Verdict::pass) os << "             witness: " << r.witness << "\n";
  }
  os << counts[0] << " PASS, " << counts[1] << " FAIL, " << counts[2] << " FAIL-FORMULA, " << counts[3]
     << " SKIPPED\n";
  return os.str();
}

std::string emit_json(const Report& report) {
  nlohmann::ordered_json j;
  j["model"] = report.model_id;
  j["backend"] = to_string(report.backend);
  j["samples"] = report.samples;
  j["seed"] = report.seed;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.metadata) meta[k] = v;
  j["metadata"] = std::move(meta);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const Row& r : report.rows) {
    nlohmann::ordered_json row;
    row["suite"] = r.suite;
    row["id"] = r.id;
    row["statement"] = r.statement;
    row["verdict"] = to_string(r.verdict);
    row["witness"] = r.witness.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.witness);
    row["reason"] = r.reason.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.reason);
    row["residual_norm"] = r.residual_norm ? nlohmann::ordered_json(*r.residual_norm) : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json conds = nlohmann::ordered_json::array();
    for (const auto& [label, holds] : r.conditions) conds.push_back({{"label", label}, {"holds", holds}});
    row["conditions"] = std::move(conds);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["exit_code"] = exit_code(report);
  return j.dump(2) + "\n";
}

int exit_code(const Report& report) {
  bool formula = false;
  for (const Row& r : report.rows) {
    if (r.verdict == Verdict::fail) return 1;
    if (r.verdict == Verdict::fail_formula) formula = true;
  }
  return formula ? 2 : 0;
}

}  // namespace fncalc
