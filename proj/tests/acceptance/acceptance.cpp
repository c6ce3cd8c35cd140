// One line per acceptance criterion: "PASS|FAIL <n> <summary> (<seconds> s)"
// followed by indented detail lines for failures.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "fncalc/harness.hpp"
#include "fncalc/lifts.hpp"

namespace {

using namespace fncalc;

constexpr double kStructureBudget = 30.0;   // seconds, criterion 2
constexpr double kAnchorBudget = 1.0;       // seconds, criterion 1
constexpr double kBerwaldBudget = 300.0;    // seconds, criterion 5
constexpr std::size_t kCrossSamples = 100;  // criterion 6
constexpr std::uint64_t kCrossSeed = 1;

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

ModelSpec spec_f1() { return generate(ModelKind::flat, 1, 1, 42); }
ModelSpec spec_q1() { return generate(ModelKind::q1, 1, 1, 42); }
ModelSpec spec_r2() { return generate(ModelKind::r2, 2, 1, 42); }

Report run(const ModelSpec& spec, const std::vector<std::string>& suites, Backend backend = Backend::exact) {
  RunOptions o;
  o.suites = suites;
  o.backend = backend;
  o.samples = kCrossSamples;
  o.seed = kCrossSeed;
  return run_suites(spec, o);
}

const Row* find_row(const Report& r, const std::string& id) {
  for (const auto& x : r.rows) {
    if (x.id == id) return &x;
  }
  return nullptr;
}

std::string describe(const Report& r, const Row& x) {
  std::string s = r.model_id + " " + x.id + " " + to_string(x.verdict);
  if (!x.reason.empty()) s += " (" + x.reason + ")";
  if (!x.witness.empty()) s += " [" + x.witness + "]";
  return s;
}

// Every row of the report passes, except the listed ids which must carry the
// given verdict.
void require_all_pass(Outcome& out, const Report& r, const std::map<std::string, Verdict>& allowed = {}) {
  for (const auto& x : r.rows) {
    const auto it = allowed.find(x.id);
    const Verdict want = it == allowed.end() ? Verdict::pass : it->second;
    out.require(x.verdict == want, describe(r, x) + ", expected " + to_string(want));
  }
}

void require_row(Outcome& out, const Report& r, const std::string& id, Verdict v) {
  const Row* x = find_row(r, id);
  out.require(x != nullptr, r.model_id + " has no row " + id);
  if (x) out.require(x->verdict == v, describe(r, *x) + ", expected " + to_string(v));
}

Outcome anchor_conventions() {
  Outcome out;
  Clock clock;
  const Model m = build_model(spec_f1());
  const VecForm1& j = m.l;
  const VecField& c = m.c;
  out.require(m.spray.has_value(), "F1 has no spray");
  if (!m.spray) return out;
  const VecField& s = *m.spray;
  out.require(lie_derivative(c, j) == -j, "[C,J] != -J: " + first_nonzero("[C,J]+J", lie_derivative(c, j) + j));
  out.require(fn_bracket(j, j).is_zero(), "[J,J] != 0: " + first_nonzero("[J,J]", fn_bracket(j, j)));
  out.require(apply(j, s) == c, "LS != C");
  out.require(lie_bracket(c, s) == s, "[C,S] != S");
  const double t = clock.seconds();
  out.require(t < kAnchorBudget, "runtime " + std::to_string(t) + " s exceeds budget");
  return out;
}

Outcome structure_suite() {
  Outcome out;
  Clock clock;
  for (const ModelSpec& spec : {spec_f1(), spec_q1(), spec_r2()}) require_all_pass(out, run(spec, {"structure"}));
  const double t = clock.seconds();
  out.require(t < kStructureBudget, "runtime " + std::to_string(t) + " s exceeds budget");
  return out;
}

Outcome connection_suites() {
  Outcome out;
  for (const ModelSpec& spec : {spec_q1(), spec_r2()}) require_all_pass(out, run(spec, {"connection", "induced"}));
  return out;
}

Outcome lift_suite() {
  Outcome out;
  const std::vector<std::string> s{"lift"};
  const Report f = run(spec_f1(), s), q = run(spec_q1(), s), r = run(spec_r2(), s);
  const Report rb = run(generate(ModelKind::r2b, 2, 1, 42), s);
  // Without a given B the admissibility row has nothing to check.
  require_all_pass(out, f, {{"lift.b_admissible", Verdict::skipped}});
  require_all_pass(out, q, {{"lift.b_admissible", Verdict::skipped}});
  require_all_pass(out, r, {{"lift.b_admissible", Verdict::skipped}, {"lift.symmetric_lift", Verdict::skipped}});
  const Row* sym = find_row(r, "lift.symmetric_lift");
  out.require(sym && sym->witness.find("Omega") != std::string::npos && sym->witness.find(" = 0") == std::string::npos,
              "R2 symmetric-lift probe does not exhibit a nonzero Omega coefficient");
  // Nonzero admissible B: connection-generic identities must pass; the
  // displayed curvature formulas may only be recorded as FAIL-FORMULA with a
  // witness.
  for (const auto& x : rb.rows) {
    const bool formula = catalog_entry(x.id).kind == CheckKind::formula;
    if (formula) {
      out.require(x.verdict == Verdict::pass || (x.verdict == Verdict::fail_formula && !x.witness.empty()),
                  describe(rb, x));
    } else if (x.id != "lift.symmetric_lift") {
      out.require(x.verdict == Verdict::pass, describe(rb, x) + ", expected PASS");
    }
  }
  require_row(out, rb, "lift.b_admissible", Verdict::pass);
  for (const Report* rep : {&f, &q, &r, &rb}) require_row(out, *rep, "lift.q_vanishes", Verdict::pass);
  for (const auto& x : rb.rows) {
    if (x.verdict == Verdict::fail_formula) std::cout << "    recorded: " << describe(rb, x) << "\n";
  }
  return out;
}

void require_equivalence(Outcome& out, const Report& r, bool expected) {
  const Row* x = find_row(r, "berwald.flatness_equivalence");
  out.require(x && x->verdict == Verdict::pass, r.model_id + " flatness equivalence does not pass");
  if (!x) return;
  out.require(!x->conditions.empty(), r.model_id + " flatness equivalence has no conditions");
  for (const auto& [label, holds] : x->conditions) {
    out.require(holds == expected, r.model_id + " " + label + (holds ? " holds" : " fails"));
  }
}

Outcome berwald_suite() {
  Outcome out;
  Clock clock;
  const Report r = run(spec_r2(), {"berwald"});
  require_all_pass(out, r);
  require_equivalence(out, r, false);
  require_equivalence(out, run(spec_q1(), {"berwald"}), true);
  require_equivalence(out, run(spec_f1(), {"berwald"}), true);
  const Model m = build_model(spec_r2());
  out.require(m.conn && !m.conn->curvature().is_zero(), "R2 curvature vanishes");
  // Budget case: n = 2 with coefficient degree 3, every suite.
  Clock heavy;
  const Report big = run(generate(ModelKind::r2, 2, 3, 42), {"all"});
  const double t = heavy.seconds();
  std::cout << "    degree-3 run " << big.model_id << ": " << std::fixed << std::setprecision(1) << t << " s\n";
  require_all_pass(out, big, {{"lift.b_admissible", Verdict::skipped}, {"lift.symmetric_lift", Verdict::skipped}});
  out.require(t < kBerwaldBudget, "degree-3 run " + std::to_string(t) + " s exceeds budget");
  return out;
}

Outcome backend_cross_validation() {
  Outcome out;
  for (const ModelSpec& spec : {spec_f1(), spec_q1(), spec_r2()}) {
    const Report e = run(spec, {"all"}, Backend::exact);
    const Report p = run(spec, {"all"}, Backend::points);
    out.require(e.rows.size() == p.rows.size(), spec.id + " row counts differ");
    for (std::size_t i = 0; i < std::min(e.rows.size(), p.rows.size()); ++i) {
      out.require(e.rows[i].id == p.rows[i].id && e.rows[i].verdict == p.rows[i].verdict,
                  spec.id + " " + e.rows[i].id + ": exact " + to_string(e.rows[i].verdict) + ", points " +
                      to_string(p.rows[i].verdict));
    }
  }
  const ModelSpec bad = generate(ModelKind::corrupted, 1, 1, 42);
  for (const Backend b : {Backend::exact, Backend::points}) {
    const Report r = run(bad, {"all"}, b);
    const Row* x = find_row(r, "structure.connection_axioms");
    out.require(x && x->verdict == Verdict::fail && !x->witness.empty(),
                "corrupted model does not FAIL with a witness on the " + to_string(b) + " backend");
    out.require(exit_code(r) == 1, "corrupted model exit code is not 1 on the " + to_string(b) + " backend");
  }
  return out;
}

Outcome golden_values() {
  Outcome out;
  const Model m = build_model(spec_q1());
  if (!m.conn) {
    out.require(false, "Q1 has no connection");
    return out;
  }
  const auto names = variable_names(2);
  auto field = [&](const std::string& a, const std::string& b) {
    VecField x(2);
    x(0) = parse_poly(a, names);
    x(1) = parse_poly(b, names);
    return x;
  };
  auto show = [&](const VecField& x) { return "(" + x(0).to_string(names) + ", " + x(1).to_string(names) + ")"; };
  auto compare = [&](const std::string& what, const VecField& got, const VecField& want) {
    out.require(got == want, what + ": engine " + show(got) + ", stated " + show(want));
  };
  const VecField ex = coordinate_field(2, 0), ey = coordinate_field(2, 1);
  compare("Gamma(d_x)", apply(m.conn->gamma(), ex), field("1", "-4*x*y"));
  const LinearConnection d = berwald_lift(*m.conn);
  compare("D_{d_x} d_y", d.derivative(ex, ey), field("0", "2*x"));
  compare("D_{d_x} d_x", d.derivative(ex, ex), field("2*x", "2*y + 4*x^2*y"));
  compare("K(d_x)", apply(connection_map(d, m.conn->base()).k, ex), field("0", "2*x*y"));
  return out;
}

struct Criterion {
  int number;
  std::string summary;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "anchor conventions on F1", anchor_conventions},
      {2, "structure suite on F1, Q1, R2", structure_suite},
      {3, "connection and induced suites on the Berwald lifts of Q1, R2", connection_suites},
      {4, "lift suite on F1, Q1, R2 and R2 with nonzero B", lift_suite},
      {5, "Berwald suite on R2, equivalence booleans, degree-3 budget", berwald_suite},
      {6, "exact and points backends agree; corrupted model fails on both", backend_cross_validation},
      {7, "hand-derived golden values for Q1", golden_values},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "criterion numbers to run (default: all)")->check(CLI::Range(1, 7));
  CLI11_PARSE(app, argc, argv);

  bool all_ok = true;
  for (const Criterion& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.number) == only.end()) continue;
    Clock clock;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    all_ok &= o.ok;
    std::cout << (o.ok ? "PASS " : "FAIL ") << c.number << " " << c.summary << " (" << std::fixed
              << std::setprecision(2) << clock.seconds() << " s)\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
  }
  return all_ok ? 0 : 1;
}
