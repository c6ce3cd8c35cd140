#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fncalc/tensor.hpp"

namespace fncalc {

// A named tensor that must vanish identically. Entries are flattened with the
// value component first, then the argument slots.
struct Residual {
  std::string name;
  std::size_t dim = 0;
  std::size_t rank = 0;
  std::vector<Poly> entries;

  bool is_zero() const;
  // Label of entry `flat`, e.g. "T(e_x1, e_x2)[y1]".
  std::string label(std::size_t flat) const;
  // Label and value of the first nonzero entry; empty if zero.
  std::string witness() const;
};

template <std::size_t R>
Residual residual(std::string name, const Tensor<R>& t) {
  Residual r{std::move(name), t.dim(), R, {}};
  r.entries.assign(t.data().begin(), t.data().end());
  return r;
}
inline Residual residual(std::string name, const VecForm2& t) { return residual(std::move(name), t.tensor()); }

// A residual that vanishes iff a boolean flag holds; used for facts decided
// outside the polynomial ring (e.g. a nonzero minor exists).
Residual flag_residual(std::string name, bool holds, std::size_t dim);

// A property that holds iff every residual vanishes.
struct Condition {
  std::string label;
  std::vector<Residual> residuals;
};

enum class CheckKind {
  identity,   // every condition must hold
  formula,    // like identity; failure is a FAIL-FORMULA discrepancy
  agreement,  // all conditions hold or none does
};

// One report row in symbolic form; a backend turns it into a verdict.
// When a premise fails under the backend the row is SKIPPED, which makes an
// identity with premises an implication.
struct Check {
  std::string suite;
  std::string id;
  std::string statement;
  CheckKind kind = CheckKind::identity;
  std::vector<Condition> premises;
  std::vector<Condition> conditions;
  std::optional<std::string> skip_reason;

  Check& given(Condition premise) {
    premises.push_back(std::move(premise));
    return *this;
  }
};

Check identity_check(std::string suite, std::string id, std::string statement, std::vector<Residual> residuals);
Check formula_check(std::string suite, std::string id, std::string statement, std::vector<Residual> residuals);
Check agreement_check(std::string suite, std::string id, std::string statement, std::vector<Condition> conditions);
Check skipped_check(std::string suite, std::string id, std::string statement, std::string reason);

// True iff every residual of every condition is identically zero.
bool holds_exactly(const Condition& c);

}  // namespace fncalc
