#include "fncalc/check.hpp"

namespace fncalc {

bool Residual::is_zero() const {
  for (const auto& p : entries) {
    if (!p.is_zero()) return false;
  }
  return true;
}

std::string Residual::label(std::size_t flat) const {
  std::vector<std::size_t> idx(rank + 1);
  for (std::size_t s = rank + 1; s-- > 0;) {
    idx[s] = flat % dim;
    flat /= dim;
  }
  std::string out = name;
  if (rank > 0) {
    out += "(";
    for (std::size_t s = 1; s <= rank; ++s) {
      if (s > 1) out += ", ";
      out += detail::slot_label(dim, idx[s]);
    }
    out += ")";
  }
  return out + "[" + detail::component_label(dim, idx[0]) + "]";
}

std::string Residual::witness() const {
  for (std::size_t f = 0; f < entries.size(); ++f) {
    if (!entries[f].is_zero()) return label(f) + " = " + entries[f].to_string(variable_names(dim));
  }
  return {};
}

Residual flag_residual(std::string name, bool holds, std::size_t dim) {
  Residual r{std::move(name), dim, 0, {}};
  r.entries.assign(dim, Poly(dim));
  if (!holds) r.entries[0] = Poly(dim, Rational(1));
  return r;
}

Check identity_check(std::string suite, std::string id, std::string statement, std::vector<Residual> residuals) {
  Check c{std::move(suite), std::move(id), statement, CheckKind::identity, {}, {}, std::nullopt};
  c.conditions.push_back(Condition{std::move(statement), std::move(residuals)});
  return c;
}

Check formula_check(std::string suite, std::string id, std::string statement, std::vector<Residual> residuals) {
  Check c = identity_check(std::move(suite), std::move(id), std::move(statement), std::move(residuals));
  c.kind = CheckKind::formula;
  return c;
}

Check agreement_check(std::string suite, std::string id, std::string statement, std::vector<Condition> conditions) {
  return Check{std::move(suite), std::move(id), std::move(statement), CheckKind::agreement, {},
               std::move(conditions), std::nullopt};
}

Check skipped_check(std::string suite, std::string id, std::string statement, std::string reason) {
  return Check{std::move(suite), std::move(id), std::move(statement), CheckKind::identity, {}, {},
               std::move(reason)};
}

bool holds_exactly(const Condition& c) {
  for (const auto& r : c.residuals) {
    if (!r.is_zero()) return false;
  }
  return true;
}

}  // namespace fncalc
