#include "walg/linsolve.hpp"

#include <algorithm>

namespace walg {

namespace {

struct LinearRow {
  std::map<SymbolId, Poly> coeff;
  Poly rest;

  bool has_unknowns() const {
    return std::any_of(coeff.begin(), coeff.end(), [](const auto& kv) { return !kv.second.is_zero(); });
  }
};

LinearRow decompose(const Poly& eq, const std::vector<SymbolId>& unknowns) {
  LinearRow row;
  for (const auto& [mono, c] : eq.terms()) {
    SymbolId hit = 0;
    unsigned count = 0;
    for (const auto& [id, e] : mono.factors) {
      if (std::find(unknowns.begin(), unknowns.end(), id) == unknowns.end()) continue;
      count += e;
      hit = id;
    }
    if (count > 1)
      throw LinearSystemError(LinearSystemError::Kind::NonLinear,
                              "equation '" + eq.str() + "' is not linear in the unknowns");
    Monomial rest;
    for (const auto& f : mono.factors)
      if (count == 0 || f.first != hit) rest.factors.push_back(f);
    Poly term;
    Poly one(c);
    for (const auto& [id, e] : rest.factors)
      for (unsigned k = 0; k < e; ++k) one = one * Poly::symbol(id);
    term = one;
    if (count == 0)
      row.rest += term;
    else
      row.coeff[hit] += term;
  }
  return row;
}

void axpy(LinearRow& target, const LinearRow& source, const Poly& factor) {
  for (const auto& [u, c] : source.coeff) target.coeff[u] -= factor * c;
  target.rest -= factor * source.rest;
}

}  // namespace

LinearSolution solve_linear_system(const std::vector<Poly>& equations, const std::vector<SymbolId>& unknowns) {
  std::vector<LinearRow> rows;
  rows.reserve(equations.size());
  for (const auto& eq : equations) rows.push_back(decompose(eq, unknowns));

  std::vector<bool> used(rows.size(), false);
  std::vector<std::pair<SymbolId, std::size_t>> pivots;
  LinearSolution sol;

  for (SymbolId u : unknowns) {
    std::size_t pick = rows.size();
    bool saw_symbolic = false;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r]) continue;
      auto it = rows[r].coeff.find(u);
      if (it == rows[r].coeff.end() || it->second.is_zero()) continue;
      if (it->second.is_constant()) {
        pick = r;
        break;
      }
      saw_symbolic = true;
    }
    if (pick == rows.size()) {
      if (saw_symbolic)
        throw LinearSystemError(LinearSystemError::Kind::NonConstantPivot,
                                "unknown '" + symbol_name(u) + "' only has non-constant coefficients");
      sol.free.push_back(u);
      continue;
    }
    used[pick] = true;
    Rat pivot = rows[pick].coeff[u].constant_value();
    for (auto& [v, c] : rows[pick].coeff) c /= pivot;
    rows[pick].rest /= pivot;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == pick) continue;
      auto it = rows[r].coeff.find(u);
      if (it == rows[r].coeff.end() || it->second.is_zero()) continue;
      Poly factor = it->second;
      axpy(rows[r], rows[pick], factor);
    }
    pivots.emplace_back(u, pick);
  }

  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (used[r]) continue;
    if (rows[r].has_unknowns()) continue;
    if (!rows[r].rest.is_zero())
      throw LinearSystemError(LinearSystemError::Kind::Inconsistent,
                              "inconsistent system, residual " + rows[r].rest.str());
  }

  for (const auto& [u, r] : pivots) {
    Poly value = -rows[r].rest;
    for (const auto& [v, c] : rows[r].coeff) {
      if (v == u || c.is_zero()) continue;
      value -= c * Poly::symbol(v);
    }
    sol.values[u] = value;
  }
  return sol;
}

std::map<SymbolId, Poly> solve_linear(const std::vector<Poly>& equations, const std::vector<SymbolId>& unknowns) {
  LinearSolution sol = solve_linear_system(equations, unknowns);
  if (!sol.free.empty()) {
    std::string names;
    for (SymbolId u : sol.free) names += (names.empty() ? "" : ", ") + symbol_name(u);
    throw LinearSystemError(LinearSystemError::Kind::Underdetermined, "underdetermined unknowns: " + names);
  }
  return sol.values;
}

}  // namespace walg
