#pragma once

#include "walg/poly.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace walg {

class LinearSystemError : public std::runtime_error {
 public:
  enum class Kind { NonLinear, NonConstantPivot, Inconsistent, Underdetermined };
  LinearSystemError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct LinearSolution {
  std::map<SymbolId, Poly> values;  // pivot unknowns, expressed through free unknowns and parameters
  std::vector<SymbolId> free;       // unknowns left undetermined
};

/// Gauss-Jordan elimination over Q. Unknowns must enter with total degree <= 1 and with constant
/// coefficients; other symbols are treated as parameters. Free unknowns are reported, not rejected.
LinearSolution solve_linear_system(const std::vector<Poly>& equations, const std::vector<SymbolId>& unknowns);

/// As above, but a free unknown raises LinearSystemError(Underdetermined).
std::map<SymbolId, Poly> solve_linear(const std::vector<Poly>& equations, const std::vector<SymbolId>& unknowns);

}  // namespace walg
