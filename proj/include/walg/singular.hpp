#pragma once

#include "walg/engine.hpp"
#include "walg/linsolve.hpp"
#include "walg/specs.hpp"

#include <map>
#include <string>
#include <vector>

namespace walg {

/// Coefficients of the level-6 singular vectors of the triplet algebra at p = 2:
/// N^{ab} = W^a_{-3}W^b_{-3} - delta_ab (l2_cubed L_{-2}^3 + l3_squared L_{-3}^2 + l4_l2 L_{-4}L_{-2} + l6 L_{-6})
///          + I eps_abc (w4_l2 W^c_{-4}L_{-2} + w6 W^c_{-6}).
struct NullCoefficients {
  Rat l2_cubed = make_rat(8, 9);
  Rat l3_squared = make_rat(19, 36);
  Rat l4_l2 = make_rat(14, 9);
  Rat l6 = make_rat(-16, 9);
  Rat w4_l2 = make_rat(-2);
  Rat w6 = make_rat(5, 4);

  /// (name, value) pairs in declaration order; names are used for dependency flags.
  std::vector<std::pair<std::string, Rat>> entries() const;
  Rat& at(const std::string& name);
};

/// Levi-Civita symbol on {1, 2, 3}.
int levi_civita(int a, int b, int c);

/// N^{ab} as formal words over the fields T, W1, W2, W3 of `spec`; a, b in {1, 2, 3}.
WordSum triplet_p2_null_vector(const AlgebraSpec& spec, int a, int b, const NullCoefficients& coeffs = {});

struct SingularReport {
  bool singular = true;
  /// One line per nonvanishing image, e.g. "L_1 N^{12}: <state>".
  std::vector<std::string> failures;
};

/// Applies every positive mode of every generator up to the level of N^{ab} (which includes L_1
/// and L_2) to all six N^{ab}, without projection.
SingularReport verify_singular_p2(const AlgebraSpec& spec, const NullCoefficients& coeffs = {});

struct SingularSolveReport {
  std::size_t equations = 0;
  bool consistent = false;
  /// Pivot constants expressed through the free ones.
  std::map<std::string, Poly> values;
  std::vector<std::string> free;
};

/// Treats d, C_ab^T, C_ab^Lam, C_ab^Wc, C_ab^TWc as unknowns and solves the annihilation equations.
SingularSolveReport solve_singular_p2(const NullCoefficients& coeffs = {});

}  // namespace walg
