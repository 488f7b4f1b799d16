#pragma once

#include "walg/algebra.hpp"

#include <string>

namespace walg {

/// c_{p,1} = 1 - 6(p-1)^2/p.
Rat central_charge_p1(int p);
/// Conformal weight 2p-1 of the triplet generators.
int triplet_weight(int p);

AlgebraSpec virasoro_spec(const Poly& c);

/// Constants of [W^a, W^b] for the triplet algebra at p = 2, Cartesian basis W1, W2, W3:
/// d_ab = delta_ab d, C_ab^T = delta_ab k_t, C_ab^Lam = delta_ab k_lam,
/// C_ab^Wc = I eps_abc k_w, C_ab^TWc = I eps_abc k_tw.
struct TripletP2Constants {
  Poly d, k_t, k_lam, k_w, k_tw;

  static TripletP2Constants symbolic();
  /// d = -1, k_t = 3, k_lam = 4, k_w = 5, k_tw = 12/5: the values for which every N^{ab} is singular.
  static TripletP2Constants numeric();
};

/// Generators T, W1, W2, W3 at c = -2, with composites Lam = N(T,T) and TW1..TW3 = N(T, Wa).
AlgebraSpec triplet_p2_spec(const TripletP2Constants& constants);

/// Generators T and one W of weight 2p-1 with the Virasoro composites NT2..NT{2p-2},
/// NTk = N(T, NT{k-1}). C_WW^{NT(2p-2)} is the symbol C; all other channel constants are symbols.
AlgebraSpec derivation_spec(int p);
std::string virasoro_power_symbol(int k);

}  // namespace walg
