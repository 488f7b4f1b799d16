#pragma once

#include "walg/engine.hpp"

#include <array>
#include <string>
#include <vector>

namespace walg {

/// How N^{(D)}(W,W)_{-2D-1}|0> = (W_{-D} W_{-D-1} + W_{-D-1} W_{-D})|0> enters the length-(D-1)
/// bookkeeping of N^{aa}_{-2D-1}|0>.
enum class PairBookkeeping {
  /// The pair is matched as bare words with no Virasoro content; its reordering commutator is only
  /// produced once L_2 acts on it.
  RawPair,
  /// The pair is normal ordered before matching, so its commutator enters the xi matching too.
  NormalOrdered,
};

struct BetaGammaWW {
  Poly beta_ww;
  Poly gamma_ww;
  Rat beta_ww_prime;
};

struct XiSolution {
  State lhs;                // L_{-1} applied to the length-(D-1) ansatz, projected
  State known;              // the part of N^{aa}_{-2D-1}|0> fixed by the quasi-primary product
  std::array<Poly, 3> xi;   // coefficients of L_{-5}L_{-2}^{D-2}, L_{-4}L_{-3}L_{-2}^{D-3}, L_{-3}^3 L_{-2}^{D-4}
};

struct PrimaryRoute {
  XiSolution xi;
  State l2_image;  // L_2 N^{aa}_{-2D-1}|0>, projected, with B symbolic
  Poly b_primary;
};

struct DerivationReport {
  int p = 0;
  int delta = 0;
  Rat beta_ww_prime;
  Poly beta_ww, gamma_ww;
  Poly beta, gamma;
  Poly b_quasiprimary;
  Poly gamma_sum;
  std::array<Poly, 3> xi;
  Poly b_primary;
  bool alpha_zero_consistent = false;
  Poly difference;
  Rat p_top, p_descend, p_shift_left, p_shift_right;  // p(2-D,-D), p(-D,-D-1), p(2-D,-D-1), p(1-D,-D)
  State b_free_l2_image;
  std::size_t discarded_words = 0;
  PrimaryRoute normal_ordered_audit;
  std::vector<std::string> assumptions;
};

/// Length-(D-1) computation for the weight D = 2p-1 triplet generator with C = C_WW^{N(T^{D-1})}
/// and B, the aggregate L_{-4}L_{-2}^{D-2} coefficient of the extra quasi-primaries, as symbols.
class Derivation {
 public:
  explicit Derivation(int p);

  int p() const { return p_; }
  int delta() const { return delta_; }
  const Engine& engine() const { return engine_; }

  static Poly symbol_c();
  static Poly symbol_b();

  /// L_{-k_1} ... L_{-k_r} |0> for the listed positive k.
  Word virasoro_word(const std::vector<int>& ks) const;
  Word top_word() const;          // L_{-2}^{D-1}
  Word beta_word() const;         // L_{-4} L_{-2}^{D-2}
  Word gamma_word() const;        // L_{-3}^2 L_{-2}^{D-3}
  Word primary_word() const;      // L_{-3} L_{-2}^{D-2}
  std::array<Word, 3> xi_words() const;
  State project(const State& s, std::size_t* discarded = nullptr) const;

  /// N(W,W)_{-2D}|0> projected to length D-1.
  State nww_state() const;
  BetaGammaWW beta_gamma_ww() const;
  /// L_2 (W_{-D}W_{-D} + beta L_{-4}L_{-2}^{D-2} + gamma L_{-3}^2 L_{-2}^{D-3})|0>, projected.
  State l2_ansatz(const Poly& beta, const Poly& gamma) const;
  Poly solve_b_quasiprimary() const;
  Poly gamma_sum(const Poly& b) const;
  XiSolution descend_and_solve_xi(const Poly& b, PairBookkeeping mode) const;
  PrimaryRoute solve_b_primary(PairBookkeeping mode) const;

  DerivationReport report() const;

 private:
  State ansatz(const Poly& beta, const Poly& gamma) const;
  State correction_part(int n) const;
  State pair_words() const;

  int p_, delta_;
  Engine engine_;
  FieldId t_, w_;
};

/// Largest p accepted by Derivation (build configuration).
int max_derivation_p();

DerivationReport alpha_nonzero_report(int p);

/// Closed forms quoted for the comparison columns of the report.
Rat closed_beta_ww_prime(int delta);
Poly closed_b_quasiprimary(int delta);
Poly closed_b_primary(int delta);
std::array<Poly, 3> closed_xi(int delta);
Poly closed_gamma(int delta);

}  // namespace walg
