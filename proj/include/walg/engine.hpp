#pragma once

#include "walg/algebra.hpp"

#include <memory>
#include <mutex>
#include <unordered_map>

namespace walg {

/// Coefficient of (phi_k)_{m+n} in [(phi_i)_m, (phi_j)_n] for a quasi-primary channel phi_k.
Rat p_poly(int h_i, int h_j, int h_k, int m, int n);

/// Coefficient of C_ij^k d^{h(ijk)+n} phi_k in the quasi-primary product N(phi_j, d^n phi_i),
/// obtained by removing the sl2 descendant of phi_k from the leading N-product terms.
Rat qp_correction(int h_i, int h_j, int h_k, int n);

/// [a, b] = central * 1 + sum coeff * mode.
struct Bracket {
  Poly central;
  std::vector<std::pair<Poly, Mode>> terms;
};

class MissingDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact rewriting engine over one algebra spec. Results are memoized; the caches are guarded so a
/// single engine may be shared between threads.
class Engine {
 public:
  explicit Engine(AlgebraSpec spec);

  const AlgebraSpec& spec() const { return spec_; }

  Bracket bracket(Mode a, Mode b) const;

  /// Applies one mode to a canonical state and returns the canonical result.
  State apply_mode(Mode m, const State& s) const;
  State apply_mode(Mode m, const Word& canonical) const;

  /// Rewrites an arbitrary sequence of modes acting on the vacuum into canonical form.
  State normal_order(const Word& formal) const;
  State normal_order(const WordSum& formal) const;

  /// Mode n of a composite field expression applied to a canonical state.
  State field_mode_apply(const FieldExprPtr& f, int n, const State& s) const;
  State field_mode_apply(const FieldExprPtr& f, int n, const Word& canonical) const;

  /// Expands the quasi-primary normal ordered product N(phi_j, d^n phi_i) into a linear combination
  /// of N-products and derivatives of registered quasi-primaries.
  FieldExprPtr qp_nop(const std::string& phi_j, const std::string& phi_i, int n = 0) const;

  /// Field whose state is the given canonical state.
  FieldExprPtr field_of_state(const State& s) const;
  /// State of a field: its mode -h applied to the vacuum.
  State state_of(const FieldExprPtr& f) const;

  int weight(const FieldExprPtr& f) const;

  /// Total number of memoized entries (diagnostics).
  std::size_t cache_size() const;

 private:
  struct WordKey {
    const void* tag;
    int a, b;
    Word word;
    friend bool operator==(const WordKey&, const WordKey&) = default;
  };
  struct WordKeyHash {
    std::size_t operator()(const WordKey& k) const;
  };

  State apply_uncached(Mode m, const Word& w) const;
  State field_uncached(const FieldExprPtr& f, int n, const Word& w) const;
  FieldExprPtr expansion(const FieldExprPtr& qp) const;
  Poly channel_constant(FieldId i, FieldId j, FieldId k) const;

  AlgebraSpec spec_;
  mutable std::mutex apply_mutex_;
  mutable std::unordered_map<WordKey, State, WordKeyHash> apply_cache_;
  mutable std::mutex field_mutex_;
  mutable std::unordered_map<WordKey, State, WordKeyHash> field_cache_;
  mutable std::vector<FieldExprPtr> pinned_fields_;
  mutable std::mutex bracket_mutex_;
  mutable std::map<std::pair<Mode, Mode>, Bracket> bracket_cache_;
  mutable std::mutex expansion_mutex_;
  mutable std::map<const FieldExpr*, FieldExprPtr> expansions_;
  mutable std::vector<FieldExprPtr> pinned_expansions_;
};

}  // namespace walg
