#pragma once

#include "walg/rat.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace walg {

using SymbolId = std::uint32_t;

/// Process-wide interning of symbol names. Safe for concurrent use.
SymbolId intern_symbol(std::string_view name);
const std::string& symbol_name(SymbolId id);

/// The reserved imaginary unit, with I^2 = -1.
SymbolId imaginary_unit();

bool is_valid_symbol_name(std::string_view name);

struct Monomial {
  std::vector<std::pair<SymbolId, unsigned>> factors;  // sorted by id, exponents > 0

  bool empty() const { return factors.empty(); }
  unsigned degree(SymbolId s) const;
  unsigned total_degree() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Multivariate polynomial over Q with the rule I^2 = -1 applied on construction.
class Poly {
 public:
  using Term = std::pair<Monomial, Rat>;

  Poly() = default;
  Poly(const Rat& c);  // NOLINT(google-explicit-constructor)
  Poly(long c);        // NOLINT(google-explicit-constructor)

  static Poly symbol(std::string_view name);
  static Poly symbol(SymbolId id);
  static Poly i_unit();

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Throws std::domain_error when the polynomial is not constant.
  Rat constant_value() const;
  /// Constant term (coefficient of the empty monomial).
  Rat constant_term() const;

  const std::vector<Term>& terms() const { return terms_; }
  std::vector<SymbolId> symbols() const;
  unsigned degree(SymbolId s) const;

  /// Coefficient of s^k viewed as a polynomial in s.
  Poly coefficient(SymbolId s, unsigned k) const;
  Poly substitute(SymbolId s, const Poly& value) const;
  Poly substitute(const std::map<SymbolId, Poly>& values) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& c);
  Poly& operator/=(const Rat& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
  friend Poly operator/(Poly a, const Rat& c) { return a /= c; }
  friend Poly operator-(Poly a) { return a *= Rat(-1); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// Deterministic rendering: terms ordered lexicographically by symbol name, then power.
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rat& c);
  std::vector<Term> terms_;  // sorted by Monomial, no zero coefficients
};

/// Parses sums of products of rationals, symbols and powers; '/' only by constants.
Poly parse_poly(std::string_view text);

std::string to_string(const Poly& p);

}  // namespace walg
