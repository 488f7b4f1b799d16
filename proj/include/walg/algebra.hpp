#pragma once

#include "walg/poly.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace walg {

using FieldId = std::uint16_t;

struct FieldExpr;
using FieldExprPtr = std::shared_ptr<const FieldExpr>;

/// Expression tree for fields built from named fields by derivatives and normal ordering.
struct FieldExpr {
  enum class Kind { Identity, Field, Derivative, NProduct, QuasiPrimaryProduct, LinComb };

  Kind kind = Kind::Identity;
  std::string symbol;  // Field
  FieldExprPtr left;   // Derivative operand; NProduct / QuasiPrimaryProduct first argument
  FieldExprPtr right;  // NProduct / QuasiPrimaryProduct second argument
  int order = 0;       // derivative order, N-product index m, or derivative count n of the second argument
  std::vector<std::pair<Poly, FieldExprPtr>> terms;  // LinComb
};

namespace fx {
FieldExprPtr identity();
FieldExprPtr field(const std::string& symbol);
FieldExprPtr derivative(FieldExprPtr f, int order = 1);
/// N^{(m)}(phi, psi).
FieldExprPtr nprod(int m, FieldExprPtr phi, FieldExprPtr psi);
/// Quasi-primary normal ordered product of phi_j with the n-th derivative of phi_i.
FieldExprPtr qp(FieldExprPtr phi_j, FieldExprPtr phi_i, int n = 0);
FieldExprPtr lincomb(std::vector<std::pair<Poly, FieldExprPtr>> terms);
std::string describe(const FieldExprPtr& f);
}  // namespace fx

/// Error raised by spec validation; `location` points at the offending entry.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string location, const std::string& what)
      : std::runtime_error(location + ": " + what), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

enum class MissingConstants { Error, Zero, Symbolic };

struct FieldInfo {
  std::string symbol;
  int weight = 0;
  bool generator = true;
  FieldExprPtr definition;  // composites only
};

struct ThreePoint {
  FieldId i, j, k;
  Poly value;
};

/// Generators, registered quasi-primary composites and the data fixing the mode commutators.
class AlgebraSpec {
 public:
  Poly central_charge;
  MissingConstants missing = MissingConstants::Error;

  FieldId add_generator(const std::string& symbol, int weight);
  FieldId add_composite(const std::string& symbol, int weight, FieldExprPtr definition);
  void set_two_point(const std::string& i, const std::string& j, const Poly& value);
  void set_structure_constant(const std::string& i, const std::string& j, const std::string& k, const Poly& value);
  void add_three_point(const std::string& i, const std::string& j, const std::string& k, const Poly& value);

  std::size_t field_count() const { return fields_.size(); }
  const FieldInfo& field(FieldId id) const { return fields_.at(id); }
  std::optional<FieldId> find(const std::string& symbol) const;
  FieldId id(const std::string& symbol) const;
  std::vector<FieldId> generators() const;

  std::optional<Poly> two_point(FieldId i, FieldId j) const;
  /// C_ij^k, falling back to (-1)^{h(ijk)} C_ji^k when only the swapped entry is declared.
  std::optional<Poly> structure_constant(FieldId i, FieldId j, FieldId k) const;
  /// Every declared or symmetry-derived channel k of the pair (i, j), in field order.
  std::vector<std::pair<FieldId, Poly>> channels(FieldId i, FieldId j) const;
  bool has_commutator_data(FieldId i, FieldId j) const;

  const std::map<std::tuple<FieldId, FieldId, FieldId>, Poly>& declared_constants() const { return constants_; }
  const std::map<std::pair<FieldId, FieldId>, Poly>& declared_two_point() const { return two_point_; }
  const std::vector<ThreePoint>& three_point() const { return three_point_; }

  /// Structural checks: weights, h(ijk) >= 1, composite definitions, two-point symmetry.
  void validate() const;

 private:
  std::vector<FieldInfo> fields_;
  std::map<std::string, FieldId> index_;
  std::map<std::pair<FieldId, FieldId>, Poly> two_point_;
  std::map<std::tuple<FieldId, FieldId, FieldId>, Poly> constants_;
  std::vector<ThreePoint> three_point_;
};

/// A mode phi_n in the physics convention phi(x) = sum phi_n x^{-n-h}.
struct Mode {
  FieldId field = 0;
  int index = 0;

  /// Canonical order: physics index, then declaration order.
  friend auto operator<=>(const Mode& a, const Mode& b) {
    if (auto c = a.index <=> b.index; c != 0) return c;
    return a.field <=> b.field;
  }
  friend bool operator==(const Mode&, const Mode&) = default;
};

/// Modes applied to the vacuum; the leftmost mode acts last.
using Word = std::vector<Mode>;

int word_weight(const Word& w);

/// Finite linear combination of words with polynomial coefficients.
class WordSum {
 public:
  WordSum() = default;
  static WordSum vacuum();
  static WordSum of(const Word& w, const Poly& coeff = Poly(1));

  void add(const Word& w, const Poly& coeff);
  WordSum& operator+=(const WordSum& o);
  WordSum& operator-=(const WordSum& o);
  WordSum& operator*=(const Poly& c);
  friend WordSum operator+(WordSum a, const WordSum& b) { return a += b; }
  friend WordSum operator-(WordSum a, const WordSum& b) { return a -= b; }
  friend WordSum operator*(WordSum a, const Poly& c) { return a *= c; }
  friend WordSum operator*(const Poly& c, WordSum a) { return a *= c; }
  friend bool operator==(const WordSum& a, const WordSum& b) { return a.terms_ == b.terms_; }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Word, Poly>& terms() const { return terms_; }
  Poly coefficient(const Word& w) const;
  Poly vacuum_coefficient() const { return coefficient(Word{}); }
  WordSum substitute(const std::map<SymbolId, Poly>& values) const;

 private:
  std::map<Word, Poly> terms_;
};

/// A vector of the vacuum Verma module written in canonical PBW words.
using State = WordSum;

enum class IndexConvention { Physics, Math };

int convert_index(const AlgebraSpec& spec, Mode m, IndexConvention to);
int math_index(const AlgebraSpec& spec, Mode m);
bool is_creation(const AlgebraSpec& spec, Mode m);
bool is_canonical(const AlgebraSpec& spec, const Word& w);

std::string to_string(const AlgebraSpec& spec, Mode m);
std::string to_string(const AlgebraSpec& spec, const Word& w);
std::string to_string(const AlgebraSpec& spec, const WordSum& s);
/// Inverse of to_string for words and sums, e.g. "(3/2) T_{-4} T_{-2}^2 |0> + (-1) W1_{-6} |0>".
Word parse_word(const AlgebraSpec& spec, std::string_view text);
WordSum parse_word_sum(const AlgebraSpec& spec, std::string_view text);

/// Drops every word with fewer than `length` modes; dropped words go to `discarded` when given.
State project_min_length(const State& s, std::size_t length, State* discarded = nullptr);
/// Keeps exactly the words with `length` modes.
State project_length(const State& s, std::size_t length);

}  // namespace walg
