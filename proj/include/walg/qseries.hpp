#pragma once

#include "walg/rat.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace walg {

class QSeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated series sum_n a_n q^{offset + n/D}; coefficients are known exactly for n/D <= cutoff.
class QSeries {
 public:
  QSeries(long denominator, Rat offset, Rat cutoff);

  static QSeries one(long denominator, const Rat& cutoff);
  /// Polynomial sum c_k q^{e_k} with integer or rational exponents on the lattice 1/D.
  static QSeries polynomial(long denominator, const std::vector<std::pair<Rat, Rat>>& terms, const Rat& cutoff);

  long denominator() const { return denominator_; }
  const Rat& offset() const { return offset_; }
  /// Largest level (exponent minus offset) with a valid coefficient.
  const Rat& cutoff() const { return cutoff_; }
  const std::map<long, Rat>& coefficients() const { return coeffs_; }

  /// Coefficient of q^{offset + level}; throws when the level is beyond the cutoff or off the lattice.
  Rat coeff_at_level(const Rat& level) const;
  /// Coefficient of q^{exponent}.
  Rat coeff_at_exponent(const Rat& exponent) const;

  /// Same series on the finer lattice 1/D', D' a multiple of D.
  QSeries rescaled(long denominator) const;
  /// Same series expressed with a different offset (the difference must lie on the lattice).
  QSeries with_offset(const Rat& offset) const;
  QSeries times_power(const Rat& exponent) const;
  /// Drops the validity bound to min(cutoff, level).
  QSeries truncated(const Rat& level) const;
  /// Multiplicative inverse; requires the level-0 coefficient to be nonzero and no negative levels.
  QSeries inverse() const;

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const Rat& c);
  friend bool operator==(const QSeries& a, const QSeries& b);

  /// Absolute exponent/coefficient pairs in increasing order.
  std::vector<std::pair<Rat, Rat>> terms() const;
  /// "exponent: coefficient" lines.
  std::string str() const;

 private:
  void set(long n, const Rat& c);
  Rat lowest_level() const;

  long denominator_;
  Rat offset_;
  Rat cutoff_;
  std::map<long, Rat> coeffs_;
};

/// Product over n >= 1 of (1 - q^n), to integer cutoff.
QSeries phi(long cutoff);
/// Product over n >= k of (1 - q^n).
QSeries phi_trunc(long k, long cutoff);
/// Number of partitions of n, by direct enumeration (independent of the series code).
Int partition_count(long n);

long character_denominator(int p);
/// q^{-c/24} times the product over generator weights h of 1/phi_h.
QSeries verma_character(const std::vector<int>& weights, const Rat& c, long cutoff, long denominator = 24);
/// Triplet weights: 2 and three times 2p-1, at c = c_{p,1}.
QSeries triplet_verma_character(int p, long cutoff);
/// q^{-1/24}/phi * sum_n (2n+1) q^{(2np+p-1)^2/(4p)}, with the theta sum restricted to |n| <= n_max.
QSeries triplet_character(int p, long cutoff);
QSeries triplet_character_with_terms(int p, long cutoff, long n_max);
/// Smallest n_max such that every omitted theta term lies above the cutoff.
long theta_n_max(int p, long cutoff);
/// q^{-c/24} (1/phi_2 + 3 q^{2p-1}(1 - q^3)/(phi phi_{2p-1}^2)).
QSeries chi_tilde(int p, long cutoff);

Rat diff_at_level(const QSeries& a, const QSeries& b, const Rat& level);

/// The series multiplied by phi and by q^{-offset}: the numerator polynomial of the character.
QSeries bracket_expansion(const QSeries& character);

}  // namespace walg
