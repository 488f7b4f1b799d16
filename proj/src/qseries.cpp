#include "walg/qseries.hpp"

#include "walg/specs.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace walg {

namespace {

long lattice_index(const Rat& level, long denominator, const char* what) {
  Rat scaled = level * denominator;
  if (!is_integer(scaled))
    throw QSeriesError(std::string(what) + " " + to_string(level) + " is not on the lattice 1/" +
                       std::to_string(denominator));
  return scaled.get_num().get_si();
}

long floor_index(const Rat& level, long denominator) {
  Rat scaled = level * denominator;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return q.get_si();
}

Rat level_of(long n, long denominator) { return make_rat(n, denominator); }

}  // namespace

QSeries::QSeries(long denominator, Rat offset, Rat cutoff)
    : denominator_(denominator), offset_(std::move(offset)), cutoff_(std::move(cutoff)) {
  if (denominator_ <= 0) throw QSeriesError("lattice denominator must be positive");
}

QSeries QSeries::one(long denominator, const Rat& cutoff) {
  QSeries s(denominator, Rat(0), cutoff);
  s.set(0, Rat(1));
  return s;
}

QSeries QSeries::polynomial(long denominator, const std::vector<std::pair<Rat, Rat>>& terms, const Rat& cutoff) {
  QSeries s(denominator, Rat(0), cutoff);
  for (const auto& [e, c] : terms) {
    if (e > cutoff) continue;
    long n = lattice_index(e, denominator, "exponent");
    Rat current = s.coeffs_.count(n) ? s.coeffs_.at(n) : Rat(0);
    s.set(n, current + c);
  }
  return s;
}

void QSeries::set(long n, const Rat& c) {
  if (c == 0)
    coeffs_.erase(n);
  else
    coeffs_[n] = c;
}

Rat QSeries::lowest_level() const {
  if (coeffs_.empty()) return cutoff_;
  return level_of(coeffs_.begin()->first, denominator_);
}

Rat QSeries::coeff_at_level(const Rat& level) const {
  if (level > cutoff_)
    throw QSeriesError("level " + to_string(level) + " is beyond the cutoff " + to_string(cutoff_));
  long n = lattice_index(level, denominator_, "level");
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? Rat(0) : it->second;
}

Rat QSeries::coeff_at_exponent(const Rat& exponent) const { return coeff_at_level(exponent - offset_); }

QSeries QSeries::rescaled(long denominator) const {
  if (denominator % denominator_ != 0)
    throw QSeriesError("cannot rescale 1/" + std::to_string(denominator_) + " to 1/" + std::to_string(denominator));
  const long factor = denominator / denominator_;
  QSeries out(denominator, offset_, cutoff_);
  for (const auto& [n, c] : coeffs_) out.coeffs_[n * factor] = c;
  return out;
}

QSeries QSeries::with_offset(const Rat& offset) const {
  Rat shift = offset_ - offset;
  long k = lattice_index(shift, denominator_, "offset difference");
  QSeries out(denominator_, offset, cutoff_ + shift);
  for (const auto& [n, c] : coeffs_) out.coeffs_[n + k] = c;
  return out;
}

QSeries QSeries::times_power(const Rat& exponent) const {
  QSeries out = *this;
  out.offset_ += exponent;
  return out;
}

QSeries QSeries::truncated(const Rat& level) const {
  QSeries out(denominator_, offset_, std::min(cutoff_, level));
  for (const auto& [n, c] : coeffs_)
    if (level_of(n, denominator_) <= out.cutoff_) out.coeffs_[n] = c;
  return out;
}

QSeries QSeries::inverse() const {
  auto lead = coeffs_.find(0);
  if (lead == coeffs_.end() || coeffs_.begin()->first < 0)
    throw QSeriesError("inverse needs a nonzero level-0 coefficient and no negative levels");
  long g = 0;
  for (const auto& [n, c] : coeffs_) g = std::gcd(g, n);
  if (g == 0) g = 1;
  const long top = floor_index(cutoff_, denominator_);
  const Rat inv0 = 1 / lead->second;
  QSeries out(denominator_, -offset_, cutoff_);
  std::vector<Rat> b;
  for (long n = 0; n <= top; n += g) {
    Rat acc = n == 0 ? Rat(1) : Rat(0);
    for (const auto& [k, a] : coeffs_) {
      if (k == 0) continue;
      if (k > n) break;
      acc -= a * b[(n - k) / g];
    }
    acc *= inv0;
    b.push_back(acc);
    out.set(n, acc);
  }
  return out;
}

QSeries operator+(const QSeries& a0, const QSeries& b0) {
  const long d = std::lcm(a0.denominator_, b0.denominator_);
  const Rat offset = std::min(a0.offset_, b0.offset_);
  QSeries a = a0.rescaled(d).with_offset(offset), b = b0.rescaled(d).with_offset(offset);
  QSeries out(d, offset, std::min(a.cutoff_, b.cutoff_));
  const long top = floor_index(out.cutoff_, d);
  for (const auto* s : {&a, &b})
    for (const auto& [n, c] : s->coeffs_) {
      if (n > top) continue;
      auto it = out.coeffs_.find(n);
      out.set(n, (it == out.coeffs_.end() ? Rat(0) : it->second) + c);
    }
  return out;
}

QSeries operator*(const QSeries& a, const Rat& c) {
  QSeries out(a.denominator_, a.offset_, a.cutoff_);
  for (const auto& [n, v] : a.coeffs_) out.set(n, v * c);
  return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + b * Rat(-1); }

QSeries operator*(const QSeries& a0, const QSeries& b0) {
  const long d = std::lcm(a0.denominator_, b0.denominator_);
  QSeries a = a0.rescaled(d), b = b0.rescaled(d);
  Rat cutoff = std::min(a.cutoff_ + b.lowest_level(), b.cutoff_ + a.lowest_level());
  QSeries out(d, a.offset_ + b.offset_, cutoff);
  const long top = floor_index(cutoff, d);
  std::map<long, Rat> acc;
  for (const auto& [i, x] : a.coeffs_)
    for (const auto& [j, y] : b.coeffs_) {
      if (i + j > top) break;
      acc[i + j] += x * y;
    }
  for (const auto& [n, c] : acc) out.set(n, c);
  return out;
}

bool operator==(const QSeries& a, const QSeries& b) {
  return a.denominator_ == b.denominator_ && a.offset_ == b.offset_ && a.cutoff_ == b.cutoff_ &&
         a.coeffs_ == b.coeffs_;
}

std::vector<std::pair<Rat, Rat>> QSeries::terms() const {
  std::vector<std::pair<Rat, Rat>> out;
  for (const auto& [n, c] : coeffs_) out.emplace_back(offset_ + level_of(n, denominator_), c);
  return out;
}

std::string QSeries::str() const {
  std::ostringstream os;
  for (const auto& [e, c] : terms()) os << to_string(e) << ": " << to_string(c) << "\n";
  return os.str();
}

QSeries phi_trunc(long k, long cutoff) {
  if (k < 1) throw QSeriesError("phi_trunc needs k >= 1");
  std::vector<Int> c(static_cast<std::size_t>(cutoff) + 1, 0);
  c[0] = 1;
  for (long n = k; n <= cutoff; ++n)
    for (long e = cutoff; e >= n; --e) c[e] -= c[e - n];
  std::vector<std::pair<Rat, Rat>> terms;
  for (long e = 0; e <= cutoff; ++e)
    if (c[e] != 0) terms.emplace_back(Rat(e), Rat(c[e]));
  return QSeries::polynomial(1, terms, Rat(cutoff));
}

QSeries phi(long cutoff) { return phi_trunc(1, cutoff); }

Int partition_count(long n) {
  // Enumerates partitions as nonincreasing part lists.
  Int count = 0;
  auto walk = [&](auto&& self, long remaining, long max_part) -> void {
    if (remaining == 0) {
      ++count;
      return;
    }
    for (long part = std::min(remaining, max_part); part >= 1; --part) self(self, remaining - part, part);
  };
  walk(walk, n, n);
  return count;
}

long character_denominator(int p) { return std::lcm(24L, 4L * p); }

QSeries verma_character(const std::vector<int>& weights, const Rat& c, long cutoff, long denominator) {
  QSeries out = QSeries::one(denominator, Rat(cutoff));
  for (int h : weights) {
    if (h < 1) throw QSeriesError("generator weights must be positive");
    out = out * phi_trunc(h, cutoff).inverse();
  }
  return out.rescaled(std::lcm(out.denominator(), denominator)).times_power(-c / 24);
}

QSeries triplet_verma_character(int p, long cutoff) {
  const int delta = triplet_weight(p);
  return verma_character({2, delta, delta, delta}, central_charge_p1(p), cutoff, character_denominator(p));
}

long theta_n_max(int p, long cutoff) {
  auto level = [p](long n) { return n * n * p + n * (p - 1); };
  long n = 0;
  while (level(n + 1) <= cutoff || level(-n - 1) <= cutoff) ++n;
  return n;
}

QSeries triplet_character_with_terms(int p, long cutoff, long n_max) {
  if (p < 2) throw QSeriesError("p must be at least 2");
  const long d = character_denominator(p);
  auto exponent = [p](long n) { return make_rat((2 * n * p + p - 1) * (2 * n * p + p - 1), 4 * p); };
  const Rat lead = exponent(0);
  std::vector<std::pair<Rat, Rat>> terms;
  for (long n = -n_max; n <= n_max; ++n) terms.emplace_back(exponent(n) - lead, Rat(2 * n + 1));
  QSeries theta = QSeries::polynomial(d, terms, Rat(cutoff));
  return (theta * phi(cutoff).inverse()).times_power(lead - make_rat(1, 24));
}

QSeries triplet_character(int p, long cutoff) { return triplet_character_with_terms(p, cutoff, theta_n_max(p, cutoff)); }

QSeries chi_tilde(int p, long cutoff) {
  if (p < 2) throw QSeriesError("p must be at least 2");
  const long d = character_denominator(p);
  const int delta = triplet_weight(p);
  QSeries first = phi_trunc(2, cutoff).inverse();
  QSeries numerator = QSeries::polynomial(1, {{Rat(delta), Rat(3)}, {Rat(delta + 3), Rat(-3)}}, Rat(cutoff));
  QSeries inv = phi_trunc(delta, cutoff).inverse();
  QSeries second = numerator * phi(cutoff).inverse() * inv * inv;
  return (first + second).truncated(Rat(cutoff)).rescaled(d).times_power(-central_charge_p1(p) / 24);
}

Rat diff_at_level(const QSeries& a, const QSeries& b, const Rat& level) {
  const Rat exponent = a.offset() + level;
  return a.coeff_at_level(level) - b.coeff_at_exponent(exponent);
}

QSeries bracket_expansion(const QSeries& character) {
  return (character * phi(floor_index(character.cutoff(), 1))).times_power(-character.offset());
}

}  // namespace walg
