#include <doctest.h>

#include "walg/qseries.hpp"
#include "walg/specs.hpp"

#include <functional>

using namespace walg;

namespace {

// Counts multisets of creation modes of total weight `level`: one family of modes n >= h per
// generator weight h.
long count_monomials(const std::vector<int>& weights, int level) {
  std::vector<std::pair<int, int>> kinds;  // (generator index, mode weight)
  for (std::size_t g = 0; g < weights.size(); ++g)
    for (int n = weights[g]; n <= level; ++n) kinds.emplace_back(static_cast<int>(g), n);
  std::function<long(std::size_t, int)> walk = [&](std::size_t from, int remaining) -> long {
    if (remaining == 0) return 1;
    long total = 0;
    for (std::size_t k = from; k < kinds.size(); ++k)
      if (kinds[k].second <= remaining) total += walk(k, remaining - kinds[k].second);
    return total;
  };
  return walk(0, level);
}

long partitions_small(int n) { return partition_count(n).get_si(); }

QSeries integer_polynomial(const std::vector<std::pair<long, long>>& terms, long cutoff) {
  std::vector<std::pair<Rat, Rat>> t;
  for (auto [e, c] : terms) t.emplace_back(Rat(e), Rat(c));
  return QSeries::polynomial(1, t, Rat(cutoff));
}

}  // namespace

TEST_CASE("phi and truncated phi") {
  const long cutoff = 60;
  QSeries inv = phi(cutoff).inverse();
  for (long n = 0; n <= cutoff; ++n) CHECK(inv.coeff_at_level(Rat(n)) == Rat(partition_count(n)));
  CHECK(inv.coeff_at_level(Rat(6)) == 11);
  CHECK(phi(cutoff) * inv == QSeries::one(1, Rat(cutoff)));
  for (long k = 2; k <= 7; ++k) {
    QSeries rhs = phi(cutoff);
    for (long l = 1; l < k; ++l) rhs = rhs * integer_polynomial({{0, 1}, {l, -1}}, cutoff).inverse();
    CHECK(phi_trunc(k, cutoff) == rhs);
  }
}

TEST_CASE("series arithmetic aligns lattices and offsets") {
  QSeries a = QSeries::polynomial(4, {{make_rat(1, 4), Rat(2)}, {Rat(1), Rat(1)}}, Rat(3));
  QSeries b = QSeries::polynomial(6, {{make_rat(1, 6), Rat(1)}}, Rat(2)).times_power(make_rat(1, 12));
  QSeries s = a + b;
  CHECK(s.denominator() == 12);
  CHECK(s.cutoff() == make_rat(25, 12));
  CHECK(s.coeff_at_exponent(make_rat(1, 4)) == 3);
  CHECK(s.coeff_at_exponent(Rat(1)) == 1);
  QSeries prod = a * a;
  CHECK(prod.coeff_at_level(make_rat(1, 2)) == 4);
  CHECK(prod.coeff_at_level(make_rat(5, 4)) == 4);
  CHECK(prod.cutoff() == make_rat(13, 4));
  CHECK_THROWS_AS(prod.coeff_at_level(Rat(4)), QSeriesError);
  CHECK_THROWS_AS(a.coeff_at_level(make_rat(1, 3)), QSeriesError);
}

TEST_CASE("vacuum Verma characters") {
  QSeries vir = verma_character({2}, Rat(-2), 30);
  CHECK(vir.offset() == make_rat(1, 12));
  CHECK(vir == phi_trunc(2, 30).inverse().rescaled(24).times_power(make_rat(1, 12)));
  for (int p : {2, 3, 4, 5}) {
    const int d = triplet_weight(p);
    QSeries v = triplet_verma_character(p, 40);
    CHECK(v.offset() == -central_charge_p1(p) / 24);
    CHECK(v.coeff_at_level(Rat(0)) == 1);
    for (int level = 0; level <= 16; ++level) CHECK(v.coeff_at_level(Rat(level)) == count_monomials({2, d, d, d}, level));
  }
  CHECK(triplet_verma_character(2, 40).coeff_at_level(Rat(6)) == 19);
}

TEST_CASE("triplet character") {
  QSeries t = triplet_character(2, 40);
  CHECK(t.offset() == make_rat(1, 12));
  CHECK(t.denominator() == 24);
  CHECK(t.coeff_at_level(Rat(0)) == 1);
  CHECK(t.coeff_at_level(Rat(6)) == partitions_small(6) - partitions_small(5) + 3 * partitions_small(3) - 3);
  CHECK(t.coeff_at_level(Rat(6)) == 10);
  for (int p : {2, 3, 4, 5}) {
    QSeries b = bracket_expansion(triplet_character(p, 40));
    QSeries expect = integer_polynomial({{0, 1}, {1, -1}, {2 * p - 1, 3}, {2 * p + 2, -3}}, 40);
    for (int level = 0; level < 6 * p - 2; ++level)
      CHECK(b.coeff_at_level(Rat(level)) == expect.coeff_at_level(Rat(level)));
    CHECK(b.coeff_at_level(Rat(6 * p - 2)) == 5);
    CHECK(triplet_character(p, 40).offset() == -central_charge_p1(p) / 24);
  }
}

TEST_CASE("theta truncation is certified") {
  for (int p : {2, 3, 4, 5})
    for (long cutoff : {10L, 25L, 40L}) {
      long n = theta_n_max(p, cutoff);
      CHECK(triplet_character_with_terms(p, cutoff, n + 1) == triplet_character(p, cutoff));
      CHECK(triplet_character_with_terms(p, cutoff, n + 3) == triplet_character(p, cutoff));
      if (n > 0) CHECK(!(triplet_character_with_terms(p, cutoff, n - 1) == triplet_character(p, cutoff)));
    }
}

TEST_CASE("chi tilde") {
  QSeries c = chi_tilde(2, 40);
  CHECK(c.coeff_at_level(Rat(0)) == 1);
  CHECK(c.coeff_at_level(Rat(1)) == 0);
  CHECK(c.coeff_at_level(Rat(2)) == 1);
  CHECK(c.coeff_at_level(Rat(6)) == 16);
  for (int p : {2, 3, 4, 5}) {
    QSeries b = bracket_expansion(chi_tilde(p, 40));
    QSeries expect = integer_polynomial({{0, 1}, {1, -1}, {2 * p - 1, 3}, {2 * p + 2, -3}, {4 * p - 2, 6}}, 40);
    for (int level = 0; level < 4 * p - 1; ++level)
      CHECK(b.coeff_at_level(Rat(level)) == expect.coeff_at_level(Rat(level)));
  }
}

TEST_CASE("coefficient differences") {
  for (int p : {3, 4, 5})
    CHECK(diff_at_level(triplet_verma_character(p, 40), triplet_character(p, 40), Rat(2 * p + 2)) == 3);
  CHECK(diff_at_level(triplet_verma_character(2, 40), triplet_character(2, 40), Rat(6)) == 9);
  for (int p : {2, 3, 4, 5})
    CHECK(diff_at_level(chi_tilde(p, 40), triplet_character(p, 40), Rat(4 * p - 2)) == 6);
  QSeries t = triplet_character(3, 40);
  CHECK(diff_at_level(t, t, Rat(17)) == 0);
  CHECK_THROWS_AS(diff_at_level(t, t, Rat(41)), QSeriesError);
  CHECK_THROWS_AS(diff_at_level(t, t, make_rat(1, 5)), QSeriesError);
}
