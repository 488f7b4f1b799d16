#include <doctest.h>

#include "walg/engine.hpp"
#include "walg/specs.hpp"

#include <functional>
#include <random>
#include <thread>

using namespace walg;

namespace {

// Closed form of the commutator polynomial, valid for equal weights h_i = h_j.
Rat p_equal_weight_form(int hi, int hj, int hk, int m, int n) {
  int H = hi + hj - hk;
  Rat sum(0);
  for (int r = 0; r < H; ++r) {
    Rat a = binom_int(hi + hk - hj + r - 1, r) / binom_int(2 * hk + r - 1, r);
    sum += a * binom_int(m + n - hk, r) * binom_int(hi - n - 1, H - 1 - r);
  }
  return sum;
}

Mode L(const Engine& e, int n) { return Mode{e.spec().id("T"), n}; }

State vac() { return State::vacuum(); }

State word_state(const Engine& e, std::initializer_list<int> indices) {
  Word w;
  for (int i : indices) w.push_back(L(e, i));
  return e.normal_order(w);
}

// Independent schedule: always rewrite the leftmost offending adjacent pair.
State leftmost_first(const Engine& e, const Word& w) {
  if (w.empty()) return vac();
  const auto& spec = e.spec();
  if (!is_creation(spec, w.back())) return State();
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    bool a_cre = is_creation(spec, w[i]), b_cre = is_creation(spec, w[i + 1]);
    if ((!a_cre && b_cre) || (a_cre && b_cre && w[i + 1] < w[i])) {
      Word swapped = w;
      std::swap(swapped[i], swapped[i + 1]);
      State out = leftmost_first(e, swapped);
      Bracket b = e.bracket(w[i], w[i + 1]);
      Word without(w.begin(), w.begin() + i);
      without.insert(without.end(), w.begin() + i + 2, w.end());
      if (!b.central.is_zero()) out += leftmost_first(e, without) * b.central;
      for (const auto& [c, k] : b.terms) {
        Word with = without;
        with.insert(with.begin() + i, k);
        out += leftmost_first(e, with) * c;
      }
      return out;
    }
  }
  for (const auto& m : w)
    if (!is_creation(spec, m)) return State();
  return State::of(w);
}

std::vector<Word> virasoro_basis_up_to(const Engine& e, int max_weight) {
  std::vector<Word> out{Word{}};
  std::function<void(Word, int, int)> grow = [&](Word w, int min_index, int weight) {
    for (int idx = min_index; idx <= -2; ++idx) {
      if (weight - idx > max_weight) continue;
      Word next = w;
      next.push_back(L(e, idx));
      out.push_back(next);
      grow(next, idx, weight - idx);
    }
  };
  grow(Word{}, -max_weight, 0);
  return out;
}

}  // namespace

TEST_CASE("p_poly anchor values") {
  for (int delta : {3, 5, 7, 9}) CHECK(p_poly(delta, delta, 2 * delta - 2, 2 - delta, -delta) == 1);
  CHECK(p_poly(3, 3, 4, -3, -4) == make_rat(1, 2));
  for (int m = -6; m <= 6; ++m)
    for (int n = -6; n <= 6; ++n) {
      CHECK(p_poly(2, 2, 2, m, n) == make_rat(m - n, 2));
      CHECK(p_poly(5, 5, 8, m, n) == make_rat(m - n, 2));
    }
}

TEST_CASE("p_poly agrees with the equal-weight closed form") {
  for (int h : {2, 3, 4, 5})
    for (int hk = 1; hk <= 2 * h - 1; ++hk)
      for (int m = -7; m <= 7; ++m)
        for (int n = -7; n <= 7; ++n) CHECK(p_poly(h, h, hk, m, n) == p_equal_weight_form(h, h, hk, m, n));
}

TEST_CASE("Virasoro commutators match the closed form for symbolic and numeric c") {
  for (Poly c : {Poly::symbol("c"), Poly(make_rat(-2)), Poly(make_rat(1, 2)), Poly(make_rat(-25, 2))}) {
    Engine e(virasoro_spec(c));
    for (int m = -6; m <= 6; ++m)
      for (int n = -6; n <= 6; ++n) {
        Bracket b = e.bracket(L(e, m), L(e, n));
        Poly central = m + n == 0 ? c * make_rat(m * m * m - m, 12) : Poly();
        CHECK(b.central == central);
        if (m == n) {
          CHECK(b.terms.empty());
        } else {
          REQUIRE(b.terms.size() == 1);
          CHECK(b.terms[0].first == Poly(m - n));
          CHECK(b.terms[0].second == L(e, m + n));
        }
      }
  }
}

TEST_CASE("primary fields transform with the expected weight") {
  for (int p : {2, 3, 4}) {
    Engine e(derivation_spec(p));
    const int delta = triplet_weight(p);
    FieldId w = e.spec().id("W");
    for (int m = -5; m <= 5; ++m)
      for (int n = -8; n <= 8; ++n) {
        const int expected = (delta - 1) * m - n;
        Bracket lw = e.bracket(L(e, m), Mode{w, n});
        Bracket wl = e.bracket(Mode{w, n}, L(e, m));
        CHECK(lw.central.is_zero());
        if (expected == 0) {
          CHECK(lw.terms.empty());
          CHECK(wl.terms.empty());
          continue;
        }
        REQUIRE(lw.terms.size() == 1);
        CHECK(lw.terms[0].first == Poly(expected));
        CHECK(lw.terms[0].second == Mode{w, m + n});
        REQUIRE(wl.terms.size() == 1);
        CHECK(wl.terms[0].first == Poly(-expected));
      }
  }
}

TEST_CASE("bracket antisymmetry for the triplet algebra with symbolic constants") {
  Engine e(triplet_p2_spec(TripletP2Constants::symbolic()));
  auto gens = e.spec().generators();
  for (FieldId a : gens)
    for (FieldId b : gens)
      for (int m = -6; m <= 6; ++m)
        for (int n = -6; n <= 6; ++n) {
          Bracket x = e.bracket(Mode{a, m}, Mode{b, n});
          Bracket y = e.bracket(Mode{b, n}, Mode{a, m});
          CHECK((x.central + y.central).is_zero());
          std::map<Mode, Poly> sum;
          for (const auto& [c, k] : x.terms) sum[k] += c;
          for (const auto& [c, k] : y.terms) sum[k] += c;
          for (const auto& [k, c] : sum) CHECK(c.is_zero());
        }
}

TEST_CASE("vacuum annihilation and creation") {
  Engine e(virasoro_spec(Poly::symbol("c")));
  for (int n = -1; n <= 4; ++n) CHECK(e.apply_mode(L(e, n), vac()).is_zero());
  CHECK(to_string(e.spec(), e.apply_mode(L(e, -2), vac())) == "(1) T_{-2} |0>");
  CHECK(e.apply_mode(L(e, 2), word_state(e, {-2})) == vac() * (Poly::symbol("c") / Rat(2)));
}

TEST_CASE("normal ordering is confluent across rewriting schedules") {
  Engine e(virasoro_spec(Poly::symbol("c")));
  std::size_t checked = 0;
  for (int len = 1; len <= 4; ++len) {
    std::vector<int> idx(len, -4);
    for (;;) {
      int weight = 0;
      for (int i : idx) weight -= i;
      if (weight <= 10 && weight >= 0) {
        Word w;
        for (int i : idx) w.push_back(L(e, i));
        CHECK(e.normal_order(w) == leftmost_first(e, w));
        ++checked;
      }
      int pos = 0;
      while (pos < len && ++idx[pos] > 2) idx[pos++] = -4;
      if (pos == len) break;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("apply_mode respects the weight grading") {
  Engine e(triplet_p2_spec(TripletP2Constants::symbolic()));
  std::mt19937 rng(7);
  auto gens = e.spec().generators();
  std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1), idx(-6, 3), len(0, 3);
  for (int trial = 0; trial < 150; ++trial) {
    Word w;
    int l = len(rng);
    for (int k = 0; k < l; ++k) {
      FieldId f = gens[pick(rng)];
      w.push_back(Mode{f, -e.spec().field(f).weight - (idx(rng) + 6) / 3});
    }
    State s = e.normal_order(w);
    Mode m{gens[pick(rng)], idx(rng)};
    State r = e.apply_mode(m, s);
    for (const auto& [u, c] : r.terms()) {
      CHECK(word_weight(u) == word_weight(w) - m.index);
      CHECK(is_canonical(e.spec(), u));
    }
  }
}

TEST_CASE("derivative modes reproduce L_{-1} descendants") {
  Engine e(virasoro_spec(Poly::symbol("c")));
  for (int r = 0; r <= 4; ++r) {
    auto d = fx::derivative(fx::field("T"), r);
    State lhs = e.field_mode_apply(d, -2 - r, vac());
    State rhs = word_state(e, {-2});
    for (int k = 0; k < r; ++k) rhs = e.apply_mode(L(e, -1), rhs);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("N-product with m = h_i creates the expected state") {
  Engine e(triplet_p2_spec(TripletP2Constants::symbolic()));
  FieldId w1 = e.spec().id("W1");
  State lhs = e.field_mode_apply(fx::nprod(3, fx::field("T"), fx::field("W1")), -5, vac());
  State rhs = e.apply_mode(Mode{w1, -3}, word_state(e, {-2}));
  CHECK(lhs == rhs);
}

TEST_CASE("quasi-primary normal ordering") {
  Engine e(virasoro_spec(Poly::symbol("c")));
  SUBCASE("Lambda") {
    State lam = e.state_of(e.qp_nop("T", "T"));
    State expect = word_state(e, {-2, -2}) - word_state(e, {-4}) * Poly(make_rat(3, 5));
    CHECK(lam == expect);
    CHECK(e.apply_mode(L(e, 1), lam).is_zero());
  }
  SUBCASE("N(T, dT) vanishes: there is no Virasoro quasi-primary of weight 5") {
    CHECK(e.state_of(e.qp_nop("T", "T", 1)).is_zero());
  }
  SUBCASE("N(T, d^2 T) and N(T, d^3 T) are quasi-primary") {
    for (int n : {2, 3, 4}) {
      State s = e.state_of(e.qp_nop("T", "T", n));
      CHECK(e.apply_mode(L(e, 1), s).is_zero());
    }
  }
}

TEST_CASE("quasi-primary products of unequal weights") {
  Engine e(triplet_p2_spec(TripletP2Constants::symbolic()));
  State tw = e.state_of(e.qp_nop("T", "W1"));
  State wt = e.state_of(e.qp_nop("W1", "T"));
  CHECK(!tw.is_zero());
  CHECK(tw == wt);
  CHECK(e.apply_mode(L(e, 1), tw).is_zero());
  for (int n : {1, 2}) {
    CHECK(e.apply_mode(L(e, 1), e.state_of(e.qp_nop("T", "W1", n))).is_zero());
    CHECK(e.apply_mode(L(e, 1), e.state_of(e.qp_nop("W1", "T", n))).is_zero());
  }
}

TEST_CASE("quasi-primary correction coefficient against an explicit projection") {
  // Three primaries A, B, K with the single channel C_AB^K = 1; the leading N-product terms are
  // evaluated through the engine and the descendant d^{h(ABK)+n} K is removed by L_1^s.
  for (int hi = 1; hi <= 3; ++hi)
    for (int hj = 1; hj <= 3; ++hj)
      for (int hk = 1; hk < hi + hj; ++hk)
        for (int n = 0; n <= 3; ++n) {
          CAPTURE(hi);
          CAPTURE(hj);
          CAPTURE(hk);
          CAPTURE(n);
          AlgebraSpec s = virasoro_spec(Poly(1));
          s.missing = MissingConstants::Zero;
          s.add_generator("A", hi);
          s.add_generator("B", hj);
          s.add_generator("K", hk);
          for (const char* f : {"A", "B", "K"}) s.set_structure_constant("T", f, f, Poly(s.field(s.id(f)).weight));
          s.set_structure_constant("A", "B", "K", Poly(1));
          Engine e(s);
          const int h = hi + hj + n, steps = hi + hj - hk + n;
          State lead;
          for (int r = 0; r <= n; ++r) {
            Rat c = binom_int(n, r) / binom_int(2 * (h - 1), r) * binom_int(2 * hi + n - 1, r);
            if (r % 2 == 1) c = -c;
            auto term = fx::derivative(fx::nprod(hi + n + r, fx::field("B"), fx::derivative(fx::field("A"), n - r)), r);
            lead += e.field_mode_apply(term, -h, vac()) * Poly(c);
          }
          State top = lead;
          for (int k = 0; k < steps; ++k) top = e.apply_mode(L(e, 1), top);
          Rat norm(factorial(steps));
          for (int v = 0; v < steps; ++v) norm *= 2 * hk + v;
          Rat z = top.coefficient(Word{Mode{e.spec().id("K"), -hk}}).constant_term();
          CHECK(qp_correction(hi, hj, hk, n) == -z / norm);
          State full = lead + e.field_mode_apply(fx::derivative(fx::field("K"), steps), -h, vac()) *
                                  Poly(qp_correction(hi, hj, hk, n));
          CHECK(e.apply_mode(L(e, 1), full).is_zero());
        }
}

TEST_CASE("mode commutator identity for the stress tensor") {
  Engine e(virasoro_spec(Poly::symbol("c")));
  const State omega = word_state(e, {-2});
  auto v_mode = [&](int k, const State& s) { return e.apply_mode(L(e, k - 1), s); };
  auto state_mode = [&](const State& a, int weight, int k, const State& s) {
    return e.field_mode_apply(e.field_of_state(a), k - weight + 1, s);
  };
  for (const Word& base : virasoro_basis_up_to(e, 6)) {
    State w = State::of(base);
    for (int m = -3; m <= 3; ++m)
      for (int n = -3; n <= 3; ++n) {
        State lhs = v_mode(m, v_mode(-n, w));
        State rhs = v_mode(-n, v_mode(m, w));
        for (int i = 0; i <= 3; ++i) {
          State vi_u = v_mode(i, omega);
          if (vi_u.is_zero()) continue;
          rhs += state_mode(vi_u, 3 - i, m - n - i, w) * Poly(binom_int(m, i));
        }
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("iterated mode identity for the stress tensor") {
  Engine e(virasoro_spec(Poly::symbol("c")));
  const State omega = word_state(e, {-2});
  auto u_mode = [&](int k, const State& s) { return e.apply_mode(L(e, k - 1), s); };
  for (const Word& base : virasoro_basis_up_to(e, 6)) {
    State w = State::of(base);
    const int wt = word_weight(base);
    for (int m = -3; m <= 3; ++m) {
      State um_v = u_mode(m, omega);
      if (um_v.is_zero()) continue;
      FieldExprPtr field = e.field_of_state(um_v);
      const int h = 3 - m;
      for (int n = -3; n <= 3; ++n) {
        State lhs = e.field_mode_apply(field, n - h + 1, w);
        State rhs;
        for (int i = 0; m >= 0 ? i <= m : i <= wt - n + 2; ++i) {
          Rat b = binom_int(m, i);
          if (i % 2 == 1) b = -b;
          rhs += u_mode(m - i, u_mode(n + i, w)) * Poly(b);
        }
        for (int i = 0; m >= 0 ? i <= m : i <= wt + 2; ++i) {
          Rat b = binom_int(m, i);
          if ((i + m) % 2 != 0) b = -b;
          rhs -= u_mode(m + n - i, u_mode(i, w)) * Poly(b);
        }
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("shared engine gives identical results across threads") {
  Engine e(derivation_spec(3));
  FieldExprPtr nw = e.qp_nop("W", "W");
  State results[4];
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] { results[t] = e.field_mode_apply(nw, -11 - (t % 2), vac()); });
  for (auto& th : pool) th.join();
  CHECK(results[0] == results[2]);
  CHECK(results[1] == results[3]);
  Engine fresh(derivation_spec(3));
  CHECK(results[0] == fresh.field_mode_apply(fresh.qp_nop("W", "W"), -11, vac()));
}

TEST_CASE("word sums round-trip through their text form") {
  Engine e(triplet_p2_spec(TripletP2Constants::symbolic()));
  State s = e.normal_order(parse_word(e.spec(), "W1_{-3} W2_{-3} T_{-2} |0>"));
  CHECK(parse_word_sum(e.spec(), to_string(e.spec(), s)) == s);
  CHECK(convert_index(e.spec(), Mode{e.spec().id("W1"), -3}, IndexConvention::Math) == -1);
}
