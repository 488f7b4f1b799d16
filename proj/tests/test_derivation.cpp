#include <doctest.h>

#include "walg/derivation.hpp"
#include "walg/specs.hpp"

using namespace walg;

namespace {

Poly C() { return Poly::symbol("C"); }
Poly B() { return Poly::symbol("B"); }
Rat q(long a, long b) { return make_rat(a, b); }

Rat expected_beta_prime(long d) { return q(-(2 * d - 1) * (d - 1), 2 * (4 * d - 3)); }
Poly expected_b_qp(long d) { return C() * q(-(6 * d * d - 8 * d + 3), 6 * (4 * d - 3)); }
Poly expected_b_primary(long d) { return C() * q(-(12 * d * d - 18 * d + 7), 4 * (4 * d - 3)); }
Poly expected_xi(long d, int i) {
  switch (i) {
    case 0:
      return (B() * Rat(6) + C() * Rat(d - 1)) * q(1, 2);
    case 1:
      return (B() * Rat(2 * d - 9) + C() * Rat(d * d - 3 * d + 2)) * q(1, 2);
    default:
      return (B() * Rat(45 - 15 * d) + C() * Rat(2 * d * d * d - 12 * d * d + 22 * d - 12)) * q(1, 24);
  }
}
Poly expected_gamma_ww(long d) {
  return C() * (q(-(2 * d - 1), 2 * (4 * d - 3)) * (Rat((d - 2) * (d - 2)) - q((d - 2) * (d - 3), 2)));
}

}  // namespace

TEST_CASE("composite N(T^{D-1}) has unit leading word") {
  for (int p : {2, 3}) {
    Derivation der(p);
    const int d = der.delta();
    const auto& e = der.engine();
    State s = e.field_mode_apply(fx::field(virasoro_power_symbol(d - 1)), -(2 * d - 2), State::vacuum());
    CHECK(project_length(s, d - 1) == State::of(der.top_word()));
  }
}

TEST_CASE("beta_WW and gamma_WW from the quasi-primary product") {
  for (int p = 2; p <= 5; ++p) {
    Derivation der(p);
    const int d = der.delta();
    BetaGammaWW bg = der.beta_gamma_ww();
    CHECK(bg.beta_ww_prime == expected_beta_prime(d));
    CHECK(bg.beta_ww == C() * expected_beta_prime(d));
    CHECK(bg.gamma_ww == expected_gamma_ww(d));
  }
  CHECK(Derivation(2).beta_gamma_ww().beta_ww_prime == q(-5, 9));
}

TEST_CASE("correction part of N(W,W)_{-2D-1}") {
  for (int p : {2, 3}) {
    Derivation der(p);
    const int d = der.delta();
    auto words = der.xi_words();
    State combo = State::of(words[0], Poly(d - 1)) + State::of(words[1], Poly((d - 1) * (d - 2)));
    if (!words[2].empty()) combo += State::of(words[2], Poly(binom_int(d - 1, 3)));
    Poly factor = C() * (q(-1, 4) * q(2 * d - 1, 4 * d - 3) * Rat(3 * 2));
    XiSolution raw = der.descend_and_solve_xi(B(), PairBookkeeping::RawPair);
    State pair = State::of(Word{Mode{der.engine().spec().id("W"), -d - 1}, Mode{der.engine().spec().id("W"), -d}}, Poly(2));
    CHECK(raw.known == der.project(combo * factor + pair));
  }
}

TEST_CASE("B from quasi-primarity and the aggregate gamma") {
  for (int p = 2; p <= 5; ++p) {
    Derivation der(p);
    CHECK(der.solve_b_quasiprimary() == expected_b_qp(der.delta()));
    CHECK(der.gamma_sum(B()) == B() * q(-5, 8));
    CHECK(der.gamma_sum(Poly()) == Poly());
  }
  Derivation der(2);
  CHECK(der.solve_b_quasiprimary() == C() * q(-11, 18));
  CHECK(der.gamma_sum(C() * q(-11, 18)) == C() * q(55, 144));
}

TEST_CASE("quasi-primary product alone is not primary") {
  for (int p = 2; p <= 5; ++p) {
    Derivation der(p);
    BetaGammaWW bg = der.beta_gamma_ww();
    State image = der.l2_ansatz(bg.beta_ww, bg.gamma_ww);
    CHECK(!image.is_zero());
    CHECK(image.coefficient(der.top_word()) == C() * (Rat(3 * der.delta() - 2) + 6 * expected_beta_prime(der.delta())));
  }
}

TEST_CASE("xi coefficients and the alternate B") {
  for (int p = 2; p <= 5; ++p) {
    Derivation der(p);
    const int d = der.delta();
    PrimaryRoute raw = der.solve_b_primary(PairBookkeeping::RawPair);
    for (int i = 0; i < 3; ++i) CHECK(raw.xi.xi[i] == expected_xi(d, i));
    CHECK(raw.b_primary == expected_b_primary(d));
    State rebuilt = raw.xi.known;
    auto words = der.xi_words();
    for (int i = 0; i < 3; ++i)
      if (!words[i].empty()) rebuilt += State::of(words[i], raw.xi.xi[i]);
    CHECK(rebuilt == raw.xi.lhs);
  }
  CHECK(Derivation(2).solve_b_primary(PairBookkeeping::RawPair).b_primary == C() * q(-61, 36));
}

TEST_CASE("normal ordered bookkeeping audit") {
  for (int p = 2; p <= 4; ++p) {
    Derivation der(p);
    PrimaryRoute audit = der.solve_b_primary(PairBookkeeping::NormalOrdered);
    CHECK(audit.b_primary == der.solve_b_quasiprimary());
    for (int i = 0; i < 3; ++i) CHECK(audit.xi.xi[i] == expected_xi(der.delta(), i).substitute(Poly::symbol("C").symbols()[0], Poly()));
  }
}

TEST_CASE("alpha report") {
  for (int p = 2; p <= 5; ++p) {
    DerivationReport r = alpha_nonzero_report(p);
    const int d = r.delta;
    CHECK(d == 2 * p - 1);
    CHECK(!r.alpha_zero_consistent);
    CHECK(r.difference == expected_b_qp(d) - expected_b_primary(d));
    CHECK(!r.difference.is_zero());
    CHECK(r.difference == C() * r.difference.coefficient(C().symbols()[0], 1));
    CHECK(r.p_top == 1);
    CHECK(r.discarded_words > 0);
    CHECK(r.beta == C() * expected_beta_prime(d) + B());
  }
  CHECK(alpha_nonzero_report(2).difference == C() * q(13, 12));
  CHECK_THROWS_AS(Derivation(1), std::invalid_argument);
  CHECK_THROWS_AS(Derivation(max_derivation_p() + 1), std::invalid_argument);
}
