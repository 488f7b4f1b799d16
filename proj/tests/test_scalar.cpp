#include <doctest.h>

#include "walg/linsolve.hpp"
#include "walg/poly.hpp"

#include <random>

using namespace walg;

TEST_CASE("rationals parse and print canonically") {
  CHECK(to_string(parse_rat("6/4")) == "3/2");
  CHECK(to_string(parse_rat("-10")) == "-10");
  CHECK(parse_rat(" 0/7 ") == 0);
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("2/-3"), std::invalid_argument);
}

TEST_CASE("binomials over the integers and rationals") {
  CHECK(binom_int(5, 2) == 10);
  CHECK(binom_int(-1, 3) == -1);
  CHECK(binom_int(-3, 2) == 6);
  CHECK(binom_int(2, 5) == 0);
  CHECK(binom_int(7, -1) == 0);
  CHECK(binom(make_rat(1, 2), 2) == make_rat(-1, 8));
  CHECK(factorial(6) == 720);
}

TEST_CASE("imaginary unit squares to minus one") {
  Poly i = Poly::i_unit();
  CHECK(i * i == Poly(-1));
  CHECK(i * i * i == -i);
  CHECK((i * i * i * i).str() == "1");
  Poly x = Poly::symbol("x");
  CHECK(((x + i) * (x - i)).str() == "x^2 + 1");
}

TEST_CASE("polynomial rendering is deterministic and round-trips") {
  Poly p = parse_poly("3/2*C + B - 5/8*I*xi1 + C^2 - 4");
  CHECK(p.str() == "B + 3/2*C + C^2 - 5/8*I*xi1 - 4");
  CHECK(parse_poly(p.str()) == p);
  CHECK(parse_poly("(a+b)^2 - a*a - 2*a*b").str() == "b^2");
  CHECK(parse_poly("C/2 - (1/2)*C").is_zero());
  CHECK_THROWS_AS(parse_poly("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("2*"), std::invalid_argument);
}

TEST_CASE("coefficient extraction and substitution") {
  Poly p = parse_poly("3*a^2*b - a + 7");
  SymbolId a = intern_symbol("a");
  CHECK(p.coefficient(a, 2).str() == "3*b");
  CHECK(p.coefficient(a, 0).str() == "7");
  CHECK(p.degree(a) == 2);
  CHECK(p.substitute(a, parse_poly("b+1")) == parse_poly("3*(b+1)^2*b - b - 1 + 7"));
}

namespace {

Poly random_poly(std::mt19937& rng) {
  const char* names[] = {"x", "y", "z", "I"};
  std::uniform_int_distribution<int> count(0, 4), sym(0, 3), expo(0, 3), num(-9, 9), den(1, 5);
  Poly p;
  int terms = count(rng);
  for (int t = 0; t < terms; ++t) {
    Poly term(make_rat(num(rng), den(rng)));
    for (int k = 0; k < 2; ++k) {
      int e = expo(rng);
      for (int j = 0; j < e; ++j) term = term * Poly::symbol(names[sym(rng)]);
    }
    p += term;
  }
  return p;
}

}  // namespace

TEST_CASE("ring axioms hold on random polynomials") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    Poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    CHECK(parse_poly(a.str()) == a);
  }
}

TEST_CASE("linear solve: determined system with parameters") {
  SymbolId u = intern_symbol("u"), v = intern_symbol("v");
  auto sol = solve_linear({parse_poly("u + v - 3*C"), parse_poly("u - v - C")}, {u, v});
  CHECK(sol.at(u).str() == "2*C");
  CHECK(sol.at(v).str() == "C");
}

TEST_CASE("linear solve reports failures") {
  SymbolId u = intern_symbol("u"), v = intern_symbol("v");
  try {
    solve_linear({parse_poly("u - 1"), parse_poly("2*u - 3")}, {u});
    FAIL("expected inconsistency");
  } catch (const LinearSystemError& e) {
    CHECK(e.kind() == LinearSystemError::Kind::Inconsistent);
  }
  try {
    solve_linear({parse_poly("u + v")}, {u, v});
    FAIL("expected underdetermined");
  } catch (const LinearSystemError& e) {
    CHECK(e.kind() == LinearSystemError::Kind::Underdetermined);
  }
  try {
    solve_linear({parse_poly("u*v - 1")}, {u, v});
    FAIL("expected nonlinear");
  } catch (const LinearSystemError& e) {
    CHECK(e.kind() == LinearSystemError::Kind::NonLinear);
  }
  auto free = solve_linear_system({parse_poly("u + v - 1")}, {u, v});
  CHECK(free.free.size() == 1);
  CHECK(free.values.at(u).str() == "-v + 1");
}
