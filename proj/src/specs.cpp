#include "walg/specs.hpp"

namespace walg {

Rat central_charge_p1(int p) {
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  return Rat(1) - make_rat(6 * (p - 1) * (p - 1), p);
}

int triplet_weight(int p) { return 2 * p - 1; }

AlgebraSpec virasoro_spec(const Poly& c) {
  AlgebraSpec s;
  s.central_charge = c;
  s.add_generator("T", 2);
  s.set_two_point("T", "T", c / Rat(2));
  s.set_structure_constant("T", "T", "T", Poly(2));
  return s;
}

TripletP2Constants TripletP2Constants::symbolic() {
  return TripletP2Constants{Poly::symbol("d_W"), Poly::symbol("K_T"), Poly::symbol("K_Lam"), Poly::symbol("K_W"),
                            Poly::symbol("K_TW")};
}

TripletP2Constants TripletP2Constants::numeric() {
  return TripletP2Constants{Poly(-1), Poly(3), Poly(4), Poly(5), Poly(make_rat(12, 5))};
}

AlgebraSpec triplet_p2_spec(const TripletP2Constants& k) {
  AlgebraSpec s = virasoro_spec(Poly(central_charge_p1(2)));
  s.missing = MissingConstants::Zero;
  const std::string w[3] = {"W1", "W2", "W3"};
  for (const auto& name : w) s.add_generator(name, 3);
  s.add_composite("Lam", 4, fx::qp(fx::field("T"), fx::field("T")));
  for (int a = 0; a < 3; ++a) s.add_composite("TW" + std::to_string(a + 1), 5, fx::qp(fx::field("T"), fx::field(w[a])));
  s.set_structure_constant("T", "Lam", "Lam", Poly(4));
  for (int a = 0; a < 3; ++a) {
    s.set_structure_constant("T", w[a], w[a], Poly(3));
    s.set_structure_constant("T", "TW" + std::to_string(a + 1), "TW" + std::to_string(a + 1), Poly(5));
  }
  auto eps = [](int a, int b, int c) { return (a - b) * (b - c) * (c - a) / 2; };
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b) {
        s.set_two_point(w[a], w[b], k.d);
        s.set_structure_constant(w[a], w[b], "T", k.k_t);
        s.set_structure_constant(w[a], w[b], "Lam", k.k_lam);
        continue;
      }
      s.set_two_point(w[a], w[b], Poly());
      int c = 3 - a - b;
      Poly sign(eps(a, b, c));
      s.set_structure_constant(w[a], w[b], w[c], sign * Poly::i_unit() * k.k_w);
      s.set_structure_constant(w[a], w[b], "TW" + std::to_string(c + 1), sign * Poly::i_unit() * k.k_tw);
    }
  return s;
}

std::string virasoro_power_symbol(int k) { return k == 1 ? "T" : "NT" + std::to_string(k); }

AlgebraSpec derivation_spec(int p) {
  const int delta = triplet_weight(p);
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  AlgebraSpec s = virasoro_spec(Poly(central_charge_p1(p)));
  s.missing = MissingConstants::Zero;
  s.add_generator("W", delta);
  for (int k = 2; k <= delta - 1; ++k)
    s.add_composite(virasoro_power_symbol(k), 2 * k, fx::qp(fx::field("T"), fx::field(virasoro_power_symbol(k - 1))));
  s.set_structure_constant("T", "W", "W", Poly(delta));
  s.set_two_point("W", "W", Poly::symbol("d_W"));
  s.set_structure_constant("W", "W", "T", Poly::symbol("K_T"));
  for (int k = 2; k <= delta - 1; ++k) {
    const std::string nk = virasoro_power_symbol(k);
    s.set_structure_constant("W", "W", nk, k == delta - 1 ? Poly::symbol("C") : Poly::symbol("K_" + nk));
    s.set_structure_constant("T", nk, nk, Poly(2 * k));
  }
  for (int k = 2; k <= delta - 2; ++k) {
    const std::string nk = virasoro_power_symbol(k);
    for (int l = 1; l < k; ++l) {
      const std::string nl = virasoro_power_symbol(l);
      s.set_structure_constant(nk, "T", nl, Poly::symbol("K_" + nk + "_T__" + nl));
    }
  }
  return s;
}

}  // namespace walg
