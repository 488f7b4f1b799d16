#include "walg/derivation.hpp"

#include "walg/linsolve.hpp"
#include "walg/specs.hpp"

#include <algorithm>
#include <stdexcept>

namespace walg {

namespace {

Rat rat(long a, long b = 1) { return make_rat(a, b); }

SymbolId symbol_id(const Poly& p) { return p.symbols().at(0); }

Poly solve_for(const Poly& equation, const Poly& unknown) {
  auto values = solve_linear({equation}, {symbol_id(unknown)});
  return values.at(symbol_id(unknown));
}

int check_p(int p) {
  if (p < 2 || p > WALG_MAX_DERIVATION_P)
    throw std::invalid_argument("p must lie in [2, " + std::to_string(WALG_MAX_DERIVATION_P) + "]");
  return p;
}

}  // namespace

Rat closed_beta_ww_prime(int d) { return rat(-(2 * d - 1) * (d - 1), 2 * (4 * d - 3)); }

Poly closed_b_quasiprimary(int d) {
  return Derivation::symbol_c() * rat(-(6 * d * d - 8 * d + 3), 6 * (4 * d - 3));
}

Poly closed_b_primary(int d) {
  return Derivation::symbol_c() * rat(-(12 * d * d - 18 * d + 7), 4 * (4 * d - 3));
}

std::array<Poly, 3> closed_xi(int d) {
  const Poly b = Derivation::symbol_b(), c = Derivation::symbol_c();
  return {(b * Rat(6) + c * Rat(d - 1)) * rat(1, 2),
          (b * Rat(2 * d - 9) + c * Rat(d * d - 3 * d + 2)) * rat(1, 2),
          (b * Rat(45 - 15 * d) + c * Rat(2 * d * d * d - 12 * d * d + 22 * d - 12)) * rat(1, 24)};
}

Poly closed_gamma(int d) {
  Rat inner = Rat((d - 2) * (d - 2)) - rat((d - 2) * (d - 3), 2);
  return Derivation::symbol_c() * (rat(-(2 * d - 1), 2 * (4 * d - 3)) * inner) - Derivation::symbol_b() * rat(5, 8);
}

int max_derivation_p() { return WALG_MAX_DERIVATION_P; }

Derivation::Derivation(int p)
    : p_(check_p(p)), delta_(triplet_weight(p)), engine_(derivation_spec(p)), t_(engine_.spec().id("T")),
      w_(engine_.spec().id("W")) {}

Poly Derivation::symbol_c() { return Poly::symbol("C"); }
Poly Derivation::symbol_b() { return Poly::symbol("B"); }

Word Derivation::virasoro_word(const std::vector<int>& ks) const {
  Word w;
  for (int k : ks) w.push_back(Mode{t_, -k});
  std::sort(w.begin(), w.end());
  return w;
}

Word Derivation::top_word() const { return virasoro_word(std::vector<int>(delta_ - 1, 2)); }

Word Derivation::beta_word() const {
  std::vector<int> ks(delta_ - 2, 2);
  ks.push_back(4);
  return virasoro_word(ks);
}

Word Derivation::gamma_word() const {
  std::vector<int> ks(delta_ - 3, 2);
  ks.insert(ks.end(), {3, 3});
  return virasoro_word(ks);
}

Word Derivation::primary_word() const {
  std::vector<int> ks(delta_ - 2, 2);
  ks.push_back(3);
  return virasoro_word(ks);
}

std::array<Word, 3> Derivation::xi_words() const {
  std::vector<int> a(delta_ - 2, 2), b(delta_ - 3, 2);
  a.push_back(5);
  b.insert(b.end(), {4, 3});
  Word third;
  if (delta_ >= 4) {
    std::vector<int> c(delta_ - 4, 2);
    c.insert(c.end(), {3, 3, 3});
    third = virasoro_word(c);
  }
  return {virasoro_word(a), virasoro_word(b), third};
}

State Derivation::project(const State& s, std::size_t* discarded) const {
  State dropped;
  State kept = project_min_length(s, static_cast<std::size_t>(delta_ - 1), &dropped);
  if (discarded) *discarded += dropped.size();
  return kept;
}

State Derivation::nww_state() const {
  return project(engine_.field_mode_apply(engine_.qp_nop("W", "W"), -2 * delta_, State::vacuum()));
}

BetaGammaWW Derivation::beta_gamma_ww() const {
  State s = nww_state();
  BetaGammaWW out;
  out.beta_ww = s.coefficient(beta_word());
  out.gamma_ww = s.coefficient(gamma_word());
  const SymbolId c = symbol_id(symbol_c());
  if (out.beta_ww != out.beta_ww.coefficient(c, 1) * symbol_c())
    throw std::logic_error("beta_WW is not proportional to C: " + out.beta_ww.str());
  out.beta_ww_prime = out.beta_ww.coefficient(c, 1).constant_value();
  return out;
}

State Derivation::ansatz(const Poly& beta, const Poly& gamma) const {
  State s = engine_.normal_order(Word{Mode{w_, -delta_}, Mode{w_, -delta_}});
  s += State::of(beta_word(), beta);
  s += State::of(gamma_word(), gamma);
  return s;
}

State Derivation::l2_ansatz(const Poly& beta, const Poly& gamma) const {
  return project(engine_.apply_mode(Mode{t_, 2}, ansatz(beta, gamma)));
}

Poly Derivation::solve_b_quasiprimary() const {
  BetaGammaWW bg = beta_gamma_ww();
  const Poly b = symbol_b();
  State image = l2_ansatz(bg.beta_ww + b, bg.gamma_ww + gamma_sum(b));
  if (image.size() > 1 || (image.size() == 1 && image.terms().begin()->first != top_word()))
    throw std::logic_error("L_2 image of the ansatz has words other than L_{-2}^{D-1}: " +
                           to_string(engine_.spec(), image));
  return solve_for(image.coefficient(top_word()), b);
}

Poly Derivation::gamma_sum(const Poly& b) const {
  const Poly g = Poly::symbol("Gamma_X");
  State x = State::of(beta_word(), b) + State::of(gamma_word(), g);
  State image = project(engine_.apply_mode(Mode{t_, 1}, x));
  Poly equation = image.coefficient(primary_word());
  if (equation.degree(symbol_id(g)) == 0) throw std::logic_error("gamma_sum: L_{-3}L_{-2}^{D-2} equation lacks Gamma_X");
  return solve_for(equation, g);
}

State Derivation::correction_part(int n) const {
  FieldExprPtr q = engine_.qp_nop("W", "W");
  State out;
  for (const auto& [c, e] : q->terms) {
    if (e->kind == FieldExpr::Kind::NProduct) continue;
    out += engine_.field_mode_apply(e, n, State::vacuum()) * c;
  }
  return project(out);
}

State Derivation::pair_words() const {
  return State::of(Word{Mode{w_, -delta_ - 1}, Mode{w_, -delta_}}, Poly(2));
}

XiSolution Derivation::descend_and_solve_xi(const Poly& b, PairBookkeeping mode) const {
  BetaGammaWW bg = beta_gamma_ww();
  const Poly beta = bg.beta_ww + b, gamma = bg.gamma_ww + gamma_sum(b);
  XiSolution out;
  out.lhs = project(engine_.apply_mode(Mode{t_, -1}, ansatz(beta, gamma)));
  if (mode == PairBookkeeping::RawPair)
    out.known = project(correction_part(-2 * delta_ - 1) + pair_words());
  else
    out.known = project(engine_.field_mode_apply(engine_.qp_nop("W", "W"), -2 * delta_ - 1, State::vacuum()));
  State residual = out.lhs - out.known;
  auto words = xi_words();
  for (int i = 0; i < 3; ++i) {
    if (words[i].empty()) continue;
    out.xi[i] = residual.coefficient(words[i]);
    residual -= State::of(words[i], out.xi[i]);
  }
  if (!residual.is_zero())
    throw std::logic_error("xi matching left words outside the three monomials: " + to_string(engine_.spec(), residual));
  return out;
}

PrimaryRoute Derivation::solve_b_primary(PairBookkeeping mode) const {
  PrimaryRoute out;
  const Poly b = symbol_b();
  out.xi = descend_and_solve_xi(b, mode);
  auto words = xi_words();
  State rep;
  if (mode == PairBookkeeping::RawPair) {
    rep = correction_part(-2 * delta_ - 1);
    rep += engine_.normal_order(Word{Mode{w_, -delta_}, Mode{w_, -delta_ - 1}});
    rep += engine_.normal_order(Word{Mode{w_, -delta_ - 1}, Mode{w_, -delta_}});
  } else {
    rep = engine_.field_mode_apply(engine_.qp_nop("W", "W"), -2 * delta_ - 1, State::vacuum());
  }
  for (int i = 0; i < 3; ++i)
    if (!words[i].empty()) rep += State::of(words[i], out.xi.xi[i]);
  out.l2_image = project(engine_.apply_mode(Mode{t_, 2}, rep));
  out.b_primary = solve_for(out.l2_image.coefficient(primary_word()), b);
  return out;
}

DerivationReport Derivation::report() const {
  DerivationReport r;
  r.p = p_;
  r.delta = delta_;
  const int d = delta_;
  project(engine_.field_mode_apply(engine_.qp_nop("W", "W"), -2 * d, State::vacuum()), &r.discarded_words);
  BetaGammaWW bg = beta_gamma_ww();
  r.beta_ww_prime = bg.beta_ww_prime;
  r.beta_ww = bg.beta_ww;
  r.gamma_ww = bg.gamma_ww;
  r.b_quasiprimary = solve_b_quasiprimary();
  r.gamma_sum = gamma_sum(symbol_b());
  r.beta = bg.beta_ww + symbol_b();
  r.gamma = bg.gamma_ww + r.gamma_sum;
  PrimaryRoute raw = solve_b_primary(PairBookkeeping::RawPair);
  r.xi = raw.xi.xi;
  r.b_primary = raw.b_primary;
  r.difference = r.b_quasiprimary - r.b_primary;
  r.alpha_zero_consistent = r.difference.is_zero();
  r.p_top = p_poly(d, d, 2 * d - 2, 2 - d, -d);
  r.p_descend = p_poly(d, d, 2 * d - 2, -d, -d - 1);
  r.p_shift_left = p_poly(d, d, 2 * d - 2, 2 - d, -d - 1);
  r.p_shift_right = p_poly(d, d, 2 * d - 2, 1 - d, -d);
  r.b_free_l2_image = l2_ansatz(bg.beta_ww, bg.gamma_ww);
  r.normal_ordered_audit = solve_b_primary(PairBookkeeping::NormalOrdered);
  r.assumptions = {
      "only the C_WW^{N(T^{D-1})} channel produces words of length D-1",
      "fields of weight 2D-1 with one derivative have vanishing C_WW constants",
      "the extra quasi-primaries enter only through B and their aggregate L_{-3}^2 L_{-2}^{D-3} coefficient",
      "N^{(D)}(W,W)_{-2D-1}|0> enters the xi matching as bare words (raw pair bookkeeping)",
  };
  return r;
}

DerivationReport alpha_nonzero_report(int p) { return Derivation(p).report(); }

}  // namespace walg
