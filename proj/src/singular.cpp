#include "walg/singular.hpp"

#include <stdexcept>

namespace walg {

namespace {

const char* const kW[3] = {"W1", "W2", "W3"};

Word word(const AlgebraSpec& spec, std::initializer_list<std::pair<const char*, int>> modes) {
  Word w;
  for (const auto& [f, n] : modes) w.push_back(Mode{spec.id(f), n});
  return w;
}

void require_constants(const AlgebraSpec& spec) {
  const SymbolId i = Poly::i_unit().symbols().at(0);
  auto check = [&](const Poly& p, const std::string& where) {
    for (SymbolId s : p.symbols())
      if (s != i) throw MissingDataError(where + " is symbolic (" + p.str() + "); use solve mode");
  };
  for (const auto& [key, v] : spec.declared_two_point())
    check(v, "d[" + spec.field(key.first).symbol + "," + spec.field(key.second).symbol + "]");
  for (const auto& [key, v] : spec.declared_constants()) {
    auto [a, b, c] = key;
    check(v, "C[" + spec.field(a).symbol + "," + spec.field(b).symbol + ";" + spec.field(c).symbol + "]");
  }
}

std::vector<std::pair<std::string, State>> images(const Engine& e, const NullCoefficients& coeffs) {
  const auto& spec = e.spec();
  std::vector<std::pair<std::string, State>> out;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      State n = e.normal_order(triplet_p2_null_vector(spec, a, b, coeffs));
      const int level = 6;
      for (FieldId g : spec.generators())
        for (int m = 1; m <= level; ++m) {
          State r = e.apply_mode(Mode{g, m}, n);
          out.emplace_back(to_string(spec, Mode{g, m}) + " N^{" + std::to_string(a) + std::to_string(b) + "}",
                           std::move(r));
        }
    }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, Rat>> NullCoefficients::entries() const {
  return {{"L2^3", l2_cubed}, {"L3^2", l3_squared}, {"L4L2", l4_l2}, {"L6", l6}, {"W4L2", w4_l2}, {"W6", w6}};
}

Rat& NullCoefficients::at(const std::string& name) {
  if (name == "L2^3") return l2_cubed;
  if (name == "L3^2") return l3_squared;
  if (name == "L4L2") return l4_l2;
  if (name == "L6") return l6;
  if (name == "W4L2") return w4_l2;
  if (name == "W6") return w6;
  throw std::invalid_argument("unknown null vector coefficient '" + name + "'");
}

int levi_civita(int a, int b, int c) { return (a - b) * (b - c) * (c - a) / 2; }

WordSum triplet_p2_null_vector(const AlgebraSpec& spec, int a, int b, const NullCoefficients& k) {
  if (a < 1 || a > 3 || b < 1 || b > 3) throw std::invalid_argument("triplet indices must lie in {1, 2, 3}");
  WordSum n = WordSum::of(word(spec, {{kW[a - 1], -3}, {kW[b - 1], -3}}));
  if (a == b) {
    n.add(word(spec, {{"T", -2}, {"T", -2}, {"T", -2}}), Poly(-k.l2_cubed));
    n.add(word(spec, {{"T", -3}, {"T", -3}}), Poly(-k.l3_squared));
    n.add(word(spec, {{"T", -4}, {"T", -2}}), Poly(-k.l4_l2));
    n.add(word(spec, {{"T", -6}}), Poly(-k.l6));
    return n;
  }
  const int c = 6 - a - b;
  const Poly phase = Poly::i_unit() * Poly(levi_civita(a, b, c));
  n.add(word(spec, {{kW[c - 1], -4}, {"T", -2}}), phase * Poly(k.w4_l2));
  n.add(word(spec, {{kW[c - 1], -6}}), phase * Poly(k.w6));
  return n;
}

SingularReport verify_singular_p2(const AlgebraSpec& spec, const NullCoefficients& coeffs) {
  require_constants(spec);
  Engine e(spec);
  SingularReport out;
  for (const auto& [label, r] : images(e, coeffs))
    if (!r.is_zero()) {
      out.singular = false;
      out.failures.push_back(label + ": " + to_string(spec, r));
    }
  return out;
}

SingularSolveReport solve_singular_p2(const NullCoefficients& coeffs) {
  const TripletP2Constants k = TripletP2Constants::symbolic();
  Engine e(triplet_p2_spec(k));
  const SymbolId i = Poly::i_unit().symbols().at(0);
  const std::string virasoro = "T_{";
  std::vector<Poly> stage[2];
  for (const auto& [label, r] : images(e, coeffs))
    for (const auto& [w, c] : r.terms())
      for (unsigned part = 0; part <= 1; ++part) {
        Poly eq = c.coefficient(i, part);
        if (!eq.is_zero()) stage[label.rfind(virasoro, 0) == 0 ? 0 : 1].push_back(eq);
      }
  std::vector<SymbolId> unknowns;
  for (const Poly* p : {&k.d, &k.k_t, &k.k_lam, &k.k_w, &k.k_tw}) unknowns.push_back(p->symbols().at(0));
  SingularSolveReport out;
  out.equations = stage[0].size() + stage[1].size();
  try {
    // Virasoro annihilation is linear in the constants; the W-mode equations become linear once it is solved.
    std::map<SymbolId, Poly> values;
    for (auto& eqs : stage) {
      for (auto& eq : eqs) eq = eq.substitute(values);
      LinearSolution sol = solve_linear_system(eqs, unknowns);
      for (auto& [id, v] : values) v = v.substitute(sol.values);
      for (const auto& [id, v] : sol.values) values[id] = v;
    }
    out.consistent = true;
    for (const auto& [id, v] : values) out.values.emplace(Poly::symbol(id).str(), v);
    for (SymbolId u : unknowns)
      if (!values.count(u)) out.free.push_back(Poly::symbol(u).str());
  } catch (const LinearSystemError& err) {
    if (err.kind() != LinearSystemError::Kind::Inconsistent) throw;
  }
  return out;
}

}  // namespace walg
