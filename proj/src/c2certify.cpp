#include "walg/c2certify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace walg {

namespace {

WordSum prefixed(const Word& prefix, const WordSum& v) {
  WordSum out;
  for (const auto& [w, c] : v.terms()) {
    Word full = prefix;
    full.insert(full.end(), w.begin(), w.end());
    out.add(full, c);
  }
  return out;
}

Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Word power(Mode m, int k) { return Word(static_cast<std::size_t>(k), m); }

int max_weight(const WordSum& v) {
  int out = 0;
  for (const auto& [w, c] : v.terms()) out = std::max(out, word_weight(w));
  return out;
}

std::string space_name(int n) { return "C" + std::to_string(n); }

int parse_space(const std::string& s) {
  if (s.size() < 2 || s[0] != 'C') throw std::invalid_argument("space must look like C<n>, got '" + s + "'");
  int n = std::stoi(s.substr(1));
  if (n < 1) throw std::invalid_argument("space index must be positive: '" + s + "'");
  return n;
}

class Builder {
 public:
  explicit Builder(Certificate& cert) : cert_(cert) {}

  int add(MembershipClaim c, std::vector<std::string> direct) {
    c.id = static_cast<int>(cert_.steps.size()) + 1;
    std::set<std::string> deps(direct.begin(), direct.end());
    for (int u : c.uses) {
      const auto& used = cert_.step(u).depends_on;
      deps.insert(used.begin(), used.end());
    }
    c.depends_on.assign(deps.begin(), deps.end());
    cert_.steps.push_back(std::move(c));
    return cert_.steps.back().id;
  }

 private:
  Certificate& cert_;
};

MembershipClaim claim(Rule rule, WordSum vector, std::string label) {
  MembershipClaim c;
  c.rule = rule;
  c.vector = std::move(vector);
  c.label = std::move(label);
  return c;
}

}  // namespace

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::ManifestMember:
      return "ManifestMember";
    case Rule::PrefixInvariance:
      return "PrefixInvariance";
    case Rule::SingularRewrite:
      return "SingularRewrite";
    case Rule::WeightBoundedBracket:
      return "WeightBoundedBracket";
    case Rule::LinearCombination:
      return "LinearCombination";
  }
  return "";
}

Rule parse_rule(const std::string& name) {
  for (Rule r : {Rule::ManifestMember, Rule::PrefixInvariance, Rule::SingularRewrite, Rule::WeightBoundedBracket,
                 Rule::LinearCombination})
    if (rule_name(r) == name) return r;
  throw std::invalid_argument("unknown rule '" + name + "'");
}

const MembershipClaim& Certificate::step(int id) const {
  for (const auto& s : steps)
    if (s.id == id) return s;
  throw std::out_of_range("no step with id " + std::to_string(id));
}

bool manifest_member(const AlgebraSpec& spec, const Word& word, int n) {
  if (word.empty() || n < 1) return false;
  const Mode lead = word.front();
  if (n == 1 && spec.field(lead.field).weight <= 0) return false;
  return math_index(spec, lead) <= -n;
}

Certificate certify_triplet_p2(const AlgebraSpec& spec, const NullCoefficients& k) {
  if (k.l2_cubed == 0) throw std::invalid_argument("the L_{-2}^3 coefficient of N^{aa} must be nonzero");
  const Mode w1{spec.id("W1"), -3}, w2{spec.id("W2"), -3}, l2{spec.id("T"), -2};
  const Word l3 = power(l2, 3);
  Engine engine(spec);

  Certificate cert;
  for (auto [a, b] : {std::pair{1, 2}, std::pair{1, 1}, std::pair{2, 2}})
    cert.null_vectors.push_back(
        {"N" + std::to_string(a) + std::to_string(b), triplet_p2_null_vector(spec, a, b, k)});
  const WordSum& n12 = cert.null_vectors[0].vector;
  const WordSum& n11 = cert.null_vectors[1].vector;
  Builder b(cert);

  // N^{12} minus its two W^1W^2-free terms.
  WordSum mixed_tail = n12 - WordSum::of(Word{w1, w2});
  int s_tail12 = b.add(claim(Rule::ManifestMember, mixed_tail, "I eps (w4 W3_{-4}L_{-2} + w6 W3_{-6})|0>"),
                       {"W4L2", "W6"});
  MembershipClaim c = claim(Rule::SingularRewrite, WordSum::of(Word{w1, w2}), "W1_{-3}W2_{-3}|0>");
  c.uses = {s_tail12};
  c.coefficients = {Poly(-1)};
  c.null_vector = "N12";
  c.null_multiplier = Poly(1);
  int s_mixed = b.add(c, {"W4L2", "W6"});

  WordSum diag_tail = WordSum::of(Word{w1, w1}) - WordSum::of(l3, Poly(k.l2_cubed)) - n11;
  int s_tail11 = b.add(claim(Rule::ManifestMember, diag_tail, "(l3 L_{-3}^2 + l4 L_{-4}L_{-2} + l6 L_{-6})|0>"),
                       {"L3^2", "L4L2", "L6"});
  auto square_minus = [&](Mode w, const std::string& null_id, const std::string& label) {
    MembershipClaim s = claim(Rule::SingularRewrite, WordSum::of(Word{w, w}) - WordSum::of(l3, Poly(k.l2_cubed)), label);
    s.uses = {s_tail11};
    s.coefficients = {Poly(1)};
    s.null_vector = null_id;
    s.null_multiplier = Poly(1);
    return b.add(s, {"L2^3"});
  };
  int s_sq1 = square_minus(w1, "N11", "((W1_{-3})^2 - l2 L_{-2}^3)|0>");
  int s_sq2 = square_minus(w2, "N22", "((W2_{-3})^2 - l2 L_{-2}^3)|0>");

  c = claim(Rule::LinearCombination, WordSum::of(Word{w1, w1}) - WordSum::of(Word{w2, w2}),
            "((W1_{-3})^2 - (W2_{-3})^2)|0>");
  c.uses = {s_sq1, s_sq2};
  c.coefficients = {Poly(1), Poly(-1)};
  int s_diff = b.add(c, {});

  c = claim(Rule::PrefixInvariance, prefixed(Word{w1}, cert.step(s_diff).vector), "W1_{-3}((W1_{-3})^2 - (W2_{-3})^2)|0>");
  c.uses = {s_diff};
  c.prefix = Word{w1};
  int s_lift = b.add(c, {});

  c = claim(Rule::PrefixInvariance, WordSum::of(Word{w2, w1, w2}), "W2_{-3}W1_{-3}W2_{-3}|0>");
  c.uses = {s_mixed};
  c.prefix = Word{w2};
  int s_swap = b.add(c, {});

  c = claim(Rule::WeightBoundedBracket, WordSum::of(Word{w1, w2, w2}) - WordSum::of(Word{w2, w1, w2}),
            "[W1_{-3}, W2_{-3}] W2_{-3}|0>");
  c.left = w1;
  c.right = w2;
  c.tail = Word{w2};
  int s_bracket = b.add(c, {});

  c = claim(Rule::LinearCombination, WordSum::of(power(w1, 3)), "(W1_{-3})^3|0>");
  c.uses = {s_lift, s_swap, s_bracket};
  c.coefficients = {Poly(1), Poly(1), Poly(1)};
  int s_cube = b.add(c, {});

  std::vector<int> powers{s_cube};
  for (int m = 4; m <= 5; ++m) {
    c = claim(Rule::PrefixInvariance, WordSum::of(power(w1, m)), "(W1_{-3})^" + std::to_string(m) + "|0>");
    c.uses = {powers.back()};
    c.prefix = Word{w1};
    powers.push_back(b.add(c, {}));
  }
  const int s_fourth = powers[1];

  c = claim(Rule::PrefixInvariance, prefixed(Word{w1, w1}, cert.step(s_sq1).vector),
            "(W1_{-3})^2((W1_{-3})^2 - l2 L_{-2}^3)|0>");
  c.uses = {s_sq1};
  c.prefix = Word{w1, w1};
  int s_wsq = b.add(c, {});

  c = claim(Rule::PrefixInvariance, prefixed(l3, cert.step(s_sq1).vector), "L_{-2}^3((W1_{-3})^2 - l2 L_{-2}^3)|0>");
  c.uses = {s_sq1};
  c.prefix = l3;
  int s_lsq = b.add(c, {});

  const Poly kappa(k.l2_cubed);
  WordSum square = WordSum::of(power(w1, 4)) - WordSum::of(concat({Word{w1, w1}, l3}), kappa) -
                   WordSum::of(concat({l3, Word{w1, w1}}), kappa) + WordSum::of(power(l2, 6), kappa * kappa);
  c = claim(Rule::LinearCombination, square, "((W1_{-3})^2 - l2 L_{-2}^3)^2|0>");
  c.uses = {s_wsq, s_lsq};
  c.coefficients = {Poly(1), -kappa};
  int s_square = b.add(c, {});

  const Rat inv = 1 / k.l2_cubed;
  c = claim(Rule::LinearCombination, WordSum::of(concat({Word{w1, w1}, l3})), "(W1_{-3})^2 L_{-2}^3|0>");
  c.uses = {s_fourth, s_wsq};
  c.coefficients = {Poly(inv), Poly(-inv)};
  int s_wl = b.add(c, {});

  const Word lw = concat({l3, Word{w1, w1}}), wl = concat({Word{w1, w1}, l3});
  State reorder = engine.normal_order(lw) - engine.normal_order(wl);
  int s_reorder = b.add(claim(Rule::ManifestMember, reorder, "L_{-2}^3 (W1_{-3})^2|0> - (W1_{-3})^2 L_{-2}^3|0>"), {});

  c = claim(Rule::LinearCombination, WordSum::of(lw), "L_{-2}^3 (W1_{-3})^2|0>");
  c.uses = {s_wl, s_reorder};
  c.coefficients = {Poly(1), Poly(1)};
  int s_lw = b.add(c, {});

  const Rat inv2 = inv * inv;
  c = claim(Rule::LinearCombination, WordSum::of(power(l2, 6)), "L_{-2}^6|0>");
  c.uses = {s_square, s_fourth, s_wl, s_lw};
  c.coefficients = {Poly(inv2), Poly(-inv2), Poly(inv), Poly(inv)};
  int s_l6 = b.add(c, {});

  cert.targets = {s_mixed, s_diff, powers[0], powers[1], powers[2], s_l6};
  return cert;
}

namespace {

std::string check_step(const Certificate& cert, const MembershipClaim& s, const Engine& e,
                       const std::map<int, std::size_t>& position, std::size_t here,
                       const std::map<std::string, State>& nulls, State& residual) {
  const auto& spec = e.spec();
  if (s.space < 1) return "space index must be positive";
  for (int u : s.uses) {
    auto it = position.find(u);
    if (it == position.end()) return "cites unknown step " + std::to_string(u);
    if (it->second >= here) return "cites step " + std::to_string(u) + " which does not precede it";
    if (cert.steps[it->second].space < s.space)
      return "step " + std::to_string(u) + " only establishes membership in " + space_name(cert.steps[it->second].space);
  }
  if (s.vector.is_zero()) return "empty claim";
  auto combination = [&](bool with_null) -> std::string {
    if (s.coefficients.size() != s.uses.size()) return "needs one coefficient per cited step";
    State rhs;
    for (std::size_t i = 0; i < s.uses.size(); ++i)
      rhs += e.normal_order(cert.steps[position.at(s.uses[i])].vector) * s.coefficients[i];
    if (with_null) {
      auto it = nulls.find(s.null_vector);
      if (it == nulls.end()) return "unknown null vector '" + s.null_vector + "'";
      if (s.null_multiplier.is_zero()) return "null vector multiplier is zero";
      rhs += it->second * s.null_multiplier;
    }
    residual = e.normal_order(s.vector) - rhs;
    return residual.is_zero() ? "" : "vector differs from the cited combination";
  };
  switch (s.rule) {
    case Rule::ManifestMember:
      if (!s.uses.empty()) return "ManifestMember cites no steps";
      for (const auto& [w, c] : s.vector.terms())
        if (!manifest_member(spec, w, s.space)) {
          residual = WordSum::of(w, c);
          return "word " + to_string(spec, w) + " is not manifestly in " + space_name(s.space);
        }
      return "";
    case Rule::PrefixInvariance: {
      if (s.uses.size() != 1) return "PrefixInvariance cites exactly one step";
      if (s.prefix.empty()) return "empty prefix";
      for (const Mode& m : s.prefix)
        if (math_index(spec, m) > 0) return "prefix mode " + to_string(spec, m) + " has positive math index";
      const MembershipClaim& used = cert.steps[position.at(s.uses[0])];
      residual = s.vector - prefixed(s.prefix, used.vector);
      return residual.is_zero() ? "" : "vector is not the prefix applied to the cited step";
    }
    case Rule::SingularRewrite:
      return combination(true);
    case Rule::LinearCombination:
      if (s.uses.empty()) return "LinearCombination cites at least one step";
      return combination(false);
    case Rule::WeightBoundedBracket: {
      if (!s.uses.empty()) return "WeightBoundedBracket cites no steps";
      WordSum expect = WordSum::of(concat({Word{s.left, s.right}, s.tail})) -
                       WordSum::of(concat({Word{s.right, s.left}, s.tail}));
      residual = s.vector - expect;
      if (!residual.is_zero()) return "vector is not the bracket applied to the tail";
      if (!spec.has_commutator_data(s.left.field, s.right.field)) return "no commutator data for the bracket";
      const int index = s.left.index + s.right.index;
      if (index == 0) {
        auto d = spec.two_point(s.left.field, s.right.field);
        if (!d || !d->is_zero()) return "central term may contribute";
      }
      for (const auto& [k, value] : spec.channels(s.left.field, s.right.field)) {
        Mode m{k, index};
        if (math_index(spec, m) > -s.space)
          return "channel " + to_string(spec, m) + " of weight " + std::to_string(spec.field(k).weight) +
                 " is not manifestly in " + space_name(s.space);
      }
      return "";
    }
  }
  return "unknown rule";
}

}  // namespace

VerificationReport verify_certificate(const Certificate& cert, const AlgebraSpec& spec) {
  Engine e(spec);
  VerificationReport out;
  std::map<std::string, State> nulls;
  for (const auto& nv : cert.null_vectors) {
    if (nulls.count(nv.id)) {
      out.null_vector_failures.push_back(nv.id + ": declared twice");
      continue;
    }
    State n = e.normal_order(nv.vector);
    const int level = max_weight(nv.vector);
    for (FieldId g : spec.generators())
      for (int m = 1; m <= level; ++m) {
        State r = e.apply_mode(Mode{g, m}, n);
        if (!r.is_zero())
          out.null_vector_failures.push_back(nv.id + ": " + to_string(spec, Mode{g, m}) + " gives " + to_string(spec, r));
      }
    nulls.emplace(nv.id, n);
  }
  std::map<int, std::size_t> position;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) position.emplace(cert.steps[i].id, i);
  bool ok = out.null_vector_failures.empty() && position.size() == cert.steps.size();
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    StepCheck check;
    check.id = cert.steps[i].id;
    check.message = check_step(cert, cert.steps[i], e, position, i, nulls, check.residual);
    check.ok = check.message.empty();
    if (!check.ok && !out.first_failure) out.first_failure = check.id;
    ok = ok && check.ok;
    out.steps.push_back(std::move(check));
  }
  if (cert.targets.empty()) ok = false;
  for (int t : cert.targets)
    if (!position.count(t)) ok = false;
  out.ok = ok;
  return out;
}

nlohmann::ordered_json certificate_to_json(const Certificate& cert, const AlgebraSpec& spec) {
  using nlohmann::ordered_json;
  ordered_json doc;
  ordered_json nulls = ordered_json::array();
  for (const auto& nv : cert.null_vectors) nulls.push_back({{"id", nv.id}, {"vector", to_string(spec, nv.vector)}});
  ordered_json steps = ordered_json::array();
  for (const auto& s : cert.steps) {
    ordered_json j;
    j["id"] = s.id;
    j["claim"] = {{"vector", to_string(spec, s.vector)}, {"space", space_name(s.space)}};
    j["rule"] = rule_name(s.rule);
    j["uses"] = s.uses;
    if (!s.coefficients.empty()) {
      ordered_json cs = ordered_json::array();
      for (const auto& c : s.coefficients) cs.push_back(c.str());
      j["coefficients"] = cs;
    }
    if (s.rule == Rule::SingularRewrite) {
      j["null_vector"] = s.null_vector;
      j["multiplier"] = s.null_multiplier.str();
    }
    if (s.rule == Rule::PrefixInvariance) j["prefix"] = to_string(spec, s.prefix);
    if (s.rule == Rule::WeightBoundedBracket)
      j["bracket"] = {{"left", to_string(spec, s.left)}, {"right", to_string(spec, s.right)}, {"tail", to_string(spec, s.tail)}};
    j["depends_on"] = s.depends_on;
    j["label"] = s.label;
    steps.push_back(j);
  }
  doc["null_vectors"] = nulls;
  doc["steps"] = steps;
  doc["targets"] = cert.targets;
  return doc;
}

Certificate certificate_from_json(const nlohmann::json& doc, const AlgebraSpec& spec) {
  Certificate cert;
  auto single_mode = [&](const std::string& text, const std::string& where) {
    Word w = parse_word(spec, text + " |0>");
    if (w.size() != 1) throw std::invalid_argument(where + ": expected a single mode");
    return w[0];
  };
  try {
    for (const auto& nv : doc.value("null_vectors", nlohmann::json::array()))
      cert.null_vectors.push_back({nv.at("id").get<std::string>(), parse_word_sum(spec, nv.at("vector").get<std::string>())});
    for (const auto& j : doc.at("steps")) {
      MembershipClaim s;
      s.id = j.at("id").get<int>();
      const std::string where = "step " + std::to_string(s.id);
      try {
        s.vector = parse_word_sum(spec, j.at("claim").at("vector").get<std::string>());
        s.space = parse_space(j.at("claim").at("space").get<std::string>());
        s.rule = parse_rule(j.at("rule").get<std::string>());
        s.uses = j.at("uses").get<std::vector<int>>();
        for (const auto& c : j.value("coefficients", nlohmann::json::array())) s.coefficients.push_back(parse_poly(c.get<std::string>()));
        s.null_vector = j.value("null_vector", "");
        if (j.contains("multiplier")) s.null_multiplier = parse_poly(j.at("multiplier").get<std::string>());
        if (j.contains("prefix")) s.prefix = parse_word(spec, j.at("prefix").get<std::string>());
        if (j.contains("bracket")) {
          const auto& br = j.at("bracket");
          s.left = single_mode(br.at("left").get<std::string>(), where);
          s.right = single_mode(br.at("right").get<std::string>(), where);
          s.tail = parse_word(spec, br.at("tail").get<std::string>());
        }
        s.depends_on = j.value("depends_on", std::vector<std::string>{});
        s.label = j.value("label", "");
      } catch (const std::exception& err) {
        throw std::invalid_argument(where + ": " + err.what());
      }
      cert.steps.push_back(std::move(s));
    }
    cert.targets = doc.at("targets").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& err) {
    throw std::invalid_argument(std::string("malformed certificate: ") + err.what());
  }
  return cert;
}

}  // namespace walg
