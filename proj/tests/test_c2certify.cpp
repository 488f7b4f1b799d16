#include <doctest.h>

#include "walg/c2certify.hpp"
#include "walg/singular.hpp"
#include "walg/specs.hpp"

#include <algorithm>
#include <functional>
#include <set>

using namespace walg;

namespace {

AlgebraSpec numeric_spec() { return triplet_p2_spec(TripletP2Constants::numeric()); }

// Canonical creation words of the triplet spec with weight <= max_weight.
std::vector<Word> canonical_words(const AlgebraSpec& spec, int max_weight) {
  std::vector<Mode> modes;
  for (FieldId g : spec.generators())
    for (int n = -spec.field(g).weight; -n <= max_weight; --n) modes.push_back(Mode{g, n});
  std::sort(modes.begin(), modes.end());
  std::vector<Word> out{Word{}};
  std::function<void(Word, std::size_t, int)> grow = [&](Word w, std::size_t from, int weight) {
    for (std::size_t k = from; k < modes.size(); ++k) {
      if (weight - modes[k].index > max_weight) continue;
      Word next = w;
      next.push_back(modes[k]);
      out.push_back(next);
      grow(next, k, weight - modes[k].index);
    }
  };
  grow(Word{}, 0, 0);
  return out;
}

Word parse(const AlgebraSpec& spec, const char* text) { return parse_word(spec, text); }

bool has_word(const Certificate& cert, const WordSum& v) {
  for (int t : cert.targets)
    if (cert.step(t).vector == v) return true;
  return false;
}

}  // namespace

TEST_CASE("manifest membership") {
  AlgebraSpec spec = numeric_spec();
  CHECK(manifest_member(spec, parse(spec, "T_{-3} T_{-2} |0>"), 2));
  CHECK_FALSE(manifest_member(spec, parse(spec, "T_{-2}^3 |0>"), 2));
  CHECK(manifest_member(spec, parse(spec, "W1_{-4} |0>"), 2));
  CHECK(manifest_member(spec, parse(spec, "W2_{-4} W1_{-3} T_{-2} |0>"), 2));
  CHECK_FALSE(manifest_member(spec, parse(spec, "W1_{-3} W2_{-3} |0>"), 2));
  CHECK(manifest_member(spec, parse(spec, "T_{-2} |0>"), 1));
  CHECK_FALSE(manifest_member(spec, parse(spec, "T_{-1} T_{-2} |0>"), 1));
  CHECK_FALSE(manifest_member(spec, Word{}, 1));
}

TEST_CASE("manifest membership is monotone in n") {
  AlgebraSpec spec = numeric_spec();
  std::vector<Word> words = canonical_words(spec, 8);
  CHECK(words.size() > 100);
  for (const Word& w : words)
    for (int m = 1; m <= 8; ++m)
      if (manifest_member(spec, w, m))
        for (int n = 1; n <= m; ++n) CHECK(manifest_member(spec, w, n));
}

TEST_CASE("modes of non-positive math index preserve manifest membership") {
  AlgebraSpec spec = numeric_spec();
  Engine e(spec);
  std::size_t checked = 0;
  for (const Word& word : canonical_words(spec, 8)) {
    if (!manifest_member(spec, word, 2)) continue;
    const Mode u = word.front();
    const int hu = spec.field(u.field).weight;
    const int a = math_index(spec, u);
    const State rest = State::of(Word(word.begin() + 1, word.end()));
    const State u_state = State::of(Word{Mode{u.field, -hu}});
    for (const char* v : {"T", "W1"}) {
      const FieldId vf = spec.id(v);
      const int hv = spec.field(vf).weight;
      for (int m = -2; m <= 0; ++m) {
        if (word_weight(word) + hv - m - 1 > 9) continue;
        State lhs = e.apply_mode(Mode{vf, m - hv + 1}, State::of(word));
        for (const auto& [w, c] : lhs.terms()) CHECK(manifest_member(spec, w, 2));
        State rhs = e.apply_mode(u, e.apply_mode(Mode{vf, m - hv + 1}, rest));
        for (int i = 0; i < hu + hv; ++i) {
          State vi_u = e.apply_mode(Mode{vf, i - hv + 1}, u_state);
          if (vi_u.is_zero()) continue;
          const int wt = hu + hv - i - 1;
          rhs += e.field_mode_apply(e.field_of_state(vi_u), m + a - i - wt + 1, rest) * Poly(binom_int(m, i));
        }
        CHECK(lhs == rhs);
        ++checked;
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("level-6 singular vectors at p = 2") {
  AlgebraSpec spec = numeric_spec();
  SingularReport ok = verify_singular_p2(spec);
  CHECK(ok.singular);
  CHECK(ok.failures.empty());
  NullCoefficients base;
  for (const auto& [name, value] : base.entries()) {
    NullCoefficients bumped = base;
    bumped.at(name) += make_rat(1, 7);
    SingularReport r = verify_singular_p2(spec, bumped);
    CHECK_MESSAGE(!r.singular, name);
    CHECK(!r.failures.empty());
  }
  CHECK_THROWS_AS(verify_singular_p2(triplet_p2_spec(TripletP2Constants::symbolic())), MissingDataError);
}

TEST_CASE("singular vector constants in solve mode") {
  SingularSolveReport r = solve_singular_p2();
  CHECK(r.consistent);
  CHECK(r.equations > 0);
  CHECK(r.free.empty());
  TripletP2Constants k = TripletP2Constants::numeric();
  CHECK(r.values.at("d_W") == k.d);
  CHECK(r.values.at("K_T") == k.k_t);
  CHECK(r.values.at("K_Lam") == k.k_lam);
  CHECK(r.values.at("K_W") == k.k_w);
  CHECK(r.values.at("K_TW") == k.k_tw);
  // Structure-constant relation: C_WW^T d_TT = C_TW^W d_WW with d_TT = c/2.
  CHECK(k.k_t * Poly(central_charge_p1(2) / 2) == Poly(3) * k.d);
  NullCoefficients bad;
  bad.l2_cubed = make_rat(1, 2);
  CHECK_FALSE(solve_singular_p2(bad).consistent);
}

TEST_CASE("C2 certificate for the triplet algebra at p = 2") {
  AlgebraSpec spec = numeric_spec();
  Certificate cert = certify_triplet_p2(spec);
  VerificationReport r = verify_certificate(cert, spec);
  CHECK(r.ok);
  CHECK(r.null_vector_failures.empty());
  CHECK_FALSE(r.first_failure.has_value());
  CHECK(r.steps.size() == cert.steps.size());

  CHECK(has_word(cert, WordSum::of(parse(spec, "W1_{-3} W2_{-3} |0>"))));
  CHECK(has_word(cert, parse_word_sum(spec, "W1_{-3}^2 |0> + (-1) W2_{-3}^2 |0>")));
  for (const char* t : {"W1_{-3}^3 |0>", "W1_{-3}^4 |0>", "W1_{-3}^5 |0>", "T_{-2}^6 |0>"})
    CHECK_MESSAGE(has_word(cert, WordSum::of(parse(spec, t))), t);

  std::set<Rule> used_for_cube;
  std::function<void(int)> collect = [&](int id) {
    used_for_cube.insert(cert.step(id).rule);
    for (int u : cert.step(id).uses) collect(u);
  };
  for (const auto& s : cert.steps)
    if (s.vector == WordSum::of(parse(spec, "W1_{-3}^3 |0>"))) collect(s.id);
  CHECK(used_for_cube.count(Rule::SingularRewrite));
  CHECK(used_for_cube.count(Rule::PrefixInvariance));
  CHECK(used_for_cube.count(Rule::WeightBoundedBracket));

  for (const auto& s : cert.steps)
    for (int u : s.uses) CHECK(u < s.id);
}

TEST_CASE("every corrupted certificate step fails verification") {
  AlgebraSpec spec = numeric_spec();
  const Certificate cert = certify_triplet_p2(spec);
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    Certificate bad = cert;
    auto& v = bad.steps[i].vector;
    const auto& [w, c] = *v.terms().begin();
    v.add(w, c);
    VerificationReport r = verify_certificate(bad, spec);
    CHECK_MESSAGE(!r.ok, "step ", cert.steps[i].id);
    CHECK(r.first_failure.has_value());
  }
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    if (cert.steps[i].rule != Rule::SingularRewrite) continue;
    Certificate bad = cert;
    bad.steps[i].null_multiplier = Poly(2);
    CHECK_FALSE(verify_certificate(bad, spec).ok);
  }
}

TEST_CASE("certificate structural failures") {
  AlgebraSpec spec = numeric_spec();
  const Certificate cert = certify_triplet_p2(spec);

  Certificate later = cert;
  later.steps[1].uses = {static_cast<int>(cert.steps.size())};
  VerificationReport r = verify_certificate(later, spec);
  CHECK_FALSE(r.ok);
  CHECK(r.first_failure == later.steps[1].id);

  Certificate manifest = cert;
  MembershipClaim bogus;
  bogus.id = 1000;
  bogus.rule = Rule::ManifestMember;
  bogus.vector = WordSum::of(parse(spec, "T_{-2}^3 |0>"));
  manifest.steps.push_back(bogus);
  r = verify_certificate(manifest, spec);
  CHECK_FALSE(r.ok);
  CHECK(r.first_failure == 1000);

  Certificate bracket = cert;
  MembershipClaim wide;
  wide.id = 1001;
  wide.rule = Rule::WeightBoundedBracket;
  wide.left = Mode{spec.id("W1"), -2};
  wide.right = Mode{spec.id("W2"), -2};
  wide.tail = Word{};
  wide.vector = WordSum::of(Word{wide.left, wide.right}) - WordSum::of(Word{wide.right, wide.left});
  bracket.steps.push_back(wide);
  r = verify_certificate(bracket, spec);
  CHECK_FALSE(r.ok);
  CHECK(r.steps.back().message.find("TW3") != std::string::npos);

  Certificate no_targets = cert;
  no_targets.targets.clear();
  CHECK_FALSE(verify_certificate(no_targets, spec).ok);

  CHECK_FALSE(verify_certificate(cert, triplet_p2_spec(TripletP2Constants::symbolic())).ok);
}

TEST_CASE("corrupted coefficient table") {
  AlgebraSpec spec = numeric_spec();
  NullCoefficients bad;
  bad.l2_cubed = make_rat(1, 2);
  Certificate cert = certify_triplet_p2(spec, bad);
  VerificationReport r = verify_certificate(cert, spec);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.null_vector_failures.empty());
  for (const auto& s : r.steps) CHECK(s.ok);

  auto depends = [&](const char* target, const std::string& coeff) {
    for (const auto& s : cert.steps)
      if (s.vector == WordSum::of(parse(spec, target)))
        return std::find(s.depends_on.begin(), s.depends_on.end(), coeff) != s.depends_on.end();
    FAIL("target not found");
    return false;
  };
  CHECK(depends("T_{-2}^6 |0>", "L2^3"));
  CHECK(depends("W1_{-3}^3 |0>", "L2^3"));
  CHECK(depends("W1_{-3}^3 |0>", "W6"));
  CHECK_FALSE(depends("W1_{-3} W2_{-3} |0>", "L2^3"));

  NullCoefficients zero;
  zero.l2_cubed = 0;
  CHECK_THROWS_AS(certify_triplet_p2(spec, zero), std::invalid_argument);
}

TEST_CASE("certificate JSON round trip") {
  AlgebraSpec spec = numeric_spec();
  Certificate cert = certify_triplet_p2(spec);
  auto doc = certificate_to_json(cert, spec);
  CHECK(doc.at("steps").at(0).at("claim").at("space") == "C2");
  Certificate back = certificate_from_json(nlohmann::json::parse(doc.dump()), spec);
  CHECK(certificate_to_json(back, spec) == doc);
  CHECK(verify_certificate(back, spec).ok);

  auto broken = nlohmann::json::parse(doc.dump());
  broken["steps"][2]["rule"] = "Handwave";
  CHECK_THROWS_AS(certificate_from_json(broken, spec), std::invalid_argument);
  broken = nlohmann::json::parse(doc.dump());
  broken["steps"][0]["claim"]["vector"] = "X_{-2} |0>";
  CHECK_THROWS_AS(certificate_from_json(broken, spec), std::invalid_argument);
}
