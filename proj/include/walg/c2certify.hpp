#pragma once

#include "walg/engine.hpp"
#include "walg/singular.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace walg {

enum class Rule { ManifestMember, PrefixInvariance, SingularRewrite, WeightBoundedBracket, LinearCombination };

std::string rule_name(Rule r);
Rule parse_rule(const std::string& name);

/// "vector lies in C_space(V)", where V is the vacuum Verma module divided by the declared null
/// vectors. Vectors are formal: each word is read as its modes applied left-to-right-last to |0>.
struct MembershipClaim {
  int id = 0;
  WordSum vector;
  int space = 2;
  Rule rule = Rule::ManifestMember;
  std::vector<int> uses;
  /// LinearCombination, SingularRewrite: one coefficient per used claim.
  std::vector<Poly> coefficients;
  /// SingularRewrite: vector = sum coefficients[i] uses[i] + null_multiplier * null vector.
  std::string null_vector;
  Poly null_multiplier;
  /// PrefixInvariance: vector = prefix applied to the used claim.
  Word prefix;
  /// WeightBoundedBracket: vector = (left right - right left) tail.
  Mode left, right;
  Word tail;
  /// Null vector coefficients this claim relies on, directly or through the claims it uses.
  std::vector<std::string> depends_on;
  std::string label;
};

struct NullVectorEntry {
  std::string id;
  WordSum vector;
};

struct Certificate {
  std::vector<NullVectorEntry> null_vectors;
  std::vector<MembershipClaim> steps;
  std::vector<int> targets;

  const MembershipClaim& step(int id) const;
};

/// True iff the leftmost mode has math index <= -n; for n = 1 the field must also have positive weight.
bool manifest_member(const AlgebraSpec& spec, const Word& word, int n);

/// The C_2 argument for the triplet algebra at p = 2 with triplet indices a = 1, b = 2: W^1W^2|0>,
/// ((W^1)^2 - (W^2)^2)|0>, (W^1)^m|0> for m = 3, 4, 5 and L_{-2}^6|0> as targets.
/// Throws std::invalid_argument when the L_{-2}^3 coefficient vanishes.
Certificate certify_triplet_p2(const AlgebraSpec& spec, const NullCoefficients& coeffs = {});

struct StepCheck {
  int id = 0;
  bool ok = false;
  std::string message;
  State residual;
};

struct VerificationReport {
  bool ok = false;
  std::vector<std::string> null_vector_failures;
  std::vector<StepCheck> steps;
  std::optional<int> first_failure;
};

/// Replays every step against `spec` alone: null vectors must be annihilated by every positive
/// generator mode, each rule's side condition must hold, and every use must cite an earlier step.
VerificationReport verify_certificate(const Certificate& cert, const AlgebraSpec& spec);

nlohmann::ordered_json certificate_to_json(const Certificate& cert, const AlgebraSpec& spec);
/// Throws std::invalid_argument with the offending step on malformed input.
Certificate certificate_from_json(const nlohmann::json& doc, const AlgebraSpec& spec);

}  // namespace walg
