#include "walg/c2certify.hpp"
#include "walg/derivation.hpp"
#include "walg/qseries.hpp"
#include "walg/singular.hpp"
#include "walg/spec_io.hpp"
#include "walg/specs.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace walg;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kAssertionFailed = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  int p = 0;
  long cutoff = 40;
  std::string spec_path;
  std::string level;
  std::string format = "text";
  std::string out_path;
  bool solve_mode = false;
  std::string left, right;
  std::string series = "triplet";
  bool expand = false;
  std::string certificate_path;
};

struct Result {
  int code = kOk;
  std::string text;
};

int require_p(const Options& o, int max_p) {
  if (o.p < 2 || o.p > max_p)
    throw UsageError("--p must be an integer in [2, " + std::to_string(max_p) + "], got " + std::to_string(o.p));
  return o.p;
}

long require_cutoff(const Options& o) {
  if (o.cutoff < 0) throw UsageError("--cutoff must be non-negative");
  return o.cutoff;
}

Rat parse_level(const std::string& text) {
  try {
    return parse_rat(text);
  } catch (const std::exception&) {
    throw UsageError("--level must be an exact rational, got '" + text + "'");
  }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json series_json(const QSeries& s) {
  ordered_json terms = ordered_json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back({{"exponent", to_string(e)}, {"coefficient", to_string(c)}});
  return {{"offset", to_string(s.offset())}, {"denominator", s.denominator()}, {"cutoff", to_string(s.cutoff())},
          {"terms", terms}};
}

QSeries named_series(const std::string& name, int p, long cutoff) {
  if (name == "triplet") return triplet_character(p, cutoff);
  if (name == "verma") return triplet_verma_character(p, cutoff);
  if (name == "chi-tilde") return chi_tilde(p, cutoff);
  throw UsageError("unknown series '" + name + "' (expected triplet, verma or chi-tilde)");
}

Result render_series(const Options& o, const std::string& name, const QSeries& s) {
  Result r;
  if (!o.level.empty()) {
    Rat level = parse_level(o.level);
    Rat c = s.coeff_at_level(level);
    if (o.format == "json")
      r.text = dump({{"series", name}, {"p", o.p}, {"level", to_string(level)},
                     {"exponent", to_string(s.offset() + level)}, {"coefficient", to_string(c)}});
    else
      r.text = to_string(c) + "\n";
    return r;
  }
  QSeries shown = o.expand ? bracket_expansion(s) : s;
  if (o.format == "json") {
    ordered_json j = {{"series", name}, {"p", o.p}, {"expanded", o.expand}};
    j.update(series_json(shown));
    r.text = dump(j);
  } else {
    std::ostringstream os;
    os << "# " << name << " p=" << o.p << (o.expand ? " expanded" : "") << " offset=" << to_string(shown.offset())
       << " cutoff=" << to_string(shown.cutoff()) << "\n";
    os << shown.str();
    r.text = os.str();
  }
  return r;
}

AlgebraSpec spec_for(const Options& o, AlgebraSpec fallback) {
  if (!o.spec_path.empty()) return load_spec_file(o.spec_path);
  return fallback;
}

Mode parse_mode(const AlgebraSpec& spec, const std::string& text, const char* flag) {
  Word w;
  try {
    w = parse_word(spec, text + " |0>");
  } catch (const std::exception& err) {
    throw UsageError(std::string(flag) + ": " + err.what());
  }
  if (w.size() != 1) throw UsageError(std::string(flag) + " must name a single mode such as W1_{-3}");
  return w[0];
}

Result cmd_bracket(const Options& o) {
  AlgebraSpec spec = o.spec_path.empty() && o.p ? derivation_spec(require_p(o, 50))
                                                : spec_for(o, virasoro_spec(Poly::symbol("c")));
  if (o.left.empty() || o.right.empty()) throw UsageError("bracket needs --left and --right");
  Engine e(spec);
  Mode a = parse_mode(spec, o.left, "--left"), b = parse_mode(spec, o.right, "--right");
  Bracket br = e.bracket(a, b);
  Result r;
  if (o.format == "json") {
    ordered_json terms = ordered_json::array();
    for (const auto& [c, m] : br.terms) terms.push_back({{"coefficient", c.str()}, {"mode", to_string(spec, m)}});
    r.text = dump({{"left", to_string(spec, a)}, {"right", to_string(spec, b)}, {"central", br.central.str()},
                   {"terms", terms}});
  } else {
    std::string rhs;
    for (const auto& [c, m] : br.terms) rhs += (rhs.empty() ? "" : " + ") + ("(" + c.str() + ") " + to_string(spec, m));
    if (!br.central.is_zero()) rhs += (rhs.empty() ? "" : " + ") + ("(" + br.central.str() + ") 1");
    r.text = "[" + to_string(spec, a) + ", " + to_string(spec, b) + "] = " + (rhs.empty() ? "0" : rhs) + "\n";
  }
  return r;
}

Result cmd_character(const Options& o) {
  const int p = require_p(o, 1000);
  return render_series(o, o.series, named_series(o.series, p, require_cutoff(o)));
}

Result cmd_verma(const Options& o) {
  const int p = require_p(o, 1000);
  return render_series(o, "verma", triplet_verma_character(p, require_cutoff(o)));
}

Result cmd_char_diff(const Options& o) {
  const int p = require_p(o, 1000);
  if (o.level.empty()) throw UsageError("char-diff needs --level");
  const std::string left = o.left.empty() ? "verma" : o.left, right = o.right.empty() ? "triplet" : o.right;
  Rat level = parse_level(o.level);
  Rat d = diff_at_level(named_series(left, p, require_cutoff(o)), named_series(right, p, require_cutoff(o)), level);
  Result r;
  if (o.format == "json")
    r.text = dump({{"p", p}, {"left", left}, {"right", right}, {"level", to_string(level)}, {"difference", to_string(d)}});
  else
    r.text = to_string(d) + "\n";
  return r;
}

std::string closed_column(const Poly& computed, const Poly& closed) {
  return computed.str() + "  (closed form " + closed.str() + (computed == closed ? ", equal)" : ", DIFFERENT)");
}

Result cmd_derive(const Options& o) {
  const int p = require_p(o, max_derivation_p());
  DerivationReport d = alpha_nonzero_report(p);
  Result r;
  r.code = d.alpha_zero_consistent ? kAssertionFailed : kOk;
  const int delta = d.delta;
  if (o.format == "json") {
    ordered_json xi = ordered_json::array(), audit_xi = ordered_json::array();
    for (const auto& x : d.xi) xi.push_back(x.str());
    for (const auto& x : d.normal_ordered_audit.xi.xi) audit_xi.push_back(x.str());
    ordered_json j = {{"p", d.p},
                      {"delta", delta},
                      {"beta_ww_prime", to_string(d.beta_ww_prime)},
                      {"B_quasiprimary", d.b_quasiprimary.str()},
                      {"xi", xi},
                      {"B_primary", d.b_primary.str()},
                      {"alpha_zero_consistent", d.alpha_zero_consistent},
                      {"difference", d.difference.str()},
                      {"beta_ww", d.beta_ww.str()},
                      {"gamma_ww", d.gamma_ww.str()},
                      {"gamma_sum", d.gamma_sum.str()},
                      {"p_values",
                       {{"top", to_string(d.p_top)},
                        {"descend", to_string(d.p_descend)},
                        {"shift_left", to_string(d.p_shift_left)},
                        {"shift_right", to_string(d.p_shift_right)}}},
                      {"b_free_l2_image_words", d.b_free_l2_image.size()},
                      {"discarded_words", d.discarded_words},
                      {"normal_ordered_audit",
                       {{"xi", audit_xi},
                        {"B_primary", d.normal_ordered_audit.b_primary.str()},
                        {"alpha_zero_consistent", d.normal_ordered_audit.b_primary == d.b_quasiprimary}}},
                      {"assumptions", d.assumptions}};
    r.text = dump(j);
    return r;
  }
  std::ostringstream os;
  os << "p = " << d.p << ", Delta = " << delta << ", c = " << to_string(central_charge_p1(p)) << "\n";
  os << "beta'_WW        = " << to_string(d.beta_ww_prime) << "  (closed form " << to_string(closed_beta_ww_prime(delta))
     << (d.beta_ww_prime == closed_beta_ww_prime(delta) ? ", equal)" : ", DIFFERENT)") << "\n";
  os << "sum gamma_X     = " << d.gamma_sum.str() << "\n";
  auto closed_xi_values = closed_xi(delta);
  for (int i = 0; i < 3; ++i)
    os << "xi_" << i + 1 << "            = " << closed_column(d.xi[i], delta == 3 && i == 2 ? Poly() : closed_xi_values[i])
       << "\n";
  os << "\n";
  auto pad = [](const std::string& t) { return t + std::string(t.size() < 34 ? 34 - t.size() : 1, ' '); };
  os << pad("") << pad("B (quasi-primary route)") << "B (primary route)\n";
  os << pad("computed") << pad(d.b_quasiprimary.str()) << d.b_primary.str() << "\n";
  os << pad("closed form") << pad(closed_b_quasiprimary(delta).str()) << closed_b_primary(delta).str() << "\n";
  os << pad("difference") << d.difference.str() << "\n";
  os << "alpha = 0 consistent: " << (d.alpha_zero_consistent ? "yes" : "no") << "\n";
  os << "\n";
  os << "normal-ordered pair audit: B = " << d.normal_ordered_audit.b_primary.str() << " ("
     << (d.normal_ordered_audit.b_primary == d.b_quasiprimary ? "agrees with" : "differs from")
     << " the quasi-primary B); xi = ";
  for (int i = 0; i < 3; ++i) os << (i ? ", " : "") << d.normal_ordered_audit.xi.xi[i].str();
  os << "\n";
  os << "p(2-D,-D) = " << to_string(d.p_top) << ", p(-D,-D-1) = " << to_string(d.p_descend)
     << ", p(2-D,-D-1) = " << to_string(d.p_shift_left) << ", p(1-D,-D) = " << to_string(d.p_shift_right) << "\n";
  os << "B-free ansatz: L_2 image has " << d.b_free_l2_image.size() << " word(s) at length " << delta - 1
     << "; words discarded by projection: " << d.discarded_words << "\n";
  os << "assumptions:\n";
  for (const auto& a : d.assumptions) os << "  - " << a << "\n";
  r.text = os.str();
  return r;
}

Result cmd_certify(const Options& o) {
  AlgebraSpec spec = spec_for(o, triplet_p2_spec(TripletP2Constants::numeric()));
  Certificate cert;
  if (!o.certificate_path.empty()) {
    std::ifstream in(o.certificate_path);
    if (!in) throw UsageError("cannot open " + o.certificate_path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& err) {
      throw UsageError(o.certificate_path + ": " + err.what());
    }
    cert = certificate_from_json(doc, spec);
  } else {
    cert = certify_triplet_p2(spec);
  }
  VerificationReport v = verify_certificate(cert, spec);
  Result r;
  r.code = v.ok ? kOk : kAssertionFailed;
  if (o.format == "json") {
    ordered_json j = certificate_to_json(cert, spec);
    j["verified"] = v.ok;
    r.text = dump(j);
    return r;
  }
  std::ostringstream os;
  for (const auto& f : v.null_vector_failures) os << "null vector failure: " << f << "\n";
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& s = cert.steps[i];
    const auto& c = v.steps[i];
    os << "[" << s.id << "] " << rule_name(s.rule) << " " << (c.ok ? "ok" : "FAILED: " + c.message) << "\n    "
       << to_string(spec, s.vector) << " in C" << s.space << "\n";
    if (!s.uses.empty()) {
      os << "    uses";
      for (int u : s.uses) os << " " << u;
      os << "\n";
    }
    if (!c.ok && !c.residual.is_zero()) os << "    residual " << to_string(spec, c.residual) << "\n";
  }
  os << "targets:";
  for (int t : cert.targets) os << " " << t;
  os << "\nverified: " << (v.ok ? "true" : "false") << "\n";
  r.text = os.str();
  return r;
}

Result cmd_verify_singular(const Options& o) {
  Result r;
  if (o.solve_mode) {
    SingularSolveReport s = solve_singular_p2();
    r.code = s.consistent ? kOk : kAssertionFailed;
    if (o.format == "json") {
      ordered_json values = ordered_json::object();
      for (const auto& [k, v] : s.values) values[k] = v.str();
      r.text = dump({{"equations", s.equations}, {"consistent", s.consistent}, {"values", values}, {"free", s.free}});
    } else {
      std::ostringstream os;
      os << "equations: " << s.equations << "\nsolution set: " << (s.consistent ? "nonempty" : "empty") << "\n";
      for (const auto& [k, v] : s.values) os << k << " = " << v.str() << "\n";
      for (const auto& f : s.free) os << f << " free\n";
      r.text = os.str();
    }
    return r;
  }
  AlgebraSpec spec = spec_for(o, triplet_p2_spec(TripletP2Constants::numeric()));
  SingularReport s = verify_singular_p2(spec);
  r.code = s.singular ? kOk : kAssertionFailed;
  if (o.format == "json") {
    r.text = dump({{"singular", s.singular}, {"failures", s.failures}});
  } else {
    std::ostringstream os;
    os << "singular: " << (s.singular ? "true" : "false") << "\n";
    for (const auto& f : s.failures) os << "  " << f << "\n";
    r.text = os.str();
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact W-algebra computations: brackets, characters, derivations and C2 certificates"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    c->add_option("--out", o.out_path, "Write the report to this file instead of standard output");
  };
  auto* bracket = app.add_subcommand("bracket", "Mode commutator [left, right]");
  bracket->add_option("--spec", o.spec_path, "Algebra spec JSON (default: Virasoro with symbolic c)");
  bracket->add_option("--p", o.p, "Use the derivation spec for this p");
  bracket->add_option("--left", o.left, "Left mode, e.g. T_{2}")->required();
  bracket->add_option("--right", o.right, "Right mode, e.g. T_{-2}")->required();
  common(bracket);

  auto* character = app.add_subcommand("character", "Triplet character (or chi-tilde) as a q-series");
  character->add_option("--p", o.p)->required();
  character->add_option("--cutoff", o.cutoff, "Largest level (default 40)");
  character->add_option("--level", o.level, "Print only the coefficient at this level");
  character->add_option("--series", o.series, "triplet or chi-tilde")->check(CLI::IsMember({"triplet", "chi-tilde"}));
  character->add_flag("--expand", o.expand, "Multiply by phi(q) q^{-offset}");
  common(character);

  auto* verma = app.add_subcommand("verma-character", "Vacuum Verma module character");
  verma->add_option("--p", o.p)->required();
  verma->add_option("--cutoff", o.cutoff, "Largest level (default 40)");
  verma->add_option("--level", o.level, "Print only the coefficient at this level");
  verma->add_flag("--expand", o.expand, "Multiply by phi(q) q^{-offset}");
  common(verma);

  auto* diff = app.add_subcommand("char-diff", "Coefficient difference left - right at a level of the left series");
  diff->add_option("--p", o.p)->required();
  diff->add_option("--cutoff", o.cutoff, "Largest level (default 40)");
  diff->add_option("--level", o.level)->required();
  diff->add_option("--left", o.left, "verma, triplet or chi-tilde (default verma)");
  diff->add_option("--right", o.right, "verma, triplet or chi-tilde (default triplet)");
  common(diff);

  auto* derive = app.add_subcommand("derive", "Length-(D-1) derivation of B, the xi's and the alpha != 0 check");
  derive->add_option("--p", o.p)->required();
  common(derive);

  auto* certify = app.add_subcommand("certify-c2", "Build and replay the C2 certificate at p = 2");
  certify->add_option("--spec", o.spec_path, "Algebra spec JSON used for verification");
  certify->add_option("--certificate", o.certificate_path, "Verify this certificate JSON instead of generating one");
  common(certify);

  auto* singular = app.add_subcommand("verify-singular", "Check the level-6 singular vectors at p = 2");
  singular->add_option("--spec", o.spec_path, "Algebra spec JSON with numeric constants");
  singular->add_flag("--solve-mode", o.solve_mode, "Solve for the structure constants instead");
  common(singular);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Result r;
  try {
    if (*bracket) r = cmd_bracket(o);
    if (*character) r = cmd_character(o);
    if (*verma) r = cmd_verma(o);
    if (*diff) r = cmd_char_diff(o);
    if (*derive) r = cmd_derive(o);
    if (*certify) r = cmd_certify(o);
    if (*singular) r = cmd_verify_singular(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kUsage;
  } catch (const QSeriesError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const MissingDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (o.out_path.empty()) {
    std::cout << r.text;
  } else {
    std::ofstream out(o.out_path);
    if (!out) {
      std::cerr << "error: cannot write " << o.out_path << "\n";
      return kUsage;
    }
    out << r.text;
  }
  return r.code;
}
