#include "walg/spec_io.hpp"

#include <fstream>
#include <sstream>

namespace walg {

namespace {

using nlohmann::json;

const json& member(const json& doc, const char* key, const std::string& location) {
  if (!doc.is_object() || !doc.contains(key)) throw SpecError(location, std::string("missing key '") + key + "'");
  return doc.at(key);
}

std::string string_at(const json& doc, const char* key, const std::string& location) {
  const json& v = member(doc, key, location);
  if (!v.is_string()) throw SpecError(location + "." + key, "expected a string");
  return v.get<std::string>();
}

int int_at(const json& doc, const char* key, const std::string& location) {
  const json& v = member(doc, key, location);
  if (!v.is_number_integer()) throw SpecError(location + "." + key, "expected an integer");
  return v.get<int>();
}

Poly poly_at(const json& doc, const char* key, const std::string& location) {
  const json& v = member(doc, key, location);
  if (v.is_number_integer()) return Poly(v.get<long>());
  if (!v.is_string()) throw SpecError(location + "." + key, "expected a polynomial string");
  try {
    return parse_poly(v.get<std::string>());
  } catch (const std::exception& err) {
    throw SpecError(location + "." + key, err.what());
  }
}

const json& array_at(const json& doc, const char* key, const std::string& location, bool required) {
  static const json empty = json::array();
  if (!doc.contains(key)) {
    if (required) throw SpecError(location, std::string("missing key '") + key + "'");
    return empty;
  }
  const json& v = doc.at(key);
  if (!v.is_array()) throw SpecError(std::string(key), "expected an array");
  return v;
}

std::string missing_name(MissingConstants m) {
  switch (m) {
    case MissingConstants::Error:
      return "error";
    case MissingConstants::Zero:
      return "zero";
    case MissingConstants::Symbolic:
      return "symbolic";
  }
  return "error";
}

}  // namespace

FieldExprPtr field_expr_from_json(const json& doc, const std::string& location) {
  const std::string kind = string_at(doc, "kind", location);
  if (kind == "identity") return fx::identity();
  if (kind == "field") return fx::field(string_at(doc, "symbol", location));
  if (kind == "derivative") {
    int order = doc.contains("order") ? int_at(doc, "order", location) : 1;
    if (order < 0) throw SpecError(location + ".order", "derivative order must be non-negative");
    return fx::derivative(field_expr_from_json(member(doc, "of", location), location + ".of"), order);
  }
  if (kind == "nprod")
    return fx::nprod(int_at(doc, "m", location), field_expr_from_json(member(doc, "left", location), location + ".left"),
                     field_expr_from_json(member(doc, "right", location), location + ".right"));
  if (kind == "qp") {
    int n = doc.contains("n") ? int_at(doc, "n", location) : 0;
    if (n < 0) throw SpecError(location + ".n", "derivative count must be non-negative");
    return fx::qp(field_expr_from_json(member(doc, "left", location), location + ".left"),
                  field_expr_from_json(member(doc, "right", location), location + ".right"), n);
  }
  if (kind == "lincomb") {
    std::vector<std::pair<Poly, FieldExprPtr>> terms;
    const json& ts = member(doc, "terms", location);
    if (!ts.is_array()) throw SpecError(location + ".terms", "expected an array");
    for (std::size_t n = 0; n < ts.size(); ++n) {
      std::string where = location + ".terms[" + std::to_string(n) + "]";
      terms.emplace_back(poly_at(ts[n], "coeff", where), field_expr_from_json(member(ts[n], "expr", where), where + ".expr"));
    }
    return fx::lincomb(std::move(terms));
  }
  throw SpecError(location + ".kind", "unknown field expression kind '" + kind + "'");
}

nlohmann::ordered_json field_expr_to_json(const FieldExprPtr& f) {
  using nlohmann::ordered_json;
  switch (f->kind) {
    case FieldExpr::Kind::Identity:
      return {{"kind", "identity"}};
    case FieldExpr::Kind::Field:
      return {{"kind", "field"}, {"symbol", f->symbol}};
    case FieldExpr::Kind::Derivative:
      return {{"kind", "derivative"}, {"of", field_expr_to_json(f->left)}, {"order", f->order}};
    case FieldExpr::Kind::NProduct:
      return {{"kind", "nprod"}, {"m", f->order}, {"left", field_expr_to_json(f->left)}, {"right", field_expr_to_json(f->right)}};
    case FieldExpr::Kind::QuasiPrimaryProduct:
      return {{"kind", "qp"}, {"left", field_expr_to_json(f->left)}, {"right", field_expr_to_json(f->right)}, {"n", f->order}};
    case FieldExpr::Kind::LinComb: {
      ordered_json terms = ordered_json::array();
      for (const auto& [c, e] : f->terms) terms.push_back({{"coeff", c.str()}, {"expr", field_expr_to_json(e)}});
      return {{"kind", "lincomb"}, {"terms", terms}};
    }
  }
  return {};
}

AlgebraSpec load_spec(const json& doc) {
  if (!doc.is_object()) throw SpecError("$", "expected a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "central_charge" && key != "generators" && key != "d" && key != "structure_constants" &&
        key != "composite_fields" && key != "three_point" && key != "missing_constants")
      throw SpecError(key, "unknown key");
  AlgebraSpec spec;
  spec.central_charge = poly_at(doc, "central_charge", "$");
  if (doc.contains("missing_constants")) {
    std::string m = string_at(doc, "missing_constants", "$");
    if (m == "error")
      spec.missing = MissingConstants::Error;
    else if (m == "zero")
      spec.missing = MissingConstants::Zero;
    else if (m == "symbolic")
      spec.missing = MissingConstants::Symbolic;
    else
      throw SpecError("missing_constants", "expected error, zero or symbolic");
  }
  auto rethrow = [](const std::string& where, const auto& body) {
    try {
      body();
    } catch (const SpecError& err) {
      throw SpecError(where, err.what());
    }
  };
  const json& gens = array_at(doc, "generators", "$", true);
  for (std::size_t n = 0; n < gens.size(); ++n) {
    std::string where = "generators[" + std::to_string(n) + "]";
    std::string symbol = string_at(gens[n], "symbol", where);
    int weight = int_at(gens[n], "weight", where);
    if (weight < 1) throw SpecError(where + ".weight", "weight must be a positive integer");
    rethrow(where, [&] { spec.add_generator(symbol, weight); });
  }
  const json& comps = array_at(doc, "composite_fields", "$", false);
  for (std::size_t n = 0; n < comps.size(); ++n) {
    std::string where = "composite_fields[" + std::to_string(n) + "]";
    std::string symbol = string_at(comps[n], "symbol", where);
    int weight = int_at(comps[n], "weight", where);
    if (weight < 1) throw SpecError(where + ".weight", "weight must be a positive integer");
    FieldExprPtr def = field_expr_from_json(member(comps[n], "definition", where), where + ".definition");
    rethrow(where, [&] { spec.add_composite(symbol, weight, def); });
  }
  const json& ds = array_at(doc, "d", "$", false);
  for (std::size_t n = 0; n < ds.size(); ++n) {
    std::string where = "d[" + std::to_string(n) + "]";
    std::string i = string_at(ds[n], "i", where), j = string_at(ds[n], "j", where);
    Poly v = poly_at(ds[n], "value", where);
    rethrow(where, [&] {
      spec.set_two_point(i, j, v);
      if (i != j) spec.set_two_point(j, i, v);
    });
  }
  const json& cs = array_at(doc, "structure_constants", "$", false);
  for (std::size_t n = 0; n < cs.size(); ++n) {
    std::string where = "structure_constants[" + std::to_string(n) + "]";
    std::string i = string_at(cs[n], "i", where), j = string_at(cs[n], "j", where), k = string_at(cs[n], "k", where);
    Poly v = poly_at(cs[n], "value", where);
    rethrow(where, [&] {
      int h = spec.field(spec.id(i)).weight + spec.field(spec.id(j)).weight - spec.field(spec.id(k)).weight;
      if (h < 1) throw SpecError("h(ijk)", "h(ijk) = " + std::to_string(h) + " < 1");
      spec.set_structure_constant(i, j, k, v);
    });
  }
  const json& ts = array_at(doc, "three_point", "$", false);
  for (std::size_t n = 0; n < ts.size(); ++n) {
    std::string where = "three_point[" + std::to_string(n) + "]";
    std::string i = string_at(ts[n], "i", where), j = string_at(ts[n], "j", where), k = string_at(ts[n], "k", where);
    Poly v = poly_at(ts[n], "value", where);
    rethrow(where, [&] { spec.add_three_point(i, j, k, v); });
  }
  spec.validate();
  return spec;
}

AlgebraSpec load_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw SpecError("byte " + std::to_string(err.byte), "malformed JSON");
  }
  return load_spec(doc);
}

AlgebraSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return load_spec_text(buf.str());
  } catch (const SpecError& err) {
    throw SpecError(path + ": " + err.location(), err.what());
  }
}

nlohmann::ordered_json spec_to_json(const AlgebraSpec& spec) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["central_charge"] = spec.central_charge.str();
  doc["missing_constants"] = missing_name(spec.missing);
  ordered_json gens = ordered_json::array(), comps = ordered_json::array();
  for (FieldId i = 0; i < spec.field_count(); ++i) {
    const FieldInfo& f = spec.field(i);
    if (f.generator)
      gens.push_back({{"symbol", f.symbol}, {"weight", f.weight}});
    else
      comps.push_back({{"symbol", f.symbol}, {"weight", f.weight}, {"definition", field_expr_to_json(f.definition)}});
  }
  doc["generators"] = gens;
  doc["composite_fields"] = comps;
  ordered_json ds = ordered_json::array();
  for (const auto& [key, v] : spec.declared_two_point()) {
    if (key.first > key.second) continue;
    ds.push_back({{"i", spec.field(key.first).symbol}, {"j", spec.field(key.second).symbol}, {"value", v.str()}});
  }
  doc["d"] = ds;
  ordered_json cs = ordered_json::array();
  for (const auto& [key, v] : spec.declared_constants()) {
    auto [i, j, k] = key;
    cs.push_back({{"i", spec.field(i).symbol}, {"j", spec.field(j).symbol}, {"k", spec.field(k).symbol}, {"value", v.str()}});
  }
  doc["structure_constants"] = cs;
  ordered_json ts = ordered_json::array();
  for (const auto& t : spec.three_point())
    ts.push_back({{"i", spec.field(t.i).symbol}, {"j", spec.field(t.j).symbol}, {"k", spec.field(t.k).symbol}, {"value", t.value.str()}});
  doc["three_point"] = ts;
  return doc;
}

}  // namespace walg
