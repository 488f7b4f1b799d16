#include "walg/algebra.hpp"

#include <algorithm>
#include <cctype>

namespace walg {

namespace fx {

FieldExprPtr identity() {
  static const FieldExprPtr one = std::make_shared<FieldExpr>();
  return one;
}

FieldExprPtr field(const std::string& symbol) {
  auto f = std::make_shared<FieldExpr>();
  f->kind = FieldExpr::Kind::Field;
  f->symbol = symbol;
  return f;
}

FieldExprPtr derivative(FieldExprPtr f, int order) {
  if (order < 0) throw std::invalid_argument("negative derivative order");
  if (order == 0) return f;
  auto d = std::make_shared<FieldExpr>();
  d->kind = FieldExpr::Kind::Derivative;
  d->left = std::move(f);
  d->order = order;
  return d;
}

FieldExprPtr nprod(int m, FieldExprPtr phi, FieldExprPtr psi) {
  auto n = std::make_shared<FieldExpr>();
  n->kind = FieldExpr::Kind::NProduct;
  n->order = m;
  n->left = std::move(phi);
  n->right = std::move(psi);
  return n;
}

FieldExprPtr qp(FieldExprPtr phi_j, FieldExprPtr phi_i, int n) {
  if (n < 0) throw std::invalid_argument("negative derivative count");
  auto q = std::make_shared<FieldExpr>();
  q->kind = FieldExpr::Kind::QuasiPrimaryProduct;
  q->order = n;
  q->left = std::move(phi_j);
  q->right = std::move(phi_i);
  return q;
}

FieldExprPtr lincomb(std::vector<std::pair<Poly, FieldExprPtr>> terms) {
  auto l = std::make_shared<FieldExpr>();
  l->kind = FieldExpr::Kind::LinComb;
  l->terms = std::move(terms);
  return l;
}

std::string describe(const FieldExprPtr& f) {
  switch (f->kind) {
    case FieldExpr::Kind::Identity:
      return "1";
    case FieldExpr::Kind::Field:
      return f->symbol;
    case FieldExpr::Kind::Derivative:
      return "d^" + std::to_string(f->order) + "(" + describe(f->left) + ")";
    case FieldExpr::Kind::NProduct:
      return "N" + std::to_string(f->order) + "(" + describe(f->left) + ", " + describe(f->right) + ")";
    case FieldExpr::Kind::QuasiPrimaryProduct:
      return "QP(" + describe(f->left) + ", d^" + std::to_string(f->order) + " " + describe(f->right) + ")";
    case FieldExpr::Kind::LinComb: {
      std::string out;
      for (const auto& [c, e] : f->terms) out += (out.empty() ? "" : " + ") + ("(" + c.str() + ")*" + describe(e));
      return out.empty() ? "0" : out;
    }
  }
  return "?";
}

}  // namespace fx

FieldId AlgebraSpec::add_generator(const std::string& symbol, int weight) {
  if (!is_valid_symbol_name(symbol) || symbol == "I")
    throw SpecError("generators." + symbol, "invalid field symbol");
  if (index_.count(symbol)) throw SpecError("generators." + symbol, "duplicate field symbol");
  if (weight < 1) throw SpecError("generators." + symbol, "weight must be a positive integer");
  auto id = static_cast<FieldId>(fields_.size());
  fields_.push_back(FieldInfo{symbol, weight, true, nullptr});
  index_.emplace(symbol, id);
  return id;
}

FieldId AlgebraSpec::add_composite(const std::string& symbol, int weight, FieldExprPtr definition) {
  if (!is_valid_symbol_name(symbol) || symbol == "I")
    throw SpecError("composite_fields." + symbol, "invalid field symbol");
  if (index_.count(symbol)) throw SpecError("composite_fields." + symbol, "duplicate field symbol");
  if (weight < 1) throw SpecError("composite_fields." + symbol, "weight must be a positive integer");
  if (!definition) throw SpecError("composite_fields." + symbol, "missing definition");
  auto id = static_cast<FieldId>(fields_.size());
  fields_.push_back(FieldInfo{symbol, weight, false, std::move(definition)});
  index_.emplace(symbol, id);
  return id;
}

void AlgebraSpec::set_two_point(const std::string& i, const std::string& j, const Poly& value) {
  auto a = find(i), b = find(j);
  if (!a || !b) throw SpecError("d[" + i + "," + j + "]", "unknown field symbol");
  two_point_[{*a, *b}] = value;
}

void AlgebraSpec::set_structure_constant(const std::string& i, const std::string& j, const std::string& k,
                                         const Poly& value) {
  auto a = find(i), b = find(j), c = find(k);
  if (!a || !b || !c) throw SpecError("structure_constants[" + i + "," + j + ";" + k + "]", "unknown field symbol");
  constants_[{*a, *b, *c}] = value;
}

void AlgebraSpec::add_three_point(const std::string& i, const std::string& j, const std::string& k,
                                  const Poly& value) {
  auto a = find(i), b = find(j), c = find(k);
  if (!a || !b || !c) throw SpecError("three_point[" + i + "," + j + "," + k + "]", "unknown field symbol");
  three_point_.push_back(ThreePoint{*a, *b, *c, value});
}

std::optional<FieldId> AlgebraSpec::find(const std::string& symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FieldId AlgebraSpec::id(const std::string& symbol) const {
  auto f = find(symbol);
  if (!f) throw std::out_of_range("unknown field symbol '" + symbol + "'");
  return *f;
}

std::vector<FieldId> AlgebraSpec::generators() const {
  std::vector<FieldId> out;
  for (FieldId i = 0; i < fields_.size(); ++i)
    if (fields_[i].generator) out.push_back(i);
  return out;
}

std::optional<Poly> AlgebraSpec::two_point(FieldId i, FieldId j) const {
  auto it = two_point_.find({i, j});
  if (it != two_point_.end()) return it->second;
  it = two_point_.find({j, i});
  if (it != two_point_.end()) return it->second;
  return std::nullopt;
}

std::optional<Poly> AlgebraSpec::structure_constant(FieldId i, FieldId j, FieldId k) const {
  auto it = constants_.find({i, j, k});
  if (it != constants_.end()) return it->second;
  it = constants_.find({j, i, k});
  if (it == constants_.end()) return std::nullopt;
  int h = fields_[i].weight + fields_[j].weight - fields_[k].weight;
  return h % 2 == 0 ? it->second : -it->second;
}

std::vector<std::pair<FieldId, Poly>> AlgebraSpec::channels(FieldId i, FieldId j) const {
  std::vector<std::pair<FieldId, Poly>> out;
  for (FieldId k = 0; k < fields_.size(); ++k) {
    auto c = structure_constant(i, j, k);
    if (c && !c->is_zero()) out.emplace_back(k, *c);
  }
  return out;
}

bool AlgebraSpec::has_commutator_data(FieldId i, FieldId j) const {
  if (two_point(i, j)) return true;
  for (FieldId k = 0; k < fields_.size(); ++k)
    if (constants_.count({i, j, k}) || constants_.count({j, i, k})) return true;
  return false;
}

namespace {

int expr_weight(const AlgebraSpec& spec, const FieldExprPtr& f, const std::string& where) {
  switch (f->kind) {
    case FieldExpr::Kind::Identity:
      return 0;
    case FieldExpr::Kind::Field: {
      auto id = spec.find(f->symbol);
      if (!id) throw SpecError(where, "unknown field symbol '" + f->symbol + "'");
      return spec.field(*id).weight;
    }
    case FieldExpr::Kind::Derivative:
      return expr_weight(spec, f->left, where) + f->order;
    case FieldExpr::Kind::NProduct:
      return expr_weight(spec, f->left, where) + expr_weight(spec, f->right, where);
    case FieldExpr::Kind::QuasiPrimaryProduct:
      if (f->left->kind != FieldExpr::Kind::Field || f->right->kind != FieldExpr::Kind::Field)
        throw SpecError(where, "quasi-primary products take named fields");
      return expr_weight(spec, f->left, where) + expr_weight(spec, f->right, where) + f->order;
    case FieldExpr::Kind::LinComb: {
      if (f->terms.empty()) throw SpecError(where, "empty linear combination");
      int w = expr_weight(spec, f->terms[0].second, where);
      for (const auto& [c, e] : f->terms)
        if (expr_weight(spec, e, where) != w) throw SpecError(where, "linear combination mixes weights");
      return w;
    }
  }
  return 0;
}

}  // namespace

void AlgebraSpec::validate() const {
  if (generators().empty()) throw SpecError("generators", "at least one generator is required");
  for (FieldId i = 0; i < fields_.size(); ++i) {
    const auto& f = fields_[i];
    if (f.generator) continue;
    std::string where = "composite_fields." + f.symbol;
    int w = expr_weight(*this, f.definition, where);
    if (w != f.weight)
      throw SpecError(where, "definition has weight " + std::to_string(w) + ", declared " + std::to_string(f.weight));
  }
  for (const auto& [key, value] : two_point_) {
    auto [i, j] = key;
    std::string where = "d[" + fields_[i].symbol + "," + fields_[j].symbol + "]";
    auto other = two_point_.find({j, i});
    if (other != two_point_.end() && !(other->second == value)) throw SpecError(where, "two-point data is not symmetric");
    if (!value.is_zero() && fields_[i].weight != fields_[j].weight)
      throw SpecError(where, "two-point data between fields of different weight");
  }
  for (const auto& [key, value] : constants_) {
    auto [i, j, k] = key;
    std::string where =
        "structure_constants[" + fields_[i].symbol + "," + fields_[j].symbol + ";" + fields_[k].symbol + "]";
    int h = fields_[i].weight + fields_[j].weight - fields_[k].weight;
    if (h < 1) throw SpecError(where, "h(ijk) = " + std::to_string(h) + " < 1");
    auto swapped = constants_.find({j, i, k});
    if (swapped != constants_.end()) {
      Poly expect = h % 2 == 0 ? swapped->second : -swapped->second;
      if (!(expect == value)) throw SpecError(where, "inconsistent with the swapped entry under antisymmetry");
    }
  }
  for (std::size_t n = 0; n < three_point_.size(); ++n) {
    const auto& t = three_point_[n];
    Poly sum;
    for (FieldId l = 0; l < fields_.size(); ++l) {
      auto c = structure_constant(t.i, t.j, l);
      auto d = two_point(l, t.k);
      if (c && d) sum += *c * *d;
    }
    if (!(sum == t.value))
      throw SpecError("three_point[" + std::to_string(n) + "]",
                      "sum_l C_ij^l d_lk = " + sum.str() + " but C_ijk = " + t.value.str());
  }
}

int word_weight(const Word& w) {
  int s = 0;
  for (const auto& m : w) s -= m.index;
  return s;
}

WordSum WordSum::vacuum() { return of(Word{}); }

WordSum WordSum::of(const Word& w, const Poly& coeff) {
  WordSum s;
  s.add(w, coeff);
  return s;
}

void WordSum::add(const Word& w, const Poly& coeff) {
  if (coeff.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

WordSum& WordSum::operator+=(const WordSum& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

WordSum& WordSum::operator-=(const WordSum& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

WordSum& WordSum::operator*=(const Poly& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = it->second * c;
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  return *this;
}

Poly WordSum::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Poly() : it->second;
}

WordSum WordSum::substitute(const std::map<SymbolId, Poly>& values) const {
  WordSum out;
  for (const auto& [w, c] : terms_) out.add(w, c.substitute(values));
  return out;
}

int convert_index(const AlgebraSpec& spec, Mode m, IndexConvention to) {
  int h = spec.field(m.field).weight;
  return to == IndexConvention::Math ? m.index + h - 1 : m.index;
}

int math_index(const AlgebraSpec& spec, Mode m) { return convert_index(spec, m, IndexConvention::Math); }

bool is_creation(const AlgebraSpec& spec, Mode m) { return m.index <= -spec.field(m.field).weight; }

bool is_canonical(const AlgebraSpec& spec, const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!spec.field(w[i].field).generator || !is_creation(spec, w[i])) return false;
    if (i + 1 < w.size() && w[i + 1] < w[i]) return false;
  }
  return true;
}

std::string to_string(const AlgebraSpec& spec, Mode m) {
  return spec.field(m.field).symbol + "_{" + std::to_string(m.index) + "}";
}

std::string to_string(const AlgebraSpec& spec, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    out += to_string(spec, w[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    out += " ";
    i = j;
  }
  return out + "|0>";
}

std::string to_string(const AlgebraSpec& spec, const WordSum& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ") " + to_string(spec, w);
  }
  return out;
}

namespace {

class WordParser {
 public:
  WordParser(const AlgebraSpec& spec, std::string_view text) : spec_(spec), s_(text) {}

  WordSum sum() {
    WordSum out;
    skip();
    if (s_.substr(pos_) == "0") return out;
    for (;;) {
      skip();
      Poly coeff(1);
      if (peek() == '(') {
        std::size_t depth = 0, start = ++pos_;
        for (; pos_ < s_.size(); ++pos_) {
          if (s_[pos_] == '(') ++depth;
          if (s_[pos_] == ')') {
            if (depth == 0) break;
            --depth;
          }
        }
        if (pos_ >= s_.size()) fail("unbalanced parenthesis");
        coeff = parse_poly(s_.substr(start, pos_ - start));
        ++pos_;
      }
      out.add(word(), coeff);
      skip();
      if (pos_ >= s_.size()) break;
      if (s_[pos_] != '+') fail("expected '+'");
      ++pos_;
    }
    return out;
  }

  Word word() {
    Word w;
    for (;;) {
      skip();
      if (s_.substr(pos_, 3) == "|0>") {
        pos_ += 3;
        return w;
      }
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        if (s_[pos_] == '_' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '{') break;
        ++pos_;
      }
      std::string sym(s_.substr(start, pos_ - start));
      auto id = spec_.find(sym);
      if (!id) fail("unknown field '" + sym + "'");
      if (s_.substr(pos_, 2) != "_{") fail("expected '_{'");
      pos_ += 2;
      std::size_t close = s_.find('}', pos_);
      if (close == std::string_view::npos) fail("expected '}'");
      int index = std::stoi(std::string(s_.substr(pos_, close - pos_)));
      pos_ = close + 1;
      int power = 1;
      if (peek() == '^') {
        ++pos_;
        std::size_t ps = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (ps == pos_) fail("expected exponent");
        power = std::stoi(std::string(s_.substr(ps, pos_ - ps)));
      }
      for (int k = 0; k < power; ++k) w.push_back(Mode{*id, index});
    }
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse '" + std::string(s_) + "': " + what + " at offset " +
                                std::to_string(pos_));
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  const AlgebraSpec& spec_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(const AlgebraSpec& spec, std::string_view text) {
  WordParser p(spec, text);
  Word w = p.word();
  p.finish();
  return w;
}

WordSum parse_word_sum(const AlgebraSpec& spec, std::string_view text) { return WordParser(spec, text).sum(); }

State project_min_length(const State& s, std::size_t length, State* discarded) {
  State kept;
  for (const auto& [w, c] : s.terms()) {
    if (w.size() >= length)
      kept.add(w, c);
    else if (discarded)
      discarded->add(w, c);
  }
  return kept;
}

State project_length(const State& s, std::size_t length) {
  State kept;
  for (const auto& [w, c] : s.terms())
    if (w.size() == length) kept.add(w, c);
  return kept;
}

}  // namespace walg
