#include "walg/poly.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace walg {

namespace {

struct SymbolTable {
  std::shared_mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, SymbolId> ids;

  SymbolTable() {
    names.emplace_back("I");
    ids.emplace("I", 0);
  }
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

constexpr SymbolId kImaginary = 0;

Monomial multiply(const Monomial& a, const Monomial& b, int& sign) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    if (j == b.factors.size() || (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
      out.factors.push_back(a.factors[i++]);
    } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
      out.factors.push_back(b.factors[j++]);
    } else {
      out.factors.emplace_back(a.factors[i].first, a.factors[i].second + b.factors[j].second);
      ++i;
      ++j;
    }
  }
  sign = 1;
  if (!out.factors.empty() && out.factors.front().first == kImaginary) {
    unsigned e = out.factors.front().second;
    if ((e / 2) % 2 == 1) sign = -1;
    if (e % 2 == 0)
      out.factors.erase(out.factors.begin());
    else
      out.factors.front().second = 1;
  }
  return out;
}

}  // namespace

SymbolId intern_symbol(std::string_view name) {
  auto& t = table();
  std::string key(name);
  {
    std::shared_lock lock(t.mutex);
    auto it = t.ids.find(key);
    if (it != t.ids.end()) return it->second;
  }
  std::unique_lock lock(t.mutex);
  auto it = t.ids.find(key);
  if (it != t.ids.end()) return it->second;
  SymbolId id = static_cast<SymbolId>(t.names.size());
  t.names.push_back(key);
  t.ids.emplace(key, id);
  return id;
}

const std::string& symbol_name(SymbolId id) {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  return t.names.at(id);
}

SymbolId imaginary_unit() { return kImaginary; }

bool is_valid_symbol_name(std::string_view name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

unsigned Monomial::degree(SymbolId s) const {
  for (const auto& [id, e] : factors)
    if (id == s) return e;
  return 0;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (const auto& f : factors) d += f.second;
  return d;
}

Poly::Poly(const Rat& c) {
  if (c != 0) terms_.emplace_back(Monomial{}, c);
}

Poly::Poly(long c) : Poly(Rat(c)) {}

Poly Poly::symbol(std::string_view name) {
  if (!is_valid_symbol_name(name)) throw std::invalid_argument("invalid symbol name '" + std::string(name) + "'");
  return symbol(intern_symbol(name));
}

Poly Poly::symbol(SymbolId id) {
  Poly p;
  p.terms_.emplace_back(Monomial{{{id, 1u}}}, Rat(1));
  return p;
}

Poly Poly::i_unit() { return symbol(kImaginary); }

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty()); }

Rat Poly::constant_value() const {
  if (!is_constant()) throw std::domain_error("polynomial '" + str() + "' is not constant");
  return terms_.empty() ? Rat(0) : terms_[0].second;
}

Rat Poly::constant_term() const {
  if (!terms_.empty() && terms_[0].first.empty()) return terms_[0].second;
  return Rat(0);
}

std::vector<SymbolId> Poly::symbols() const {
  std::vector<SymbolId> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors) out.push_back(f.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

unsigned Poly::degree(SymbolId s) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree(s));
  return d;
}

Poly Poly::coefficient(SymbolId s, unsigned k) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    if (m.degree(s) != k) continue;
    Monomial rest;
    for (const auto& f : m.factors)
      if (f.first != s) rest.factors.push_back(f);
    out.add_term(rest, c);
  }
  return out;
}

Poly Poly::substitute(SymbolId s, const Poly& value) const {
  return substitute(std::map<SymbolId, Poly>{{s, value}});
}

Poly Poly::substitute(const std::map<SymbolId, Poly>& values) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    Poly term(c);
    Monomial kept;
    for (const auto& [id, e] : m.factors) {
      auto it = values.find(id);
      if (it == values.end()) {
        kept.factors.emplace_back(id, e);
        continue;
      }
      for (unsigned k = 0; k < e; ++k) term = term * it->second;
    }
    Poly keep;
    keep.terms_.emplace_back(kept, Rat(1));
    out += term * keep;
  }
  return out;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term(m, c));
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      merged.push_back(o.terms_[j++]);
    } else {
      Rat c = terms_[i].second + o.terms_[j].second;
      if (c != 0) merged.emplace_back(std::move(terms_[i].first), c);
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (b.is_constant()) return a * b.terms_[0].second;
  if (a.is_constant()) return b * a.terms_[0].second;
  std::map<Monomial, Rat> acc;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      int sign = 1;
      Monomial m = multiply(ma, mb, sign);
      Rat c = ca * cb;
      if (sign < 0) c = -c;
      acc[m] += c;
    }
  Poly out;
  for (auto& [m, c] : acc)
    if (c != 0) out.terms_.emplace_back(m, c);
  return out;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Poly& Poly::operator/=(const Rat& c) {
  if (c == 0) throw std::domain_error("division by zero");
  for (auto& t : terms_) t.second /= c;
  return *this;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  struct Printable {
    std::vector<std::pair<std::string, unsigned>> key;
    Rat coeff;
  };
  std::vector<Printable> items;
  for (const auto& [m, c] : terms_) {
    Printable p;
    for (const auto& [id, e] : m.factors) p.key.emplace_back(symbol_name(id), e);
    std::sort(p.key.begin(), p.key.end());
    p.coeff = c;
    items.push_back(std::move(p));
  }
  std::sort(items.begin(), items.end(), [](const Printable& x, const Printable& y) {
    if (x.key.empty() != y.key.empty()) return y.key.empty();
    return x.key < y.key;
  });
  std::string out;
  bool first = true;
  for (const auto& it : items) {
    Rat c = it.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string body;
    if (it.key.empty() || c != 1) body = c.get_str();
    for (const auto& [name, e] : it.key) {
      if (!body.empty()) body += "*";
      body += name;
      if (e != 1) body += "^" + std::to_string(e);
    }
    out += body;
  }
  return out;
}

std::string to_string(const Poly& p) { return p.str(); }

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(s_) + "': " + what + " at offset " +
                                std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc;
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    Poly t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        Poly d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc /= d.constant_value();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly factor() {
    if (accept('-')) return -factor();
    Poly base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
      Poly out(1);
      for (unsigned k = 0; k < e; ++k) out = out * base;
      return out;
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      Poly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly(Rat(Int(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return Poly::symbol(s_.substr(start, pos_ - start));
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text) { return PolyParser(text).parse(); }

}  // namespace walg
