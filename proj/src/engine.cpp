#include "walg/engine.hpp"

#include <functional>

namespace walg {

Rat p_poly(int h_i, int h_j, int h_k, int m, int n) {
  int H = h_i + h_j - h_k;
  if (H < 1) throw std::invalid_argument("p_poly requires h_i + h_j - h_k >= 1");
  if (h_k < 1) throw std::invalid_argument("p_poly requires a channel of positive weight");
  Rat sum(0);
  for (int r = 0; r < H; ++r) {
    Rat a = binom_int(h_i + h_k - h_j + r - 1, r) / binom_int(2 * h_k + r - 1, r);
    sum += a * binom_int(-m - n - h_k, r) * binom_int(m + h_i - 1, H - 1 - r);
  }
  return sum;
}

Rat qp_correction(int h_i, int h_j, int h_k, int n) {
  const int H = h_i + h_j - h_k;
  if (H < 1 || h_k < 1 || n < 0) throw std::invalid_argument("qp_correction requires h(ijk) >= 1, h_k >= 1, n >= 0");
  const int s = H + n;
  const int wt[2] = {h_i, h_j};  // 0: phi_i, 1: phi_j
  const Rat swapped_sign = H % 2 == 0 ? 1 : -1;

  // (ad L_1)^v acting on the mode (field f)_a.
  auto ad = [&](int f, int a, int v) {
    Rat c(1);
    for (int u = 0; u < v; ++u) c *= wt[f] - 1 - (a + u);
    return c;
  };
  // Coefficient of |phi_k> in L_1^s (f)_a (g)_b |0>, per unit C_ij^k.
  auto channel_part = [&](int f, int a, int g, int b) {
    Rat total(0);
    for (int v = 0; v <= s; ++v) {
      Rat c = binom_int(s, v) * ad(f, a, v) * ad(g, b, s - v);
      if (c == 0) continue;
      const int a2 = a + v, b2 = b + s - v;
      if (b2 > -wt[g] || a2 <= -wt[f]) continue;
      total += c * (f == 0 ? Rat(1) : swapped_sign) * p_poly(wt[f], wt[g], h_k, a2, b2);
    }
    return total;
  };

  const long top = 2L * (h_i + h_j + n - 1);
  Rat z = Rat(factorial(n)) * channel_part(0, -h_i - n, 1, -h_j);
  for (int r = 1; r <= n; ++r) {
    Rat c = binom_int(n, r) / binom_int(top, r) * binom_int(2 * h_i + n - 1, r);
    if (r % 2 == 1) c = -c;
    if (c == 0) continue;
    const int h_psi = h_i + n - r;
    Rat part(0);
    for (int t = 0; t < 2 * r; ++t)
      part += Rat(factorial(n - r + t)) / Rat(factorial(t)) * channel_part(1, -h_j - r + t, 0, -h_psi - t);
    z += c * Rat(factorial(r)) * part;
  }
  Rat norm = Rat(factorial(s));
  for (int v = 0; v < s; ++v) norm *= 2 * h_k + v;
  return -z / norm;
}

std::size_t Engine::WordKeyHash::operator()(const WordKey& k) const {
  std::size_t h = std::hash<const void*>()(k.tag);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(static_cast<std::size_t>(k.a));
  mix(static_cast<std::size_t>(k.b));
  for (const auto& m : k.word) mix((static_cast<std::size_t>(m.field) << 32) ^ static_cast<std::size_t>(m.index));
  return h;
}

Engine::Engine(AlgebraSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

int Engine::weight(const FieldExprPtr& f) const {
  switch (f->kind) {
    case FieldExpr::Kind::Identity:
      return 0;
    case FieldExpr::Kind::Field:
      return spec_.field(spec_.id(f->symbol)).weight;
    case FieldExpr::Kind::Derivative:
      return weight(f->left) + f->order;
    case FieldExpr::Kind::NProduct:
      return weight(f->left) + weight(f->right);
    case FieldExpr::Kind::QuasiPrimaryProduct:
      return weight(f->left) + weight(f->right) + f->order;
    case FieldExpr::Kind::LinComb:
      return f->terms.empty() ? 0 : weight(f->terms[0].second);
  }
  return 0;
}

Bracket Engine::bracket(Mode a, Mode b) const {
  {
    std::lock_guard lock(bracket_mutex_);
    auto it = bracket_cache_.find({a, b});
    if (it != bracket_cache_.end()) return it->second;
  }
  FieldId i = a.field, j = b.field;
  if (!spec_.has_commutator_data(i, j))
    throw MissingDataError("no commutator data for [" + spec_.field(i).symbol + ", " + spec_.field(j).symbol + "]");
  int hi = spec_.field(i).weight, hj = spec_.field(j).weight;
  Bracket out;
  if (a.index + b.index == 0) {
    if (auto d = spec_.two_point(i, j)) out.central = *d * binom_int(hi + a.index - 1, 2 * hi - 1);
  }
  for (const auto& [k, c] : spec_.channels(i, j)) {
    int hk = spec_.field(k).weight;
    Rat p = p_poly(hi, hj, hk, a.index, b.index);
    if (p == 0) continue;
    out.terms.emplace_back(c * p, Mode{k, a.index + b.index});
  }
  std::lock_guard lock(bracket_mutex_);
  bracket_cache_.emplace(std::make_pair(a, b), out);
  return out;
}

State Engine::apply_mode(Mode m, const State& s) const {
  State out;
  for (const auto& [w, c] : s.terms()) out += apply_mode(m, w) * c;
  return out;
}

State Engine::apply_mode(Mode m, const Word& canonical) const {
  WordKey key{nullptr, m.field, m.index, canonical};
  {
    std::lock_guard lock(apply_mutex_);
    auto it = apply_cache_.find(key);
    if (it != apply_cache_.end()) return it->second;
  }
  State result = apply_uncached(m, canonical);
  std::lock_guard lock(apply_mutex_);
  apply_cache_.emplace(std::move(key), result);
  return result;
}

State Engine::apply_uncached(Mode m, const Word& w) const {
  const FieldInfo& info = spec_.field(m.field);
  if (!info.generator) return field_mode_apply(info.definition, m.index, w);
  if (m.index > word_weight(w)) return State();
  if (w.empty()) return is_creation(spec_, m) ? State::of(Word{m}) : State();
  if (is_creation(spec_, m) && !(w[0] < m)) {
    Word out;
    out.reserve(w.size() + 1);
    out.push_back(m);
    out.insert(out.end(), w.begin(), w.end());
    return State::of(out);
  }
  Mode first = w[0];
  Word rest(w.begin() + 1, w.end());
  State out;
  State inner = apply_mode(m, rest);
  for (const auto& [u, c] : inner.terms()) out += apply_mode(first, u) * c;
  Bracket b = bracket(m, first);
  if (!b.central.is_zero()) out.add(rest, b.central);
  for (const auto& [c, k] : b.terms) out += apply_mode(k, rest) * c;
  return out;
}

State Engine::normal_order(const Word& formal) const {
  State s = State::vacuum();
  for (auto it = formal.rbegin(); it != formal.rend(); ++it) s = apply_mode(*it, s);
  return s;
}

State Engine::normal_order(const WordSum& formal) const {
  State out;
  for (const auto& [w, c] : formal.terms()) out += normal_order(w) * c;
  return out;
}

State Engine::field_mode_apply(const FieldExprPtr& f, int n, const State& s) const {
  State out;
  for (const auto& [w, c] : s.terms()) out += field_mode_apply(f, n, w) * c;
  return out;
}

State Engine::field_mode_apply(const FieldExprPtr& f, int n, const Word& canonical) const {
  if (f->kind == FieldExpr::Kind::Field) {
    FieldId id = spec_.id(f->symbol);
    return apply_mode(Mode{id, n}, canonical);
  }
  WordKey key{f.get(), n, 0, canonical};
  {
    std::lock_guard lock(field_mutex_);
    auto it = field_cache_.find(key);
    if (it != field_cache_.end()) return it->second;
  }
  State result = field_uncached(f, n, canonical);
  std::lock_guard lock(field_mutex_);
  if (field_cache_.emplace(std::move(key), result).second) pinned_fields_.push_back(f);
  return result;
}

State Engine::field_uncached(const FieldExprPtr& f, int n, const Word& w) const {
  int W = word_weight(w);
  if (n > W) return State();
  switch (f->kind) {
    case FieldExpr::Kind::Identity:
      return n == 0 ? State::of(w) : State();
    case FieldExpr::Kind::Field:
      return field_mode_apply(f, n, w);
    case FieldExpr::Kind::Derivative: {
      int h = weight(f->left);
      Rat factor(1);
      for (int j = 0; j < f->order; ++j) factor *= -(n + h + j);
      if (factor == 0) return State();
      return field_mode_apply(f->left, n, w) * Poly(factor);
    }
    case FieldExpr::Kind::NProduct: {
      const int m = f->order;
      State out;
      for (int k = -W; k < m; ++k) {
        State inner = field_mode_apply(f->right, -k, w);
        if (!inner.is_zero()) out += field_mode_apply(f->left, n + k, inner);
      }
      for (int k = m; k <= W - n; ++k) {
        State inner = field_mode_apply(f->left, n + k, w);
        if (!inner.is_zero()) out += field_mode_apply(f->right, -k, inner);
      }
      return out;
    }
    case FieldExpr::Kind::QuasiPrimaryProduct:
      return field_mode_apply(expansion(f), n, w);
    case FieldExpr::Kind::LinComb: {
      State out;
      for (const auto& [c, e] : f->terms) out += field_mode_apply(e, n, w) * c;
      return out;
    }
  }
  return State();
}

Poly Engine::channel_constant(FieldId i, FieldId j, FieldId k) const {
  if (auto c = spec_.structure_constant(i, j, k)) return *c;
  switch (spec_.missing) {
    case MissingConstants::Zero:
      return Poly();
    case MissingConstants::Symbolic:
      return Poly::symbol("C_" + spec_.field(i).symbol + "_" + spec_.field(j).symbol + "__" + spec_.field(k).symbol);
    case MissingConstants::Error:
      break;
  }
  throw MissingDataError("missing structure constant C_{" + spec_.field(i).symbol + "," + spec_.field(j).symbol +
                         "}^{" + spec_.field(k).symbol + "}");
}

FieldExprPtr Engine::qp_nop(const std::string& phi_j, const std::string& phi_i, int n) const {
  FieldId i = spec_.id(phi_i), j = spec_.id(phi_j);
  const int hi = spec_.field(i).weight, hj = spec_.field(j).weight;
  auto fj = fx::field(phi_j), fi = fx::field(phi_i);
  std::vector<std::pair<Poly, FieldExprPtr>> terms;
  const long top = 2L * (hi + hj + n - 1);
  for (int r = 0; r <= n; ++r) {
    Rat c = binom_int(n, r) / binom_int(top, r) * binom_int(2 * hi + n - 1, r);
    if (r % 2 == 1) c = -c;
    if (c == 0) continue;
    terms.emplace_back(Poly(c), fx::derivative(fx::nprod(hi + n + r, fj, fx::derivative(fi, n - r)), r));
  }
  for (FieldId k = 0; k < spec_.field_count(); ++k) {
    const int hk = spec_.field(k).weight;
    const int H = hi + hj - hk;
    if (H < 1) continue;
    Rat c = qp_correction(hi, hj, hk, n);
    if (c == 0) continue;
    Poly constant = channel_constant(i, j, k);
    if (constant.is_zero()) continue;
    terms.emplace_back(constant * c, fx::derivative(fx::field(spec_.field(k).symbol), H + n));
  }
  return fx::lincomb(std::move(terms));
}

FieldExprPtr Engine::expansion(const FieldExprPtr& q) const {
  {
    std::lock_guard lock(expansion_mutex_);
    auto it = expansions_.find(q.get());
    if (it != expansions_.end()) return it->second;
  }
  FieldExprPtr e = qp_nop(q->left->symbol, q->right->symbol, q->order);
  std::lock_guard lock(expansion_mutex_);
  auto [it, inserted] = expansions_.emplace(q.get(), e);
  if (inserted) pinned_expansions_.push_back(q);
  return it->second;
}

FieldExprPtr Engine::field_of_state(const State& s) const {
  std::function<FieldExprPtr(const Word&, std::size_t)> of_word = [&](const Word& w, std::size_t at) -> FieldExprPtr {
    if (at == w.size()) return fx::identity();
    Mode m = w[at];
    const auto& info = spec_.field(m.field);
    int k = -m.index - info.weight;
    if (k < 0) throw std::invalid_argument("field_of_state expects creation modes only");
    FieldExprPtr b = fx::derivative(fx::field(info.symbol), k);
    if (k > 1) b = fx::lincomb({{Poly(Rat(1) / Rat(factorial(k))), b}});
    if (at + 1 == w.size()) return b;
    return fx::nprod(info.weight + k, of_word(w, at + 1), b);
  };
  std::vector<std::pair<Poly, FieldExprPtr>> terms;
  for (const auto& [w, c] : s.terms()) terms.emplace_back(c, of_word(w, 0));
  return fx::lincomb(std::move(terms));
}

State Engine::state_of(const FieldExprPtr& f) const { return field_mode_apply(f, -weight(f), State::vacuum()); }

std::size_t Engine::cache_size() const {
  std::size_t n = 0;
  {
    std::lock_guard lock(apply_mutex_);
    n += apply_cache_.size();
  }
  std::lock_guard lock(field_mutex_);
  return n + field_cache_.size();
}

}  // namespace walg
