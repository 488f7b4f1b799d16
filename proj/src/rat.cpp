#include "walg/rat.hpp"

#include <cctype>
#include <stdexcept>

namespace walg {

Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto valid = [](const std::string& part) {
    std::size_t i = (part.size() > 0 && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num) || !valid(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  Int n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& value) { return value.get_str(); }

bool is_integer(const Rat& value) { return value.get_den() == 1; }

Rat binom(const Rat& x, long k) {
  if (k < 0) return Rat(0);
  Rat acc(1);
  for (long j = 0; j < k; ++j) {
    acc *= (x - j);
    acc /= (j + 1);
  }
  return acc;
}

Rat binom_int(long n, long k) { return binom(Rat(n), k); }

Int factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative integer");
  Int acc(1);
  for (long j = 2; j <= n; ++j) acc *= j;
  return acc;
}

}  // namespace walg
