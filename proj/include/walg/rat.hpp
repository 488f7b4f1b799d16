#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace walg {

using Rat = mpq_class;
using Int = mpz_class;

Rat make_rat(long num, long den = 1);

/// Parses "p", "-p" or "p/q"; throws std::invalid_argument on bad input or q == 0.
Rat parse_rat(std::string_view text);

std::string to_string(const Rat& value);

bool is_integer(const Rat& value);

/// Generalized binomial x(x-1)...(x-k+1)/k!; zero for k < 0.
Rat binom(const Rat& x, long k);
Rat binom_int(long n, long k);
Int factorial(long n);

}  // namespace walg
