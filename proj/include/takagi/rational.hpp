#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace takagi {

using BigInt = mpz_class;
using Rational = mpq_class;

/// 2^n as an exact integer.
BigInt pow2(std::uint64_t n);

/// 2^-n as an exact rational.
Rational inv_pow2(std::uint64_t n);

/// Exact text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Parses "p/q", "p", or "k/2^n". Throws ParseError on malformed input.
Rational parse_rational(std::string_view text);

bool is_dyadic(const Rational& value);

/// floor(value) as an exact integer.
BigInt floor(const Rational& value);

double to_double(const Rational& value);

} // namespace takagi
