#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace livsic {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q", "p" or "-p/q". The result is canonicalized; a zero
/// denominator or stray characters raise ErrorCode::ParseError.
Rational parse_rational(std::string_view text);

/// Lowest-terms "p/q"; integers are written without a denominator.
std::string to_string(const Rational& value);

}  // namespace livsic
