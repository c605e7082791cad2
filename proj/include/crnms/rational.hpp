#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace crnms {

using Rational = mpq_class;
using Real = long double;

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

// Accepts "p", "p/q" and decimal notation such as "9999.50" or "-1.5e-3".
Rational parse_rational(std::string_view text);

// Exact value of a finite binary floating-point number.
Rational exact_rational(Real v);

Real to_real(const Rational& q);

int sign(const Rational& q);

}  // namespace crnms
