#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace nspcp {

using Rational = mpq_class;

// Always "p/q" with q >= 1, e.g. "1/1", "0/1", "-3/8".
std::string to_string(const Rational& value);

// Accepts "p/q" or a bare integer "p". Throws InvalidInput otherwise.
Rational parse_rational(std::string_view text);

// num/den in lowest terms (mpq_class's two-argument constructor does not
// canonicalize).
inline Rational ratio(std::uint64_t num, std::uint64_t den) {
  Rational r{mpz_class(std::to_string(num)), mpz_class(std::to_string(den))};
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace nspcp
