#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace hairycalc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown when an internal invariant fails (d^2 != 0, rank mismatch, ...).
// Callers must never swallow it; the CLI maps it to exit code 3.
class internal_error : public std::logic_error {
public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline int parity(long n) { return static_cast<int>(((n % 2) + 2) % 2); }

inline bool is_odd(long degree) { return parity(degree) == 1; }

// (-1)^n for possibly negative n.
inline int pow_sign(long n) { return is_odd(n) ? -1 : 1; }

// Approximate size of a rational, used for pivot tie-breaking.
inline std::size_t bit_size(const Rat& q) {
  return msb(abs(numerator(q)) + 1) + msb(denominator(q));
}

}  // namespace hairycalc
