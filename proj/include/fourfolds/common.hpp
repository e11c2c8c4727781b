#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace fourfolds {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;

inline Rat make_rat(long long num, long long den = 1) { return Rat(Int(num), Int(den)); }

/// Reduce a rational to its class mod 1, represented in [0, 1).
inline Rat mod_one(const Rat& x) {
  Int n = x.numerator(), d = x.denominator();  // d > 0 by boost invariant
  Int r = n % d;
  if (r < 0) r += d;
  return Rat(r, d);
}

/// One-level Newton-polygon factorization hit a repeated residual factor;
/// the p-adic factor shape cannot be read off at this precision.
struct OreIrregular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A group exceeded the order bound supported by table-based routines.
struct OrderBoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The endomorphism-algebra shape does not belong to an abelian fourfold.
struct NotAFourfold : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fourfolds
