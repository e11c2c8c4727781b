#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fourfolds/common.hpp"

namespace fourfolds::intmath {

using std::int64_t;

inline int64_t mul_mod(int64_t a, int64_t b, int64_t m) {
  return static_cast<int64_t>(static_cast<__int128>(a) * b % m);
}

inline int64_t pow_mod(int64_t base, int64_t exp, int64_t m) {
  if (m == 1) return 0;
  int64_t result = 1;
  base %= m;
  if (base < 0) base += m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  int64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    int64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1 && composite; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

struct IntFactorization {
  std::vector<std::pair<int64_t, int>> factors;  // (p, e), sorted by p

  int exponent_of(int64_t p) const {
    for (const auto& [q, e] : factors)
      if (q == p) return e;
    return 0;
  }
  bool operator==(const IntFactorization&) const = default;
};

inline IntFactorization factorize(int64_t n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  IntFactorization result;
  for (int64_t p = 2; p * p <= n; p += (p == 2) ? 1 : 2) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    result.factors.emplace_back(p, e);
  }
  if (n > 1) result.factors.emplace_back(n, 1);
  return result;
}

inline int64_t euler_phi(int64_t n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  int64_t phi = n;
  for (const auto& [p, e] : factorize(n).factors) phi = phi / p * (p - 1);
  return phi;
}

/// Least k >= 1 with r^k = 1 (mod m); requires gcd(r, m) = 1.
inline int64_t mult_order(int64_t r, int64_t m) {
  if (m < 1) throw std::invalid_argument("mult_order: modulus must be positive");
  if (m == 1) return 1;
  r %= m;
  if (r < 0) r += m;
  if (std::gcd(r, m) != 1) throw std::invalid_argument("mult_order: gcd(r, m) != 1");
  int64_t k = 1, x = r;
  while (x != 1) {
    x = mul_mod(x, r, m);
    ++k;
  }
  return k;
}

/// The unique squarefree d with n = d * k^2; sign preserved.
inline int64_t squarefree_part(int64_t n) {
  if (n == 0) throw std::invalid_argument("squarefree_part: n must be nonzero");
  int64_t sign = n < 0 ? -1 : 1;
  int64_t d = 1;
  for (const auto& [p, e] : factorize(sign * n).factors)
    if (e & 1) d *= p;
  return sign * d;
}

/// Kronecker symbol (a / n).
inline int kronecker(int64_t a, int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int64_t v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  int k = 1;
  if (v % 2 == 1) {
    int64_t am8 = ((a % 8) + 8) % 8;
    if (am8 == 3 || am8 == 5) k = -1;
  }
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  while (true) {
    a %= n;
    if (a < 0) a += n;
    if (a == 0) return n == 1 ? k : 0;
    v = 0;
    while (a % 2 == 0) {
      a /= 2;
      ++v;
    }
    if (v % 2 == 1) {
      int64_t nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) k = -k;
    }
    if (a % 4 == 3 && n % 4 == 3) k = -k;
    std::swap(a, n);
  }
}

/// A multiplicatively closed subset of (Z/N)^x containing 1.
struct UnitSubgroup {
  int64_t modulus = 1;
  std::vector<int64_t> elements;  // sorted residues coprime to modulus

  bool contains(int64_t x) const {
    x %= modulus;
    if (x < 0) x += modulus;
    return std::binary_search(elements.begin(), elements.end(), x);
  }
  int64_t size() const { return static_cast<int64_t>(elements.size()); }
  bool operator==(const UnitSubgroup&) const = default;
};

inline std::vector<int64_t> units_mod(int64_t n) {
  std::vector<int64_t> u;
  for (int64_t x = n == 1 ? 0 : 1; x < std::max<int64_t>(n, 1); ++x)
    if (std::gcd(x, n) == 1) u.push_back(x);
  if (n == 1) u = {0};
  return u;
}

inline UnitSubgroup generate_subgroup(int64_t n, const std::vector<int64_t>& gens) {
  if (n < 1) throw std::invalid_argument("generate_subgroup: modulus must be positive");
  std::set<int64_t> closure;
  closure.insert(n == 1 ? 0 : 1);
  std::vector<int64_t> frontier(closure.begin(), closure.end());
  std::vector<int64_t> g;
  for (int64_t x : gens) {
    x %= n;
    if (x < 0) x += n;
    if (std::gcd(x, n) != 1) throw std::invalid_argument("generate_subgroup: generator not coprime to modulus");
    g.push_back(n == 1 ? 0 : x);
  }
  for (int64_t x : g)
    if (closure.insert(x).second) frontier.push_back(x);
  while (!frontier.empty()) {
    int64_t x = frontier.back();
    frontier.pop_back();
    for (int64_t y : g) {
      int64_t z = n == 1 ? 0 : mul_mod(x, y, n);
      if (closure.insert(z).second) frontier.push_back(z);
    }
  }
  return UnitSubgroup{n, std::vector<int64_t>(closure.begin(), closure.end())};
}

}  // namespace fourfolds::intmath
