#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fourfolds/abelianfield.hpp"
#include "fourfolds/common.hpp"
#include "fourfolds/intmath.hpp"
#include "fourfolds/polyring.hpp"

namespace fourfolds::weil {

using std::int64_t;
using polyring::IntPoly;

struct WeilCandidate {
  int64_t q = 0;
  int64_t p = 0;  // q = p^a
  int a = 0;
  IntPoly h;
  std::optional<abelianfield::AbelianFieldModel> center;     // declared field model
  std::optional<std::pair<int64_t, int64_t>> scaling;        // pi = c * zeta_n
};

namespace detail {

inline int64_t isqrt64(int64_t n) {
  if (n < 0) return -1;
  int64_t r = static_cast<int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

/// (p, a) with q = p^a, or throws.
inline std::pair<int64_t, int> prime_power(int64_t q) {
  if (q < 2) throw std::invalid_argument("prime_power: q must be >= 2");
  auto f = intmath::factorize(q);
  if (f.factors.size() != 1) throw std::invalid_argument("prime_power: q is not a prime power");
  return {f.factors[0].first, f.factors[0].second};
}

/// Minimal polynomial of beta = pi + q/pi given the q-symmetric h of degree 2d:
/// c_d + sum_k c_{d+k} P_k(beta) with P_0 = 2, P_1 = t, P_{k+1} = t P_k - q P_{k-1}.
inline IntPoly real_weil_transform(const IntPoly& h, int64_t q) {
  if (!h.is_monic() || h.degree() % 2 != 0 || h.degree() < 2)
    throw std::invalid_argument("real_weil_transform: need monic h of even degree >= 2");
  if (!polyring::is_q_symmetric(h, q))
    throw std::invalid_argument("real_weil_transform: h is not q-symmetric");
  int d = h.degree() / 2;
  IntPoly pk_prev{{Int(2)}};       // P_0
  IntPoly pk{{Int(0), Int(1)}};    // P_1
  IntPoly t{{Int(0), Int(1)}};
  IntPoly g{{h.coeff(d)}};
  for (int k = 1; k <= d; ++k) {
    g = g + h.coeff(d + k) * pk;
    IntPoly next = t * pk - Int(q) * pk_prev;
    pk_prev = pk;
    pk = next;
  }
  return g;
}

/// All roots of g real, and all squared roots in (-1, 4q]: the exact test for
/// the roots of h lying on the circle |z| = sqrt(q).
inline bool transform_roots_on_segment(const IntPoly& g, int64_t q) {
  int d = g.degree();
  if (polyring::sturm_count(g, std::nullopt, std::nullopt) != d) return false;
  // split g = A(t^2) + t B(t^2); G(u) = A^2 - u B^2 vanishes on the squares
  std::vector<Int> ac, bc;
  for (int i = 0; i <= d; ++i)
    (i % 2 == 0 ? ac : bc).push_back(g.coeff(i));
  IntPoly A(std::move(ac)), B(std::move(bc));
  IntPoly u{{Int(0), Int(1)}};
  IntPoly G = A * A - u * B * B;
  int total = polyring::sturm_count(G, std::nullopt, std::nullopt);
  int inside = polyring::sturm_count(G, make_rat(-1), make_rat(4) * Rat(Int(q)));
  return total == inside;
}

/// Def of a q-Weil number at the polynomial level: h irreducible over Q and
/// every complex root of modulus exactly sqrt(q).
inline bool is_weil_poly(const IntPoly& h, int64_t q) {
  if (!h.is_monic()) throw std::invalid_argument("is_weil_poly: h must be monic");
  if (h.degree() < 1) throw std::invalid_argument("is_weil_poly: h must be nonconstant");
  prime_power(q);
  int64_t s = detail::isqrt64(q);
  bool square = s * s == q;
  if (h.degree() == 1) {
    // pi = +-sqrt(q), rational only when q is a square
    return square && (h.coeff(0) == Int(s) || h.coeff(0) == Int(-s));
  }
  if (h.degree() % 2 != 0) return false;
  if (h.degree() == 2 && h.coeff(1) == 0 && h.coeff(0) == Int(-q))
    return !square;  // t^2 - q, the real case; irreducible iff q is not a square
  if (!polyring::is_q_symmetric(h, q)) return false;
  if (square && (h.eval(Int(s)) == 0 || h.eval(Int(-s)) == 0)) return false;
  if (!polyring::irreducible_over_q(h)) return false;
  return transform_roots_on_segment(real_weil_transform(h, q), q);
}

/// The degenerate real Weil numbers pi = +-sqrt(q); out of fourfold scope.
inline bool is_real_weil_poly(const IntPoly& h, int64_t q) {
  int64_t s = detail::isqrt64(q);
  bool square = s * s == q;
  if (h.degree() == 1) return square && (h.coeff(0) == Int(s) || h.coeff(0) == Int(-s));
  if (h.degree() == 2) return !square && h.coeff(1) == 0 && h.coeff(0) == Int(-q) && h.is_monic();
  return false;
}

inline WeilCandidate make_candidate(int64_t q, IntPoly h,
                                    std::optional<abelianfield::AbelianFieldModel> center = {}) {
  auto [p, a] = prime_power(q);
  if (center && center->degree() != h.degree())
    throw std::invalid_argument("make_candidate: declared model degree mismatch");
  return WeilCandidate{q, p, a, std::move(h), std::move(center), {}};
}

/// pi = c * zeta_n as a c^2-Weil number; verified.
inline WeilCandidate weil_from_cyclotomic_scaling(int64_t c, int64_t n) {
  if (c < 1 || n < 1) throw std::invalid_argument("weil_from_cyclotomic_scaling: need c, n >= 1");
  if (c == 1 && n > 2)
    throw std::invalid_argument("weil_from_cyclotomic_scaling: root of unity is not a Weil number");
  int64_t q = c * c;
  IntPoly h = polyring::scaled_root_min_poly(c, n);
  if (!is_weil_poly(h, q) && !is_real_weil_poly(h, q))
    throw std::invalid_argument("weil_from_cyclotomic_scaling: verification failed");
  WeilCandidate w = make_candidate(q, std::move(h), abelianfield::cyclotomic_field(n));
  w.scaling = {{c, n}};
  return w;
}

/// For a quartic Weil polynomial t^4 + c3 t^3 + c2 t^2 + c1 t + q^2, the
/// squarefree d with K0 = Q(sqrt(d)): discriminant of t^2 + c3 t + (c2 - 2q).
inline int64_t real_quadratic_subfield(const IntPoly& h, int64_t q) {
  if (h.degree() != 4) throw std::invalid_argument("real_quadratic_subfield: degree must be 4");
  if (!is_weil_poly(h, q))
    throw std::invalid_argument("real_quadratic_subfield: not a Weil polynomial");
  Int c3 = h.coeff(3), c2 = h.coeff(2);
  Int disc = c3 * c3 - 4 * c2 + 8 * q;
  if (disc > Int(std::numeric_limits<int64_t>::max()))
    throw std::invalid_argument("real_quadratic_subfield: discriminant too large");
  return intmath::squarefree_part(static_cast<int64_t>(disc));
}

}  // namespace fourfolds::weil
