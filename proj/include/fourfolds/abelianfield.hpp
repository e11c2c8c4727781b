#pragma once

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourfolds/common.hpp"
#include "fourfolds/intmath.hpp"

namespace fourfolds::abelianfield {

using std::int64_t;
using intmath::UnitSubgroup;

/// An abelian number field as the fixed field of H <= (Z/N)^x inside Q(zeta_N),
/// with N reduced to the true conductor.
struct AbelianFieldModel {
  int64_t conductor = 1;
  UnitSubgroup fixing;  // subgroup of (Z/conductor)^x fixing the field

  int64_t degree() const { return intmath::euler_phi(conductor) / fixing.size(); }
  bool operator==(const AbelianFieldModel&) const = default;
};

struct SplittingData {
  int64_t e = 1;  // ramification index
  int64_t f = 1;  // residue degree
  int64_t g = 1;  // number of primes above p
  bool operator==(const SplittingData&) const = default;
};

namespace detail {

/// Generators of ker((Z/N)^x -> (Z/M)^x) for M | N: residues 1 mod M.
inline std::vector<int64_t> kernel_to(int64_t N, int64_t M) {
  std::vector<int64_t> gens;
  for (int64_t x = 1; x < std::max<int64_t>(N, 2); x += M)
    if (std::gcd(x, N) == 1) gens.push_back(x);
  if (N == 1) gens.push_back(0);
  return gens;
}

/// Does H (mod N) contain the kernel of reduction to modulus M | N?
inline bool contains_kernel(const UnitSubgroup& H, int64_t M) {
  int64_t N = H.modulus;
  for (int64_t x = 1; x < N; x += M)
    if (std::gcd(x, N) == 1 && !H.contains(x)) return false;
  return true;
}

/// Image of H under reduction mod M (assumes the kernel lies in H).
inline UnitSubgroup reduce_subgroup(const UnitSubgroup& H, int64_t M) {
  std::vector<int64_t> gens;
  for (int64_t x : H.elements) gens.push_back(M == 1 ? 0 : x % M);
  return intmath::generate_subgroup(M, gens);
}

}  // namespace detail

inline AbelianFieldModel make_field(int64_t N, const std::vector<int64_t>& gens) {
  if (N < 1) throw std::invalid_argument("make_field: conductor must be positive");
  UnitSubgroup H = intmath::generate_subgroup(N, gens);
  // reduce to the smallest modulus M | N whose reduction kernel lies in H
  int64_t best = N;
  for (int64_t M = 1; M <= N; ++M) {
    if (N % M) continue;
    if (detail::contains_kernel(H, M)) {
      best = M;
      break;
    }
  }
  return AbelianFieldModel{best, detail::reduce_subgroup(H, best)};
}

inline AbelianFieldModel cyclotomic_field(int64_t n) { return make_field(n, {}); }
inline AbelianFieldModel rationals() { return make_field(1, {}); }

/// Q(sqrt(d)) for squarefree d != 0, 1: fixed field of the kernel of the
/// Kronecker character of the fundamental discriminant.
inline AbelianFieldModel quadratic_field(int64_t d) {
  if (d == 0 || d == 1) throw std::invalid_argument("quadratic_field: d must not be 0 or 1");
  if (intmath::squarefree_part(d) != d)
    throw std::invalid_argument("quadratic_field: d must be squarefree");
  int64_t D = (((d % 4) + 4) % 4 == 1) ? d : 4 * d;
  int64_t c = D < 0 ? -D : D;
  std::vector<int64_t> gens;
  for (int64_t x = 1; x < c; ++x)
    if (std::gcd(x, c) == 1 && intmath::kronecker(D, x) == 1) gens.push_back(x);
  return make_field(c, gens);
}

/// (r1, r2): abelian fields are totally real or totally imaginary.
inline std::pair<int64_t, int64_t> signature(const AbelianFieldModel& F) {
  int64_t deg = F.degree();
  bool real = F.fixing.contains(F.conductor - 1);  // -1 mod N
  if (F.conductor <= 2) real = true;
  return real ? std::pair<int64_t, int64_t>{deg, 0} : std::pair<int64_t, int64_t>{0, deg / 2};
}

inline bool totally_real(const AbelianFieldModel& F) { return signature(F).second == 0; }

/// Dirichlet unit rank r1 + r2 - 1.
inline int64_t unit_rank(const AbelianFieldModel& F) {
  auto [r1, r2] = signature(F);
  return r1 + r2 - 1;
}

/// Splitting of p in F: inertia from the ramified part of the conductor,
/// Frobenius from the class of p modulo the prime-to-p part.
inline SplittingData splitting_efg(const AbelianFieldModel& F, int64_t p) {
  if (!intmath::is_prime(p)) throw std::invalid_argument("splitting_efg: p must be prime");
  int64_t N = F.conductor;
  int64_t pv = 1, Nprime = N;
  while (Nprime % p == 0) {
    Nprime /= p;
    pv *= p;
  }
  // subgroup generated by H and the inertia kernel ker(U_N -> U_N')
  std::vector<int64_t> gens = F.fixing.elements;
  for (int64_t k : detail::kernel_to(N, Nprime)) gens.push_back(k);
  UnitSubgroup J = intmath::generate_subgroup(N, gens);
  int64_t e = J.size() / F.fixing.size();
  // Frobenius: lift of p mod N' to U_N (x = p mod N', x = 1 mod p^v)
  int64_t x = 1;
  if (N == 1) {
    x = 0;
  } else {
    // CRT
    for (x = 1; x < N; ++x)
      if (x % Nprime == p % Nprime && (pv == 1 || x % pv == 1)) break;
    if (Nprime == 1) x = 1 % N;
  }
  int64_t f = 1;
  if (N > 1) {
    int64_t y = x;
    while (!J.contains(y)) {
      y = intmath::mul_mod(y, x, N);
      ++f;
    }
  }
  int64_t deg = F.degree();
  return SplittingData{e, f, deg / (e * f)};
}

/// G subset of F, both seen inside the cyclotomic closure.
inline bool contains(const AbelianFieldModel& F, const AbelianFieldModel& G) {
  int64_t M = std::lcm(F.conductor, G.conductor);
  // lift both fixing groups to modulus M; G subset F iff lift(H_F) subset lift(H_G)
  for (int64_t x = M == 1 ? 0 : 1; x < std::max<int64_t>(M, 1); ++x) {
    if (M > 1 && std::gcd(x, M) != 1) continue;
    bool inF = F.fixing.contains(F.conductor == 1 ? 0 : x % F.conductor);
    bool inG = G.fixing.contains(G.conductor == 1 ? 0 : x % G.conductor);
    if (inF && !inG) return false;
  }
  return true;
}

/// Compositum of F and G at conductor lcm: fixed by lift(H_F) intersect lift(H_G).
inline AbelianFieldModel compositum(const AbelianFieldModel& F, const AbelianFieldModel& G) {
  int64_t M = std::lcm(F.conductor, G.conductor);
  std::vector<int64_t> inter;
  for (int64_t x = M == 1 ? 0 : 1; x < std::max<int64_t>(M, 1); ++x) {
    if (M > 1 && std::gcd(x, M) != 1) continue;
    bool inF = F.fixing.contains(F.conductor == 1 ? 0 : x % F.conductor);
    bool inG = G.fixing.contains(G.conductor == 1 ? 0 : x % G.conductor);
    if (inF && inG) inter.push_back(x);
  }
  if (M == 1) inter = {0};
  return make_field(M, inter);
}

/// [F(zeta_m) : F].
inline int64_t adjoin_zeta_degree(const AbelianFieldModel& F, int64_t m) {
  if (m < 1) throw std::invalid_argument("adjoin_zeta_degree: m must be positive");
  AbelianFieldModel comp = compositum(F, cyclotomic_field(m));
  return comp.degree() / F.degree();
}

/// Local degree [L_P : K_p] over a prime above p; well defined since Galois.
inline int64_t relative_local_degree(const AbelianFieldModel& L, const AbelianFieldModel& K,
                                     int64_t p) {
  if (!contains(L, K)) throw std::invalid_argument("relative_local_degree: K not contained in L");
  SplittingData sL = splitting_efg(L, p), sK = splitting_efg(K, p);
  return (sL.e * sL.f) / (sK.e * sK.f);
}

// ---------------------------------------------------------------------------
// Text format "N:g1,g2,..." shared with the CLI
// ---------------------------------------------------------------------------

inline std::string format_model(const AbelianFieldModel& F) {
  std::ostringstream os;
  os << F.conductor << ":";
  bool first = true;
  for (int64_t x : F.fixing.elements) {
    if (x == 1 || (F.conductor == 1 && x == 0)) continue;
    if (!first) os << ",";
    os << x;
    first = false;
  }
  return os.str();
}

inline AbelianFieldModel parse_model(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("parse_model: missing ':'");
  int64_t N = 0;
  try {
    size_t used = 0;
    N = std::stoll(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("trailing junk");
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_model: bad conductor");
  }
  std::vector<int64_t> gens;
  std::string rest = text.substr(colon + 1);
  std::istringstream is(rest);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    try {
      gens.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_model: bad generator '" + tok + "'");
    }
  }
  return make_field(N, gens);
}

}  // namespace fourfolds::abelianfield
