#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourfolds/common.hpp"
#include "fourfolds/finitegroup.hpp"
#include "fourfolds/intmath.hpp"

namespace fourfolds::amitsur {

using std::int64_t;

/// Parameters of G_{m,r} = <a, b | a^m = 1, b^n = a^t, b a b^-1 = a^r>.
struct GmrParams {
  int64_t m = 1, r = 1;
  int64_t n = 1;  // ord(r mod m), or forced for the degenerate m <= 2 scans
  int64_t s = 1;  // gcd(r - 1, m)
  int64_t t = 1;  // m / s
};

struct GmrPrimeData {
  int64_t p = 0;
  int64_t alpha = 0;  // largest with p^alpha | m
  int64_t n_p = 1;    // least with r^{n_p} = 1 (mod m / p^alpha)
  int64_t delta_p = 1;  // least with p^{delta_p} = 1 (mod m / p^alpha)
};

enum class Condition { NONE, C1, C2 };
enum class Branch { NONE, COND1, COND2A, COND2B };

struct EmbeddabilityVerdict {
  bool embeddable = false;
  Branch branch = Branch::NONE;
  // per prime q | n, the prime p | m that serves it in branch (2)
  std::vector<std::pair<int64_t, int64_t>> witnesses;
  std::string reason;
};

inline GmrParams gmr_params(int64_t m, int64_t r, int64_t forced_n = 0) {
  if (m < 1) throw std::invalid_argument("gmr_params: m must be positive");
  r %= m;
  if (r < 0) r += m;
  if (r == 0) r = m == 1 ? 1 : r;
  if (m > 1 && std::gcd(r, m) != 1) throw std::invalid_argument("gmr_params: gcd(m, r) != 1");
  GmrParams g;
  g.m = m;
  g.r = m == 1 ? 1 : r;
  g.n = forced_n > 0 ? forced_n : (m == 1 ? 1 : intmath::mult_order(r, m));
  if (forced_n > 0 && intmath::pow_mod(g.r, g.n, m) != 1 % m)
    throw std::invalid_argument("gmr_params: forced n inconsistent with r");
  g.s = g.r == 1 ? m : std::gcd(g.r - 1, m);
  g.t = m / g.s;
  return g;
}

inline GmrPrimeData gmr_prime_data(const GmrParams& g, int64_t p) {
  if (g.m % p != 0) throw std::invalid_argument("gmr_prime_data: p does not divide m");
  GmrPrimeData d;
  d.p = p;
  int64_t mp = g.m;
  while (mp % p == 0) {
    mp /= p;
    ++d.alpha;
  }
  d.n_p = intmath::mult_order(g.r % std::max<int64_t>(mp, 1), mp);
  d.delta_p = intmath::mult_order(p % std::max<int64_t>(mp, 1), mp);
  return d;
}

inline Condition check_conditions(const GmrParams& g) {
  if (std::gcd(g.n, g.t) == 1 && std::gcd(g.s, g.t) == 1) return Condition::C1;
  // (C2): n = 2n', m = 2^alpha m', s = 2s' with alpha >= 2 and n', m', s' odd,
  // gcd(n,t) = gcd(s,t) = 2, and r = -1 (mod 2^alpha)
  if (g.n % 2 != 0 || g.s % 2 != 0) return Condition::NONE;
  int64_t nprime = g.n / 2, sprime = g.s / 2;
  if (nprime % 2 == 0 || sprime % 2 == 0) return Condition::NONE;
  int64_t alpha = 0, mprime = g.m;
  while (mprime % 2 == 0) {
    mprime /= 2;
    ++alpha;
  }
  if (alpha < 2 || mprime % 2 == 0) return Condition::NONE;
  if (std::gcd(g.n, g.t) != 2 || std::gcd(g.s, g.t) != 2) return Condition::NONE;
  int64_t two_alpha = int64_t(1) << alpha;
  if ((g.r + 1) % two_alpha != 0) return Condition::NONE;
  return Condition::C2;
}

/// Embeddability of G_{m,r} into a division ring.
inline EmbeddabilityVerdict gmr_embeddable(const GmrParams& g) {
  EmbeddabilityVerdict v;
  if (g.n == 1) {  // cyclic: embeds in a field
    v.embeddable = true;
    v.branch = Branch::COND1;
    v.reason = "cyclic group C" + std::to_string(g.m) + " embeds in a field";
    return v;
  }
  Condition cond = check_conditions(g);
  if (cond == Condition::NONE) {
    v.reason = "neither (C1) nor (C2) holds";
    return v;
  }
  // branch (1): n = s = 2 and r = -1 (mod m)
  if (g.n == 2 && g.s == 2 && (g.r + 1) % g.m == 0) {
    v.embeddable = true;
    v.branch = Branch::COND1;
    v.reason = "n = s = 2 and r = -1 (mod m)";
    return v;
  }
  // branch (2): every prime q | n is served by some prime p | m
  auto mfac = intmath::factorize(g.m);
  Branch used = Branch::COND2A;
  for (const auto& [q, qe] : intmath::factorize(g.n).factors) {
    bool served = false;
    for (const auto& [p, pe] : mfac.factors) {
      GmrPrimeData pd = gmr_prime_data(g, p);
      if (pd.n_p % q == 0) continue;  // need q not dividing n_p
      if (p != 2) {
        // (a): gcd(q, (p^{delta_p} - 1) / s) = 1
        Int pw = 1;
        for (int64_t i = 0; i < pd.delta_p; ++i) pw *= p;
        Int num = pw - 1;
        if (num % g.s != 0) continue;
        Int quot = num / g.s;
        if (boost::integer::gcd(Int(q), quot) == 1) {
          served = true;
          v.witnesses.emplace_back(q, p);
          break;
        }
      } else if (q == 2) {
        // (b): p = q = 2, (C2), m/4 and delta_2 odd
        if (cond == Condition::C2 && (g.m / 4) % 2 == 1 && pd.delta_p % 2 == 1) {
          served = true;
          used = Branch::COND2B;
          v.witnesses.emplace_back(q, p);
          break;
        }
      }
    }
    if (!served) {
      v.reason = "no prime p | m serves q = " + std::to_string(q);
      v.witnesses.clear();
      return v;
    }
  }
  v.embeddable = true;
  v.branch = used;
  v.reason = "every prime divisor of n is served";
  return v;
}

inline EmbeddabilityVerdict gmr_embeddable(int64_t m, int64_t r) {
  return gmr_embeddable(gmr_params(m, r));
}

/// Side condition for products with the binary tetrahedral group:
/// gcd(mn, 6) = 1, the group embeds, and ord(2 mod p) is odd for all p | m.
inline bool tstar_compatible(int64_t m, int64_t r) {
  GmrParams g = gmr_params(m, r);
  if (std::gcd(g.m * g.n, int64_t(6)) != 1) return false;
  if (!gmr_embeddable(g).embeddable) return false;
  for (const auto& [p, e] : intmath::factorize(g.m).factors)
    if (intmath::mult_order(2, p) % 2 == 0) return false;
  return true;
}

struct EnumeratedGroup {
  int64_t m = 0;
  std::vector<int64_t> residues;  // the surviving r for this m
  std::string name;
};

/// Scan all m >= 2 with phi(m) | phi_divisor and all r with r^n = 1 (mod m)
/// matching the requested order (degenerate m <= 2 allow a forced n), keep
/// those meeting the condition and Amitsur's criterion, and group by
/// isomorphism type.
inline std::vector<EnumeratedGroup> enumerate_gmr(int64_t n_target, int64_t phi_divisor,
                                                  Condition condition) {
  std::vector<EnumeratedGroup> out;
  std::map<std::string, std::map<int64_t, std::vector<int64_t>>> by_name;
  int64_t m_max = 2 * phi_divisor * phi_divisor;
  for (int64_t m = 2; m <= m_max; ++m) {
    if (phi_divisor % intmath::euler_phi(m) != 0) continue;
    for (int64_t r = 1; r < std::max<int64_t>(m, 2); ++r) {
      if (r >= m && m > 1) break;
      if (std::gcd(r, m) != 1) continue;
      if (intmath::pow_mod(r, n_target, m) != 1 % m) continue;
      int64_t ord = intmath::mult_order(r, m);
      int64_t forced = 0;
      if (ord != n_target) {
        if (m <= 2 && r == 1) forced = n_target;  // degenerate presentation
        else continue;
      }
      GmrParams g = gmr_params(m, r, forced);
      if (check_conditions(g) != condition) continue;
      if (!gmr_embeddable(g).embeddable) continue;
      std::string name = finitegroup::identify(
          finitegroup::build_gmr(m, r, forced));
      by_name[name][m].push_back(r);
    }
  }
  for (auto& [name, by_m] : by_name)
    for (auto& [m, rs] : by_m) {
      std::sort(rs.begin(), rs.end());
      out.push_back({m, rs, name});
    }
  std::sort(out.begin(), out.end(), [](const EnumeratedGroup& a, const EnumeratedGroup& b) {
    return a.m != b.m ? a.m < b.m : a.name < b.name;
  });
  return out;
}

}  // namespace fourfolds::amitsur
