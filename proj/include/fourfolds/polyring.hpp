#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fourfolds/common.hpp"
#include "fourfolds/intmath.hpp"

namespace fourfolds::polyring {

using std::int64_t;

/// Univariate polynomial with exact integer coefficients, ascending degree.
struct IntPoly {
  std::vector<Int> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { normalize(); }
  static IntPoly from_int64(const std::vector<int64_t>& v) {
    std::vector<Int> w(v.begin(), v.end());
    return IntPoly(std::move(w));
  }

  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero poly
  const Int& leading() const { return c.back(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  Int coeff(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : Int(0); }

  Int eval(const Int& x) const {
    Int acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  Rat eval(const Rat& x) const {
    Rat acc(Int(0));
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
  }

  bool operator==(const IntPoly&) const = default;

  std::string str(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      if (c[i] == 0) continue;
      Int a = c[i];
      if (!first) os << (a < 0 ? " - " : " + ");
      else if (a < 0) os << "-";
      Int mag = abs(a);
      if (mag != 1 || i == 0) os << mag.str();
      if (i > 0) {
        os << var;
        if (i > 1) os << "^" << i;
      }
      first = false;
    }
    return os.str();
  }
};

inline IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  return IntPoly(std::move(r));
}

inline IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  return IntPoly(std::move(r));
}

inline IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<Int> r(a.c.size() + b.c.size() - 1, Int(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return IntPoly(std::move(r));
}

inline IntPoly operator*(const Int& k, const IntPoly& a) {
  std::vector<Int> r = a.c;
  for (auto& x : r) x *= k;
  return IntPoly(std::move(r));
}

/// Exact division; throws if the remainder is nonzero.
inline IntPoly div_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("div_exact: division by zero polynomial");
  std::vector<Int> rem = a.c;
  std::vector<Int> quot(a.c.size() >= b.c.size() ? a.c.size() - b.c.size() + 1 : 0, Int(0));
  for (int i = static_cast<int>(rem.size()) - 1; i >= b.degree(); --i) {
    if (rem[i] == 0) continue;
    if (rem[i] % b.leading() != 0) throw std::invalid_argument("div_exact: not divisible");
    Int q = rem[i] / b.leading();
    quot[i - b.degree()] = q;
    for (int j = 0; j <= b.degree(); ++j) rem[i - b.degree() + j] -= q * b.c[j];
  }
  for (const Int& x : rem)
    if (x != 0) throw std::invalid_argument("div_exact: not divisible");
  return IntPoly(std::move(quot));
}

inline bool divides(const IntPoly& b, const IntPoly& a) {
  try {
    div_exact(a, b);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

inline IntPoly derivative(const IntPoly& a) {
  std::vector<Int> r;
  for (int i = 1; i <= a.degree(); ++i) r.push_back(Int(i) * a.c[i]);
  return IntPoly(std::move(r));
}

// ---------------------------------------------------------------------------
// Rational-coefficient helpers (Sturm chains, gcds)
// ---------------------------------------------------------------------------

using RatPoly = std::vector<Rat>;  // ascending, trimmed

inline void rp_trim(RatPoly& p) {
  while (!p.empty() && p.back() == Rat(Int(0))) p.pop_back();
}

inline RatPoly rp_from(const IntPoly& a) {
  RatPoly r;
  for (const Int& x : a.c) r.emplace_back(x);
  return r;
}

inline RatPoly rp_derivative(const RatPoly& a) {
  RatPoly r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(Rat(Int(i)) * a[i]);
  return r;
}

inline Rat rp_eval(const RatPoly& a, const Rat& x) {
  Rat acc(Int(0));
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Remainder of a by b over Q.
inline RatPoly rp_rem(RatPoly a, const RatPoly& b) {
  rp_trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rat q = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= q * b[j];
    rp_trim(a);
  }
  return a;
}

inline RatPoly rp_gcd(RatPoly a, RatPoly b) {
  rp_trim(a);
  rp_trim(b);
  while (!b.empty()) {
    RatPoly r = rp_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat lc = a.back();
    for (auto& x : a) x /= lc;
  }
  return a;
}

/// Squarefree part over Q, returned with integer coefficients (primitive).
inline IntPoly squarefree_part_over_q(const IntPoly& a) {
  RatPoly g = rp_gcd(rp_from(a), rp_derivative(rp_from(a)));
  if (g.size() <= 1) return a;
  RatPoly q = rp_from(a);
  // exact quotient by g
  RatPoly quot(q.size() - g.size() + 1, Rat(Int(0)));
  RatPoly rem = q;
  rp_trim(rem);
  while (rem.size() >= g.size() && !rem.empty()) {
    Rat c = rem.back() / g.back();
    size_t shift = rem.size() - g.size();
    quot[shift] = c;
    for (size_t j = 0; j < g.size(); ++j) rem[shift + j] -= c * g[j];
    rp_trim(rem);
  }
  // clear denominators, divide by content
  Int den = 1;
  for (const Rat& x : quot) den = boost::integer::lcm(den, x.denominator());
  std::vector<Int> ic;
  for (const Rat& x : quot) ic.push_back(x.numerator() * (den / x.denominator()));
  Int content = 0;
  for (const Int& x : ic) content = boost::integer::gcd(content, x);
  if (content > 1)
    for (auto& x : ic) x /= content;
  IntPoly out(std::move(ic));
  if (out.leading() < 0) out = Int(-1) * out;
  return out;
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials
// ---------------------------------------------------------------------------

/// The n-th cyclotomic polynomial, by the Moebius product
/// Phi_n(t) = prod_{d | n} (t^{n/d} - 1)^{mu(d)}.
inline IntPoly cyclotomic_poly(int64_t n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be positive");
  auto x_pow_minus_1 = [](int64_t k) {
    std::vector<Int> v(k + 1, Int(0));
    v[0] = -1;
    v[k] = 1;
    return IntPoly(std::move(v));
  };
  IntPoly num{{Int(1)}};
  IntPoly den{{Int(1)}};
  for (int64_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    auto f = intmath::factorize(d);
    bool squarefree = true;
    for (const auto& [p, e] : f.factors)
      if (e > 1) squarefree = false;
    if (!squarefree) continue;
    int mu = (f.factors.size() % 2 == 0) ? 1 : -1;
    if (mu == 1)
      num = num * x_pow_minus_1(n / d);
    else
      den = den * x_pow_minus_1(n / d);
  }
  return div_exact(num, den);
}

/// Minimal polynomial of c * zeta_n: c^{phi(n)} * Phi_n(t/c).
inline IntPoly scaled_root_min_poly(int64_t c, int64_t n) {
  if (c < 1) throw std::invalid_argument("scaled_root_min_poly: c must be positive");
  IntPoly phi = cyclotomic_poly(n);
  int d = phi.degree();
  std::vector<Int> r(phi.c.size());
  Int ck = 1;
  for (int i = d; i >= 0; --i) {
    r[i] = phi.c[i] * ck;
    ck *= c;
  }
  return IntPoly(std::move(r));
}

// ---------------------------------------------------------------------------
// Sturm real-root counting
// ---------------------------------------------------------------------------

namespace detail {

inline int sign_of(const Rat& x) {
  if (x.numerator() == 0) return 0;
  return x.numerator() < 0 ? -1 : 1;
}

/// Sign of p at +inf (dir = +1) or -inf (dir = -1).
inline int sign_at_infinity(const RatPoly& p, int dir) {
  if (p.empty()) return 0;
  int s = sign_of(p.back());
  if (dir < 0 && (p.size() - 1) % 2 == 1) s = -s;
  return s;
}

inline int variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

}  // namespace detail

/// Number of distinct real roots of h in (lo, hi]; nullopt means -/+ infinity.
inline int sturm_count(const IntPoly& h, std::optional<Rat> lo, std::optional<Rat> hi) {
  if (h.is_zero()) throw std::invalid_argument("sturm_count: zero polynomial");
  if (h.degree() == 0) return 0;
  RatPoly p0 = rp_from(squarefree_part_over_q(h));
  RatPoly p1 = rp_derivative(p0);
  std::vector<RatPoly> chain{p0, p1};
  while (!chain.back().empty() && chain.back().size() > 1) {
    RatPoly r = rp_rem(chain[chain.size() - 2], chain.back());
    for (auto& x : r) x = -x;
    rp_trim(r);
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  auto signs_at = [&](const std::optional<Rat>& x, int dir) {
    std::vector<int> s;
    for (const RatPoly& p : chain)
      s.push_back(x ? detail::sign_of(rp_eval(p, *x)) : detail::sign_at_infinity(p, dir));
    return s;
  };
  int vlo = detail::variations(signs_at(lo, -1));
  int vhi = detail::variations(signs_at(hi, +1));
  return vlo - vhi;
}

// ---------------------------------------------------------------------------
// The q-symmetry functional equation
// ---------------------------------------------------------------------------

/// True iff t^{2d} h(q/t) = q^d h(t) identically (h monic of even degree 2d).
inline bool is_q_symmetric(const IntPoly& h, int64_t q) {
  if (!h.is_monic()) throw std::invalid_argument("is_q_symmetric: h must be monic");
  int deg = h.degree();
  if (deg % 2 != 0) throw std::invalid_argument("is_q_symmetric: odd degree");
  int d = deg / 2;
  // q^d c_j = q^{2d-j} c_{2d-j} for all j, common powers of q cancelled
  for (int j = 0; j <= deg; ++j) {
    int lo = std::min(d, deg - j);
    Int qa = 1, qb = 1;
    for (int k = 0; k < d - lo; ++k) qa *= q;
    for (int k = 0; k < deg - j - lo; ++k) qb *= q;
    if (h.coeff(j) * qa != h.coeff(deg - j) * qb) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Factorization over F_p
// ---------------------------------------------------------------------------

/// Dense polynomial over F_p, ascending degree, coefficients in [0, p).
struct ModPoly {
  int64_t p = 2;
  std::vector<int64_t> c;

  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool operator==(const ModPoly&) const = default;
  bool operator<(const ModPoly& o) const { return c < o.c; }

  std::string str(const std::string& var = "t") const;
};

namespace modp {

inline ModPoly make(int64_t p, std::vector<int64_t> c) {
  for (auto& x : c) {
    x %= p;
    if (x < 0) x += p;
  }
  ModPoly f{p, std::move(c)};
  f.normalize();
  return f;
}

inline ModPoly add(const ModPoly& a, const ModPoly& b) {
  std::vector<int64_t> r(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] = (r[i] + b.c[i]) % a.p;
  ModPoly f{a.p, std::move(r)};
  f.normalize();
  return f;
}

inline ModPoly mul(const ModPoly& a, const ModPoly& b) {
  if (a.is_zero() || b.is_zero()) return ModPoly{a.p, {}};
  std::vector<int64_t> r(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j)
      r[i + j] = (r[i + j] + intmath::mul_mod(a.c[i], b.c[j], a.p)) % a.p;
  ModPoly f{a.p, std::move(r)};
  f.normalize();
  return f;
}

inline int64_t inv_mod(int64_t a, int64_t p) { return intmath::pow_mod(a, p - 2, p); }

inline ModPoly scale(const ModPoly& a, int64_t k) {
  ModPoly r = a;
  for (auto& x : r.c) x = intmath::mul_mod(x, k, a.p);
  r.normalize();
  return r;
}

inline ModPoly monic(const ModPoly& a) {
  if (a.is_zero() || a.c.back() == 1) return a;
  return scale(a, inv_mod(a.c.back(), a.p));
}

inline std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) {
  std::vector<int64_t> rem = a.c;
  std::vector<int64_t> quot(a.c.size() >= b.c.size() ? a.c.size() - b.c.size() + 1 : 0, 0);
  int64_t p = a.p;
  int64_t lcinv = inv_mod(b.c.back(), p);
  for (int i = static_cast<int>(rem.size()) - 1; i >= b.degree(); --i) {
    if (rem[i] == 0) continue;
    int64_t q = intmath::mul_mod(rem[i], lcinv, p);
    quot[i - b.degree()] = q;
    for (int j = 0; j <= b.degree(); ++j) {
      int64_t& x = rem[i - b.degree() + j];
      x = (x - intmath::mul_mod(q, b.c[j], p)) % p;
      if (x < 0) x += p;
    }
  }
  ModPoly qq{p, std::move(quot)}, rr{p, std::move(rem)};
  qq.normalize();
  rr.normalize();
  return {qq, rr};
}

inline ModPoly rem(const ModPoly& a, const ModPoly& b) { return divmod(a, b).second; }
inline ModPoly quot(const ModPoly& a, const ModPoly& b) { return divmod(a, b).first; }

inline ModPoly gcd(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    ModPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline ModPoly derivative(const ModPoly& a) {
  std::vector<int64_t> r;
  for (int i = 1; i <= a.degree(); ++i) r.push_back(intmath::mul_mod(i % a.p, a.c[i], a.p));
  ModPoly f{a.p, std::move(r)};
  f.normalize();
  return f;
}

inline ModPoly pow_mod_poly(ModPoly base, Int exp, const ModPoly& m) {
  ModPoly result{base.p, {1}};
  base = rem(base, m);
  while (exp > 0) {
    if ((exp & 1) != 0) result = rem(mul(result, base), m);
    base = rem(mul(base, base), m);
    exp >>= 1;
  }
  return result;
}

/// Distinct-degree splitting of a squarefree monic f: list of (product, degree).
inline std::vector<std::pair<ModPoly, int>> distinct_degree(const ModPoly& f) {
  std::vector<std::pair<ModPoly, int>> out;
  ModPoly rest = f;
  ModPoly x{f.p, {0, 1}};
  ModPoly xq = x;
  for (int d = 1; rest.degree() > 0; ++d) {
    if (2 * d > rest.degree()) {
      out.emplace_back(rest, rest.degree());
      break;
    }
    xq = pow_mod_poly(xq, Int(f.p), rest);
    ModPoly g = gcd(add(xq, make(f.p, {0, f.p - 1})), rest);  // gcd(x^{p^d} - x, rest)
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      rest = quot(rest, g);
      xq = rem(xq, rest);
    }
  }
  return out;
}

/// Cantor-Zassenhaus equal-degree splitting (deterministic seed).
inline void equal_degree(const ModPoly& f, int d, std::vector<ModPoly>& out, std::mt19937_64& rng) {
  if (f.degree() == d) {
    out.push_back(monic(f));
    return;
  }
  int64_t p = f.p;
  while (true) {
    std::vector<int64_t> rc(f.degree(), 0);
    for (auto& x : rc) x = static_cast<int64_t>(rng() % static_cast<uint64_t>(p));
    ModPoly r = make(p, std::move(rc));
    if (r.degree() < 1) continue;
    ModPoly g = gcd(r, f);
    if (g.degree() == 0) {
      if (p == 2) {
        // trace map: r + r^2 + r^4 + ... (d terms)
        ModPoly t = r, acc = r;
        for (int i = 1; i < d; ++i) {
          t = rem(mul(t, t), f);
          acc = add(acc, t);
        }
        g = gcd(acc, f);
      } else {
        Int e = 1;
        for (int i = 0; i < d; ++i) e *= p;
        e = (e - 1) / 2;
        ModPoly s = pow_mod_poly(r, e, f);
        g = gcd(add(s, make(p, {p - 1})), f);  // gcd(r^e - 1, f)
      }
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, out, rng);
      equal_degree(quot(f, g), d, out, rng);
      return;
    }
  }
}

inline std::vector<ModPoly> factor_squarefree(const ModPoly& f) {
  std::vector<ModPoly> out;
  std::mt19937_64 rng(0x5eed1234abcdULL + static_cast<uint64_t>(f.p));
  for (const auto& [g, d] : distinct_degree(f)) {
    equal_degree(g, d, out, rng);
  }
  return out;
}

/// f = h(x^p) -> h, using a^{1/p} = a over F_p.
inline ModPoly pth_root(const ModPoly& f) {
  std::vector<int64_t> r;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(f.p)) r.push_back(f.c[i]);
  ModPoly h{f.p, std::move(r)};
  h.normalize();
  return h;
}

}  // namespace modp

/// Complete factorization of a monic image of h over F_p, with multiplicities.
inline std::vector<std::pair<ModPoly, int>> factor_mod_poly(const ModPoly& input) {
  ModPoly f = modp::monic(input);
  std::vector<ModPoly> distinct;
  // Collect the distinct irreducible factors.
  ModPoly work = f;
  while (work.degree() > 0) {
    ModPoly d = modp::derivative(work);
    if (d.is_zero()) {
      work = modp::pth_root(work);
      continue;
    }
    ModPoly g = modp::gcd(work, d);
    ModPoly sf = modp::quot(work, g);
    for (ModPoly& q : modp::factor_squarefree(sf)) distinct.push_back(std::move(q));
    // strip every found factor and continue on what is left
    for (const ModPoly& q : distinct) {
      while (true) {
        auto [qu, re] = modp::divmod(work, q);
        if (!re.is_zero() || qu.is_zero()) break;
        work = qu;
      }
    }
  }
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::pair<ModPoly, int>> out;
  for (const ModPoly& q : distinct) {
    int mult = 0;
    ModPoly rest = f;
    while (true) {
      auto [qu, re] = modp::divmod(rest, q);
      if (!re.is_zero()) break;
      rest = qu;
      ++mult;
    }
    out.emplace_back(q, mult);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

inline ModPoly reduce_mod_p(const IntPoly& h, int64_t p) {
  std::vector<int64_t> c;
  for (const Int& x : h.c) {
    Int r = x % p;
    if (r < 0) r += p;
    c.push_back(static_cast<int64_t>(r));
  }
  ModPoly f{p, std::move(c)};
  f.normalize();
  return f;
}

/// Factorization of h over F_p (p prime, leading coefficient nonzero mod p).
inline std::vector<std::pair<ModPoly, int>> factor_mod_p(const IntPoly& h, int64_t p) {
  if (!intmath::is_prime(p)) throw std::invalid_argument("factor_mod_p: p must be prime");
  ModPoly f = reduce_mod_p(h, p);
  if (f.degree() != h.degree())
    throw std::invalid_argument("factor_mod_p: leading coefficient vanishes mod p");
  return factor_mod_poly(f);
}

inline std::string ModPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!first) os << " + ";
    if (c[i] != 1 || i == 0) os << c[i];
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Newton polygons and one-level p-adic factor shapes
// ---------------------------------------------------------------------------

struct NewtonSegment {
  Rat slope;  // root valuation, >= 0
  int width = 0;
  bool operator==(const NewtonSegment&) const = default;
};

inline int64_t val_p(const Int& x, int64_t p) {
  if (x == 0) throw std::invalid_argument("val_p: valuation of zero");
  Int y = abs(x);
  int64_t v = 0;
  while (y % p == 0) {
    y /= p;
    ++v;
  }
  return v;
}

/// Lower convex hull of {(i, v_p(c_i))}; segments as (root valuation, width),
/// in strictly decreasing valuation.
inline std::vector<NewtonSegment> newton_polygon(const IntPoly& h, int64_t p) {
  if (!h.is_monic()) throw std::invalid_argument("newton_polygon: h must be monic");
  if (h.coeff(0) == 0) throw std::invalid_argument("newton_polygon: zero constant term");
  std::vector<std::pair<int64_t, int64_t>> pts;  // (i, v_p(c_i))
  for (int i = 0; i <= h.degree(); ++i)
    if (h.coeff(i) != 0) pts.emplace_back(i, val_p(h.coeff(i), p));
  // lower hull, left to right
  std::vector<std::pair<int64_t, int64_t>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      // drop b if it lies on or above segment a->pt
      if ((b.second - a.second) * (pt.first - a.first) >=
          (pt.second - a.second) * (b.first - a.first)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  std::vector<NewtonSegment> segs;
  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    Int rise(hull[i].second - hull[i + 1].second);
    Int run(hull[i + 1].first - hull[i].first);
    segs.push_back({Rat(rise, run), static_cast<int>(hull[i + 1].first - hull[i].first)});
  }
  return segs;
}

struct PadicFactorShape {
  int64_t p = 0;
  // (local degree d_i, root valuation lambda_i), grouped by segment
  std::vector<std::pair<int, Rat>> entries;

  bool operator==(const PadicFactorShape&) const = default;
};

namespace detail {

/// Hull vertex list matching newton_polygon (shared so residuals line up).
inline std::vector<std::pair<int64_t, int64_t>> hull_vertices(const IntPoly& h, int64_t p) {
  std::vector<std::pair<int64_t, int64_t>> pts, hull;
  for (int i = 0; i <= h.degree(); ++i)
    if (h.coeff(i) != 0) pts.emplace_back(i, val_p(h.coeff(i), p));
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      if ((b.second - a.second) * (pt.first - a.first) >=
          (pt.second - a.second) * (b.first - a.first)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  return hull;
}

}  // namespace detail

/// One-level Ore: Newton polygon plus residual-polynomial factorization.
/// Throws OreIrregular when a residual has a repeated irreducible factor.
inline PadicFactorShape padic_factor_shape(const IntPoly& h, int64_t p) {
  if (!intmath::is_prime(p)) throw std::invalid_argument("padic_factor_shape: p must be prime");
  if (!h.is_monic()) throw std::invalid_argument("padic_factor_shape: h must be monic");
  if (h.coeff(0) == 0) throw std::invalid_argument("padic_factor_shape: zero constant term");
  auto hull = detail::hull_vertices(h, p);
  PadicFactorShape shape;
  shape.p = p;
  for (size_t s = 0; s + 1 < hull.size(); ++s) {
    int64_t i0 = hull[s].first, v0 = hull[s].second;
    int64_t i1 = hull[s + 1].first, v1 = hull[s + 1].second;
    int64_t rise = v0 - v1, width = i1 - i0;
    int64_t g = std::gcd(rise, width);
    if (g == 0) g = width;  // rise == 0
    int64_t u = rise / g, w = width / g;
    Rat lambda{Int(rise), Int(width)};
    // residual polynomial in y, one coefficient per lattice point on the edge
    std::vector<int64_t> rc;
    for (int64_t j = 0; j * w <= width; ++j) {
      Int c = h.coeff(static_cast<int>(i0 + j * w));
      int64_t target = v0 - j * u;
      if (c == 0 || val_p(c, p) > target) {
        rc.push_back(0);
        continue;
      }
      Int reduced = c;
      for (int64_t k = 0; k < target; ++k) reduced /= p;
      Int r = reduced % p;
      if (r < 0) r += p;
      rc.push_back(static_cast<int64_t>(r));
    }
    ModPoly residual = modp::make(p, std::move(rc));
    for (const auto& [factor, mult] : factor_mod_poly(residual)) {
      if (mult > 1)
        throw OreIrregular("padic_factor_shape: repeated residual factor " + factor.str("y") +
                           " at p = " + std::to_string(p));
      shape.entries.emplace_back(static_cast<int>(factor.degree() * w), lambda);
    }
  }
  // conservation laws
  int total = 0;
  Rat mass(Int(0));
  for (const auto& [d, lam] : shape.entries) {
    total += d;
    mass += Rat(Int(d)) * lam;
  }
  if (total != h.degree() || mass != Rat(val_p(h.coeff(0), p)))
    throw std::logic_error("padic_factor_shape: conservation law violated");
  return shape;
}

// ---------------------------------------------------------------------------
// Irreducibility over Q (big-prime Zassenhaus, degree <= 8)
// ---------------------------------------------------------------------------

namespace detail {

inline Int isqrt_ceil(const Int& n) {
  if (n <= 1) return n;
  Int x = 1;
  while (x * x < n) x <<= 1;
  Int lo = x >> 1, hi = x;
  while (lo + 1 < hi) {
    Int mid = (lo + hi) / 2;
    if (mid * mid < n)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

/// Any factor of monic h has coefficients bounded by 2^deg * |h|_2 (Mignotte).
inline Int factor_coeff_bound(const IntPoly& h) {
  Int norm2 = 0;
  for (const Int& c : h.c) norm2 += c * c;
  Int b = isqrt_ceil(norm2) + 1;
  for (int i = 0; i < h.degree(); ++i) b *= 2;
  return b;
}

inline int64_t next_prime_at_least(int64_t n) {
  if (n <= 2) return 2;
  if (n % 2 == 0) ++n;
  while (!intmath::is_prime(n)) n += 2;
  return n;
}

}  // namespace detail

/// Factorization of a monic squarefree h over Q into monic integer factors,
/// by factoring modulo one prime exceeding twice the coefficient bound and
/// recombining. Intended for degree <= 8.
inline std::vector<IntPoly> factor_over_q(const IntPoly& h) {
  if (!h.is_monic()) throw std::invalid_argument("factor_over_q: h must be monic");
  if (h.degree() > 8) throw std::invalid_argument("factor_over_q: degree > 8 unsupported");
  if (h.degree() <= 1) return {h};
  {
    RatPoly g = rp_gcd(rp_from(h), rp_derivative(rp_from(h)));
    if (g.size() > 1) {
      IntPoly sf = squarefree_part_over_q(h);
      std::vector<IntPoly> out;
      IntPoly rest = h;
      for (const IntPoly& f : factor_over_q(sf))
        while (divides(f, rest)) {
          out.push_back(f);
          rest = div_exact(rest, f);
        }
      return out;
    }
  }
  Int bound = 2 * detail::factor_coeff_bound(h) + 1;
  if (bound > Int(int64_t(1) << 62))
    throw std::invalid_argument("factor_over_q: coefficient bound too large");
  int64_t p = detail::next_prime_at_least(static_cast<int64_t>(bound));
  // h stays squarefree mod p for all but finitely many p
  while (true) {
    ModPoly f = reduce_mod_p(h, p);
    if (modp::gcd(f, modp::derivative(f)).degree() == 0) break;
    p = detail::next_prime_at_least(p + 1);
  }
  auto modular = factor_mod_p(h, p);
  std::vector<ModPoly> parts;
  for (const auto& [f, mult] : modular) parts.push_back(f);
  int k = static_cast<int>(parts.size());
  std::vector<IntPoly> out;
  IntPoly rest = h;
  std::vector<bool> used(k, false);
  auto lift = [&](const ModPoly& f) {
    std::vector<Int> c;
    for (int64_t x : f.c) c.emplace_back(x > p / 2 ? Int(x - p) : Int(x));
    return IntPoly(std::move(c));
  };
  // smallest subsets first, so emitted factors are irreducible
  for (int size = 1; size <= k; ++size) {
    for (uint32_t mask = 0; mask < (1u << k); ++mask) {
      if (__builtin_popcount(mask) != size) continue;
      bool clash = false;
      for (int i = 0; i < k; ++i)
        if ((mask >> i & 1) && used[i]) clash = true;
      if (clash) continue;
      ModPoly prod{p, {1}};
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1) prod = modp::mul(prod, parts[i]);
      IntPoly cand = lift(prod);
      if (divides(cand, rest)) {
        out.push_back(cand);
        rest = div_exact(rest, cand);
        for (int i = 0; i < k; ++i)
          if (mask >> i & 1) used[i] = true;
      }
    }
  }
  if (rest.degree() != 0) throw std::logic_error("factor_over_q: recombination incomplete");
  std::sort(out.begin(), out.end(), [](const IntPoly& a, const IntPoly& b) {
    return a.degree() != b.degree() ? a.degree() < b.degree() : a.c < b.c;
  });
  return out;
}

inline bool irreducible_over_q(const IntPoly& h) {
  if (h.degree() < 1) return false;
  if (h.degree() == 1) return true;
  return factor_over_q(h).size() == 1;
}

}  // namespace fourfolds::polyring
