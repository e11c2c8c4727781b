#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourfolds/abelianfield.hpp"
#include "fourfolds/common.hpp"
#include "fourfolds/polyring.hpp"
#include "fourfolds/weil.hpp"

namespace fourfolds::endalg {

using std::int64_t;
using abelianfield::AbelianFieldModel;
using weil::WeilCandidate;

struct PlaceInvariant {
  enum class Kind { Finite, Real, OtherPlaces };
  Kind kind = Kind::OtherPlaces;
  int64_t p = 0;   // prime, for finite places
  int index = 0;   // which place over p / which real embedding
  Rat value{Int(0)};

  bool operator==(const PlaceInvariant&) const = default;
};

enum class FourfoldKind {
  CM_OCTIC,
  QUATERNION_OVER_QUARTIC_CM,
  DEGREE4_OVER_IMAGINARY_QUADRATIC,
  OTHER,
};

inline std::string kind_name(FourfoldKind k) {
  switch (k) {
    case FourfoldKind::CM_OCTIC: return "CM_OCTIC";
    case FourfoldKind::QUATERNION_OVER_QUARTIC_CM: return "QUATERNION_OVER_QUARTIC_CM";
    case FourfoldKind::DEGREE4_OVER_IMAGINARY_QUADRATIC:
      return "DEGREE4_OVER_IMAGINARY_QUADRATIC";
    case FourfoldKind::OTHER: return "OTHER";
  }
  return "OTHER";
}

struct EndAlgebraShape {
  int64_t e = 0;  // [K : Q]
  std::vector<PlaceInvariant> invariants;
  int64_t d = 1;  // division degree
  int64_t g = 0;  // abelian variety dimension
  FourfoldKind kind = FourfoldKind::OTHER;
  std::optional<int64_t> e0_discriminant;  // squarefree d0 with K0 = Q(sqrt(d0)), quartic case
};

/// inv_nu at every place over p (via the p-adic factor shape of h) and every
/// real place; other places carry 0 and get one collapsed tag.
inline std::vector<PlaceInvariant> local_invariants(const WeilCandidate& w) {
  std::vector<PlaceInvariant> out;
  auto push_finite = [&](int idx, int local_degree, const Rat& lambda) {
    Rat inv = mod_one(lambda * Rat(Int(local_degree), Int(w.a)));
    out.push_back({PlaceInvariant::Kind::Finite, w.p, idx, inv});
  };
  try {
    polyring::PadicFactorShape shape = polyring::padic_factor_shape(w.h, w.p);
    int idx = 0;
    for (const auto& [di, lam] : shape.entries) push_finite(idx++, di, lam);
  } catch (const OreIrregular&) {
    // One-level data is inconclusive; fall back to the declared abelian center
    // for cyclotomic scalings pi = c zeta_n, where every root has valuation
    // v_p(c) and the places over p come from splitting in the declared field.
    if (!w.scaling || !w.center || w.center->degree() != w.h.degree()) throw;
    int64_t c = w.scaling->first;
    Rat lambda(Int(polyring::val_p(Int(c), w.p)));
    abelianfield::SplittingData s = abelianfield::splitting_efg(*w.center, w.p);
    for (int idx = 0; idx < s.g; ++idx) push_finite(idx, static_cast<int>(s.e * s.f), lambda);
  }
  int real_roots = polyring::sturm_count(w.h, std::nullopt, std::nullopt);
  for (int i = 0; i < real_roots; ++i)
    out.push_back({PlaceInvariant::Kind::Real, 0, i, Rat(Int(1), Int(2))});
  out.push_back({PlaceInvariant::Kind::OtherPlaces, 0, 0, Rat(Int(0))});
  return out;
}

/// Least common denominator of the invariants.
inline int64_t division_degree(const std::vector<PlaceInvariant>& invs) {
  if (invs.empty()) throw std::invalid_argument("division_degree: empty invariant list");
  Int l = 1;
  for (const PlaceInvariant& pi : invs) l = boost::integer::lcm(l, pi.value.denominator());
  return static_cast<int64_t>(l);
}

inline int64_t abelian_dimension(int64_t e, int64_t d) {
  if ((e * d) % 2 != 0) throw std::invalid_argument("abelian_dimension: e*d must be even");
  return e * d / 2;
}

enum class AlbertType { I, II, III, IV };
enum class Characteristic { ZERO, POSITIVE };

/// Divisibility restriction from the table of admissible endomorphism algebras.
inline bool albert_allowed(AlbertType type, int64_t e0, int64_t e, int64_t d, int64_t g,
                           Characteristic ch) {
  switch (type) {
    case AlbertType::I:
      if (e != e0 || d != 1) throw std::invalid_argument("albert_allowed: type I needs e=e0, d=1");
      return g % e == 0;
    case AlbertType::II:
      if (e != e0 || d != 2) throw std::invalid_argument("albert_allowed: type II needs e=e0, d=2");
      return g % (2 * e) == 0;
    case AlbertType::III:
      if (e != e0 || d != 2)
        throw std::invalid_argument("albert_allowed: type III needs e=e0, d=2");
      return ch == Characteristic::ZERO ? g % (2 * e) == 0 : g % e == 0;
    case AlbertType::IV:
      if (e != 2 * e0) throw std::invalid_argument("albert_allowed: type IV needs e=2*e0");
      return ch == Characteristic::ZERO ? g % (e0 * d * d) == 0 : g % (e0 * d) == 0;
  }
  return false;
}

/// The fourfold trichotomy: (e, d) in {(8,1), (4,2), (2,4)} with g = 4.
inline EndAlgebraShape classify_fourfold(const WeilCandidate& w) {
  EndAlgebraShape shape;
  shape.e = w.h.degree();
  shape.invariants = local_invariants(w);
  shape.d = division_degree(shape.invariants);
  if ((shape.e * shape.d) % 2 != 0)
    throw NotAFourfold("classify_fourfold: e*d odd");
  shape.g = abelian_dimension(shape.e, shape.d);
  if (shape.g != 4) {
    std::ostringstream os;
    os << "classify_fourfold: e*d = " << shape.e * shape.d << " gives g = " << shape.g
       << ", not 4";
    throw NotAFourfold(os.str());
  }
  bool totally_imaginary = polyring::sturm_count(w.h, std::nullopt, std::nullopt) == 0;
  if (shape.e == 8 && shape.d == 1 && totally_imaginary) {
    shape.kind = FourfoldKind::CM_OCTIC;
  } else if (shape.e == 4 && shape.d == 2 && totally_imaginary) {
    shape.kind = FourfoldKind::QUATERNION_OVER_QUARTIC_CM;
    shape.e0_discriminant = weil::real_quadratic_subfield(w.h, w.q);
  } else if (shape.e == 2 && shape.d == 4 && totally_imaginary) {
    shape.kind = FourfoldKind::DEGREE4_OVER_IMAGINARY_QUADRATIC;
  } else {
    shape.kind = FourfoldKind::OTHER;
  }
  return shape;
}

/// Invariants of D_{ell,infinity} tensor K: local degree times 1/2 at each
/// place of K over ell, 1/2 at each real place, 0 elsewhere.
inline std::vector<PlaceInvariant> quaternion_base_change_invariants(int64_t ell,
                                                                    const AbelianFieldModel& K) {
  std::vector<PlaceInvariant> out;
  abelianfield::SplittingData s = abelianfield::splitting_efg(K, ell);
  for (int idx = 0; idx < s.g; ++idx) {
    Rat inv = mod_one(Rat(Int(s.e * s.f), Int(2)));
    out.push_back({PlaceInvariant::Kind::Finite, ell, idx, inv});
  }
  auto [r1, r2] = abelianfield::signature(K);
  for (int i = 0; i < r1; ++i)
    out.push_back({PlaceInvariant::Kind::Real, 0, i, Rat(Int(1), Int(2))});
  out.push_back({PlaceInvariant::Kind::OtherPlaces, 0, 0, Rat(Int(0))});
  return out;
}

inline bool is_division(const std::vector<PlaceInvariant>& invs) {
  for (const PlaceInvariant& pi : invs)
    if (pi.value != Rat(Int(0))) return true;
  return false;
}

struct AdmissibilityVerdict {
  bool admissible = false;
  bool necessary_only = false;  // true when K(zeta_m) is a proper subfield of a
                                // maximal subfield; a pass is then only a
                                // necessary-conditions pass
  std::string reason;
};

/// Can C_m sit inside D^x, for D of degree `deg` over center K with the given
/// finite ramification? Necessary field-theoretic conditions: K(zeta_m) must
/// embed in D, which needs [K(zeta_m):K] | deg and, at every ramified prime,
/// the local index of D tensor K(zeta_m) to divide deg / [K(zeta_m):K].
inline AdmissibilityVerdict cyclic_subgroup_admissible(
    int64_t m, const AbelianFieldModel& K, int64_t deg,
    const std::vector<std::pair<int64_t, int64_t>>& ram) {
  AdmissibilityVerdict v;
  int64_t t = abelianfield::adjoin_zeta_degree(K, m);
  if (deg % t != 0) {
    std::ostringstream os;
    os << "[K(zeta_" << m << "):K] = " << t << " does not divide deg = " << deg;
    v.reason = os.str();
    return v;
  }
  AbelianFieldModel L = abelianfield::compositum(K, abelianfield::cyclotomic_field(m));
  int64_t cap = deg / t;
  for (const auto& [p, idx] : ram) {
    int64_t rel = abelianfield::relative_local_degree(L, K, p);
    int64_t local_idx = idx / std::gcd(idx, rel);
    if (cap % local_idx != 0) {
      std::ostringstream os;
      os << "at p = " << p << ": residual local index " << local_idx
         << " does not divide deg/[K(zeta_" << m << "):K] = " << cap;
      v.reason = os.str();
      return v;
    }
  }
  v.admissible = true;
  v.necessary_only = t < deg;
  std::ostringstream os;
  os << "[K(zeta_" << m << "):K] = " << t << " divides deg = " << deg
     << "; all ramified local indices clear";
  if (v.necessary_only) os << " (necessary conditions only)";
  v.reason = os.str();
  return v;
}

}  // namespace fourfolds::endalg
