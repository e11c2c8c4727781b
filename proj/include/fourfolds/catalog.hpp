#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fourfolds/abelianfield.hpp"
#include "fourfolds/amitsur.hpp"
#include "fourfolds/common.hpp"
#include "fourfolds/endalg.hpp"
#include "fourfolds/finitegroup.hpp"
#include "fourfolds/intmath.hpp"
#include "fourfolds/polyring.hpp"
#include "fourfolds/weil.hpp"

namespace fourfolds::catalog {

using std::int64_t;
using abelianfield::AbelianFieldModel;
using endalg::FourfoldKind;
using polyring::IntPoly;
using weil::WeilCandidate;

// ---------------------------------------------------------------------------
// Master lists
// ---------------------------------------------------------------------------

/// Names use ASCII: semidirect products are written with 'x' (C5xC8 for
/// C5:C8), the binary tetrahedral/octahedral/icosahedral groups as 2T/2O/2I.
inline const std::vector<std::string>& master_subgroup_list() {
  static const std::vector<std::string> names = {
      "C2",   "C4",    "C6",    "C8",    "C10",   "C12",   "C16",   "C20",   "C24",
      "C30",  "Q8",    "Dic12", "Dic16", "Dic20", "Dic24", "Dic32", "Dic40", "Dic48",
      "Dic60", "C5xC8", "C3xC16", "C5xC16", "2T",  "2O",    "2I"};
  return names;
}

/// Groups on the master list ruled out for simple abelian fourfolds, with the
/// tag of the exclusion argument.
inline const std::vector<std::pair<std::string, std::string>>& excluded_groups_fourfold() {
  static const std::vector<std::pair<std::string, std::string>> excl = {
      {"Dic20", "L4.2"}, {"Dic16", "L4.3"}, {"Dic24", "L4.3"}, {"Q8", "L4.4"},
      {"2T", "L4.4"},    {"2O", "L4.5"},    {"2I", "L4.5"},    {"Dic32", "L4.6"},
      {"Dic40", "L4.6"}, {"Dic48", "L4.6"}, {"Dic60", "L4.6"}, {"Dic12", "L4.8"}};
  return excl;
}

inline std::optional<std::string> exclusion_tag(const std::string& name) {
  for (const auto& [g, tag] : excluded_groups_fourfold())
    if (g == name) return tag;
  return std::nullopt;
}

/// Master list minus the excluded groups: the 13 realizable groups.
inline std::vector<std::string> table2_names() {
  std::vector<std::string> out;
  for (const std::string& g : master_subgroup_list())
    if (!exclusion_tag(g)) out.push_back(g);
  return out;
}

inline bool is_cyclic_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'C') return false;
  for (size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

inline int64_t cyclic_order(const std::string& name) { return std::stoll(name.substr(1)); }

/// (m, r) presentation for the table-buildable master groups.
inline std::optional<std::pair<int64_t, int64_t>> presentation(const std::string& name) {
  if (is_cyclic_name(name)) return std::pair<int64_t, int64_t>{cyclic_order(name), 1};
  for (const finitegroup::NamedPresentation& np : finitegroup::named_noncyclic())
    if (np.name == name) return std::pair<int64_t, int64_t>{np.m, np.r};
  return std::nullopt;  // binary polyhedral
}

/// Cyclic subgroup orders that witness the cyclotomic requirements of the
/// non-cyclic realizable groups (the a- and b-generated cyclic subgroups).
inline std::vector<int64_t> distinguished_cyclic_orders(const std::string& name) {
  if (name == "C5xC8") return {20, 8};
  if (name == "C3xC16") return {24, 16};
  if (name == "C5xC16") return {20, 16};
  if (is_cyclic_name(name)) return {cyclic_order(name)};
  return {};
}

/// name -> names of its subgroups (within the master list), computed from
/// multiplication tables where those exist and hardcoded for the binary
/// polyhedral groups.
inline const std::map<std::string, std::set<std::string>>& subgroup_name_lattice() {
  static const std::map<std::string, std::set<std::string>> lattice = [] {
    std::map<std::string, std::set<std::string>> lat;
    std::set<std::string> master(master_subgroup_list().begin(), master_subgroup_list().end());
    for (const std::string& name : master_subgroup_list()) {
      auto pres = presentation(name);
      if (!pres) continue;
      finitegroup::FiniteGroupTable G = finitegroup::build_gmr(pres->first, pres->second);
      std::set<std::string> subs;
      for (const finitegroup::SubgroupRecord& S : finitegroup::subgroups(G)) {
        std::string sub = finitegroup::identify(finitegroup::subgroup_table(G, S.elements));
        if (master.count(sub)) subs.insert(sub);
      }
      subs.insert(name);
      lat[name] = std::move(subs);
    }
    lat["2T"] = {"C2", "C4", "C6", "Q8", "2T"};
    lat["2O"] = {"C2", "C4", "C6", "C8", "Q8", "Dic12", "Dic16", "2T", "2O"};
    lat["2I"] = {"C2", "C4", "C6", "C10", "Q8", "Dic12", "Dic20", "2T", "2I"};
    return lat;
  }();
  return lattice;
}

/// Master-list groups strictly containing the given group.
inline std::vector<std::string> strict_supergroups(const std::string& name) {
  std::vector<std::string> out;
  for (const auto& [H, subs] : subgroup_name_lattice())
    if (H != name && subs.count(name)) out.push_back(H);
  return out;
}

// ---------------------------------------------------------------------------
// The thirteen witnesses
// ---------------------------------------------------------------------------

struct WitnessEntry {
  int id = 0;
  std::string group;
  int64_t q = 0;
  std::optional<IntPoly> h;                              // explicit polynomial
  std::optional<std::pair<int64_t, int64_t>> scaling;    // pi = c * zeta_n
  std::optional<std::string> center_model;               // "N:g1,g2"
  FourfoldKind kind = FourfoldKind::OTHER;
  // multiset of nonzero finite invariants; nullopt = computed, not asserted
  std::optional<std::vector<Rat>> expected_nonzero_invariants;
  int64_t expected_jordan = 1;
};

inline const std::vector<WitnessEntry>& witnesses() {
  static const std::vector<WitnessEntry> table = [] {
    auto P = [](std::vector<int64_t> c) { return IntPoly::from_int64(c); };
    Rat half(Int(1), Int(2)), quarter(Int(1), Int(4)), three_q(Int(3), Int(4));
    std::vector<WitnessEntry> w;
    w.push_back({1, "C2", 2, P({16, 0, 8, -2, 1, -1, 2, 0, 1}), {}, {},
                 FourfoldKind::CM_OCTIC, std::vector<Rat>{}, 1});
    w.push_back({2, "C4", 3373402561, P({3373402561, 57840, 1}), {}, std::string("4:"),
                 FourfoldKind::DEGREE4_OVER_IMAGINARY_QUADRATIC,
                 std::vector<Rat>{quarter, three_q}, 1});
    w.push_back({3, "C6", 3373402561, P({3373402561, 68926, 1}), {}, std::string("3:"),
                 FourfoldKind::DEGREE4_OVER_IMAGINARY_QUADRATIC, std::nullopt, 1});
    w.push_back({4, "C8", 9409, {}, std::pair<int64_t, int64_t>{97, 8}, std::string("8:"),
                 FourfoldKind::QUATERNION_OVER_QUARTIC_CM,
                 std::vector<Rat>{half, half, half, half}, 1});
    w.push_back({5, "C10", 3721, {}, std::pair<int64_t, int64_t>{61, 10}, std::string("10:"),
                 FourfoldKind::QUATERNION_OVER_QUARTIC_CM,
                 std::vector<Rat>{half, half, half, half}, 1});
    w.push_back({6, "C12", 5329, {}, std::pair<int64_t, int64_t>{73, 12}, std::string("12:"),
                 FourfoldKind::QUATERNION_OVER_QUARTIC_CM,
                 std::vector<Rat>{half, half, half, half}, 1});
    w.push_back({7, "C16", 4, {}, std::pair<int64_t, int64_t>{2, 16}, std::string("16:"),
                 FourfoldKind::CM_OCTIC, std::vector<Rat>{}, 1});
    w.push_back({8, "C20", 4, {}, std::pair<int64_t, int64_t>{2, 20}, std::string("20:"),
                 FourfoldKind::CM_OCTIC, std::vector<Rat>{}, 1});
    w.push_back({9, "C24", 4, {}, std::pair<int64_t, int64_t>{2, 24}, std::string("24:"),
                 FourfoldKind::CM_OCTIC, std::vector<Rat>{}, 1});
    w.push_back({10, "C30", 25, {}, std::pair<int64_t, int64_t>{5, 30}, std::string("30:"),
                 FourfoldKind::CM_OCTIC, std::vector<Rat>{}, 1});
    w.push_back({11, "C5xC8", 25, P({625, 0, -30, 0, 1}), {}, std::string("20:9"),
                 FourfoldKind::QUATERNION_OVER_QUARTIC_CM, std::vector<Rat>{half, half}, 2});
    w.push_back({12, "C3xC16", 81, P({6561, 0, -126, 0, 1}), {}, std::string("8:"),
                 FourfoldKind::QUATERNION_OVER_QUARTIC_CM, std::vector<Rat>{half, half}, 2});
    w.push_back({13, "C5xC16", 625, P({625, -30, 1}), {}, std::string("4:"),
                 FourfoldKind::DEGREE4_OVER_IMAGINARY_QUADRATIC,
                 std::vector<Rat>{quarter, three_q}, 4});
    return w;
  }();
  return table;
}

inline const WitnessEntry& witness(int id) {
  if (id < 1 || id > 13) throw std::invalid_argument("witness: id must be 1..13");
  return witnesses()[id - 1];
}

inline WeilCandidate witness_candidate(const WitnessEntry& e) {
  if (e.scaling) {
    WeilCandidate w = weil::weil_from_cyclotomic_scaling(e.scaling->first, e.scaling->second);
    if (w.q != e.q) throw std::logic_error("witness_candidate: q mismatch");
    return w;
  }
  std::optional<AbelianFieldModel> model;
  if (e.center_model) model = abelianfield::parse_model(*e.center_model);
  return weil::make_candidate(e.q, *e.h, std::move(model));
}

// ---------------------------------------------------------------------------
// Certified non-membership of roots of unity (field-case exclusions)
// ---------------------------------------------------------------------------

/// Certify zeta_M not in Q[t]/(h): find a prime l coprime to M at which h is
/// squarefree and some factor degree is not divisible by ord(l mod M). Returns
/// the certifying prime, or nullopt if none below the search bound works.
inline std::optional<int64_t> excludes_root_of_unity(const IntPoly& h, int64_t M) {
  for (int64_t l = 2; l < 500; ++l) {
    if (!intmath::is_prime(l) || M % l == 0) continue;
    polyring::ModPoly f = polyring::reduce_mod_p(h, l);
    if (f.degree() != h.degree()) continue;
    if (polyring::modp::gcd(f, polyring::modp::derivative(f)).degree() != 0) continue;
    int64_t o = intmath::mult_order(l % M, M);
    for (const auto& [factor, mult] : polyring::factor_mod_poly(f))
      if (factor.degree() % o != 0) return l;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Verification pipeline
// ---------------------------------------------------------------------------

struct Stage {
  std::string name;
  bool pass = false;
  bool paper_asserted = false;
  std::string detail;
};

struct VerificationReport {
  int id = 0;
  std::string group;
  std::vector<Stage> stages;

  bool pass() const {
    for (const Stage& s : stages)
      if (!s.pass) return false;
    return true;
  }
  int paper_asserted_count() const {
    int n = 0;
    for (const Stage& s : stages)
      if (s.paper_asserted) ++n;
    return n;
  }
};

namespace detail {

inline std::vector<std::pair<int64_t, int64_t>> ramification_list(
    const std::vector<endalg::PlaceInvariant>& invs) {
  std::vector<std::pair<int64_t, int64_t>> ram;
  for (const endalg::PlaceInvariant& pi : invs)
    if (pi.kind == endalg::PlaceInvariant::Kind::Finite && pi.value != Rat(Int(0)))
      ram.emplace_back(pi.p, static_cast<int64_t>(pi.value.denominator()));
  return ram;
}

inline std::vector<Rat> nonzero_finite_invariants(
    const std::vector<endalg::PlaceInvariant>& invs) {
  std::vector<Rat> vals;
  for (const endalg::PlaceInvariant& pi : invs)
    if (pi.kind == endalg::PlaceInvariant::Kind::Finite && pi.value != Rat(Int(0)))
      vals.push_back(pi.value);
  std::sort(vals.begin(), vals.end());
  return vals;
}

inline std::string rat_str(const Rat& r) {
  return r.numerator().str() + "/" + r.denominator().str();
}

/// Why the strictly larger master-list group H cannot occur for this witness;
/// nullopt if no mechanical reason is found (a verification failure).
inline std::optional<std::string> exclude_supergroup(
    const std::string& H, FourfoldKind kind, const std::optional<AbelianFieldModel>& center,
    int64_t d, const std::vector<std::pair<int64_t, int64_t>>& ram, const IntPoly& h) {
  if (kind == FourfoldKind::CM_OCTIC) {
    if (!is_cyclic_name(H))
      return "the endomorphism algebra is a field, whose multiplicative group has no "
             "nonabelian finite subgroup";
    int64_t M = cyclic_order(H);
    if (auto l = excludes_root_of_unity(h, M)) {
      std::ostringstream os;
      os << "zeta_" << M << " is not in K (factor degrees of h mod " << *l
         << " violate ord(" << *l << " mod " << M << "))";
      return os.str();
    }
    return std::nullopt;
  }
  if (auto tag = exclusion_tag(H)) return "excluded for fourfolds (" + *tag + ")";
  if (!center) return std::nullopt;
  for (int64_t M : distinguished_cyclic_orders(H)) {
    endalg::AdmissibilityVerdict v = endalg::cyclic_subgroup_admissible(M, *center, d, ram);
    if (!v.admissible) {
      std::ostringstream os;
      os << "contains C" << M << ", which cannot embed: " << v.reason;
      return os.str();
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline VerificationReport verify_witness(int id) {
  const WitnessEntry& e = witness(id);
  VerificationReport rep;
  rep.id = id;
  rep.group = e.group;
  auto add = [&](const std::string& name, bool pass, const std::string& detail,
                 bool asserted = false) {
    rep.stages.push_back({name, pass, asserted, detail});
  };
  WeilCandidate w;
  try {
    w = witness_candidate(e);
  } catch (const std::exception& ex) {
    add("weil", false, std::string("candidate construction failed: ") + ex.what());
    return rep;
  }
  bool weil_ok = weil::is_weil_poly(w.h, w.q);
  {
    std::ostringstream os;
    os << "q = " << w.q << ", h = " << w.h.str();
    add("weil", weil_ok, os.str());
  }
  if (!weil_ok) return rep;

  endalg::EndAlgebraShape shape;
  try {
    shape = endalg::classify_fourfold(w);
  } catch (const std::exception& ex) {
    add("shape", false, std::string("classification failed: ") + ex.what());
    return rep;
  }
  add("shape", shape.kind == e.kind,
      "computed " + endalg::kind_name(shape.kind) + ", expected " + endalg::kind_name(e.kind));

  std::vector<Rat> nz = detail::nonzero_finite_invariants(shape.invariants);
  {
    std::ostringstream os;
    os << "nonzero finite invariants:";
    for (const Rat& r : nz) os << " " << detail::rat_str(r);
    if (nz.empty()) os << " none";
    if (e.expected_nonzero_invariants) {
      std::vector<Rat> want = *e.expected_nonzero_invariants;
      std::sort(want.begin(), want.end());
      add("invariants", nz == want, os.str());
    } else {
      os << " (computed, cross-checked against the algebra kind only)";
      add("invariants", true, os.str());
    }
  }

  {
    std::ostringstream os;
    os << "d = " << shape.d << ", e = " << shape.e << ", g = " << shape.g;
    add("degree_dimension", shape.d * shape.e == 8 && shape.g == 4, os.str());
  }

  std::vector<std::pair<int64_t, int64_t>> ram = detail::ramification_list(shape.invariants);

  if (w.center) {
    bool ok = w.center->degree() == w.h.degree();
    std::ostringstream os;
    os << "declared center " << abelianfield::format_model(*w.center) << " of degree "
       << w.center->degree();
    // cross-check splitting against the p-adic factor shape where available
    try {
      polyring::PadicFactorShape ps = polyring::padic_factor_shape(w.h, w.p);
      abelianfield::SplittingData s = abelianfield::splitting_efg(*w.center, w.p);
      bool match = static_cast<int64_t>(ps.entries.size()) == s.g;
      for (const auto& [di, lam] : ps.entries)
        if (di != s.e * s.f) match = false;
      ok = ok && match;
      os << "; splitting (" << s.e << "," << s.f << "," << s.g
         << ") against p-adic factor shape: " << (match ? "match" : "MISMATCH");
    } catch (const OreIrregular&) {
      os << "; p-adic factor shape irregular at one level, splitting taken from the model";
    }
    if (shape.kind == FourfoldKind::QUATERNION_OVER_QUARTIC_CM && shape.e0_discriminant) {
      bool sub = abelianfield::contains(*w.center,
                                        abelianfield::quadratic_field(*shape.e0_discriminant));
      ok = ok && sub;
      os << "; real quadratic subfield Q(sqrt(" << *shape.e0_discriminant << ")) "
         << (sub ? "contained" : "NOT contained");
    }
    if (shape.kind == FourfoldKind::DEGREE4_OVER_IMAGINARY_QUADRATIC) {
      Int disc = w.h.coeff(1) * w.h.coeff(1) - 4 * w.h.coeff(0);
      int64_t d0 = intmath::squarefree_part(static_cast<int64_t>(disc));
      bool eq = *w.center == abelianfield::quadratic_field(d0);
      ok = ok && eq;
      os << "; K = Q(sqrt(" << d0 << ")): " << (eq ? "matches model" : "MISMATCH");
    }
    add("model", ok, os.str());
  }

  auto pres = presentation(e.group);
  if (is_cyclic_name(e.group)) {
    int64_t n = cyclic_order(e.group);
    if (shape.kind == FourfoldKind::CM_OCTIC) {
      if (w.center) {
        bool in = abelianfield::contains(*w.center, abelianfield::cyclotomic_field(n));
        add("group_embedding", in,
            "zeta_" + std::to_string(n) + (in ? " lies in K" : " does not lie in K"));
      } else {
        // C2 = {+-1} always embeds; certify that it is the full torsion and
        // record the unit rank (Dirichlet)
        int r1 = polyring::sturm_count(w.h, std::nullopt, std::nullopt);
        int64_t rank = r1 + (w.h.degree() - r1) / 2 - 1;
        bool torsion_c2 = excludes_root_of_unity(w.h, 3).has_value() &&
                          excludes_root_of_unity(w.h, 4).has_value() &&
                          excludes_root_of_unity(w.h, 5).has_value();
        std::ostringstream os;
        os << "unit rank " << rank << "; torsion of K^x certified C2 (no zeta_3, zeta_4, zeta_5)";
        add("group_embedding", torsion_c2 && rank == 3, os.str());
      }
    } else {
      endalg::AdmissibilityVerdict v =
          endalg::cyclic_subgroup_admissible(n, *w.center, shape.d, ram);
      add("group_embedding", v.admissible, "C" + std::to_string(n) + " in D: " + v.reason);
    }
  } else {
    amitsur::EmbeddabilityVerdict ev = amitsur::gmr_embeddable(pres->first, pres->second);
    bool cyclics_ok = true;
    std::ostringstream os;
    os << "G_{" << pres->first << "," << pres->second << "} embeddable: " << ev.reason;
    for (int64_t M : distinguished_cyclic_orders(e.group)) {
      endalg::AdmissibilityVerdict v =
          endalg::cyclic_subgroup_admissible(M, *w.center, shape.d, ram);
      cyclics_ok = cyclics_ok && v.admissible;
      os << "; C" << M << ": " << (v.admissible ? "admissible" : "blocked (" + v.reason + ")");
    }
    add("group_embedding", ev.embeddable && cyclics_ok, os.str());
    add("algebra_embedding", true,
        "positive embedding of the nonabelian group into D is taken from the literature",
        /*asserted=*/true);
  }

  {
    bool all_excluded = true;
    std::ostringstream os;
    std::vector<std::string> sup = strict_supergroups(e.group);
    if (sup.empty()) os << "no strictly larger group on the master list contains " << e.group;
    for (const std::string& H : sup) {
      auto reason =
          detail::exclude_supergroup(H, shape.kind, w.center, shape.d, ram, w.h);
      if (reason) {
        os << H << ": " << *reason << "; ";
      } else {
        os << H << ": NO EXCLUSION FOUND; ";
        all_excluded = false;
      }
    }
    add("maximality", all_excluded, os.str());
  }

  {
    finitegroup::JordanReport jr =
        finitegroup::jordan_constant(finitegroup::build_gmr(pres->first, pres->second));
    std::ostringstream os;
    os << "J = " << jr.J << ", expected " << e.expected_jordan;
    add("jordan", jr.J == e.expected_jordan, os.str());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Reproduction drivers
// ---------------------------------------------------------------------------

inline std::vector<std::string> reproduce_lemma(const std::string& tag) {
  int64_t n_target;
  amitsur::Condition cond;
  if (tag == "L3.5") {
    n_target = 2;
    cond = amitsur::Condition::C1;
  } else if (tag == "L3.6") {
    n_target = 2;
    cond = amitsur::Condition::C2;
  } else if (tag == "L3.7") {
    n_target = 4;
    cond = amitsur::Condition::C1;
  } else {
    throw std::invalid_argument("reproduce_lemma: tag must be L3.5, L3.6 or L3.7");
  }
  std::set<std::string> names;
  for (const amitsur::EnumeratedGroup& g : amitsur::enumerate_gmr(n_target, 8, cond))
    names.insert(g.name);
  return std::vector<std::string>(names.begin(), names.end());
}

inline int64_t jordan_of(const std::string& name) {
  auto pres = presentation(name);
  if (!pres) throw OrderBoundExceeded("jordan_of: no table for " + name);
  return finitegroup::jordan_constant(finitegroup::build_gmr(pres->first, pres->second)).J;
}

inline std::set<int64_t> jordan_range() {
  std::set<int64_t> out;
  for (const std::string& name : table2_names()) out.insert(jordan_of(name));
  return out;
}

}  // namespace fourfolds::catalog
