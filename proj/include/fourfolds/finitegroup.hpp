#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fourfolds/common.hpp"
#include "fourfolds/intmath.hpp"

namespace fourfolds::finitegroup {

using std::int64_t;

constexpr int64_t kOrderBound = 256;

/// A finite group as an explicit multiplication table; element 0 is the identity.
struct FiniteGroupTable {
  int64_t order = 1;
  std::vector<std::vector<int>> mul;
  // normal-form labels (a-exponent, b-exponent) when built from G_{m,r}
  std::vector<std::pair<int, int>> labels;

  int times(int x, int y) const { return mul[x][y]; }
  int inverse(int x) const {
    for (int y = 0; y < order; ++y)
      if (mul[x][y] == 0) return y;
    throw std::logic_error("inverse: no inverse found");
  }
  int power(int x, int64_t k) const {
    int acc = 0;
    for (int64_t i = 0; i < k; ++i) acc = mul[acc][x];
    return acc;
  }
  int element_order(int x) const {
    int acc = x, k = 1;
    while (acc != 0) {
      acc = mul[acc][x];
      ++k;
    }
    return k;
  }
};

struct SubgroupRecord {
  std::vector<int> elements;  // sorted
  int64_t order = 0;
  bool normal = false;   // in the ambient group
  bool abelian = false;
  bool cyclic = false;
};

struct JordanReport {
  int64_t J = 1;
  std::vector<int> witness_subgroup;        // H* realizing the max
  std::vector<int> witness_normal_abelian;  // its minimal-index normal abelian A*
};

/// G_{m,r} = <a, b | a^m = 1, b^n = a^t, b a b^-1 = a^r> with n = ord(r mod m),
/// s = gcd(r-1, m), t = m/s. forced_n overrides n for the degenerate m <= 2
/// presentations (only r = 1 there, where any n with r^n = 1 is consistent).
inline FiniteGroupTable build_gmr(int64_t m, int64_t r, int64_t forced_n = 0) {
  if (m < 1) throw std::invalid_argument("build_gmr: m must be positive");
  r %= m;
  if (r < 0) r += m;
  if (m == 1) {
    if (forced_n > 1) return build_gmr(forced_n, 1);  // <b | b^n = 1>
    FiniteGroupTable g;
    g.mul = {{0}};
    g.labels = {{0, 0}};
    return g;
  }
  if (std::gcd(r, m) != 1) throw std::invalid_argument("build_gmr: gcd(m, r) != 1");
  int64_t n = forced_n > 0 ? forced_n : intmath::mult_order(r, m);
  if (intmath::pow_mod(r, n, m) != 1 % m)
    throw std::invalid_argument("build_gmr: r^n != 1 (mod m)");
  int64_t s = std::gcd(r - 1, m);
  if (r == 1) s = m;
  int64_t t = m / s;
  int64_t order = m * n;
  if (order > kOrderBound) throw OrderBoundExceeded("build_gmr: order exceeds bound");
  std::vector<int64_t> rpow(n, 1);
  for (int64_t j = 1; j < n; ++j) rpow[j] = (rpow[j - 1] * r) % m;
  FiniteGroupTable g;
  g.order = order;
  g.mul.assign(order, std::vector<int>(order, 0));
  g.labels.resize(order);
  auto idx = [&](int64_t i, int64_t j) { return static_cast<int>(i * n + j); };
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) g.labels[idx(i, j)] = {static_cast<int>(i),
                                                           static_cast<int>(j)};
  for (int64_t i1 = 0; i1 < m; ++i1)
    for (int64_t j1 = 0; j1 < n; ++j1)
      for (int64_t i2 = 0; i2 < m; ++i2)
        for (int64_t j2 = 0; j2 < n; ++j2) {
          // (a^i1 b^j1)(a^i2 b^j2) = a^{i1 + i2 r^{j1}} b^{j1+j2}, b^n = a^t
          int64_t i = (i1 + i2 * rpow[j1]) % m;
          int64_t j = j1 + j2;
          if (j >= n) {
            j -= n;
            i = (i + t) % m;
          }
          g.mul[idx(i1, j1)][idx(i2, j2)] = idx(i, j);
        }
  return g;
}

inline FiniteGroupTable cyclic_group(int64_t n) { return build_gmr(n, 1); }

namespace detail {

inline std::vector<int> closure(const FiniteGroupTable& G, std::vector<int> gens) {
  std::set<int> seen{0};
  std::vector<int> frontier{0};
  for (int g : gens)
    if (seen.insert(g).second) frontier.push_back(g);
  while (!frontier.empty()) {
    int x = frontier.back();
    frontier.pop_back();
    for (int g : gens) {
      for (int z : {G.times(x, g), G.times(g, x)})
        if (seen.insert(z).second) frontier.push_back(z);
    }
  }
  return std::vector<int>(seen.begin(), seen.end());
}

inline bool set_contains(const std::vector<int>& sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace detail

inline bool is_abelian_subset(const FiniteGroupTable& G, const std::vector<int>& S) {
  for (int x : S)
    for (int y : S)
      if (G.times(x, y) != G.times(y, x)) return false;
  return true;
}

inline bool is_cyclic_subset(const FiniteGroupTable& G, const std::vector<int>& S) {
  for (int x : S)
    if (G.element_order(x) == static_cast<int>(S.size())) return true;
  return S.size() == 1;
}

/// Is sorted subset S normal under conjugation by the sorted subset N?
inline bool is_normal_under(const FiniteGroupTable& G, const std::vector<int>& S,
                            const std::vector<int>& N) {
  for (int g : N) {
    int gi = G.inverse(g);
    for (int x : S)
      if (!detail::set_contains(S, G.times(G.times(g, x), gi))) return false;
  }
  return true;
}

inline bool is_abelian_group(const FiniteGroupTable& G) {
  std::vector<int> all(G.order);
  std::iota(all.begin(), all.end(), 0);
  return is_abelian_subset(G, all);
}

/// Every subgroup, via closures of all generating sets of size <= 2
/// (complete for metacyclic groups, whose subgroups are all 2-generated).
inline std::vector<SubgroupRecord> subgroups(const FiniteGroupTable& G) {
  if (G.order > kOrderBound) throw OrderBoundExceeded("subgroups: order exceeds bound");
  std::set<std::vector<int>> sets;
  sets.insert({0});
  for (int x = 0; x < G.order; ++x) {
    sets.insert(detail::closure(G, {x}));
    for (int y = x + 1; y < G.order; ++y) sets.insert(detail::closure(G, {x, y}));
  }
  std::vector<int> all(G.order);
  std::iota(all.begin(), all.end(), 0);
  std::vector<SubgroupRecord> out;
  for (const auto& S : sets) {
    SubgroupRecord rec;
    rec.elements = S;
    rec.order = static_cast<int64_t>(S.size());
    rec.normal = is_normal_under(G, S, all);
    rec.abelian = is_abelian_subset(G, S);
    rec.cyclic = is_cyclic_subset(G, S);
    out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(), [](const SubgroupRecord& a, const SubgroupRecord& b) {
    return a.order != b.order ? a.order < b.order : a.elements < b.elements;
  });
  return out;
}

/// Min over normal abelian subgroups A of G of [G : A].
inline int64_t min_normal_abelian_index(const FiniteGroupTable& G) {
  int64_t best = G.order;  // trivial subgroup always qualifies
  for (const SubgroupRecord& A : subgroups(G))
    if (A.normal && A.abelian) best = std::min(best, G.order / A.order);
  return best;
}

/// J_G = max over subgroups H of the minimal index of a normal abelian
/// subgroup of H.
inline JordanReport jordan_constant(const FiniteGroupTable& G) {
  std::vector<SubgroupRecord> subs = subgroups(G);
  JordanReport rep;
  for (const SubgroupRecord& H : subs) {
    int64_t best = H.order;
    std::vector<int> bestA{0};
    for (const SubgroupRecord& A : subs) {
      if (A.order > H.order || !A.abelian) continue;
      if (!std::includes(H.elements.begin(), H.elements.end(), A.elements.begin(),
                         A.elements.end()))
        continue;
      if (!is_normal_under(G, A.elements, H.elements)) continue;
      if (H.order / A.order < best) {
        best = H.order / A.order;
        bestA = A.elements;
      }
    }
    if (best > rep.J) {
      rep.J = best;
      rep.witness_subgroup = H.elements;
      rep.witness_normal_abelian = bestA;
    }
  }
  if (rep.witness_subgroup.empty()) {
    rep.witness_subgroup = subs.back().elements;
    rep.witness_normal_abelian = subs.back().elements;
  }
  return rep;
}

/// All Sylow subgroups cyclic?
inline bool is_z_group(const FiniteGroupTable& G) {
  std::vector<SubgroupRecord> subs = subgroups(G);
  for (const auto& [p, e] : intmath::factorize(G.order).factors) {
    int64_t pk = 1;
    for (int i = 0; i < e; ++i) pk *= p;
    bool found_cyclic = false, found_any = false;
    for (const SubgroupRecord& S : subs)
      if (S.order == pk) {
        found_any = true;
        if (S.cyclic) found_cyclic = true;
      }
    if (!found_any) throw std::logic_error("is_z_group: missing Sylow subgroup");
    // Sylow subgroups are conjugate, so cyclic for one iff cyclic for all
    if (!found_cyclic) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Identification against the catalog of named groups
// ---------------------------------------------------------------------------

struct NamedPresentation {
  std::string name;
  int64_t m, r, forced_n;  // forced_n = 0: derive n from (m, r)
};

/// The non-cyclic named groups: Q8, the dicyclic series, and the three
/// semidirect products.
inline const std::vector<NamedPresentation>& named_noncyclic() {
  static const std::vector<NamedPresentation> table = {
      {"Q8", 4, 3, 0},      {"Dic12", 6, 5, 0},   {"Dic16", 8, 7, 0},
      {"Dic20", 10, 9, 0},  {"Dic24", 12, 11, 0}, {"Dic32", 16, 15, 0},
      {"Dic40", 20, 19, 0}, {"Dic48", 24, 23, 0}, {"Dic60", 30, 29, 0},
      {"C5xC8", 20, 9, 0},  {"C3xC16", 24, 17, 0}, {"C5xC16", 20, 13, 0},
  };
  return table;
}

namespace detail {

/// Does T contain elements x, y satisfying the G_{m,r} relations and
/// generating T? Relations plus full generation pin the isomorphism type.
inline bool matches_presentation(const FiniteGroupTable& T, int64_t m, int64_t r, int64_t n,
                                 int64_t t) {
  if (T.order != m * n) return false;
  std::vector<int> order_m;
  for (int x = 0; x < T.order; ++x)
    if (T.element_order(x) == m) order_m.push_back(x);
  for (int x : order_m) {
    int xr = T.power(x, r);
    int xt = T.power(x, t);
    for (int y = 0; y < T.order; ++y) {
      if (T.times(T.times(y, x), T.inverse(y)) != xr) continue;
      if (T.power(y, n) != xt) continue;
      if (static_cast<int64_t>(closure(T, {x, y}).size()) == T.order) return true;
    }
  }
  return false;
}

}  // namespace detail

/// Canonical name: C_n for cyclic tables, a named non-cyclic group, or UNKNOWN.
inline std::string identify(const FiniteGroupTable& G) {
  if (G.order > kOrderBound) throw OrderBoundExceeded("identify: order exceeds bound");
  std::vector<int> all(G.order);
  std::iota(all.begin(), all.end(), 0);
  if (is_abelian_subset(G, all)) {
    if (is_cyclic_subset(G, all)) return "C" + std::to_string(G.order);
    return "UNKNOWN";
  }
  for (const NamedPresentation& np : named_noncyclic()) {
    int64_t n = np.forced_n > 0 ? np.forced_n : intmath::mult_order(np.r, np.m);
    int64_t s = np.r == 1 ? np.m : std::gcd(np.r - 1, np.m);
    int64_t t = np.m / s;
    if (detail::matches_presentation(G, np.m, np.r, n, t)) return np.name;
  }
  return "UNKNOWN";
}

/// The subgroup on the given (closed) element set as a group in its own right.
inline FiniteGroupTable subgroup_table(const FiniteGroupTable& G, const std::vector<int>& S) {
  std::vector<int> elems = S;
  std::sort(elems.begin(), elems.end());
  if (elems.empty() || elems[0] != 0)
    throw std::invalid_argument("subgroup_table: subset must contain the identity");
  std::vector<int> pos(G.order, -1);
  for (size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
  FiniteGroupTable H;
  H.order = static_cast<int64_t>(elems.size());
  H.mul.assign(H.order, std::vector<int>(H.order, 0));
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = 0; j < elems.size(); ++j) {
      int z = G.times(elems[i], elems[j]);
      if (pos[z] < 0) throw std::invalid_argument("subgroup_table: subset not closed");
      H.mul[i][j] = pos[z];
    }
  return H;
}

/// Relabel a table by a permutation with perm[0] = 0 (test support and
/// identification invariance checks).
inline FiniteGroupTable relabel(const FiniteGroupTable& G, const std::vector<int>& perm) {
  if (perm[0] != 0) throw std::invalid_argument("relabel: identity must stay fixed");
  FiniteGroupTable H;
  H.order = G.order;
  H.mul.assign(G.order, std::vector<int>(G.order, 0));
  for (int x = 0; x < G.order; ++x)
    for (int y = 0; y < G.order; ++y) H.mul[perm[x]][perm[y]] = perm[G.mul[x][y]];
  return H;
}

}  // namespace fourfolds::finitegroup
