#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "fourfolds/amitsur.hpp"

using namespace fourfolds;
using namespace fourfolds::amitsur;

TEST_CASE("gmr_params documented values") {
  GmrParams a = gmr_params(20, 9);
  REQUIRE(a.n == 2);
  REQUIRE(a.s == 4);
  REQUIRE(a.t == 5);
  GmrParams b = gmr_params(4, 3);
  REQUIRE(b.n == 2);
  REQUIRE(b.s == 2);
  REQUIRE(b.t == 2);
  for (int64_t m : {2, 7, 12, 30}) {
    GmrParams c = gmr_params(m, 1);
    REQUIRE(c.n == 1);
    REQUIRE(c.s == m);
    REQUIRE(c.t == 1);
  }
}

TEST_CASE("gmr_prime_data") {
  GmrParams g = gmr_params(20, 9);
  GmrPrimeData d5 = gmr_prime_data(g, 5);
  REQUIRE(d5.alpha == 1);
  REQUIRE(d5.n_p == 1);      // 9 = 1 (mod 4)
  REQUIRE(d5.delta_p == 1);  // 5 = 1 (mod 4)
  GmrPrimeData d2 = gmr_prime_data(g, 2);
  REQUIRE(d2.alpha == 2);
  REQUIRE(d2.n_p == 2);  // ord(9 mod 5)
  REQUIRE(d2.delta_p == 4);  // ord(2 mod 5)
}

TEST_CASE("check_conditions") {
  REQUIRE(check_conditions(gmr_params(20, 9)) == Condition::C1);
  REQUIRE(check_conditions(gmr_params(4, 3)) == Condition::C2);
  REQUIRE(check_conditions(gmr_params(12, 7)) == Condition::C2);
  REQUIRE(check_conditions(gmr_params(7, 1)) == Condition::C1);
  REQUIRE(check_conditions(gmr_params(16, 3)) == Condition::NONE);
}

TEST_CASE("gmr_embeddable documented verdicts") {
  EmbeddabilityVerdict v = gmr_embeddable(20, 9);
  REQUIRE(v.embeddable);
  REQUIRE(v.branch == Branch::COND2A);
  REQUIRE(v.witnesses == std::vector<std::pair<int64_t, int64_t>>{{2, 5}});

  REQUIRE_FALSE(gmr_embeddable(12, 7).embeddable);

  EmbeddabilityVerdict d60 = gmr_embeddable(30, 29);
  REQUIRE(d60.embeddable);
  REQUIRE(d60.branch == Branch::COND1);

  REQUIRE(gmr_embeddable(4, 3).embeddable);  // Q8, r = -1 (mod 4)
  REQUIRE(gmr_embeddable(9, 1).embeddable);  // cyclic
}

TEST_CASE("tstar_compatible") {
  REQUIRE(tstar_compatible(1, 1));
  REQUIRE_FALSE(tstar_compatible(5, 1));   // ord(2 mod 5) = 4, even
  REQUIRE_FALSE(tstar_compatible(11, 1));  // ord(2 mod 11) = 10, even
  REQUIRE(tstar_compatible(7, 1));         // ord(2 mod 7) = 3, odd
  REQUIRE_FALSE(tstar_compatible(6, 1));   // gcd with 6
}

TEST_CASE("enumerate_gmr reproduces the three published scans") {
  auto names_of = [](const std::vector<EnumeratedGroup>& gs) {
    std::set<std::string> names;
    for (const auto& g : gs) names.insert(g.name);
    return names;
  };

  auto l35 = enumerate_gmr(2, 8, Condition::C1);
  REQUIRE(names_of(l35) ==
          std::set<std::string>{"C4", "Dic12", "Dic20", "C5xC8", "C3xC16", "Dic60"});

  auto l36 = enumerate_gmr(2, 8, Condition::C2);
  REQUIRE(names_of(l36) ==
          std::set<std::string>{"Q8", "Dic16", "Dic24", "Dic32", "Dic40", "Dic48"});

  auto l37 = enumerate_gmr(4, 8, Condition::C1);
  REQUIRE(names_of(l37) == std::set<std::string>{"C5xC16"});
  REQUIRE(l37.size() == 1);
  REQUIRE(l37[0].m == 20);
  REQUIRE(l37[0].residues == std::vector<int64_t>{13, 17});
}

TEST_CASE("enumeration is stable under reversed scan order") {
  // independent rescan with both loops reversed; must select the same set
  for (auto [n_target, cond] : std::vector<std::pair<int64_t, Condition>>{
           {2, Condition::C1}, {2, Condition::C2}, {4, Condition::C1}}) {
    std::set<std::pair<int64_t, int64_t>> forward;
    for (const auto& g : enumerate_gmr(n_target, 8, cond))
      for (int64_t r : g.residues) forward.insert({g.m, r});

    std::set<std::pair<int64_t, int64_t>> backward;
    for (int64_t m = 2 * 8 * 8; m >= 2; --m) {
      if (8 % intmath::euler_phi(m) != 0) continue;
      for (int64_t r = std::max<int64_t>(m - 1, 1); r >= 1; --r) {
        if (std::gcd(r, m) != 1) continue;
        if (intmath::pow_mod(r, n_target, m) != 1 % m) continue;
        int64_t ord = intmath::mult_order(r, m);
        int64_t forced = 0;
        if (ord != n_target) {
          if (m <= 2 && r == 1) forced = n_target;
          else continue;
        }
        GmrParams g = gmr_params(m, r, forced);
        if (check_conditions(g) != cond) continue;
        if (!gmr_embeddable(g).embeddable) continue;
        backward.insert({m, r});
      }
    }
    REQUIRE(forward == backward);
  }
}

TEST_CASE("enumerated groups really satisfy their claimed order") {
  for (const auto& g : enumerate_gmr(2, 8, Condition::C1))
    for (int64_t r : g.residues) {
      if (g.m <= 2) continue;  // degenerate forced-order entries
      REQUIRE(intmath::mult_order(r, g.m) == 2);
    }
}
