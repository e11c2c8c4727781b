#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "fourfolds/abelianfield.hpp"

using namespace fourfolds;
using namespace fourfolds::abelianfield;

TEST_CASE("make_field reduces to the true conductor") {
  AbelianFieldModel z8 = make_field(8, {});
  REQUIRE(z8.conductor == 8);
  REQUIRE(z8.degree() == 4);
  AbelianFieldModel fixed = make_field(20, {9});
  REQUIRE(fixed.conductor == 20);
  REQUIRE(fixed.degree() == 4);
  AbelianFieldModel q = make_field(8, {3, 5, 7});
  REQUIRE(q.conductor == 1);
  REQUIRE(q.degree() == 1);
  // Q(zeta_30) = Q(zeta_15): conductor of a cyclotomic field is never 2 mod 4
  REQUIRE(cyclotomic_field(30).conductor == 15);
  REQUIRE(cyclotomic_field(30).degree() == 8);
}

TEST_CASE("quadratic fields from fundamental discriminants") {
  REQUIRE(quadratic_field(-1).conductor == 4);
  REQUIRE(quadratic_field(-1).degree() == 2);
  REQUIRE(quadratic_field(5).conductor == 5);
  REQUIRE(quadratic_field(2).conductor == 8);
  REQUIRE(quadratic_field(-3).conductor == 3);
  REQUIRE(quadratic_field(3).conductor == 12);
  for (int64_t d : {-1, 2, -2, 3, -3, 5, -5, 6, 7, -7, 10, 13}) {
    if (intmath::squarefree_part(d) != d) continue;
    REQUIRE(quadratic_field(d).degree() == 2);
  }
}

TEST_CASE("signature and unit rank") {
  REQUIRE(signature(quadratic_field(5)) == std::pair<int64_t, int64_t>{2, 0});
  REQUIRE(signature(make_field(20, {9})) == std::pair<int64_t, int64_t>{0, 2});
  REQUIRE(signature(rationals()) == std::pair<int64_t, int64_t>{1, 0});
  REQUIRE(signature(cyclotomic_field(8)) == std::pair<int64_t, int64_t>{0, 2});
  REQUIRE(unit_rank(cyclotomic_field(16)) == 3);
  REQUIRE(totally_real(quadratic_field(2)));
  REQUIRE_FALSE(totally_real(quadratic_field(-2)));
}

TEST_CASE("splitting battery from the verification pipeline") {
  REQUIRE(splitting_efg(cyclotomic_field(8), 97) == SplittingData{1, 1, 4});
  REQUIRE(splitting_efg(cyclotomic_field(16), 2) == SplittingData{8, 1, 1});
  for (int64_t n : {8, 12, 16, 20, 24}) {
    SplittingData s = splitting_efg(cyclotomic_field(n), 241);
    INFO("241 in Q(zeta_" << n << ")");
    REQUIRE(s.e == 1);
    REQUIRE(s.f == 1);
    REQUIRE(s.g == cyclotomic_field(n).degree());
  }
  REQUIRE(splitting_efg(cyclotomic_field(8), 3) == SplittingData{1, 2, 2});
  REQUIRE(splitting_efg(quadratic_field(-1), 5) == SplittingData{1, 1, 2});
  REQUIRE(splitting_efg(make_field(20, {9}), 5) == SplittingData{2, 1, 2});
}

TEST_CASE("splitting in cyclotomic fields: f is the order of p for unramified p") {
  for (int64_t n : {3, 4, 5, 7, 8, 9, 11, 12, 15, 16, 20, 24}) {
    for (int64_t p : {2, 3, 5, 7, 11, 13, 97, 241}) {
      if (n % p == 0) continue;
      SplittingData s = splitting_efg(cyclotomic_field(n), p);
      REQUIRE(s.e == 1);
      REQUIRE(s.f == intmath::mult_order(p % n, n));
      REQUIRE(s.f * s.g == intmath::euler_phi(n));
    }
  }
  // totally ramified: p in Q(zeta_{p^k})
  REQUIRE(splitting_efg(cyclotomic_field(25), 5) == SplittingData{20, 1, 1});
  REQUIRE(splitting_efg(cyclotomic_field(9), 3) == SplittingData{6, 1, 1});
}

TEST_CASE("splitting in quadratic fields matches the Kronecker symbol") {
  for (int64_t d : {-1, 2, -2, 3, -3, 5, -5, 6, -6, 7, 10, -11, 13}) {
    AbelianFieldModel F = quadratic_field(d);
    int64_t D = (((d % 4) + 4) % 4 == 1) ? d : 4 * d;
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 61, 97}) {
      SplittingData s = splitting_efg(F, p);
      int chi = intmath::kronecker(D, p);
      INFO("d = " << d << ", p = " << p);
      if (chi == 1) REQUIRE(s == SplittingData{1, 1, 2});
      if (chi == -1) REQUIRE(s == SplittingData{1, 2, 1});
      if (chi == 0) REQUIRE(s == SplittingData{2, 1, 1});
    }
  }
}

TEST_CASE("e*f*g = degree on randomized fields and primes") {
  std::mt19937_64 rng(17);
  int64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 97, 241};
  int done = 0;
  while (done < 200) {
    int64_t N = 1 + static_cast<int64_t>(rng() % 48);
    std::vector<int64_t> gens;
    for (int i = 0, k = rng() % 3; i < static_cast<int>(k); ++i) {
      int64_t g = 1 + static_cast<int64_t>(rng() % std::max<int64_t>(N - 1, 1));
      if (std::gcd(g, N) == 1) gens.push_back(g);
    }
    AbelianFieldModel F = make_field(N, gens);
    int64_t p = primes[rng() % 15];
    SplittingData s = splitting_efg(F, p);
    REQUIRE(s.e * s.f * s.g == F.degree());
    REQUIRE(s.e >= 1);
    REQUIRE(s.f >= 1);
    ++done;
  }
}

TEST_CASE("containment") {
  REQUIRE(contains(cyclotomic_field(8), quadratic_field(2)));
  REQUIRE_FALSE(contains(cyclotomic_field(20), cyclotomic_field(8)));
  REQUIRE(contains(cyclotomic_field(8), rationals()));
  REQUIRE(contains(make_field(20, {9}), quadratic_field(5)));
  REQUIRE(contains(cyclotomic_field(12), quadratic_field(-3)));
  REQUIRE(contains(cyclotomic_field(12), quadratic_field(3)));
  REQUIRE_FALSE(contains(quadratic_field(5), quadratic_field(2)));
  // reflexive and transitive spot check
  AbelianFieldModel F = cyclotomic_field(24);
  REQUIRE(contains(F, F));
  REQUIRE(contains(F, cyclotomic_field(8)));
  REQUIRE(contains(cyclotomic_field(8), quadratic_field(-2)));
  REQUIRE(contains(F, quadratic_field(-2)));
}

TEST_CASE("compositum degrees") {
  // [FG : Q] * [F intersect G : Q] = [F : Q][G : Q] for abelian F, G
  AbelianFieldModel F = cyclotomic_field(8), G = cyclotomic_field(12);
  AbelianFieldModel FG = compositum(F, G);
  REQUIRE(FG.conductor == 24);
  REQUIRE(FG.degree() == 8);  // 4*4/2, the intersection being Q(i)
  REQUIRE(compositum(F, F) == F);
  REQUIRE(compositum(F, rationals()) == F);
  REQUIRE(compositum(quadratic_field(2), quadratic_field(-1)).degree() == 4);
}

TEST_CASE("adjoin_zeta_degree") {
  REQUIRE(adjoin_zeta_degree(cyclotomic_field(8), 20) == 4);
  REQUIRE(adjoin_zeta_degree(quadratic_field(-1), 16) == 4);
  REQUIRE(adjoin_zeta_degree(cyclotomic_field(8), 8) == 1);
  REQUIRE(adjoin_zeta_degree(make_field(20, {9}), 20) == 2);
  REQUIRE(adjoin_zeta_degree(make_field(20, {9}), 8) == 2);
  REQUIRE(adjoin_zeta_degree(rationals(), 16) == 8);
}

TEST_CASE("relative_local_degree") {
  REQUIRE(relative_local_degree(cyclotomic_field(16), cyclotomic_field(8), 97) == 1);
  REQUIRE(relative_local_degree(cyclotomic_field(24), cyclotomic_field(8), 3) == 2);
  REQUIRE(relative_local_degree(cyclotomic_field(8), cyclotomic_field(8), 5) == 1);
  REQUIRE(relative_local_degree(cyclotomic_field(16), cyclotomic_field(8), 2) == 2);
  REQUIRE_THROWS_AS(relative_local_degree(quadratic_field(5), cyclotomic_field(8), 3),
                    std::invalid_argument);
}

TEST_CASE("model text format round-trips") {
  for (const std::string& text : {"8:", "20:9", "4:", "1:", "40:3,7"}) {
    AbelianFieldModel F = parse_model(text);
    REQUIRE(parse_model(format_model(F)) == F);
  }
  REQUIRE(format_model(make_field(20, {9})) == "20:9");
  REQUIRE(format_model(cyclotomic_field(8)) == "8:");
  REQUIRE_THROWS_AS(parse_model("garbage"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_model("8:2"), std::invalid_argument);  // 2 not a unit mod 8
}
