#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "fourfolds/catalog.hpp"
#include "fourfolds/weil.hpp"

using namespace fourfolds;
using namespace fourfolds::weil;
using polyring::IntPoly;

namespace {

IntPoly P(std::vector<int64_t> c) { return IntPoly::from_int64(c); }

// numeric oracle: Durand-Kerner root finder in double precision
std::vector<std::complex<double>> numeric_roots(const IntPoly& h) {
  int n = h.degree();
  std::vector<std::complex<double>> a(n + 1);
  for (int i = 0; i <= n; ++i) a[i] = static_cast<double>(h.coeff(i));
  auto eval = [&](std::complex<double> z) {
    std::complex<double> v = 0;
    for (int i = n; i >= 0; --i) v = v * z + a[i];
    return v;
  };
  std::vector<std::complex<double>> r(n);
  for (int i = 0; i < n; ++i) r[i] = std::pow(std::complex<double>(0.4, 0.9), i + 1);
  for (int iter = 0; iter < 1000; ++iter) {
    double move = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> denom = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= r[i] - r[j];
      std::complex<double> delta = eval(r[i]) / denom;
      r[i] -= delta;
      move = std::max(move, std::abs(delta));
    }
    if (move < 1e-14 * (1 + std::abs(r[0]))) break;
  }
  return r;
}

// worst relative deviation of |root|^2 from q
double circle_deviation(const IntPoly& h, int64_t q) {
  double dev = 0;
  for (const auto& z : numeric_roots(h))
    dev = std::max(dev, std::abs(std::norm(z) - static_cast<double>(q)) / static_cast<double>(q));
  return dev;
}

}  // namespace

TEST_CASE("prime_power") {
  REQUIRE(prime_power(9409) == std::pair<int64_t, int>{97, 2});
  REQUIRE(prime_power(2) == std::pair<int64_t, int>{2, 1});
  REQUIRE(prime_power(3373402561) == std::pair<int64_t, int>{241, 4});
  REQUIRE_THROWS_AS(prime_power(6), std::invalid_argument);
  REQUIRE_THROWS_AS(prime_power(1), std::invalid_argument);
}

TEST_CASE("real_weil_transform documented values") {
  REQUIRE(real_weil_transform(P({625, 0, -30, 0, 1}), 25) == P({-80, 0, 1}));
  REQUIRE(real_weil_transform(P({625, -30, 1}), 625) == P({-30, 1}));
  REQUIRE(real_weil_transform(P({88529281, 0, 0, 0, 1}), 9409) == P({-18818, 0, 1}));
}

TEST_CASE("real_weil_transform kills pi + q/pi numerically") {
  // beta = z + q/z must be a root of g whenever z is a root of h
  for (auto [q, h] : std::vector<std::pair<int64_t, IntPoly>>{
           {25, P({625, 0, -30, 0, 1})},
           {2, P({16, 0, 8, -2, 1, -1, 2, 0, 1})},
           {9409, P({88529281, 0, 0, 0, 1})}}) {
    IntPoly g = real_weil_transform(h, q);
    for (const auto& z : numeric_roots(h)) {
      std::complex<double> beta = z + static_cast<double>(q) / z;
      std::complex<double> v = 0;
      for (int i = g.degree(); i >= 0; --i) v = v * beta + static_cast<double>(g.coeff(i));
      REQUIRE(std::abs(v) < 1e-6 * (1 + std::abs(static_cast<double>(g.coeff(0)))));
    }
  }
}

TEST_CASE("is_weil_poly on documented cases") {
  REQUIRE(is_weil_poly(P({625, -30, 1}), 625));
  REQUIRE(is_weil_poly(P({16, 0, 8, -2, 1, -1, 2, 0, 1}), 2));
  REQUIRE_FALSE(is_weil_poly(P({625, -51, 1}), 625));
  REQUIRE(is_weil_poly(P({88529281, 0, 0, 0, 1}), 9409));
  REQUIRE_FALSE(is_weil_poly(P({1, -1, 1}), 2));
}

TEST_CASE("is_real_weil_poly") {
  REQUIRE(is_real_weil_poly(P({-25, 1}), 625));  // t - 25
  REQUIRE(is_real_weil_poly(P({-2, 0, 1}), 2));  // t^2 - 2
  REQUIRE_FALSE(is_real_weil_poly(P({-2, 0, 1}), 4));
  REQUIRE_FALSE(is_real_weil_poly(P({625, -30, 1}), 625));
}

TEST_CASE("witness polynomials pass the 1e-9 numeric circle oracle") {
  for (const auto& e : catalog::witnesses()) {
    WeilCandidate w = catalog::witness_candidate(e);
    INFO("witness " << e.id);
    REQUIRE(is_weil_poly(w.h, w.q));
    REQUIRE(circle_deviation(w.h, w.q) < 1e-9);
  }
}

TEST_CASE("is_weil_poly agrees with the numeric oracle on randomized candidates") {
  std::mt19937_64 rng(21);
  int64_t qs[] = {2, 3, 4, 5, 7, 8, 9, 25, 49, 81, 121, 625};
  int checked = 0, positives = 0;
  while (checked < 120) {
    int64_t q = qs[rng() % 12];
    IntPoly h;
    int shape = static_cast<int>(rng() % 3);
    if (shape == 0) {
      // quadratic t^2 + c1 t + q
      int64_t span = 2 * static_cast<int64_t>(std::sqrt(static_cast<double>(q))) + 3;
      int64_t c1 = static_cast<int64_t>(rng() % (2 * span + 1)) - span;
      h = P({q, c1, 1});
    } else if (shape == 1) {
      // q-symmetric quartic t^4 + c3 t^3 + c2 t^2 + q c3 t + q^2
      int64_t c3 = static_cast<int64_t>(rng() % 9) - 4;
      int64_t c2 = static_cast<int64_t>(rng() % (4 * q + 1)) - 2 * q;
      h = IntPoly({Int(q) * Int(q), Int(q) * Int(c3), Int(c2), Int(c3), Int(1)});
    } else {
      // arbitrary monic quartic, usually far from the circle
      std::vector<Int> c;
      for (int i = 0; i < 4; ++i) c.push_back(Int(static_cast<int64_t>(rng() % 41) - 20));
      c.push_back(Int(1));
      h = IntPoly(std::move(c));
    }
    if (h.coeff(0) == 0) continue;
    bool exact = is_weil_poly(h, q);
    double dev = circle_deviation(h, q);
    if (dev > 1e-10 && dev < 1e-6) continue;  // numerically ambiguous, skip
    bool oracle = dev <= 1e-9 && polyring::irreducible_over_q(h);
    INFO("q = " << q << ", h = " << h.str() << ", dev = " << dev);
    REQUIRE(exact == oracle);
    ++checked;
    if (exact) ++positives;
  }
  REQUIRE(positives >= 10);  // the sample must exercise both verdicts
}

TEST_CASE("weil_from_cyclotomic_scaling") {
  WeilCandidate w4 = weil_from_cyclotomic_scaling(97, 8);
  REQUIRE(w4.q == 9409);
  REQUIRE(w4.h == P({88529281, 0, 0, 0, 1}));
  WeilCandidate w7 = weil_from_cyclotomic_scaling(2, 16);
  REQUIRE(w7.q == 4);
  REQUIRE(w7.h == P({256, 0, 0, 0, 0, 0, 0, 0, 1}));
  WeilCandidate w10 = weil_from_cyclotomic_scaling(5, 30);
  REQUIRE(w10.q == 25);
  REQUIRE(w10.h.degree() == 8);
  REQUIRE(w10.h == polyring::scaled_root_min_poly(5, 30));
  REQUIRE_THROWS_AS(weil_from_cyclotomic_scaling(1, 8), std::invalid_argument);
}

TEST_CASE("real_quadratic_subfield") {
  REQUIRE(real_quadratic_subfield(P({625, 0, -30, 0, 1}), 25) == 5);
  REQUIRE(real_quadratic_subfield(P({6561, 0, -126, 0, 1}), 81) == 2);
  REQUIRE(real_quadratic_subfield(P({88529281, 0, 0, 0, 1}), 9409) == 2);
  REQUIRE_THROWS_AS(real_quadratic_subfield(P({625, -30, 1}), 625), std::invalid_argument);
}
