#include <cmath>

#include "doctest.h"
#include "mpg/integral.hpp"
#include "mpg/random.hpp"
#include "testutil.hpp"

using namespace mpg;
using testutil::grid_integral_oracle;
using testutil::possibility_ab;
using testutil::space_ab;

TEST_CASE("threshold sets by direct membership") {
  RealFunction f(space_ab(), {2.0, 0.0});
  CHECK(threshold_set(f, 1.0) == 0b01);
  CHECK(threshold_set(f, -3.0) == 0b11);  // at or below the minimum: everything
  CHECK(threshold_set(f, 2.5) == 0b00);   // above the maximum: nothing
  CHECK(threshold_set(f, 2.0) == 0b01);   // the comparison is >=
}

TEST_CASE("integral of a constant is the constant") {
  sample::Rng rng(29);
  for (int k = 0; k < 50; ++k) {
    FiniteSpace s = sample::space(rng, 1, 5);
    Capacity nu = sample::capacity(rng, s);
    const double c = -3.0 + 6.0 * sample::unit(rng);
    RealFunction f(s, std::vector<double>(s.size(), c));
    CHECK(maxplus_integral(f, nu).value() == c);
  }
}

TEST_CASE("integral against the greatest capacity picks the maximum") {
  // the payoff slice (1, 1): value 1 at every threshold that matters
  RealFunction f(space_ab(), {1.0, 1.0});
  CHECK(maxplus_integral(f, Capacity::greatest(space_ab())).value() == 1.0);
}

TEST_CASE("integral example with a two-point possibility capacity") {
  // density (a -> 0.5, b -> 1), f = (a -> 2, b -> 0):
  //   max( ln 0.5 + 2, ln 1 + 0 ) = 2 - ln 2
  const double expected = 2.0 - std::log(2.0);
  Capacity nu = possibility_ab(0.5, 1.0);
  RealFunction f(space_ab(), {2.0, 0.0});
  const double general = maxplus_integral(f, nu).value();
  CHECK(general == doctest::Approx(expected).epsilon(1e-12));
  // dense grid over [0, 2] hits both candidate thresholds at its endpoints
  CHECK(std::abs(general - grid_integral_oracle(f, nu, 10001)) <= 1e-6);
  // fast path agrees with the general path on the same density
  const double fast = maxplus_integral(f, Density(space_ab(), {0.5, 1.0})).value();
  CHECK(fast == general);
}

TEST_CASE("fast path shortcuts") {
  FiniteSpace s({"a", "b", "c"});
  RealFunction f(s, {0.5, 2.0, -1.0});
  SUBCASE("all-ones density picks the plain maximum") {
    CHECK(maxplus_integral(f, Density::all_ones(s)).value() == 2.0);
  }
  SUBCASE("a Dirac density evaluates the function at its point") {
    for (std::size_t x = 0; x < 3; ++x)
      CHECK(maxplus_integral(f, Density::dirac(s, x)).value() == f.value(x));
  }
}

TEST_CASE("fast path equals the lattice path on random possibility inputs") {
  sample::Rng rng(31);
  for (int k = 0; k < 600; ++k) {
    FiniteSpace s = sample::space(rng, 1, 6);
    Density d = sample::density(rng, s);
    RealFunction f = sample::function(rng, s, -5.0, 5.0);
    const double fast = maxplus_integral(f, d).raw();
    const double general = maxplus_integral(f, from_density(d)).raw();
    CHECK(std::abs(fast - general) <= 1e-12);
  }
}

TEST_CASE("integral is monotone in the capacity") {
  sample::Rng rng(37);
  for (int k = 0; k < 500; ++k) {
    FiniteSpace s = sample::space(rng, 1, 4);
    Capacity mu = sample::capacity(rng, s);
    Capacity nu = sample::capacity_leq(rng, mu);
    RealFunction f = sample::function(rng, s, -4.0, 4.0);
    CHECK(maxplus_integral(f, nu).raw() <= maxplus_integral(f, mu).raw() + 1e-12);
  }
}

TEST_CASE("integral is monotone in the integrand") {
  sample::Rng rng(41);
  for (int k = 0; k < 300; ++k) {
    FiniteSpace s = sample::space(rng, 1, 5);
    Capacity nu = sample::capacity(rng, s);
    RealFunction f = sample::function(rng, s, -3.0, 3.0);
    std::vector<double> bigger(f.values().begin(), f.values().end());
    for (auto& v : bigger) v += 2.0 * sample::unit(rng);
    CHECK(maxplus_integral(f, nu).raw() <=
          maxplus_integral(RealFunction(s, bigger), nu).raw() + 1e-12);
  }
}

TEST_CASE("integral translates with constants") {
  sample::Rng rng(43);
  for (int k = 0; k < 300; ++k) {
    FiniteSpace s = sample::space(rng, 1, 5);
    Capacity nu = sample::capacity(rng, s);
    RealFunction f = sample::function(rng, s, -3.0, 3.0);
    const double c = -2.0 + 4.0 * sample::unit(rng);
    std::vector<double> shifted(f.values().begin(), f.values().end());
    for (auto& v : shifted) v += c;
    CHECK(maxplus_integral(RealFunction(s, shifted), nu).value() ==
          doctest::Approx(maxplus_integral(f, nu).value() + c).epsilon(1e-12));
  }
}

TEST_CASE("integral agrees with a dense threshold grid") {
  sample::Rng rng(47);
  for (int k = 0; k < 200; ++k) {
    FiniteSpace s = sample::space(rng, 2, 6);
    Capacity nu = sample::capacity(rng, s);
    // keep the function range below 0.009 so a 10^4-point grid resolves
    // the optimum to under 1e-6
    const double base = -5.0 + 10.0 * sample::unit(rng);
    RealFunction f = sample::function(rng, s, base, base + 0.009);
    CHECK(std::abs(maxplus_integral(f, nu).value() - grid_integral_oracle(f, nu, 10001)) <= 1e-6);
  }
}

TEST_CASE("integral requires a shared space") {
  RealFunction f(space_ab(), {1.0, 2.0});
  CHECK_THROWS_AS(maxplus_integral(f, Capacity::greatest(FiniteSpace({"x", "y"}))), Error);
}

TEST_CASE("the density route scales past the lattice cap") {
  // 100000 points: far beyond any subset lattice, fine for densities
  const std::size_t n = 100000;
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
  FiniteSpace s(labels);
  std::vector<double> weights(n, 0.5), values(n);
  weights[n / 2] = 1.0;
  for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<double>(i % 97) / 97.0;
  Density d = Density::unchecked(s, std::move(weights));
  RealFunction f(s, std::move(values));
  // the weight-1 point carries value (n/2 % 97)/97; everything else pays ln 0.5
  const double at_one = static_cast<double>((n / 2) % 97) / 97.0;
  const double elsewhere = std::log(0.5) + 96.0 / 97.0;
  CHECK(maxplus_integral(f, d).value() ==
        doctest::Approx(std::max(at_one, elsewhere)).epsilon(1e-12));
  CHECK_THROWS_AS(from_density(d), Error);  // the lattice route must refuse
}

TEST_CASE("extended reals absorb addition and maxima") {
  ExtendedReal ninf = ExtendedReal::neg_infinity();
  CHECK(!(ninf + 5.0).is_finite());
  CHECK(max(ninf, ExtendedReal::finite(-3.0)).value() == -3.0);
  CHECK(ExtendedReal::log_of(0.0) == ninf);
  CHECK(ExtendedReal::log_of(1.0).value() == 0.0);
  CHECK_THROWS_AS(ExtendedReal::finite(std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("functions must be finite") {
  CHECK_THROWS_AS(RealFunction(space_ab(), {1.0, std::nan("")}), Error);
  CHECK_THROWS_AS(RealFunction(space_ab(), {1.0}), Error);
}
