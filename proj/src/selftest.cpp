#include "mpg/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "mpg/capacity.hpp"
#include "mpg/game.hpp"
#include "mpg/integral.hpp"
#include "mpg/random.hpp"
#include "mpg/tensor.hpp"

namespace mpg {

namespace {

using sample::Rng;

struct Check {
  const char* name;
  std::function<void(Rng&, CheckResult&)> body;
};

void expect(CheckResult& r, bool ok, const std::string& detail) {
  ++r.cases;
  if (!ok) {
    ++r.failures;
    if (r.detail.empty()) r.detail = detail;
  }
}

double raw(const ExtendedReal& v) { return v.raw(); }

}  // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed) {
  std::vector<Check> checks;

  checks.push_back({"density-round-trip", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 200; ++k) {
      FiniteSpace s = sample::space(rng, 1, 6);
      Density d = sample::density(rng, s);
      expect(r, to_density(from_density(d)) == d, "to(from(d)) != d");
      Capacity nu = from_density(d);
      expect(r, from_density(to_density(nu)) == nu, "from(to(nu)) != nu");
    }
  }});

  checks.push_back({"dual-involution", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 200; ++k) {
      FiniteSpace s = sample::space(rng, 1, 5);
      Capacity nu = sample::capacity(rng, s);
      Capacity dd = dual(dual(nu));
      double worst = 0.0;
      for (SubsetMask m = 0; m < nu.values().size(); ++m)
        worst = std::max(worst, std::abs(dd[m] - nu[m]));
      expect(r, worst <= 1e-15, "double dual drifted by " + std::to_string(worst));
    }
  }});

  checks.push_back({"dual-exchanges-possibility-necessity", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 200; ++k) {
      FiniteSpace s = sample::space(rng, 1, 5);
      Capacity nu = from_density(sample::density(rng, s));
      CapacityClass c = classify(nu);
      CapacityClass cd = classify(dual(nu));
      expect(r, c.possibility && cd.necessity, "dual of a possibility is not a necessity");
      expect(r, classify(dual(dual(nu))).possibility, "double dual lost possibility");
    }
  }});

  checks.push_back({"bconvex-possibility-closure", [](Rng& rng, CheckResult& r) {
    const double ss[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int k = 0; k < 100; ++k) {
      FiniteSpace s = sample::space(rng, 1, 5);
      Capacity nu = from_density(sample::density(rng, s));
      Capacity mu = from_density(sample::density(rng, s));
      for (double c : ss)
        expect(r, classify(bconvex_combine(c, nu, mu)).possibility,
               "combination left the possibility class");
    }
  }});

  checks.push_back({"leq-partial-order", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 200; ++k) {
      FiniteSpace s = sample::space(rng, 1, 4);
      Capacity top = sample::capacity(rng, s);
      Capacity mid = sample::capacity_leq(rng, top);
      Capacity low = sample::capacity_leq(rng, mid);
      expect(r, leq(top, top), "leq is not reflexive");
      expect(r, leq(low, top), "leq is not transitive");
      expect(r, leq(low, mid) && leq(mid, top), "ordered construction broke");
      if (leq(top, mid)) {  // antisymmetry: both directions force near-equality
        bool close = true;
        for (SubsetMask m = 0; m < top.values().size(); ++m)
          close = close && std::abs(top[m] - mid[m]) <= 2 * kTolerance;
        expect(r, close, "antisymmetry violated");
      }
    }
  }});

  checks.push_back({"integral-fast-path-agreement", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 500; ++k) {
      FiniteSpace s = sample::space(rng, 1, 6);
      Density d = sample::density(rng, s);
      RealFunction f = sample::function(rng, s, -5.0, 5.0);
      const double fast = raw(maxplus_integral(f, d));
      const double general = raw(maxplus_integral(f, from_density(d)));
      expect(r, std::abs(fast - general) <= 1e-12, "fast and lattice paths disagree");
    }
  }});

  checks.push_back({"integral-translation", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 200; ++k) {
      FiniteSpace s = sample::space(rng, 1, 5);
      Capacity nu = sample::capacity(rng, s);
      RealFunction f = sample::function(rng, s, -3.0, 3.0);
      const double c = -2.0 + 4.0 * sample::unit(rng);
      std::vector<double> shifted(f.values().begin(), f.values().end());
      for (auto& v : shifted) v += c;
      const double a = raw(maxplus_integral(RealFunction(s, shifted), nu));
      const double b = raw(maxplus_integral(f, nu)) + c;
      expect(r, std::abs(a - b) <= 1e-12, "integral does not translate");
    }
  }});

  checks.push_back({"integral-monotone-in-integrand", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 200; ++k) {
      FiniteSpace s = sample::space(rng, 1, 5);
      Capacity nu = sample::capacity(rng, s);
      RealFunction f = sample::function(rng, s, -3.0, 3.0);
      std::vector<double> bigger(f.values().begin(), f.values().end());
      for (auto& v : bigger) v += 2.0 * sample::unit(rng);
      expect(r,
             raw(maxplus_integral(f, nu)) <=
                 raw(maxplus_integral(RealFunction(s, bigger), nu)) + 1e-12,
             "integrand monotonicity failed");
    }
  }});

  checks.push_back({"integral-monotone-in-capacity", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 500; ++k) {
      FiniteSpace s = sample::space(rng, 1, 4);
      Capacity mu = sample::capacity(rng, s);
      Capacity nu = sample::capacity_leq(rng, mu);
      RealFunction f = sample::function(rng, s, -4.0, 4.0);
      expect(r, raw(maxplus_integral(f, nu)) <= raw(maxplus_integral(f, mu)) + 1e-12,
             "capacity monotonicity failed");
    }
  }});

  checks.push_back({"tensor-density-fast-path-agreement", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 200; ++k) {
      FiniteSpace s1 = sample::space(rng, 1, 3);
      FiniteSpace s2 = sample::space(rng, 1, 3);
      Density d1 = sample::density(rng, s1);
      Density d2 = sample::density(rng, s2);
      Capacity lattice = tensor2(from_density(d1), from_density(d2));
      std::vector<Density> ds{d1, d2};
      Capacity fast = from_density(tensor_density(ds));
      bool same = lattice.space() == fast.space();
      for (SubsetMask m = 0; same && m < lattice.values().size(); ++m)
        same = std::abs(lattice[m] - fast[m]) <= 1e-12;
      expect(r, same, "tensor density identity failed");
    }
  }});

  checks.push_back({"tensor-coordinatewise-monotonicity", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 200; ++k) {
      FiniteSpace s1 = sample::space(rng, 2, 3);
      FiniteSpace s2 = sample::space(rng, 2, 3);
      Capacity mu1 = sample::capacity(rng, s1);
      Capacity nu1 = sample::capacity_leq(rng, mu1);
      Capacity mu2 = sample::capacity(rng, s2);
      expect(r, leq(tensor2(nu1, mu2), tensor2(mu1, mu2)), "first coordinate not monotone");
      Capacity nu2 = sample::capacity_leq(rng, mu2);
      expect(r, leq(tensor2(mu1, nu2), tensor2(mu1, mu2)), "second coordinate not monotone");
    }
  }});

  checks.push_back({"tensor-null-set-propagation", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 200; ++k) {
      FiniteSpace s1 = sample::space(rng, 2, 3);
      FiniteSpace s2 = sample::space(rng, 2, 3);
      const SubsetMask a1 = 1 + sample::index(rng, s1.full_mask());
      const SubsetMask a2 = 1 + sample::index(rng, s2.full_mask());
      Capacity mu1 = sample::capacity_with_null_complement(rng, s1, a1);
      Capacity mu2 = sample::capacity_with_null_complement(rng, s2, a2);
      Capacity t = tensor2(mu1, mu2);
      SubsetMask product = 0;
      for (std::size_t x = 0; x < s1.size(); ++x)
        for (std::size_t y = 0; y < s2.size(); ++y)
          if ((a1 & point_bit(x)) && (a2 & point_bit(y)))
            product |= point_bit(x * s2.size() + y);
      expect(r, t[t.full_mask() & ~product] == 0.0, "null complement gained mass");
    }
  }});

  checks.push_back({"tensor-validity-and-possibility-closure", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 100; ++k) {
      FiniteSpace s1 = sample::space(rng, 1, 3);
      FiniteSpace s2 = sample::space(rng, 1, 3);
      Capacity t = tensor2(sample::capacity(rng, s1), sample::capacity(rng, s2));
      std::vector<double> copy(t.values().begin(), t.values().end());
      expect(r, validate(t.space(), copy).report.ok(), "tensor output failed validation");
      Capacity tp = tensor2(from_density(sample::density(rng, s1)),
                            from_density(sample::density(rng, s2)));
      expect(r, classify(tp).possibility, "tensor of possibilities not a possibility");
    }
  }});

  checks.push_back({"payoff-quasiconvexity", [](Rng& rng, CheckResult& r) {
    const double cs[] = {0.0, 0.3, 0.7, 1.0};
    for (int k = 0; k < 150; ++k) {
      Game g = sample::game(rng, 2, 2, 3, -2.0, 2.0);
      for (std::size_t i = 0; i < 2; ++i) {
        Capacity a = from_density(sample::density(rng, g.strategy_space(i)));
        Capacity b = from_density(sample::density(rng, g.strategy_space(i)));
        Capacity other = from_density(sample::density(rng, g.strategy_space(1 - i)));
        for (double c : cs) {
          std::vector<Capacity> pa{i == 0 ? a : other, i == 0 ? other : a};
          std::vector<Capacity> pb{i == 0 ? b : other, i == 0 ? other : b};
          Capacity mix = bconvex_combine(c, a, b);
          std::vector<Capacity> pm{i == 0 ? mix : other, i == 0 ? other : mix};
          const double lhs = raw(expected_payoff(g, i, pm));
          const double rhs = std::max(raw(expected_payoff(g, i, pa)),
                                      raw(expected_payoff(g, i, pb)));
          expect(r, lhs <= rhs + kTolerance, "quasiconvexity inequality failed");
        }
      }
    }
  }});

  checks.push_back({"dirac-profile-pure-payoff", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 50; ++k) {
      Game g = sample::game(rng, 2 + sample::index(rng, 2), 2, 3, -2.0, 2.0);
      const std::size_t n = g.num_players();
      std::vector<std::size_t> coords(n);
      for (std::size_t cell = 0; cell < g.profile_count(); ++cell) {
        g.full_product().decode(cell, coords);
        std::vector<Capacity> profile;
        for (std::size_t j = 0; j < n; ++j)
          profile.push_back(Capacity::dirac(g.strategy_space(j), coords[j]));
        for (std::size_t i = 0; i < n; ++i)
          expect(r, raw(expected_payoff(g, i, profile)) == g.payoff(i, cell),
                 "Dirac profile payoff is not the pure payoff");
      }
    }
  }});

  checks.push_back({"greatest-profile-max-equilibrium", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 40; ++k) {
      Game g = sample::game(rng, 2, 2, 3, -2.0, 2.0);
      std::vector<Capacity> profile;
      std::vector<std::vector<Capacity>> devs;
      for (std::size_t j = 0; j < 2; ++j) {
        profile.push_back(Capacity::greatest(g.strategy_space(j)));
        devs.push_back(default_deviations(g.strategy_space(j), 5));
      }
      expect(r, check_nash(g, profile, NashMode::Max, devs).verdict,
             "greatest profile rejected in max mode");
    }
  }});

  checks.push_back({"crisp-search-soundness", [](Rng& rng, CheckResult& r) {
    for (int k = 0; k < 40; ++k) {
      Game g = sample::game(rng, 2, 2, 2, 0.0, 2.0);
      auto rep = search_uncertainty_equilibrium(g, UncertaintySearchMode::CrispEnumerate);
      expect(r, rep.examined == 9, "support enumeration miscounted");
      for (const auto& supports : rep.found) {
        std::vector<Density> beliefs{Density::crisp(g.strategy_space(1), supports[1]),
                                     Density::crisp(g.strategy_space(0), supports[0])};
        expect(r, check_uncertainty_equilibrium(g, beliefs).verdict,
               "accepted supports fail the equilibrium check");
      }
    }
  }});

  Rng rng(seed);
  std::vector<CheckResult> results;
  for (auto& check : checks) {
    CheckResult r;
    r.name = check.name;
    check.body(rng, r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace mpg
