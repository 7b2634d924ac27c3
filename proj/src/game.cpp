#include "mpg/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace mpg {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string describe_density(const Density& d) {
  std::string out = "density(";
  for (std::size_t x = 0; x < d.point_count(); ++x) {
    if (x) out += ", ";
    out += d.space().label(x) + "=" + fmt(d.weight(x));
  }
  return out + ")";
}

std::string describe_deviation(const Capacity& c) {
  if (classify(c).possibility) return describe_density(to_density(c));
  return "general capacity on {" + c.space().subset_name(c.full_mask()) + "}";
}

}  // namespace

Game::Game(std::vector<std::string> players, std::vector<FiniteSpace> strategy_spaces,
           std::vector<std::vector<double>> payoffs)
    : players_(std::move(players)),
      spaces_(std::move(strategy_spaces)),
      payoffs_(std::move(payoffs)) {
  if (players_.empty()) throw invalid_argument("a game needs at least one player");
  if (spaces_.size() != players_.size())
    throw invalid_argument("one strategy space per player required");
  if (payoffs_.size() != players_.size())
    throw invalid_argument("one payoff tensor per player required");
  {
    std::set<std::string> seen;
    for (const auto& p : players_) {
      if (p.empty()) throw invalid_argument("player ids must be nonempty");
      if (!seen.insert(p).second) throw invalid_argument("duplicate player id '" + p + "'");
    }
  }
  for (const auto& s : spaces_)
    if (s.size() > kMaxMaskPoints)
      throw guard_exceeded("strategy spaces are limited to " + std::to_string(kMaxMaskPoints) +
                           " strategies");
  full_product_ = ProductSpace::of(spaces_);
  profile_count_ = full_product_->size();
  strides_.resize(spaces_.size());
  for (std::size_t j = 0; j < spaces_.size(); ++j) strides_[j] = full_product_->stride(j);
  for (std::size_t i = 0; i < payoffs_.size(); ++i) {
    if (payoffs_[i].size() != profile_count_)
      throw invalid_argument("payoff tensor of player '" + players_[i] + "' needs " +
                             std::to_string(profile_count_) + " entries");
    for (double v : payoffs_[i])
      if (!std::isfinite(v)) throw invalid_argument("payoff entries must be finite");
  }
  opponent_products_.resize(players_.size());
  if (players_.size() >= 2) {
    for (std::size_t i = 0; i < players_.size(); ++i) {
      std::vector<FiniteSpace> rest;
      rest.reserve(players_.size() - 1);
      for (std::size_t j = 0; j < players_.size(); ++j)
        if (j != i) rest.push_back(spaces_[j]);
      opponent_products_[i] = ProductSpace::of(std::move(rest));
    }
  }
}

std::size_t Game::player_index(std::string_view name) const {
  for (std::size_t i = 0; i < players_.size(); ++i)
    if (players_[i] == name) return i;
  throw invalid_argument("unknown player '" + std::string(name) + "'");
}

const ProductSpace& Game::opponent_product(std::size_t i) const {
  if (!opponent_products_[i])
    throw invalid_argument("a one-player game has no opponent space");
  return *opponent_products_[i];
}

std::size_t Game::compose(std::size_t i, std::size_t strategy, std::size_t opponent_flat) const {
  const ProductSpace& opp = opponent_product(i);
  std::size_t p = strategy * strides_[i];
  std::size_t rest = opponent_flat;
  for (std::size_t jj = 0; jj < opp.factor_count(); ++jj) {
    const std::size_t coord = rest / opp.stride(jj);
    rest %= opp.stride(jj);
    const std::size_t player = jj < i ? jj : jj + 1;
    p += coord * strides_[player];
  }
  return p;
}

RealFunction Game::payoff_function(std::size_t i) const {
  return RealFunction(full_product_->flat(), payoffs_[i]);
}

RealFunction Game::payoff_slice(std::size_t i, std::size_t strategy) const {
  const ProductSpace& opp = opponent_product(i);
  std::vector<double> values(opp.size());
  for (std::size_t y = 0; y < values.size(); ++y)
    values[y] = payoffs_[i][compose(i, strategy, y)];
  return RealFunction(opp.flat(), std::move(values));
}

// ---------------------------------------------------------------------------

namespace {

void check_profile_shape(const Game& g, std::span<const Capacity> profile) {
  if (profile.size() != g.num_players())
    throw space_mismatch("profile needs one capacity per player");
  for (std::size_t j = 0; j < profile.size(); ++j)
    if (profile[j].space() != g.strategy_space(j))
      throw space_mismatch("profile component of player '" + g.player_name(j) +
                           "' lives on the wrong space");
}

void check_profile_shape(const Game& g, std::span<const Density> profile) {
  if (profile.size() != g.num_players())
    throw space_mismatch("profile needs one density per player");
  for (std::size_t j = 0; j < profile.size(); ++j)
    if (profile[j].space() != g.strategy_space(j))
      throw space_mismatch("profile component of player '" + g.player_name(j) +
                           "' lives on the wrong space");
}

}  // namespace

ExtendedReal expected_payoff(const Game& g, std::size_t player, std::span<const Capacity> profile) {
  check_profile_shape(g, profile);
  bool all_possibility = true;
  for (const auto& c : profile)
    if (!classify(c).possibility) {
      all_possibility = false;
      break;
    }
  if (all_possibility) {
    std::vector<Density> ds;
    ds.reserve(profile.size());
    for (const auto& c : profile) ds.push_back(to_density(c));
    return expected_payoff(g, player, ds);
  }
  Capacity joint = tensor_n(profile);
  return maxplus_integral(g.payoff_function(player), joint);
}

ExtendedReal expected_payoff(const Game& g, std::size_t player, std::span<const Density> profile) {
  check_profile_shape(g, profile);
  Density joint = tensor_density(profile);
  return maxplus_integral(g.payoff_function(player), joint);
}

ExtendedReal belief_payoff(const Game& g, std::size_t player, std::size_t strategy,
                           const Capacity& belief) {
  return maxplus_integral(g.payoff_slice(player, strategy), belief);
}

ExtendedReal belief_payoff(const Game& g, std::size_t player, std::size_t strategy,
                           const Density& belief) {
  return maxplus_integral(g.payoff_slice(player, strategy), belief);
}

namespace {

template <typename Belief>
SubsetMask best_response_impl(const Game& g, std::size_t player, const Belief& belief) {
  const std::size_t n = g.strategy_space(player).size();
  std::vector<double> p(n);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < n; ++x) {
    p[x] = belief_payoff(g, player, x, belief).raw();
    best = std::max(best, p[x]);
  }
  SubsetMask mask = 0;
  for (std::size_t x = 0; x < n; ++x)
    if (p[x] >= best - kTolerance) mask |= point_bit(x);
  return mask;
}

}  // namespace

SubsetMask best_response(const Game& g, std::size_t player, const Capacity& belief) {
  return best_response_impl(g, player, belief);
}

SubsetMask best_response(const Game& g, std::size_t player, const Density& belief) {
  return best_response_impl(g, player, belief);
}

// ---------------------------------------------------------------------------

const char* to_string(NashMode mode) { return mode == NashMode::Max ? "max" : "min"; }

const char* to_string(UncertaintySearchMode mode) {
  return mode == UncertaintySearchMode::CrispEnumerate ? "crisp" : "iterate";
}

std::vector<Density> grid_densities(const FiniteSpace& space, int grid_m) {
  if (grid_m < 1 || grid_m > 25)
    throw guard_exceeded("grid resolution must lie in [1, 25]; got " + std::to_string(grid_m));
  const std::size_t n = space.size();
  {
    std::size_t total = 1;
    for (std::size_t j = 0; j < n; ++j) {
      total *= static_cast<std::size_t>(grid_m) + 1;
      if (total > 10'000'000)
        throw guard_exceeded("density grid too large to enumerate");
    }
  }
  std::vector<Density> out;
  std::vector<int> w(n, 0);
  const double m = grid_m;
  for (;;) {
    if (*std::max_element(w.begin(), w.end()) == grid_m) {
      std::vector<double> weights(n);
      for (std::size_t j = 0; j < n; ++j) weights[j] = w[j] / m;
      out.push_back(Density::unchecked(space, std::move(weights)));
    }
    std::size_t pos = n;
    while (pos > 0 && w[pos - 1] == grid_m) w[--pos] = 0;
    if (pos == 0) break;
    ++w[pos - 1];
  }
  return out;
}

std::vector<Capacity> default_deviations(const FiniteSpace& space, int grid_m) {
  std::vector<Density> grid = grid_densities(space, grid_m);
  std::vector<Capacity> out;
  out.reserve(grid.size());
  for (const auto& d : grid) out.push_back(from_density(d));
  return out;
}

NashReport check_nash(const Game& g, std::span<const Capacity> profile, NashMode mode,
                      std::span<const std::vector<Capacity>> deviation_sets,
                      std::string deviation_set_description) {
  check_profile_shape(g, profile);
  if (deviation_sets.size() != g.num_players())
    throw invalid_argument("one deviation set per player required");
  for (std::size_t i = 0; i < deviation_sets.size(); ++i)
    if (deviation_sets[i].empty())
      throw Error("EmptyDeviationSet",
                  "deviation set of player '" + g.player_name(i) + "' is empty");

  NashReport rep;
  rep.mode = mode;
  rep.deviation_set_description = deviation_set_description.empty()
                                      ? "supplied deviation sets"
                                      : std::move(deviation_set_description);
  std::vector<Capacity> work(profile.begin(), profile.end());
  bool all_ok = true;
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    const double base = expected_payoff(g, i, profile).value();
    NashPlayerResult pr;
    pr.player = i;
    pr.base_payoff = base;
    pr.deviations_checked = deviation_sets[i].size();
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < deviation_sets[i].size(); ++idx) {
      const Capacity& tau = deviation_sets[i][idx];
      if (tau.space() != g.strategy_space(i))
        throw space_mismatch("deviation for player '" + g.player_name(i) +
                             "' lives on the wrong space");
      work[i] = tau;
      const double dev = expected_payoff(g, i, work).value();
      const double delta = mode == NashMode::Max ? dev - base : base - dev;
      if (delta > worst) {
        worst = delta;
        pr.worst_index = idx;
        pr.worst_payoff = dev;
      }
    }
    work[i] = profile[i];
    pr.worst_delta = worst;
    pr.worst_description = describe_deviation(deviation_sets[i][pr.worst_index]);
    if (worst > kTolerance) all_ok = false;
    rep.players.push_back(std::move(pr));
  }
  rep.verdict = all_ok;
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

/// Points of the opponent product whose coordinates all lie in the
/// respective best-response sets; everything else is the offending event.
std::vector<bool> product_membership(const Game& g, std::size_t i,
                                     const std::vector<SubsetMask>& responses) {
  const ProductSpace& opp = g.opponent_product(i);
  std::vector<bool> in_product(opp.size());
  std::vector<std::size_t> coords(opp.factor_count());
  for (std::size_t y = 0; y < opp.size(); ++y) {
    opp.decode(y, coords);
    bool ok = true;
    for (std::size_t jj = 0; jj < coords.size() && ok; ++jj) {
      const std::size_t player = jj < i ? jj : jj + 1;
      ok = (responses[player] & point_bit(coords[jj])) != 0;
    }
    in_product[y] = ok;
  }
  return in_product;
}

std::string complement_name(const FiniteSpace& flat, const std::vector<bool>& in_product) {
  std::vector<std::string> members;
  for (std::size_t y = 0; y < in_product.size(); ++y)
    if (!in_product[y]) members.push_back(flat.label(y));
  std::sort(members.begin(), members.end());
  std::string out;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k) out += '|';
    out += members[k];
  }
  return out;
}

template <typename Belief>
void check_belief_spaces(const Game& g, std::span<const Belief> beliefs) {
  if (g.num_players() < 2)
    throw invalid_argument("belief systems need at least two players");
  if (beliefs.size() != g.num_players())
    throw space_mismatch("one belief per player required");
  for (std::size_t i = 0; i < beliefs.size(); ++i)
    if (beliefs[i].space() != g.opponent_product(i).flat())
      throw space_mismatch("belief of player '" + g.player_name(i) +
                           "' must live on the opponent product space");
}

}  // namespace

UncertaintyReport check_uncertainty_equilibrium(const Game& g, std::span<const Capacity> beliefs) {
  check_belief_spaces(g, beliefs);
  UncertaintyReport rep;
  for (std::size_t j = 0; j < g.num_players(); ++j)
    rep.best_responses.push_back(best_response(g, j, beliefs[j]));
  bool all_ok = true;
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    const auto in_product = product_membership(g, i, rep.best_responses);
    SubsetMask comp = 0;
    for (std::size_t y = 0; y < in_product.size(); ++y)
      if (!in_product[y]) comp |= point_bit(y);
    const double mass = beliefs[i][comp];
    const bool ok = mass == 0.0;
    rep.checks.push_back(
        {i, mass, complement_name(g.opponent_product(i).flat(), in_product), ok});
    all_ok = all_ok && ok;
  }
  rep.verdict = all_ok;
  return rep;
}

UncertaintyReport check_uncertainty_equilibrium(const Game& g, std::span<const Density> beliefs) {
  check_belief_spaces(g, beliefs);
  UncertaintyReport rep;
  for (std::size_t j = 0; j < g.num_players(); ++j)
    rep.best_responses.push_back(best_response(g, j, beliefs[j]));
  bool all_ok = true;
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    const auto in_product = product_membership(g, i, rep.best_responses);
    double mass = 0.0;
    for (std::size_t y = 0; y < in_product.size(); ++y)
      if (!in_product[y]) mass = std::max(mass, beliefs[i].weight(y));
    const bool ok = mass == 0.0;
    rep.checks.push_back(
        {i, mass, complement_name(g.opponent_product(i).flat(), in_product), ok});
    all_ok = all_ok && ok;
  }
  rep.verdict = all_ok;
  return rep;
}

// ---------------------------------------------------------------------------

MinEquilibriumReport search_min_equilibrium(const Game& g, int grid_m) {
  const std::size_t n = g.num_players();
  for (std::size_t j = 0; j < n; ++j)
    if (g.strategy_space(j).size() > 4)
      throw guard_exceeded("min-equilibrium search is limited to strategy spaces of size 4");
  std::vector<std::vector<Density>> grids;
  grids.reserve(n);
  for (std::size_t j = 0; j < n; ++j) grids.push_back(grid_densities(g.strategy_space(j), grid_m));

  std::size_t total = 1;
  for (const auto& grid : grids) {
    if (grid.size() > 10'000'000 / total)
      throw guard_exceeded("profile grid too large to enumerate");
    total *= grid.size();
  }
  std::vector<std::size_t> gstrides(n);
  {
    std::size_t s = 1;
    for (std::size_t j = n; j-- > 0;) {
      gstrides[j] = s;
      s *= grids[j].size();
    }
  }

  // Per-cell player coordinates of the full strategy product.
  const std::size_t cells = g.profile_count();
  std::vector<std::vector<std::size_t>> cell_coords(cells, std::vector<std::size_t>(n));
  for (std::size_t cell = 0; cell < cells; ++cell)
    g.full_product().decode(cell, cell_coords[cell]);

  // eu_i over every grid profile, all players in one sweep per profile.
  std::vector<std::vector<double>> eu(n, std::vector<double>(total));
  std::vector<std::size_t> gidx(n, 0);
  std::vector<double> acc(n);
  for (std::size_t c = 0; c < total; ++c) {
    std::fill(acc.begin(), acc.end(), -std::numeric_limits<double>::infinity());
    for (std::size_t cell = 0; cell < cells; ++cell) {
      double w = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        w = std::min(w, grids[j][gidx[j]].weight(cell_coords[cell][j]));
      if (w == 0.0) continue;
      const double lw = std::log(w);
      for (std::size_t i = 0; i < n; ++i) acc[i] = std::max(acc[i], lw + g.payoff(i, cell));
    }
    for (std::size_t i = 0; i < n; ++i) eu[i][c] = acc[i];
    std::size_t pos = n;
    while (pos > 0 && gidx[pos - 1] + 1 == grids[pos - 1].size()) gidx[--pos] = 0;
    if (pos > 0) ++gidx[pos - 1];
  }

  // Fiber minima along each player's own axis: the cheapest deviation.
  std::vector<std::vector<double>> min_dev(n, std::vector<double>(total));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t gs = gstrides[i];
    const std::size_t gn = grids[i].size();
    for (std::size_t c = 0; c < total; ++c) {
      const std::size_t own = (c / gs) % gn;
      const std::size_t base = c - own * gs;
      double m = eu[i][base];
      for (std::size_t k = 1; k < gn; ++k) m = std::min(m, eu[i][base + k * gs]);
      min_dev[i][c] = m;
    }
  }

  // First profile (lexicographic enumeration order) attaining minimal regret.
  std::size_t best_c = 0;
  double best_regret = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < total; ++c) {
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r = std::max(r, eu[i][c] - min_dev[i][c]);
    if (r < best_regret) {
      best_regret = r;
      best_c = c;
    }
  }

  MinEquilibriumReport rep;
  rep.grid_m = grid_m;
  rep.profiles_examined = total;
  rep.regret = best_regret;
  rep.verdict = best_regret <= kTolerance;
  for (std::size_t j = 0; j < n; ++j)
    rep.profile.push_back(grids[j][(best_c / gstrides[j]) % grids[j].size()]);
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

struct SupportEvaluation {
  std::vector<Density> beliefs;       // one per player, on the opponent product
  std::vector<SubsetMask> responses;  // R_j of each player's belief
};

SupportEvaluation evaluate_supports(const Game& g, const std::vector<SubsetMask>& supports) {
  const std::size_t n = g.num_players();
  std::vector<Density> marginals;
  marginals.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    marginals.push_back(Density::crisp(g.strategy_space(j), supports[j]));

  SupportEvaluation ev;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Density> others;
    others.reserve(n - 1);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) others.push_back(marginals[k]);
    ev.beliefs.push_back(tensor_density(others));
  }
  for (std::size_t j = 0; j < n; ++j)
    ev.responses.push_back(best_response(g, j, ev.beliefs[j]));
  return ev;
}

void assert_equilibrium(const Game& g, const SupportEvaluation& ev) {
  if (!check_uncertainty_equilibrium(g, std::span<const Density>(ev.beliefs)).verdict)
    throw internal_error("accepted support profile failed the equilibrium re-check");
}

}  // namespace

UncertaintySearchReport search_uncertainty_equilibrium(const Game& g, UncertaintySearchMode mode) {
  const std::size_t n = g.num_players();
  if (n < 2) throw invalid_argument("the uncertainty search needs at least two players");

  UncertaintySearchReport rep;
  rep.mode = mode;

  if (mode == UncertaintySearchMode::CrispEnumerate) {
    std::size_t total_strategies = 0;
    for (std::size_t j = 0; j < n; ++j) total_strategies += g.strategy_space(j).size();
    if (total_strategies > 16)
      throw guard_exceeded("crisp enumeration is limited to 16 strategies in total; got " +
                           std::to_string(total_strategies));

    std::vector<SubsetMask> fulls(n);
    for (std::size_t j = 0; j < n; ++j) fulls[j] = g.strategy_space(j).full_mask();
    std::vector<SubsetMask> supports(n, 1);
    for (;;) {
      ++rep.examined;
      SupportEvaluation ev = evaluate_supports(g, supports);
      bool accept = true;
      for (std::size_t j = 0; j < n && accept; ++j)
        accept = (supports[j] & ~ev.responses[j]) == 0;
      if (accept) {
        assert_equilibrium(g, ev);
        rep.found.push_back(supports);
      }
      std::size_t pos = n;
      while (pos > 0 && supports[pos - 1] == fulls[pos - 1]) supports[--pos] = 1;
      if (pos == 0) break;
      ++supports[pos - 1];
    }
    rep.verdict = !rep.found.empty();
    return rep;
  }

  // Iterate: simultaneous best-response dynamics on supports.
  std::vector<SubsetMask> supports(n);
  for (std::size_t j = 0; j < n; ++j) supports[j] = g.strategy_space(j).full_mask();
  std::vector<std::vector<SubsetMask>> seq{supports};
  std::map<std::vector<SubsetMask>, std::size_t> seen{{supports, 0}};
  for (std::size_t round = 0;; ++round) {
    if (round > 1'000'000) throw internal_error("support iteration failed to terminate");
    SupportEvaluation ev = evaluate_supports(g, supports);
    rep.examined = round + 1;
    if (ev.responses == supports) {
      assert_equilibrium(g, ev);
      rep.found.push_back(supports);
      rep.verdict = true;
      return rep;
    }
    auto it = seen.find(ev.responses);
    if (it != seen.end()) {
      rep.cycle.assign(seq.begin() + it->second, seq.end());
      rep.verdict = false;
      return rep;
    }
    supports = ev.responses;
    seen.emplace(supports, seq.size());
    seq.push_back(supports);
  }
}

// ---------------------------------------------------------------------------

ProbeReport uncertainty_implies_nash_probe(const Game& g, std::span<const Capacity> marginals,
                                           int grid_m) {
  if (g.num_players() != 2)
    throw invalid_argument("the implication probe is defined for two-player games");
  if (marginals.size() != 2) throw space_mismatch("two per-player marginals required");
  for (std::size_t j = 0; j < 2; ++j)
    if (marginals[j].space() != g.strategy_space(j))
      throw space_mismatch("marginal of player '" + g.player_name(j) +
                           "' lives on the wrong space");

  ProbeReport rep;
  rep.possibility_beliefs =
      classify(marginals[0]).possibility && classify(marginals[1]).possibility;

  // Induced beliefs: each player believes the other plays their marginal.
  std::vector<Capacity> beliefs{marginals[1], marginals[0]};
  rep.uncertainty = check_uncertainty_equilibrium(g, beliefs);
  rep.precondition_met = rep.uncertainty.verdict;
  if (!rep.precondition_met) {
    rep.note = "precondition not met: the induced beliefs are not an equilibrium "
               "under uncertainty; no Nash verdict claimed";
    return rep;
  }

  std::vector<std::vector<Capacity>> devs;
  for (std::size_t j = 0; j < 2; ++j)
    devs.push_back(default_deviations(g.strategy_space(j), grid_m));
  rep.nash = check_nash(g, marginals, NashMode::Max, devs,
                        "density grid m=" + std::to_string(grid_m) +
                            " (Dirac corners included)");
  rep.nash_verdict = rep.nash->verdict;
  rep.counterexample = !rep.nash_verdict;
  if (!rep.counterexample) {
    rep.note = "implication confirmed on the supplied deviation grid";
  } else if (rep.possibility_beliefs) {
    rep.note = "COUNTEREXAMPLE with possibility beliefs: this contradicts the possibility-case "
               "implication and indicates an artifact bug";
  } else {
    rep.note = "counterexample candidate with general (non-possibility) beliefs: recorded as "
               "evidence on the open implication question, not as a failure";
  }
  return rep;
}

}  // namespace mpg
