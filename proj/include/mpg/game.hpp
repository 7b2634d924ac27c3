#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpg/capacity.hpp"
#include "mpg/integral.hpp"
#include "mpg/space.hpp"
#include "mpg/tensor.hpp"

namespace mpg {

/// A finite n-player game: player ids, one strategy space per player, and
/// one total payoff tensor per player indexed by full strategy profiles in
/// row-major order (first player outermost). Immutable after construction.
class Game {
 public:
  Game(std::vector<std::string> players, std::vector<FiniteSpace> strategy_spaces,
       std::vector<std::vector<double>> payoffs);

  std::size_t num_players() const { return players_.size(); }
  const std::string& player_name(std::size_t i) const { return players_[i]; }
  const std::vector<std::string>& player_names() const { return players_; }
  std::size_t player_index(std::string_view name) const;

  const FiniteSpace& strategy_space(std::size_t i) const { return spaces_[i]; }
  std::size_t profile_count() const { return profile_count_; }

  double payoff(std::size_t player, std::size_t flat_profile) const {
    return payoffs_[player][flat_profile];
  }

  /// Product of all strategy spaces in player order.
  const ProductSpace& full_product() const { return *full_product_; }
  /// Product of the opponents' spaces, ascending player order with i removed.
  const ProductSpace& opponent_product(std::size_t i) const;

  /// Flat profile index from player i's strategy and an opponent-product
  /// flat index.
  std::size_t compose(std::size_t i, std::size_t strategy, std::size_t opponent_flat) const;

  /// Payoff of player i as a function on the full product space.
  RealFunction payoff_function(std::size_t i) const;
  /// Slice p_i^{x_i}: the payoff of player i with own strategy fixed, as a
  /// function on the opponent product space.
  RealFunction payoff_slice(std::size_t i, std::size_t strategy) const;

 private:
  std::vector<std::string> players_;
  std::vector<FiniteSpace> spaces_;
  std::vector<std::vector<double>> payoffs_;
  std::size_t profile_count_ = 0;
  std::vector<std::size_t> strides_;
  std::optional<ProductSpace> full_product_;
  std::vector<std::optional<ProductSpace>> opponent_products_;
};

// ---------------------------------------------------------------------------
// Expected payoffs and best responses

/// eu_i of a capacity profile: the max-plus integral of u_i with respect to
/// the tensor product of the components. When every component classifies as
/// a possibility capacity the density route is used instead of the full
/// lattice; the two agree exactly on possibility inputs.
ExtendedReal expected_payoff(const Game& g, std::size_t player, std::span<const Capacity> profile);

/// Density-profile overload (the route the searchers drive directly).
ExtendedReal expected_payoff(const Game& g, std::size_t player, std::span<const Density> profile);

/// P_i(x_i, nu): integral of the payoff slice over the opponent space.
ExtendedReal belief_payoff(const Game& g, std::size_t player, std::size_t strategy,
                           const Capacity& belief);
ExtendedReal belief_payoff(const Game& g, std::size_t player, std::size_t strategy,
                           const Density& belief);

/// R_i(nu): mask of pure strategies within kTolerance of the maximal belief
/// payoff. Never empty.
SubsetMask best_response(const Game& g, std::size_t player, const Capacity& belief);
SubsetMask best_response(const Game& g, std::size_t player, const Density& belief);

// ---------------------------------------------------------------------------
// Equilibrium checks

enum class NashMode { Max, Min };

const char* to_string(NashMode mode);

/// Documented deviation grid: every density with weights in {0, 1/m, ..., 1}
/// and at least one weight equal to 1, in lexicographic order of the weight
/// vectors. The Dirac densities are the crisp corners of this grid, so
/// "grid plus all Diracs" is the grid itself. m is capped at 25.
std::vector<Density> grid_densities(const FiniteSpace& space, int grid_m);

/// The grid above materialized as capacities, the default deviation set for
/// Nash checks.
std::vector<Capacity> default_deviations(const FiniteSpace& space, int grid_m);

struct NashPlayerResult {
  std::size_t player{};
  double base_payoff{};       // eu_i at the unmodified profile
  std::size_t worst_index{};  // index into the player's deviation set
  std::string worst_description;
  double worst_payoff{};      // eu_i at the worst deviation
  double worst_delta{};       // positive = the mode's inequality is violated
  std::size_t deviations_checked{};
};

/// Verdicts are always relative to the supplied deviation set; the
/// description records what that set was.
struct NashReport {
  bool verdict = false;
  NashMode mode = NashMode::Max;
  std::vector<NashPlayerResult> players;
  std::string deviation_set_description;
};

/// Checks the mode inequality for every player against every deviation in
/// that player's set, within kTolerance. Max mode: a deviation must not
/// raise eu_i; Min mode: it must not lower it. Raw deltas are reported so
/// callers can re-judge.
NashReport check_nash(const Game& g, std::span<const Capacity> profile, NashMode mode,
                      std::span<const std::vector<Capacity>> deviation_sets,
                      std::string deviation_set_description = {});

struct UncertaintyCheck {
  std::size_t player{};
  double mass{};                 // belief mass of the offending subset
  std::string offending_subset;  // canonical name in the opponent space
  bool ok = false;               // mass is exactly 0.0
};

struct UncertaintyReport {
  bool verdict = false;
  std::vector<SubsetMask> best_responses;  // per player, over their own space
  std::vector<UncertaintyCheck> checks;    // one per player
};

/// A belief system (one capacity per player on the opponent product space)
/// is an equilibrium under uncertainty when every player's belief assigns
/// capacity exactly 0.0 to the event that some opponent plays outside their
/// best-response set. The zero is structural: no tolerance.
UncertaintyReport check_uncertainty_equilibrium(const Game& g, std::span<const Capacity> beliefs);

/// Possibility-belief overload working on densities; handles opponent
/// products too large for the subset lattice.
UncertaintyReport check_uncertainty_equilibrium(const Game& g, std::span<const Density> beliefs);

// ---------------------------------------------------------------------------
// Searches

struct MinEquilibriumReport {
  bool verdict = false;  // best regret within kTolerance of zero
  std::vector<Density> profile;
  double regret = 0.0;
  std::uint64_t profiles_examined = 0;
  int grid_m = 0;
};

/// Grid search for a Nash min-equilibrium over possibility-density profiles.
/// regret_i = eu_i(profile) - min over the player's grid deviations of eu_i;
/// the reported profile minimizes max_i regret_i, ties broken by the
/// lexicographically smallest concatenated weight vector. Since the Dirac
/// densities are grid members and a deviation to a Dirac attains the true
/// infimum over all possibility deviations, the reported regret is exact,
/// not merely grid-relative. Guards: strategy spaces of size <= 4, m <= 25.
MinEquilibriumReport search_min_equilibrium(const Game& g, int grid_m);

enum class UncertaintySearchMode { CrispEnumerate, Iterate };

const char* to_string(UncertaintySearchMode mode);

struct UncertaintySearchReport {
  bool verdict = false;  // at least one equilibrium found
  UncertaintySearchMode mode = UncertaintySearchMode::CrispEnumerate;
  /// Accepted support profiles, one mask per player. CrispEnumerate lists
  /// all of them; Iterate lists the fixed point when one is reached.
  std::vector<std::vector<SubsetMask>> found;
  std::uint64_t examined = 0;  // support profiles, or iteration rounds
  /// Iterate only: the repeating support sequence when no fixed point is
  /// reached. Cycles are reported as a failure, never broken silently.
  std::vector<std::vector<SubsetMask>> cycle;
};

/// CrispEnumerate: for every profile of nonempty supports build crisp
/// densities, form each player's belief as the tensor density of the
/// others, and accept when S_j is contained in R_j for all j. Iterate:
/// best-response iteration on supports from the full profile until a fixed
/// point or a cycle. Every accepted system is re-checked internally.
/// Guard (CrispEnumerate): total strategy count <= 16.
UncertaintySearchReport search_uncertainty_equilibrium(const Game& g, UncertaintySearchMode mode);

struct ProbeReport {
  bool precondition_met = false;   // induced beliefs pass the uncertainty check
  bool possibility_beliefs = false;
  bool nash_verdict = false;       // meaningful only when precondition_met
  bool counterexample = false;     // uncertainty holds but the Nash check fails
  UncertaintyReport uncertainty;
  std::optional<NashReport> nash;
  std::string note;
};

/// Two-player probe of the implication "equilibrium under uncertainty with
/// per-player marginals implies Nash max-equilibrium of the marginal
/// profile". Beliefs are induced as nu_i = tensor of the other marginals.
/// For possibility marginals a counterexample flag indicates an artifact
/// bug; for general marginals it is open-question evidence, logged in the
/// note rather than treated as a failure.
ProbeReport uncertainty_implies_nash_probe(const Game& g, std::span<const Capacity> marginals,
                                           int grid_m);

}  // namespace mpg
