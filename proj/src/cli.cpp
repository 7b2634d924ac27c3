#include "mpg/cli.hpp"

#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpg/capacity.hpp"
#include "mpg/game.hpp"
#include "mpg/integral.hpp"
#include "mpg/io.hpp"
#include "mpg/selftest.hpp"
#include "mpg/tensor.hpp"

namespace mpg::cli {

namespace {

using io::Json;

void emit(std::ostream& out, const Json& doc) {
  out << io::dump_deterministic(doc) << "\n";
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& detail) {
  Json doc;
  Json inner;
  inner["kind"] = kind;
  inner["detail"] = detail;
  doc["error"] = std::move(inner);
  err << io::dump_deterministic(doc) << "\n";
}

Json report_head(const char* command) {
  Json doc;
  doc["schema_version"] = io::kSchemaVersion;
  doc["command"] = command;
  return doc;
}

std::vector<io::CapacityFile> load_capacity_files(const std::vector<std::string>& paths) {
  std::vector<io::CapacityFile> files;
  files.reserve(paths.size());
  for (const auto& p : paths) files.push_back(io::parse_capacity_file(io::load_json_file(p)));
  return files;
}

Json mask_labels(const FiniteSpace& space, SubsetMask mask) {
  Json arr = Json::array();
  for (std::size_t x = 0; x < space.size(); ++x)
    if (mask & point_bit(x)) arr.push_back(space.label(x));
  return arr;
}

Json uncertainty_json(const Game& g, const UncertaintyReport& rep) {
  Json j;
  j["verdict"] = rep.verdict;
  Json br = Json::object();
  for (std::size_t i = 0; i < g.num_players(); ++i)
    br[g.player_name(i)] = mask_labels(g.strategy_space(i), rep.best_responses[i]);
  j["best_responses"] = std::move(br);
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json item;
    item["player"] = g.player_name(c.player);
    item["offending_subset"] = c.offending_subset;
    item["mass"] = c.mass;
    item["ok"] = c.ok;
    checks.push_back(std::move(item));
  }
  j["checks"] = std::move(checks);
  return j;
}

Json nash_json(const Game& g, const NashReport& rep) {
  Json j;
  j["mode"] = to_string(rep.mode);
  j["tolerance"] = kTolerance;
  j["deviation_set"] = rep.deviation_set_description;
  j["verdict"] = rep.verdict;
  Json players = Json::array();
  for (const auto& pr : rep.players) {
    Json item;
    item["player"] = g.player_name(pr.player);
    item["payoff"] = pr.base_payoff;
    item["deviations_checked"] = static_cast<std::uint64_t>(pr.deviations_checked);
    Json worst;
    worst["description"] = pr.worst_description;
    worst["payoff"] = pr.worst_payoff;
    worst["delta"] = pr.worst_delta;
    item["worst_deviation"] = std::move(worst);
    players.push_back(std::move(item));
  }
  j["players"] = std::move(players);
  return j;
}

Json supports_json(const Game& g, const std::vector<SubsetMask>& supports) {
  Json obj = Json::object();
  for (std::size_t j = 0; j < g.num_players(); ++j)
    obj[g.player_name(j)] = mask_labels(g.strategy_space(j), supports[j]);
  return obj;
}

NashMode parse_nash_mode(const std::string& mode) {
  if (mode == "max") return NashMode::Max;
  if (mode == "min") return NashMode::Min;
  throw invalid_argument("mode must be \"max\" or \"min\"");
}

// ---------------------------------------------------------------------------

int do_validate(const std::string& path, std::ostream& out) {
  io::RawCapacityFile raw = io::parse_capacity_raw(io::load_json_file(path));
  Json doc = report_head("validate");
  doc["kind"] = raw.is_possibility ? "possibility" : "general";
  ValidationReport report = raw.is_possibility
                                ? validate_density(raw.space, raw.numbers)
                                : validate(raw.space, std::move(raw.numbers)).report;
  doc["verdict"] = report.ok();
  doc["violations"] = io::validation_report_json(report, raw.space);
  emit(out, doc);
  return 0;
}

int do_dual(const std::string& path, std::ostream& out) {
  io::CapacityFile file = io::parse_capacity_file(io::load_json_file(path));
  emit(out, io::capacity_json(dual(file.as_capacity())));
  return 0;
}

int do_classify(const std::string& path, std::ostream& out) {
  io::CapacityFile file = io::parse_capacity_file(io::load_json_file(path));
  CapacityClass c;
  if (file.is_possibility_file() && file.space().size() > kMaxLatticePoints) {
    // Too large to materialize: a possibility capacity is also a necessity
    // exactly when at most one point carries significant weight.
    const Density& d = std::get<Density>(file.value);
    c.possibility = true;
    std::size_t significant = 0;
    for (std::size_t x = 0; x < d.point_count(); ++x)
      if (d.weight(x) > kTolerance) ++significant;
    c.necessity = significant <= 1;
  } else {
    c = classify(file.as_capacity());
  }
  Json doc = report_head("classify");
  doc["possibility"] = c.possibility;
  doc["necessity"] = c.necessity;
  doc["primary"] = to_string(c.primary());
  emit(out, doc);
  return 0;
}

int do_tensor(const std::vector<std::string>& paths, std::ostream& out, std::ostream& err) {
  std::vector<io::CapacityFile> files = load_capacity_files(paths);
  bool all_possibility = true;
  std::size_t total_points = 1;
  for (const auto& f : files) {
    all_possibility = all_possibility && f.is_possibility_file();
    if (f.space().size() > kMaxSpacePoints / total_points)
      throw guard_exceeded("tensor product space too large");
    total_points *= f.space().size();
  }
  if (total_points > kMaxLatticePoints)
    err << "warning: product lattice has 2^" << total_points
        << " subsets; only the density route can represent it\n";
  if (all_possibility) {
    std::vector<Density> ds;
    ds.reserve(files.size());
    for (const auto& f : files) ds.push_back(std::get<Density>(f.value));
    emit(out, io::density_json(tensor_density(ds)));
    return 0;
  }
  if (total_points > kMaxLatticePoints)
    throw guard_exceeded("general tensor products are limited to " +
                         std::to_string(kMaxLatticePoints) +
                         " product points; supply possibility-kind inputs");
  std::vector<Capacity> cs;
  cs.reserve(files.size());
  for (const auto& f : files) cs.push_back(f.as_capacity());
  emit(out, io::capacity_json(tensor_n(cs)));
  return 0;
}

int do_integrate(const std::string& capacity_path, const std::string& function_path,
                 std::ostream& out) {
  io::CapacityFile file = io::parse_capacity_file(io::load_json_file(capacity_path));
  RealFunction f = io::parse_function_file(io::load_json_file(function_path));
  ExtendedReal value = file.is_possibility_file()
                           ? maxplus_integral(f, std::get<Density>(file.value))
                           : maxplus_integral(f, std::get<Capacity>(file.value));
  Json doc = report_head("integrate");
  doc["value"] = io::extended_real_json(value);
  emit(out, doc);
  return 0;
}

int do_expected_payoff(const std::string& game_path, const std::string& player,
                       const std::vector<std::string>& profile_paths, std::ostream& out) {
  Game g = io::parse_game_file(io::load_json_file(game_path));
  const std::size_t i = g.player_index(player);
  auto files = io::assign_to_players(load_capacity_files(profile_paths), g);
  ExtendedReal value = [&] {
    bool all_possibility = true;
    for (const auto& f : files) all_possibility = all_possibility && f.is_possibility_file();
    if (all_possibility) {
      std::vector<Density> ds;
      for (const auto& f : files) ds.push_back(std::get<Density>(f.value));
      return expected_payoff(g, i, ds);
    }
    std::vector<Capacity> cs;
    for (const auto& f : files) cs.push_back(f.as_capacity());
    return expected_payoff(g, i, cs);
  }();
  Json doc = report_head("expected-payoff");
  doc["player"] = player;
  doc["value"] = io::extended_real_json(value);
  emit(out, doc);
  return 0;
}

int do_best_response(const std::string& game_path, const std::string& player,
                     const std::string& belief_path, std::ostream& out) {
  Game g = io::parse_game_file(io::load_json_file(game_path));
  const std::size_t i = g.player_index(player);
  io::CapacityFile file = io::parse_capacity_file(io::load_json_file(belief_path));

  Json doc = report_head("best-response");
  doc["player"] = player;
  Json payoffs = Json::object();
  SubsetMask mask = 0;
  if (file.is_possibility_file()) {
    const Density& d = std::get<Density>(file.value);
    mask = best_response(g, i, d);
    for (std::size_t x = 0; x < g.strategy_space(i).size(); ++x)
      payoffs[g.strategy_space(i).label(x)] =
          io::extended_real_json(belief_payoff(g, i, x, d));
  } else {
    const Capacity& c = std::get<Capacity>(file.value);
    mask = best_response(g, i, c);
    for (std::size_t x = 0; x < g.strategy_space(i).size(); ++x)
      payoffs[g.strategy_space(i).label(x)] =
          io::extended_real_json(belief_payoff(g, i, x, c));
  }
  doc["payoffs"] = std::move(payoffs);
  doc["best_response"] = mask_labels(g.strategy_space(i), mask);
  emit(out, doc);
  return 0;
}

int do_check_nash(const std::string& game_path, const std::vector<std::string>& profile_paths,
                  const std::string& mode, int grid_m,
                  const std::vector<std::string>& deviation_paths, std::ostream& out) {
  Game g = io::parse_game_file(io::load_json_file(game_path));
  auto files = io::assign_to_players(load_capacity_files(profile_paths), g);
  std::vector<Capacity> profile;
  for (const auto& f : files) profile.push_back(f.as_capacity());

  std::vector<std::vector<Capacity>> devs;
  for (std::size_t j = 0; j < g.num_players(); ++j)
    devs.push_back(default_deviations(g.strategy_space(j), grid_m));
  for (const auto& p : deviation_paths) {
    io::CapacityFile f = io::parse_capacity_file(io::load_json_file(p));
    if (!f.player) throw invalid_argument("deviation file '" + p + "' needs a \"player\" key");
    devs[g.player_index(*f.player)].push_back(f.as_capacity());
  }
  std::string desc = "density grid m=" + std::to_string(grid_m) + " (Dirac corners included)";
  if (!deviation_paths.empty())
    desc += " + " + std::to_string(deviation_paths.size()) + " supplied";

  NashReport rep = check_nash(g, profile, parse_nash_mode(mode), devs, desc);
  Json doc = report_head("check-nash");
  const Json body = nash_json(g, rep);
  for (const auto& item : body.items()) doc[item.key()] = item.value();
  emit(out, doc);
  return 0;
}

int do_check_uncertainty(const std::string& game_path, const std::vector<std::string>& belief_paths,
                         std::ostream& out) {
  Game g = io::parse_game_file(io::load_json_file(game_path));
  auto files = io::assign_to_players(load_capacity_files(belief_paths), g);
  bool all_possibility = true;
  for (const auto& f : files) all_possibility = all_possibility && f.is_possibility_file();
  UncertaintyReport rep = [&] {
    if (all_possibility) {
      std::vector<Density> ds;
      for (const auto& f : files) ds.push_back(std::get<Density>(f.value));
      return check_uncertainty_equilibrium(g, ds);
    }
    std::vector<Capacity> cs;
    for (const auto& f : files) cs.push_back(f.as_capacity());
    return check_uncertainty_equilibrium(g, cs);
  }();
  Json doc = report_head("check-uncertainty");
  const Json body = uncertainty_json(g, rep);
  for (const auto& item : body.items()) doc[item.key()] = item.value();
  emit(out, doc);
  return 0;
}

int do_find_min_equilibrium(const std::string& game_path, int grid_m, std::ostream& out) {
  Game g = io::parse_game_file(io::load_json_file(game_path));
  MinEquilibriumReport rep = search_min_equilibrium(g, grid_m);
  Json doc = report_head("find-min-equilibrium");
  doc["grid_m"] = rep.grid_m;
  doc["verdict"] = rep.verdict;
  doc["regret"] = rep.regret;
  doc["profiles_examined"] = rep.profiles_examined;
  Json profile = Json::object();
  for (std::size_t j = 0; j < g.num_players(); ++j) {
    Json weights = Json::object();
    for (std::size_t x = 0; x < g.strategy_space(j).size(); ++x)
      weights[g.strategy_space(j).label(x)] = rep.profile[j].weight(x);
    profile[g.player_name(j)] = std::move(weights);
  }
  doc["profile"] = std::move(profile);
  emit(out, doc);
  return 0;
}

int do_find_uncertainty_equilibrium(const std::string& game_path, const std::string& mode,
                                    std::ostream& out) {
  Game g = io::parse_game_file(io::load_json_file(game_path));
  UncertaintySearchMode m;
  if (mode == "crisp") m = UncertaintySearchMode::CrispEnumerate;
  else if (mode == "iterate") m = UncertaintySearchMode::Iterate;
  else throw invalid_argument("mode must be \"crisp\" or \"iterate\"");

  UncertaintySearchReport rep = search_uncertainty_equilibrium(g, m);
  Json doc = report_head("find-uncertainty-equilibrium");
  doc["mode"] = to_string(rep.mode);
  doc["verdict"] = rep.verdict;
  doc["examined"] = rep.examined;
  Json found = Json::array();
  for (const auto& supports : rep.found) found.push_back(supports_json(g, supports));
  doc["found"] = std::move(found);
  if (m == UncertaintySearchMode::Iterate && !rep.verdict) {
    Json cycle = Json::array();
    for (const auto& supports : rep.cycle) cycle.push_back(supports_json(g, supports));
    doc["cycle"] = std::move(cycle);
  }
  emit(out, doc);
  return 0;
}

int do_probe_nash(const std::string& game_path, const std::vector<std::string>& marginal_paths,
                  int grid_m, std::ostream& out) {
  Game g = io::parse_game_file(io::load_json_file(game_path));
  auto files = io::assign_to_players(load_capacity_files(marginal_paths), g);
  std::vector<Capacity> marginals;
  for (const auto& f : files) marginals.push_back(f.as_capacity());

  ProbeReport rep = uncertainty_implies_nash_probe(g, marginals, grid_m);
  Json doc = report_head("probe-nash");
  doc["grid_m"] = grid_m;
  doc["possibility_beliefs"] = rep.possibility_beliefs;
  doc["precondition_met"] = rep.precondition_met;
  doc["nash_verdict"] = rep.nash_verdict;
  doc["counterexample"] = rep.counterexample;
  doc["note"] = rep.note;
  doc["uncertainty"] = uncertainty_json(g, rep.uncertainty);
  doc["nash"] = rep.nash ? nash_json(g, *rep.nash) : Json(nullptr);
  emit(out, doc);
  return 0;
}

int do_selftest(std::uint64_t seed, std::ostream& out) {
  auto results = run_selftest(seed);
  Json doc = report_head("selftest");
  doc["seed"] = seed;
  bool all_ok = true;
  Json checks = Json::array();
  for (const auto& r : results) {
    Json item;
    item["name"] = r.name;
    item["cases"] = static_cast<std::uint64_t>(r.cases);
    item["failures"] = static_cast<std::uint64_t>(r.failures);
    if (!r.detail.empty()) item["detail"] = r.detail;
    checks.push_back(std::move(item));
    all_ok = all_ok && r.failures == 0;
  }
  doc["verdict"] = all_ok;
  doc["checks"] = std::move(checks);
  emit(out, doc);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"max-plus capacity games: validation, integration, tensor products and equilibria"};
  app.require_subcommand(1);

  std::string capacity_path, function_path, game_path, player, belief_path;
  std::string mode_nash = "max", mode_search = "crisp";
  std::vector<std::string> capacity_paths, profile_paths, belief_paths, deviation_paths,
      marginal_paths;
  int grid_m = 10;
  std::uint64_t seed = 1;

  auto* c_validate = app.add_subcommand("validate", "check a capacity file against the invariants");
  c_validate->add_option("--capacity", capacity_path, "capacity file")->required();

  auto* c_dual = app.add_subcommand("dual", "emit the dual capacity");
  c_dual->add_option("--capacity", capacity_path, "capacity file")->required();

  auto* c_classify = app.add_subcommand("classify", "report possibility/necessity flags");
  c_classify->add_option("--capacity", capacity_path, "capacity file")->required();

  auto* c_tensor = app.add_subcommand("tensor", "tensor product of capacities, in order");
  c_tensor->add_option("--capacities", capacity_paths, "capacity files")->required();

  auto* c_integrate = app.add_subcommand("integrate", "max-plus integral of a function");
  c_integrate->add_option("--capacity", capacity_path, "capacity file")->required();
  c_integrate->add_option("--function", function_path, "function file")->required();

  auto* c_expected = app.add_subcommand("expected-payoff", "expected payoff of a mixed profile");
  c_expected->add_option("--game", game_path, "game file")->required();
  c_expected->add_option("--player", player, "player id")->required();
  c_expected->add_option("--profile", profile_paths, "one capacity file per player")->required();

  auto* c_best = app.add_subcommand("best-response", "best responses to a belief");
  c_best->add_option("--game", game_path, "game file")->required();
  c_best->add_option("--player", player, "player id")->required();
  c_best->add_option("--belief", belief_path, "capacity file on the opponent product")->required();

  auto* c_nash = app.add_subcommand("check-nash", "Nash check against a deviation grid");
  c_nash->add_option("--game", game_path, "game file")->required();
  c_nash->add_option("--profile", profile_paths, "one capacity file per player")->required();
  c_nash->add_option("--mode", mode_nash, "max or min (default max)");
  c_nash->add_option("--grid", grid_m, "deviation grid resolution (default 10)");
  c_nash->add_option("--deviations", deviation_paths, "extra deviation files (need player keys)");

  auto* c_unc = app.add_subcommand("check-uncertainty", "equilibrium-under-uncertainty check");
  c_unc->add_option("--game", game_path, "game file")->required();
  c_unc->add_option("--beliefs", belief_paths, "one belief file per player")->required();

  auto* c_min = app.add_subcommand("find-min-equilibrium", "grid search for a min-equilibrium");
  c_min->add_option("--game", game_path, "game file")->required();
  c_min->add_option("--grid", grid_m, "density grid resolution (default 10)");

  auto* c_search = app.add_subcommand("find-uncertainty-equilibrium",
                                      "search for equilibria under uncertainty");
  c_search->add_option("--game", game_path, "game file")->required();
  c_search->add_option("--mode", mode_search, "crisp or iterate (default crisp)");

  auto* c_probe = app.add_subcommand("probe-nash", "uncertainty-implies-Nash probe");
  c_probe->add_option("--game", game_path, "game file")->required();
  c_probe->add_option("--marginals", marginal_paths, "two per-player capacity files")->required();
  c_probe->add_option("--grid", grid_m, "deviation grid resolution (default 10)");

  auto* c_selftest = app.add_subcommand("selftest", "randomized invariant sweep");
  c_selftest->add_option("--seed", seed, "RNG seed (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    emit_error(err, "UsageError", e.what());
    return 1;
  }

  try {
    if (*c_validate) return do_validate(capacity_path, out);
    if (*c_dual) return do_dual(capacity_path, out);
    if (*c_classify) return do_classify(capacity_path, out);
    if (*c_tensor) return do_tensor(capacity_paths, out, err);
    if (*c_integrate) return do_integrate(capacity_path, function_path, out);
    if (*c_expected) return do_expected_payoff(game_path, player, profile_paths, out);
    if (*c_best) return do_best_response(game_path, player, belief_path, out);
    if (*c_nash)
      return do_check_nash(game_path, profile_paths, mode_nash, grid_m, deviation_paths, out);
    if (*c_unc) return do_check_uncertainty(game_path, belief_paths, out);
    if (*c_min) return do_find_min_equilibrium(game_path, grid_m, out);
    if (*c_search) return do_find_uncertainty_equilibrium(game_path, mode_search, out);
    if (*c_probe) return do_probe_nash(game_path, marginal_paths, grid_m, out);
    if (*c_selftest) return do_selftest(seed, out);
    emit_error(err, "UsageError", "no subcommand selected");
    return 1;
  } catch (const Error& e) {
    emit_error(err, e.kind(), e.what());
    return e.kind() == "GuardExceeded" ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    emit_error(err, "ParseError", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error(err, "InternalError", e.what());
    return 1;
  }
}

}  // namespace mpg::cli
