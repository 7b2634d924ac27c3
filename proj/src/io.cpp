#include "mpg/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace mpg::io {

namespace {

void require_object(const Json& j, const char* what) {
  if (!j.is_object()) throw parse_error(std::string(what) + " must be a JSON object");
}

/// Every key must be listed; every required key must be present.
void check_keys(const Json& j, const std::vector<std::string>& required,
                const std::vector<std::string>& optional, const char* what) {
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    bool known = false;
    for (const auto& r : required) known = known || k == r;
    for (const auto& o : optional) known = known || k == o;
    if (!known) throw parse_error(std::string(what) + ": unknown key \"" + k + "\"");
  }
  for (const auto& r : required)
    if (!j.contains(r)) throw parse_error(std::string(what) + ": missing key \"" + r + "\"");
}

void check_schema_version(const Json& j, const char* what) {
  if (!j.contains("schema_version")) return;
  if (!j["schema_version"].is_string() || j["schema_version"] != kSchemaVersion)
    throw parse_error(std::string(what) + ": unsupported schema_version");
}

double number_at(const Json& j, const std::string& key, const char* what) {
  const Json& v = j.at(key);
  if (!v.is_number()) throw parse_error(std::string(what) + ": \"" + key + "\" must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw parse_error(std::string(what) + ": \"" + key + "\" must be finite");
  return d;
}

FiniteSpace parse_space(const Json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw parse_error(std::string(what) + ": \"space\" must be a nonempty array of labels");
  std::vector<std::string> labels;
  labels.reserve(j.size());
  for (const auto& l : j) {
    if (!l.is_string()) throw parse_error(std::string(what) + ": labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  try {
    return FiniteSpace(std::move(labels));
  } catch (const Error& e) {
    throw parse_error(std::string(what) + ": " + e.what());
  }
}

std::optional<std::string> parse_player_key(const Json& j, const char* what) {
  if (!j.contains("player")) return std::nullopt;
  if (!j["player"].is_string())
    throw parse_error(std::string(what) + ": \"player\" must be a string");
  return j["player"].get<std::string>();
}

}  // namespace

RawCapacityFile parse_capacity_raw(const Json& j) {
  const char* what = "capacity file";
  require_object(j, what);
  check_schema_version(j, what);
  check_keys(j, {"space", "kind"}, {"density", "values", "player", "schema_version"}, what);
  FiniteSpace space = parse_space(j.at("space"), what);
  if (!j.at("kind").is_string()) throw parse_error("capacity file: \"kind\" must be a string");
  const std::string kind = j.at("kind").get<std::string>();

  RawCapacityFile out{std::move(space), parse_player_key(j, what), false, {}};
  if (kind == "possibility") {
    if (!j.contains("density") || j.contains("values"))
      throw parse_error("capacity file: kind \"possibility\" requires a \"density\" map");
    const Json& den = j.at("density");
    require_object(den, "density map");
    out.is_possibility = true;
    out.numbers.resize(out.space.size());
    std::size_t seen = 0;
    for (const auto& item : den.items()) {
      auto idx = out.space.index_of(item.key());
      if (!idx) throw parse_error("density map: unknown point \"" + item.key() + "\"");
      out.numbers[*idx] = number_at(den, item.key(), "density map");
      ++seen;
    }
    if (seen != out.space.size())
      throw parse_error("density map: every point needs a weight");
  } else if (kind == "general") {
    if (!j.contains("values") || j.contains("density"))
      throw parse_error("capacity file: kind \"general\" requires a \"values\" map");
    if (out.space.size() > kMaxLatticePoints)
      throw guard_exceeded("general capacity files are limited to " +
                           std::to_string(kMaxLatticePoints) + " points");
    const Json& values = j.at("values");
    require_object(values, "values map");
    for (const auto& item : values.items())
      out.space.parse_subset_name(item.key());  // rejects unknown or non-canonical keys
    const std::size_t subsets = std::size_t{1} << out.space.size();
    out.numbers.resize(subsets);
    for (SubsetMask m = 0; m < subsets; ++m) {
      const std::string name = out.space.subset_name(m);
      if (!values.contains(name))
        throw parse_error("values map: subset \"" + name + "\" omitted");
      out.numbers[m] = number_at(values, name, "values map");
    }
  } else {
    throw parse_error("capacity file: kind must be \"possibility\" or \"general\"");
  }
  return out;
}

const FiniteSpace& CapacityFile::space() const {
  if (auto* c = std::get_if<Capacity>(&value)) return c->space();
  return std::get<Density>(value).space();
}

Capacity CapacityFile::as_capacity() const {
  if (auto* c = std::get_if<Capacity>(&value)) return *c;
  return from_density(std::get<Density>(value));
}

CapacityFile parse_capacity_file(const Json& j) {
  RawCapacityFile raw = parse_capacity_raw(j);
  if (raw.is_possibility) {
    ValidationReport report = validate_density(raw.space, raw.numbers);
    if (!report.ok())
      throw validation_error("invalid density: " + report.describe(raw.space));
    return CapacityFile{std::move(raw.player),
                        Density::unchecked(std::move(raw.space), std::move(raw.numbers))};
  }
  ValidationResult result = validate(raw.space, std::move(raw.numbers));
  if (!result.capacity)
    throw validation_error("invalid capacity: " + result.report.describe(raw.space));
  return CapacityFile{std::move(raw.player), std::move(*result.capacity)};
}

RealFunction parse_function_file(const Json& j) {
  const char* what = "function file";
  require_object(j, what);
  check_schema_version(j, what);
  check_keys(j, {"space", "values"}, {"schema_version"}, what);
  FiniteSpace space = parse_space(j.at("space"), what);
  const Json& values = j.at("values");
  require_object(values, "function values");
  std::vector<double> v(space.size());
  std::size_t seen = 0;
  for (const auto& item : values.items()) {
    auto idx = space.index_of(item.key());
    if (!idx) throw parse_error("function values: unknown point \"" + item.key() + "\"");
    v[*idx] = number_at(values, item.key(), "function values");
    ++seen;
  }
  if (seen != space.size()) throw parse_error("function values: every point needs a value");
  return RealFunction(std::move(space), std::move(v));
}

namespace {

void flatten_payoffs(const Json& node, const Game* /*unused*/,
                     const std::vector<std::size_t>& dims, std::size_t depth,
                     std::vector<double>& out, const char* player) {
  if (!node.is_array() || node.size() != dims[depth])
    throw parse_error(std::string("game file: payoff tensor of \"") + player +
                      "\" has the wrong shape");
  for (const auto& child : node) {
    if (depth + 1 == dims.size()) {
      if (!child.is_number())
        throw parse_error(std::string("game file: payoff entries of \"") + player +
                          "\" must be numbers");
      const double v = child.get<double>();
      if (!std::isfinite(v))
        throw parse_error(std::string("game file: payoff entries of \"") + player +
                          "\" must be finite");
      out.push_back(v);
    } else {
      flatten_payoffs(child, nullptr, dims, depth + 1, out, player);
    }
  }
}

}  // namespace

Game parse_game_file(const Json& j) {
  const char* what = "game file";
  require_object(j, what);
  check_schema_version(j, what);
  check_keys(j, {"players", "strategies", "payoffs"}, {"schema_version"}, what);

  const Json& pj = j.at("players");
  if (!pj.is_array() || pj.empty())
    throw parse_error("game file: \"players\" must be a nonempty array");
  std::vector<std::string> players;
  for (const auto& p : pj) {
    if (!p.is_string()) throw parse_error("game file: player ids must be strings");
    players.push_back(p.get<std::string>());
  }

  const Json& sj = j.at("strategies");
  require_object(sj, "strategies map");
  for (const auto& item : sj.items()) {
    bool known = false;
    for (const auto& p : players) known = known || p == item.key();
    if (!known) throw parse_error("game file: strategies for unknown player \"" + item.key() + "\"");
  }
  std::vector<FiniteSpace> spaces;
  std::vector<std::size_t> dims;
  for (const auto& p : players) {
    if (!sj.contains(p)) throw parse_error("game file: missing strategies for \"" + p + "\"");
    spaces.push_back(parse_space(sj.at(p), what));
    dims.push_back(spaces.back().size());
  }

  const Json& uj = j.at("payoffs");
  require_object(uj, "payoffs map");
  for (const auto& item : uj.items()) {
    bool known = false;
    for (const auto& p : players) known = known || p == item.key();
    if (!known) throw parse_error("game file: payoffs for unknown player \"" + item.key() + "\"");
  }
  std::vector<std::vector<double>> payoffs;
  for (const auto& p : players) {
    if (!uj.contains(p)) throw parse_error("game file: missing payoffs for \"" + p + "\"");
    std::vector<double> flat;
    flatten_payoffs(uj.at(p), nullptr, dims, 0, flat, p.c_str());
    payoffs.push_back(std::move(flat));
  }

  try {
    return Game(std::move(players), std::move(spaces), std::move(payoffs));
  } catch (const Error& e) {
    if (e.kind() == "GuardExceeded") throw;
    throw parse_error(std::string("game file: ") + e.what());
  }
}

std::vector<CapacityFile> assign_to_players(std::vector<CapacityFile> files, const Game& g) {
  if (files.size() != g.num_players())
    throw invalid_argument("expected " + std::to_string(g.num_players()) +
                           " capacity files, got " + std::to_string(files.size()));
  std::size_t with_player = 0;
  for (const auto& f : files)
    if (f.player) ++with_player;
  if (with_player == 0) return files;
  if (with_player != files.size())
    throw invalid_argument("either every capacity file names a player or none does");

  std::vector<std::optional<CapacityFile>> slots(files.size());
  for (auto& f : files) {
    const std::size_t i = g.player_index(*f.player);
    if (slots[i]) throw invalid_argument("duplicate capacity file for player '" + *f.player + "'");
    slots[i] = std::move(f);
  }
  std::vector<CapacityFile> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("'" + path + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------

Json space_json(const FiniteSpace& space) {
  Json arr = Json::array();
  for (const auto& l : space.labels()) arr.push_back(l);
  return arr;
}

Json capacity_json(const Capacity& nu) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["space"] = space_json(nu.space());
  j["kind"] = "general";
  Json values = Json::object();
  for (SubsetMask m = 0; m < nu.values().size(); ++m)
    values[nu.space().subset_name(m)] = nu[m];
  j["values"] = std::move(values);
  return j;
}

Json density_json(const Density& d) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["space"] = space_json(d.space());
  j["kind"] = "possibility";
  Json weights = Json::object();
  for (std::size_t x = 0; x < d.point_count(); ++x)
    weights[d.space().label(x)] = d.weight(x);
  j["density"] = std::move(weights);
  return j;
}

Json extended_real_json(const ExtendedReal& v) {
  if (!v.is_finite()) return Json("-inf");
  return Json(v.value());
}

Json validation_report_json(const ValidationReport& report, const FiniteSpace& space) {
  Json arr = Json::array();
  for (const auto& v : report.violations) {
    Json item;
    switch (v.kind) {
      case ViolationKind::Boundary:
        item["kind"] = "boundary";
        item["subset"] = space.subset_name(v.subset);
        item["value"] = v.value;
        item["expected"] = v.expected;
        break;
      case ViolationKind::Range:
        item["kind"] = "range";
        item["subset"] = space.subset_name(v.subset);
        item["value"] = v.value;
        break;
      case ViolationKind::Monotonicity:
        item["kind"] = "monotonicity";
        item["subset"] = space.subset_name(v.subset);
        item["superset"] = space.subset_name(v.superset);
        item["value"] = v.value;
        item["superset_value"] = v.superset_value;
        break;
    }
    item["message"] = v.message(space);
    arr.push_back(std::move(item));
  }
  return arr;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

void dump_value(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t k = 0;
      for (const auto& item : j.items()) {
        out += pad_in;
        out += Json(item.key()).dump();
        out += ": ";
        dump_value(item.value(), out, indent, depth + 1);
        if (++k < j.size()) out += ',';
        out += '\n';
      }
      out += pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        out += pad_in;
        dump_value(j[k], out, indent, depth + 1);
        if (k + 1 < j.size()) out += ',';
        out += '\n';
      }
      out += pad + "]";
      return;
    }
    case Json::value_t::string:
      out += j.dump();
      return;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) throw internal_error("non-finite number in a report");
      out += format_double(v);
      return;
    }
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string dump_deterministic(const Json& j, int indent) {
  std::string out;
  dump_value(j, out, indent, 0);
  return out;
}

}  // namespace mpg::io
