#include <cmath>

#include "doctest.h"
#include "mpg/io.hpp"
#include "testutil.hpp"

using namespace mpg;
using io::Json;
using testutil::space_ab;

TEST_CASE("possibility capacity files parse to densities") {
  Json j = Json::parse(R"({"space": ["a","b"], "kind": "possibility",
                           "density": {"a": 1.0, "b": 0.5}})");
  io::CapacityFile f = io::parse_capacity_file(j);
  CHECK(f.is_possibility_file());
  const Density& d = std::get<Density>(f.value);
  CHECK(d.weight(0) == 1.0);
  CHECK(d.weight(1) == 0.5);
  CHECK(f.as_capacity()[0b11] == 1.0);
}

TEST_CASE("general capacity files parse and validate") {
  Json j = Json::parse(R"({"space": ["a","b"], "kind": "general",
                           "values": {"": 0.0, "a": 0.7, "b": 0.3, "a|b": 1.0}})");
  io::CapacityFile f = io::parse_capacity_file(j);
  CHECK(!f.is_possibility_file());
  CHECK(std::get<Capacity>(f.value)[0b01] == 0.7);
}

TEST_CASE("unknown keys are rejected everywhere") {
  CHECK_THROWS_AS(io::parse_capacity_file(Json::parse(
                      R"({"space": ["a"], "kind": "possibility",
                          "density": {"a": 1.0}, "extra": 1})")),
                  Error);
  CHECK_THROWS_AS(io::parse_capacity_file(Json::parse(
                      R"({"space": ["a","b"], "kind": "general",
                          "values": {"": 0, "a": 1, "b": 1, "a|b": 1, "c": 1}})")),
                  Error);
  CHECK_THROWS_AS(io::parse_function_file(Json::parse(
                      R"({"space": ["a"], "values": {"a": 1.0}, "note": ""})")),
                  Error);
  CHECK_THROWS_AS(io::parse_game_file(Json::parse(
                      R"({"players": ["P1"], "strategies": {"P1": ["a"]},
                          "payoffs": {"P1": [0]}, "title": "x"})")),
                  Error);
}

TEST_CASE("omitted subsets are an error for general files") {
  CHECK_THROWS_AS(io::parse_capacity_file(Json::parse(
                      R"({"space": ["a","b"], "kind": "general",
                          "values": {"": 0.0, "a": 0.5, "a|b": 1.0}})")),
                  Error);
}

TEST_CASE("non-canonical subset names are rejected") {
  CHECK_THROWS_AS(io::parse_capacity_file(Json::parse(
                      R"({"space": ["a","b"], "kind": "general",
                          "values": {"": 0.0, "a": 0.5, "b": 0.5, "b|a": 1.0}})")),
                  Error);
}

TEST_CASE("invalid capacities fail with a validation error") {
  Json j = Json::parse(R"({"space": ["a","b"], "kind": "general",
                           "values": {"": 0.0, "a": 0.7, "b": 0.3, "a|b": 0.5}})");
  try {
    io::parse_capacity_file(j);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.kind() == "ValidationError");
  }
}

TEST_CASE("schema_version is accepted when it matches") {
  Json j = Json::parse(R"({"schema_version": "1", "space": ["a"], "kind": "possibility",
                           "density": {"a": 1.0}})");
  CHECK(io::parse_capacity_file(j).is_possibility_file());
  j["schema_version"] = "2";
  CHECK_THROWS_AS(io::parse_capacity_file(j), Error);
}

TEST_CASE("player keys survive parsing") {
  Json j = Json::parse(R"({"player": "P2", "space": ["a","b"], "kind": "possibility",
                           "density": {"a": 1.0, "b": 0.0}})");
  io::CapacityFile f = io::parse_capacity_file(j);
  REQUIRE(f.player.has_value());
  CHECK(*f.player == "P2");
}

TEST_CASE("game files parse into row-major tensors") {
  Json j = Json::parse(R"({"players": ["P1","P2"],
                           "strategies": {"P1": ["a","b"], "P2": ["a","b"]},
                           "payoffs": {"P1": [[1,1],[0,0]], "P2": [[0,0],[0,0]]}})");
  Game g = io::parse_game_file(j);
  CHECK(g.num_players() == 2);
  CHECK(g.payoff(0, 0) == 1.0);
  CHECK(g.payoff(0, 1) == 1.0);
  CHECK(g.payoff(0, 2) == 0.0);
  CHECK(g.payoff(0, 3) == 0.0);
}

TEST_CASE("game files reject shape mismatches") {
  CHECK_THROWS_AS(io::parse_game_file(Json::parse(
                      R"({"players": ["P1","P2"],
                          "strategies": {"P1": ["a","b"], "P2": ["a","b"]},
                          "payoffs": {"P1": [[1,1],[0,0]], "P2": [[0,0]]}})")),
                  Error);
  CHECK_THROWS_AS(io::parse_game_file(Json::parse(
                      R"({"players": ["P1"],
                          "strategies": {"P1": ["a"], "P2": ["a"]},
                          "payoffs": {"P1": [0]}})")),
                  Error);
}

TEST_CASE("three-player payoff tensors flatten row-major") {
  Json j = Json::parse(R"({"players": ["P1","P2","P3"],
                           "strategies": {"P1": ["a","b"], "P2": ["c","d"], "P3": ["e","f"]},
                           "payoffs": {"P1": [[[1,2],[3,4]],[[5,6],[7,8]]],
                                       "P2": [[[0,0],[0,0]],[[0,0],[0,0]]],
                                       "P3": [[[0,0],[0,0]],[[0,0],[0,0]]]}})");
  Game g = io::parse_game_file(j);
  for (std::size_t cell = 0; cell < 8; ++cell)
    CHECK(g.payoff(0, cell) == static_cast<double>(cell + 1));
}

TEST_CASE("capacity emission round-trips through the parser") {
  Capacity nu = from_density(Density(space_ab(), {1.0, 0.25}));
  io::CapacityFile back = io::parse_capacity_file(io::capacity_json(nu));
  CHECK(back.as_capacity() == nu);
  io::CapacityFile back2 = io::parse_capacity_file(io::density_json(to_density(nu)));
  CHECK(back2.as_capacity() == nu);
}

TEST_CASE("assign_to_players respects player keys") {
  Game g = testutil::dominant_row_game();
  Json j1 = io::density_json(Density::dirac(space_ab(), 0));
  Json j2 = io::density_json(Density::dirac(space_ab(), 1));
  j1["player"] = "P2";
  j2["player"] = "P1";
  std::vector<io::CapacityFile> files{io::parse_capacity_file(j1), io::parse_capacity_file(j2)};
  auto assigned = io::assign_to_players(std::move(files), g);
  CHECK(std::get<Density>(assigned[0].value).weight(1) == 1.0);  // P1 got the second file
  CHECK(std::get<Density>(assigned[1].value).weight(0) == 1.0);
}

TEST_CASE("assign_to_players rejects mixed and duplicate keys") {
  Game g = testutil::dominant_row_game();
  Json with = io::density_json(Density::dirac(space_ab(), 0));
  with["player"] = "P1";
  Json without = io::density_json(Density::dirac(space_ab(), 1));
  {
    std::vector<io::CapacityFile> files{io::parse_capacity_file(with),
                                        io::parse_capacity_file(without)};
    CHECK_THROWS_AS(io::assign_to_players(std::move(files), g), Error);
  }
  {
    std::vector<io::CapacityFile> files{io::parse_capacity_file(with),
                                        io::parse_capacity_file(with)};
    CHECK_THROWS_AS(io::assign_to_players(std::move(files), g), Error);
  }
}

TEST_CASE("deterministic dumps format floats with twelve significant digits") {
  Json j;
  j["b"] = 1.0 / 3.0;
  j["a"] = 2.0;   // insertion order wins over alphabetical order
  j["n"] = std::uint64_t{7};
  j["s"] = "x";
  const std::string text = io::dump_deterministic(j);
  CHECK(text.find("0.333333333333") != std::string::npos);
  CHECK(text.find("\"b\"") < text.find("\"a\""));
  CHECK(io::dump_deterministic(j) == text);  // byte-stable
}

TEST_CASE("extended reals serialize with the -inf sentinel") {
  CHECK(io::extended_real_json(ExtendedReal::neg_infinity()) == Json("-inf"));
  CHECK(io::extended_real_json(ExtendedReal::finite(2.0)) == Json(2.0));
}
