#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "fbrd/cli/command.hpp"
#include "fbrd/cli/execute.hpp"
#include "fbrd/io.hpp"

using namespace fbrd;
using namespace fbrd::cli;

namespace {

std::string error_of(std::string_view text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("parse: speeds defaults") {
  const auto c = parse_config(R"({"verb": "speeds", "alpha": 0.3})");
  CHECK(c.verb() == Verb::speeds);
  const auto& a = std::get<SpeedsArgs>(c.options);
  CHECK(a.alpha == 0.3);
  CHECK(a.tol == kDefaultSpeedTol);
  CHECK(c.output.path.empty());
}

TEST_CASE("parse: errors carry path and interval") {
  const auto e = error_of(R"({"verb": "speeds", "alpha": 1.5})");
  CHECK(e.find("$.alpha") != std::string::npos);
  CHECK(e.find("(0, 1)") != std::string::npos);
  CHECK(error_of(R"({"verb": "speeds", "alpha": 0.3, "tol": 0})").find("$.tol") != std::string::npos);
  CHECK(error_of(R"({"verb": "speeds", "alpha": 0.3, "bogus": 1})").find("$.bogus: unknown field") != std::string::npos);
  CHECK(error_of(R"({"verb": "speeds"})").find("$.alpha: required") != std::string::npos);
  CHECK(error_of(R"({"verb": "fly"})").find("$.verb") != std::string::npos);
  CHECK(error_of("{not json").find("invalid JSON") != std::string::npos);
  CHECK(error_of(R"({"verb": "wave", "alpha": 0.5, "kind": "pushed"})").find("$.c") != std::string::npos);
  CHECK(error_of(R"({"verb": "pde", "alpha": 0.3, "grid": {"x_min": 0, "x_max": 1, "dx": 0.3}, "T": 1,
                     "initial": {"kind": "constant"}})")
            .find("$.grid") != std::string::npos);
  CHECK(error_of(R"({"verb": "pde", "alpha": 0.3, "grid": {"x_min": -5, "x_max": 5, "dx": 0.1}, "T": 1,
                     "dt_factor": 0.5, "initial": {"kind": "constant"}})")
            .find("(0, 0.4]") != std::string::npos);
  CHECK(error_of(R"({"verb": "pde", "alpha": 0.3, "grid": {"x_min": -5, "x_max": 5, "dx": 0.1}, "T": 1,
                     "initial": {"kind": "constant", "amplitude": 2}})")
            .find("$.initial.amplitude: unknown field") != std::string::npos);
  CHECK(error_of(R"({"verb": "sweep", "parameter": "alpha", "quantity": "bump_max", "lo": 0.1, "hi": 0.5})")
            .find("(0, 0.3333") != std::string::npos);
  CHECK(error_of(R"({"verb": "sweep", "parameter": "alpha", "quantity": "c_bistable", "lo": 0.5, "hi": 0.1})")
            .find("lo must be < hi") != std::string::npos);
  CHECK(error_of(R"({"verb": "sweep", "parameter": "alpha", "quantity": "c_bistable", "lo": 0.1, "hi": 0.5,
                     "count": 1})")
            .find("$.count") != std::string::npos);
}

TEST_CASE("parse: pde config round-trips") {
  const auto text = R"({
    "verb": "pde", "alpha": 0.3,
    "grid": {"x_min": -150, "x_max": 150, "dx": 0.1},
    "dt_factor": 0.4, "T": 200, "probe_every": 1,
    "initial": {"kind": "tanh-front", "amplitude": 0.5, "offset": 0, "steepness": 0.1, "orientation": -1},
    "track": {"level": 0.5},
    "output": {"path": "fig6b", "format": "csv"}
  })";
  const auto c = parse_config(text);
  const auto again = parse_config_json(to_json(c));
  CHECK(again == c);
  CHECK(to_json(again) == to_json(c));
  CHECK(dump_json(to_json(again)) == dump_json(to_json(c)));
  const auto& a = std::get<PdeArgs>(c.options);
  CHECK(a.track_level == 0.5);
  const auto probes = probe_times(a);
  CHECK(probes.size() == 201);
  CHECK(probes.back() == 200.0);

  for (const char* t : {R"({"verb": "wave", "alpha": 0.5, "kind": "monostable", "c": 1.5, "step": 0.01})",
                        R"({"verb": "stationary", "alpha": 0.6, "kind": "periodic", "u0": 0.5})",
                        R"({"verb": "sweep", "parameter": "c", "quantity": "endpoint_minus", "alpha": 0.5,
                            "lo": 0, "hi": 1, "count": 5})",
                        R"({"verb": "verify", "preset": "strict", "only": [1, 3]})",
                        R"({"verb": "pde", "alpha": 0.25, "grid": {"x_min": -10, "x_max": 10, "dx": 0.1}, "T": 1,
                            "probes": [0.5, 1], "initial": {"kind": "table", "x": [-1, 1], "u": [0, 0.5]}})"}) {
    CAPTURE(t);
    const auto c2 = parse_config(std::string_view(t));
    CHECK(parse_config_json(to_json(c2)) == c2);
  }
}

TEST_CASE("json writer") {
  json j;
  j["b"] = 0.1;
  j["a"] = std::nan("");
  j["v"] = {1.0, 2.5};
  j["s"] = "x";
  const auto s = dump_json(j);
  CHECK(s == "{\n  \"b\": 0.10000000000000001,\n  \"a\": null,\n  \"v\": [1, 2.5],\n  \"s\": \"x\"\n}\n");
  CHECK(json::parse(s)["b"].get<double>() == 0.1);
}

TEST_CASE("execute: speeds") {
  const auto o = execute(parse_config(R"({"verb": "speeds", "alpha": 0.5})"));
  REQUIRE(o.artifacts.size() == 2);
  const auto j = json::parse(o.artifacts[0].content);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"alpha", "c_kpp", "c_bistable", "c_pushed_min", "c_monotone_min", "brackets",
                                         "tol", "config"});
  CHECK(j["c_kpp"].get<double>() == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(j["c_bistable"].get<double>() + 0.339) <= 0.005);
  CHECK(j["config"]["verb"] == "speeds");
}

TEST_CASE("execute: stationary dip") {
  const auto o = execute(parse_config(R"({"verb": "stationary", "alpha": 0.5, "kind": "dip"})"));
  const auto side = json::parse(o.artifacts[1].content);
  CHECK(std::abs(side["min_u"].get<double>() - 0.25) <= 1e-6);
  CHECK(side["limits"]["minus"] == "1");
  CHECK(lines(o.artifacts[0].content).front() == "xi,u");
}

TEST_CASE("execute: errors name the subcommand") {
  try {
    (void)execute(parse_config(R"({"verb": "wave", "alpha": 0.5, "kind": "pushed", "c": 0.3})"));
    FAIL("expected an error");
  } catch (const ExecutionError& e) {
    const std::string w = e.what();
    CHECK(w.rfind("wave ", 0) == 0);
    CHECK(w.find("\"c\":0.3") != std::string::npos);
  }
}

TEST_CASE("execute: sweep of the bistable speed") {
  const auto o = execute(parse_config(
      R"({"verb": "sweep", "parameter": "alpha", "quantity": "c_bistable", "lo": 0.1, "hi": 0.6, "count": 11})"));
  const auto rows = lines(o.artifacts[0].content);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == "alpha,c_bistable");
  std::vector<double> c;
  for (std::size_t i = 1; i < rows.size(); ++i) c.push_back(std::stod(rows[i].substr(rows[i].find(',') + 1)));
  // alpha = 0.1 + 0.05 k: 1/3 lies between k = 4 and k = 5.
  for (int k = 0; k <= 4; ++k) CHECK(c[k] > 0.0);
  for (int k = 5; k <= 10; ++k) CHECK(c[k] < 0.0);
}

TEST_CASE("emit is deterministic") {
  const auto cmd = parse_config(R"({"verb": "wave", "alpha": 0.3, "step": 0.01,
                                    "output": {"path": "", "format": "csv"}})");
  const auto dir = std::filesystem::temp_directory_path() / "fbrd_emit_test";
  std::filesystem::create_directories(dir);
  Output out{(dir / "a").string(), Format::csv};
  emit(execute(cmd), out, std::cout);
  const auto first = read_file(dir / "a.csv");
  const auto side = read_file(dir / "a.json");
  emit(execute(cmd), out, std::cout);
  CHECK(read_file(dir / "a.csv") == first);
  CHECK(read_file(dir / "a.json") == side);
  CHECK(first.find('\r') == std::string::npos);
  CHECK(json::parse(side)["config"]["verb"] == "wave");

  std::ostringstream os;
  emit(execute(cmd), cmd.output, os);
  CHECK(os.str() == first);

  Output bad{(dir / "missing" / "x").string(), Format::json};
  CHECK_THROWS_AS(emit(execute(cmd), bad, std::cout), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("execute: pde artifacts") {
  const auto o = execute(parse_config(R"({"verb": "pde", "alpha": 0.5,
      "grid": {"x_min": -5, "x_max": 5, "dx": 0.1}, "T": 1, "probe_every": 0.25,
      "initial": {"kind": "constant", "value": 0.25}})"));
  REQUIRE(o.artifacts.size() == 1 + 5);
  const auto s = json::parse(o.artifacts[0].content);
  CHECK(s["extinction_time"].get<double>() == doctest::Approx(1.0));
  CHECK(o.artifacts[1].suffix == "_snap0000.csv");
  CHECK(lines(o.artifacts[1].content).front() == "x,u");
}
