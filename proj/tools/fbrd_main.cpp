// fbrd: critical speeds, profiles, PDE runs, sweeps and the acceptance checks.
//
// Every subcommand accepts --config <file.json>; flags given on the command
// line override the corresponding fields of that document.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fbrd/cli/command.hpp"
#include "fbrd/cli/execute.hpp"
#include "fbrd/io.hpp"

namespace {

using fbrd::cli::json;

enum Exit { ok = 0, failed_checks = 1, bad_config = 2, execution = 3, io = 4 };

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::string> format;
  std::map<std::string, std::optional<double>> numbers;
  std::map<std::string, std::optional<std::string>> strings;
  std::optional<std::vector<int>> only;
  bool strict = false;
};

// Field path inside the config document for each flag.
struct Key {
  const char* flag;
  const char* path;
  const char* help;
};

void set_path(json& doc, const std::string& path, json value) {
  json* node = &doc;
  std::size_t start = 0;
  for (std::size_t dot; (dot = path.find('.', start)) != std::string::npos; start = dot + 1) {
    const auto key = path.substr(start, dot - start);
    if (!node->contains(key) || !(*node)[key].is_object()) (*node)[key] = json::object();
    node = &(*node)[key];
  }
  (*node)[path.substr(start)] = std::move(value);
}

CLI::App* add_verb(CLI::App& app, const char* name, const char* help, Flags& f, const std::vector<Key>& numeric,
                   const std::vector<Key>& text) {
  auto* sub = app.add_subcommand(name, help);
  sub->add_option("--config", f.config, "JSON config; flags override its fields");
  sub->add_option("--out", f.out, "output path stem (default: stdout)");
  sub->add_option("--format", f.format, "stdout format")->check(CLI::IsMember({"csv", "json"}));
  for (const auto& k : numeric) sub->add_option(k.flag, f.numbers[k.path], k.help);
  for (const auto& k : text) sub->add_option(k.flag, f.strings[k.path], k.help);
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traveling and stationary waves of a reaction-diffusion equation with a free boundary"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  Flags f;

  const Key alpha{"--alpha", "alpha", "threshold alpha in (0, 1)"};
  const Key tol{"--tol", "tol", "speed bisection tolerance"};
  const Key c{"--c", "c", "wave speed"};
  const Key L{"--L", "L", "length of the zero interval"};
  const Key step{"--step", "step", "profile grid step"};

  add_verb(app, "speeds", "critical wave speeds for one alpha", f, {alpha, tol}, {});
  add_verb(app, "wave", "traveling-wave profile", f, {alpha, tol, c, L, step},
           {{"--kind", "kind", "bistable | plateau | monostable | pushed"}});
  add_verb(app, "stationary", "stationary profile", f, {alpha, L, step, {"--u0", "u0", "turning point (periodic)"}},
           {{"--kind", "kind", "bump | dip | glued | periodic"}});
  add_verb(app, "pde", "direct simulation", f,
           {alpha,
            {"--T", "T", "final time"},
            {"--dx", "grid.dx", "grid spacing"},
            {"--x-min", "grid.x_min", "left end"},
            {"--x-max", "grid.x_max", "right end"},
            {"--dt-factor", "dt_factor", "dt / dx^2, at most 0.4"},
            {"--probe-every", "probe_every", "snapshot interval"},
            {"--track-level", "track.level", "level of the tracked front"},
            {"--scale", "initial.scale", "profile datum scale"},
            {"--shift", "initial.shift", "profile datum shift"},
            {"--value", "initial.value", "constant datum value"}},
           {{"--initial", "initial.kind", "tanh-front | sech-dip | exp-dip | constant | profile | table"},
            {"--profile", "initial.profile", "bump | dip | glued | bistable"}});
  add_verb(app, "sweep", "tabulate a quantity over alpha or c", f,
           {alpha,
            tol,
            {"--lo", "lo", "range start"},
            {"--hi", "hi", "range end"},
            {"--count", "count", "grid points"},
            {"--dx", "dx", "front_speed grid spacing"},
            {"--T", "T", "front_speed final time"},
            {"--half-width", "half_width", "front_speed domain half width"}},
           {{"--parameter", "parameter", "alpha | c"}, {"--quantity", "quantity", "swept quantity"}});
  auto* verify = add_verb(app, "verify", "run the acceptance checks", f, {}, {});
  verify->add_flag("--strict", f.strict, "finer grids");
  verify->add_option("--only", f.only, "criterion ids to run");

  CLI11_PARSE(app, argc, argv);
  const std::string verb = app.get_subcommands().front()->get_name();

  fbrd::cli::Command cmd;
  try {
    json doc = json::object();
    if (!f.config.empty()) {
      try {
        doc = json::parse(fbrd::read_file(f.config));
      } catch (const json::parse_error& e) {
        throw fbrd::cli::ConfigError(f.config + ": invalid JSON: " + e.what());
      }
      if (doc.contains("verb") && doc["verb"] != verb) {
        throw fbrd::cli::ConfigError("$.verb: config is for '" + doc["verb"].dump() + "', command line says '" + verb + "'");
      }
    }
    doc["verb"] = verb;
    for (const auto& [path, v] : f.numbers) {
      if (!v) continue;
      // Integral fields stay integral so the schema check accepts them.
      if (path == "count") set_path(doc, path, static_cast<int>(*v));
      else set_path(doc, path, *v);
    }
    for (const auto& [path, v] : f.strings) {
      if (v) set_path(doc, path, *v);
    }
    if (f.strict) doc["preset"] = "strict";
    if (f.only) doc["only"] = *f.only;
    if (!f.out.empty()) set_path(doc, "output.path", f.out);
    if (f.format) set_path(doc, "output.format", *f.format);
    cmd = fbrd::cli::parse_config_json(doc);
  } catch (const fbrd::IoError& e) {
    std::cerr << "fbrd: " << e.what() << '\n';
    return io;
  } catch (const std::exception& e) {
    std::cerr << "fbrd: " << e.what() << '\n';
    return bad_config;
  }

  try {
    const auto outcome = fbrd::cli::execute(cmd, cmd.verb() == fbrd::cli::Verb::verify ? &std::cerr : nullptr);
    fbrd::cli::emit(outcome, cmd.output, std::cout);
    return outcome.success ? ok : failed_checks;
  } catch (const fbrd::IoError& e) {
    std::cerr << "fbrd: " << e.what() << '\n';
    return io;
  } catch (const std::exception& e) {
    std::cerr << "fbrd: " << e.what() << '\n';
    return execution;
  }
}
