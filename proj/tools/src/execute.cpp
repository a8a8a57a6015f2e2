#include "fbrd/cli/execute.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "fbrd/cli/verify.hpp"
#include "fbrd/io.hpp"
#include "fbrd/pde.hpp"
#include "fbrd/profiles.hpp"
#include "fbrd/shooting.hpp"

namespace fbrd::cli {

namespace {

void write_json(std::string& out, const json& j, int indent) {
  const auto pad = [&](int n) { out.append(static_cast<std::size_t>(n), ' '); };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        pad(indent + 2);
        out += json(k).dump();
        out += ": ";
        write_json(out, v, indent + 2);
      }
      out += "\n";
      pad(indent);
      out += "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Numeric arrays stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write_json(out, j[i], indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        pad(indent + 2);
        write_json(out, j[i], indent + 2);
      }
      out += "\n";
      pad(indent);
      out += "]";
      return;
    }
    case json::value_t::number_float: {
      const double d = j.get<double>();
      out += std::isfinite(d) ? format_double(d) : "null";
      return;
    }
    default: out += j.dump(); return;
  }
}

json estimate_json(const SpeedEstimate& e) {
  return {{"value", e.value},   {"lo", e.lo},
          {"hi", e.hi},         {"method", to_string(e.method)},
          {"at_lo", e.at_lo},   {"at_hi", e.at_hi},
          {"degenerate", e.degenerate}, {"evaluations", e.evaluations}};
}

json intervals_json(const std::vector<Interval>& v) {
  json a = json::array();
  for (const auto& i : v) a.push_back(json::array({i.lo, i.hi}));
  return a;
}

std::string csv_of(const auto& writer, const auto& value) {
  std::ostringstream os;
  writer(os, value);
  return os.str();
}

Outcome speeds(const SpeedsArgs& a, const json& config) {
  const auto s = critical_speeds(a.alpha, a.tol);
  json j;
  j["alpha"] = s.alpha;
  j["c_kpp"] = s.c_kpp.value;
  j["c_bistable"] = s.c_bistable.value;
  j["c_pushed_min"] = s.c_pushed_min.value;
  j["c_monotone_min"] = s.c_monotone_min.value;
  j["brackets"] = {{"c_kpp", estimate_json(s.c_kpp)},
                   {"c_bistable", estimate_json(s.c_bistable)},
                   {"c_pushed_min", estimate_json(s.c_pushed_min)},
                   {"c_monotone_min", estimate_json(s.c_monotone_min)}};
  j["tol"] = s.tol;
  j["config"] = config;

  std::ostringstream csv;
  write_table_csv(csv, {"alpha", "c_kpp", "c_bistable", "c_pushed_min", "c_monotone_min"},
                  {{s.alpha, s.c_kpp.value, s.c_bistable.value, s.c_pushed_min.value, s.c_monotone_min.value}});
  return {{{".json", Format::json, dump_json(j)}, {".csv", Format::csv, csv.str()}}, true};
}

Outcome profile_outcome(const WaveProfile& p, const json& config, json extra = json::object()) {
  json j;
  j["kind"] = to_string(p.kind);
  j["alpha"] = p.alpha;
  j["speed"] = p.speed;
  j["free_boundaries"] = p.free_boundaries;
  j["zero_intervals"] = intervals_json(p.zero_intervals);
  j["limits"] = {{"minus", to_string(p.limits.first)}, {"plus", to_string(p.limits.second)}};
  j["plateau_length"] = p.plateau_length;
  j["grid_step"] = p.grid_step;
  j["samples"] = p.size();
  j["min_u"] = p.min_u();
  j["max_u"] = p.max_u();
  if (p.shape) j["shape"] = to_string(*p.shape);
  for (const auto& [k, v] : extra.items()) j[k] = v;
  j["config"] = config;
  return {{{".csv", Format::csv, csv_of(write_profile_csv, p)}, {".json", Format::json, dump_json(j)}}, true};
}

Outcome wave(const WaveArgs& a, const json& config) {
  ProfileOptions o;
  o.step = a.step;
  o.speed_tol = a.tol;
  switch (a.kind) {
    case WaveKind::bistable: return profile_outcome(bistable_profile(a.alpha, o), config);
    case WaveKind::plateau: return profile_outcome(plateau_profile(a.alpha, a.L, o), config);
    case WaveKind::monostable: return profile_outcome(monostable_profile(a.alpha, *a.c, o), config);
    case WaveKind::pushed: return profile_outcome(pushed_profile(a.alpha, *a.c, o), config);
  }
  throw PreconditionError("unknown wave kind");
}

Outcome stationary(const StationaryArgs& a, const json& config) {
  ProfileOptions o;
  o.step = a.step;
  StationarySpec s;
  s.kind = a.kind;
  s.L = a.L;
  if (a.u0) s.u0 = *a.u0;
  const auto p = stationary_profile(a.alpha, s, o);
  json extra = json::object();
  if (a.kind == StationaryKind::periodic) {
    extra["period"] = orbit_period(a.alpha, *a.u0);
    extra["conjugate_turning_point"] = conjugate_turning_point(a.alpha, *a.u0);
  }
  return profile_outcome(p, config, extra);
}

Outcome pde(const PdeArgs& a, const json& config) {
  const auto grid = Grid1D::make(a.grid.x_min, a.grid.x_max, a.grid.dx);
  const auto state = initial_state(make_datum(a.initial, a.alpha), grid);
  RunOptions o;
  o.dt_factor = a.dt_factor;
  if (a.track_level) o.track_levels.push_back(*a.track_level);
  const auto r = run(state, a.alpha, a.T, probe_times(a), o);

  json j;
  j["alpha"] = r.alpha;
  j["dt"] = r.dt;
  j["nodes"] = grid.n;
  j["probe_times"] = r.probe_times;
  if (!r.tracks.empty()) {
    const auto& t = r.tracks.front();
    j["track"] = {{"level", t.level},
                  {"fitted_speed", t.fitted_speed},
                  {"window", {t.window_start, t.window_end}},
                  {"complete", t.complete}};
  }
  j["extinction_time"] = r.extinction_time ? json(*r.extinction_time) : json(nullptr);
  j["clamped_mass"] = r.clamped_mass.empty() ? 0.0 : r.clamped_mass.back();
  j["min_value"] = r.min_value;
  j["final_support"] = intervals_json(r.supports.empty() ? std::vector<Interval>{} : r.supports.back());
  j["config"] = config;

  Outcome out;
  out.artifacts.push_back({".json", Format::json, dump_json(j)});
  if (!r.tracks.empty()) out.artifacts.push_back({"_track.csv", Format::csv, csv_of(write_track_csv, r.tracks.front())});
  for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "_snap%04zu.csv", k);
    out.artifacts.push_back({name, Format::csv, csv_of(write_snapshot_csv, r.snapshots[k])});
  }
  return out;
}

double front_speed(double alpha, const SweepArgs& a) {
  const auto grid = Grid1D::make(-a.half_width, a.half_width, a.dx);
  const auto state = initial_state(TanhFront{0.5, 0.0, 0.1, -1.0, 0.0}, grid);
  RunOptions o;
  o.track_levels = {0.5};
  std::vector<double> probes;
  for (int k = 1; k <= 200; ++k) probes.push_back(a.T * k / 200.0);
  return run(state, alpha, a.T, probes, o).tracks.front().fitted_speed;
}

Outcome sweep(const SweepArgs& a, const json& config) {
  const bool over_c = a.parameter == SweepParameter::c;
  std::vector<std::string> header{std::string(to_string(a.parameter)), std::string(to_string(a.quantity))};
  if (over_c) header.emplace_back("crossing");
  std::vector<std::vector<double>> rows;
  for (int k = 0; k < a.count; ++k) {
    const double x = (a.lo * (a.count - 1 - k) + a.hi * k) / (a.count - 1);
    try {
      switch (a.quantity) {
        case SweepQuantity::c_bistable: rows.push_back({x, bistable_speed(x, a.tol).value}); break;
        case SweepQuantity::c_pushed_min: rows.push_back({x, pushed_min_speed(x, a.tol).value}); break;
        case SweepQuantity::c_monotone_min: rows.push_back({x, monotone_min_speed(x, a.tol).value}); break;
        case SweepQuantity::bump_max: rows.push_back({x, bump_max(x)}); break;
        case SweepQuantity::dip_min: {
          ProfileOptions o;
          o.step = 1e-2;
          rows.push_back({x, stationary_profile(x, {StationaryKind::dip, 0.0, 0.0}, o).min_u()});
          break;
        }
        case SweepQuantity::front_speed: rows.push_back({x, front_speed(x, a)}); break;
        case SweepQuantity::endpoint_minus:
        case SweepQuantity::endpoint_plus: {
          const auto b = a.quantity == SweepQuantity::endpoint_minus ? Branch::minus : Branch::plus;
          const auto e = endpoint(*a.alpha, x, b);
          rows.push_back({x, e.has_crossing() ? e.value : std::nan(""), e.has_crossing() ? 1.0 : 0.0});
          break;
        }
      }
    } catch (const std::exception& e) {
      throw PreconditionError("at " + std::string(to_string(a.parameter)) + " = " + format_double(x) + ": " + e.what());
    }
  }
  std::ostringstream csv;
  write_table_csv(csv, header, rows);
  json j;
  j["parameter"] = to_string(a.parameter);
  j["quantity"] = to_string(a.quantity);
  j["rows"] = rows.size();
  j["columns"] = header;
  j["config"] = config;
  return {{{".csv", Format::csv, csv.str()}, {".json", Format::json, dump_json(j)}}, true};
}

Outcome verify(const VerifyArgs& a, const json& config, std::ostream* progress) {
  const auto report = run_verify(a, [&](const CheckResult& r) {
    if (progress) *progress << format_line(r) << '\n' << std::flush;
  });
  auto j = to_json(report);
  j["config"] = config;
  std::ostringstream csv;
  std::vector<std::vector<double>> rows;
  for (const auto& c : report.checks) rows.push_back({double(c.id), c.pass ? 1.0 : 0.0, c.seconds, c.limit_seconds});
  write_table_csv(csv, {"id", "pass", "seconds", "limit_seconds"}, rows);
  return {{{".json", Format::json, dump_json(j)}, {".csv", Format::csv, csv.str()}}, report.all_pass()};
}

}  // namespace

std::string dump_json(const json& j) {
  std::string out;
  write_json(out, j, 0);
  out += '\n';
  return out;
}

Outcome execute(const Command& c, std::ostream* progress) {
  auto config = to_json(c);
  try {
    return std::visit(
        [&](const auto& a) -> Outcome {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, SpeedsArgs>) return speeds(a, config);
          else if constexpr (std::is_same_v<T, WaveArgs>) return wave(a, config);
          else if constexpr (std::is_same_v<T, StationaryArgs>) return stationary(a, config);
          else if constexpr (std::is_same_v<T, PdeArgs>) return pde(a, config);
          else if constexpr (std::is_same_v<T, SweepArgs>) return sweep(a, config);
          else return verify(a, config, progress);
        },
        c.options);
  } catch (const std::exception& e) {
    config.erase("output");
    throw ExecutionError(std::string(to_string(c.verb())) + " " + config.dump() + ": " + e.what());
  }
}

void emit(const Outcome& o, const Output& output, std::ostream& out) {
  if (output.path.empty()) {
    const Artifact* pick = nullptr;
    for (const auto& a : o.artifacts) {
      if (a.format == output.format) {
        pick = &a;
        break;
      }
    }
    if (!pick && !o.artifacts.empty()) pick = &o.artifacts.front();
    if (pick) out << pick->content;
    return;
  }
  for (const auto& a : o.artifacts) write_file(output.path + a.suffix, a.content);
}

}  // namespace fbrd::cli
