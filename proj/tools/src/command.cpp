#include "fbrd/cli/command.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "fbrd/pde.hpp"

namespace fbrd::cli {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

template <class E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& names, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  return std::nullopt;
}

template <std::size_t N>
std::string choices(const std::array<std::string_view, N>& names) {
  std::string out;
  for (std::size_t i = 0; i < N; ++i) out += (i ? ", " : "") + std::string(names[i]);
  return out;
}

constexpr std::array<std::string_view, 6> kVerbs{"speeds", "wave", "stationary", "pde", "sweep", "verify"};
constexpr std::array<std::string_view, 2> kFormats{"csv", "json"};
constexpr std::array<std::string_view, 4> kWaveKinds{"bistable", "plateau", "monostable", "pushed"};
constexpr std::array<std::string_view, 4> kStationaryKinds{"bump", "dip", "glued", "periodic"};
constexpr std::array<std::string_view, 6> kInitialKinds{"tanh-front", "sech-dip", "exp-dip",
                                                        "constant",   "profile",  "table"};
constexpr std::array<std::string_view, 2> kSweepParams{"alpha", "c"};
constexpr std::array<std::string_view, 8> kSweepQuantities{"c_bistable", "c_pushed_min",  "c_monotone_min",
                                                           "bump_max",   "dip_min",       "front_speed",
                                                           "endpoint_minus", "endpoint_plus"};
constexpr std::array<std::string_view, 2> kPresets{"desk", "strict"};
constexpr std::array<std::string_view, 4> kProfileSources{"bump", "dip", "glued", "bistable"};

// Object reader that records the JSON path and rejects unknown keys.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  [[noreturn]] static void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
  }

  [[nodiscard]] std::string at(std::string_view key) const { return path_ + "." + std::string(key); }
  [[nodiscard]] bool has(std::string_view key) {
    used_.insert(std::string(key));
    return j_.contains(std::string(key));
  }

  double number(std::string_view key, std::optional<double> def = std::nullopt) {
    if (!has(key)) {
      if (def) return *def;
      fail(at(key), "required field is missing");
    }
    const auto& v = j_.at(std::string(key));
    if (!v.is_number()) fail(at(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(at(key), "must be finite");
    return d;
  }

  std::optional<double> opt_number(std::string_view key) {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  int integer(std::string_view key, int def) {
    if (!has(key)) return def;
    const auto& v = j_.at(std::string(key));
    if (!v.is_number_integer()) fail(at(key), "expected an integer");
    return v.get<int>();
  }

  std::string string(std::string_view key, std::optional<std::string> def = std::nullopt) {
    if (!has(key)) {
      if (def) return *def;
      fail(at(key), "required field is missing");
    }
    const auto& v = j_.at(std::string(key));
    if (!v.is_string()) fail(at(key), "expected a string");
    return v.get<std::string>();
  }

  bool boolean(std::string_view key, bool def) {
    if (!has(key)) return def;
    const auto& v = j_.at(std::string(key));
    if (!v.is_boolean()) fail(at(key), "expected true or false");
    return v.get<bool>();
  }

  std::vector<double> numbers(std::string_view key) {
    if (!has(key)) return {};
    const auto& v = j_.at(std::string(key));
    if (!v.is_array()) fail(at(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) fail(at(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
      if (!std::isfinite(out.back())) fail(at(key) + "[" + std::to_string(i) + "]", "must be finite");
    }
    return out;
  }

  template <class E, std::size_t N>
  E choice(std::string_view key, const std::array<std::string_view, N>& names, std::optional<E> def = std::nullopt) {
    if (!has(key) && def) return *def;
    const auto s = string(key);
    const auto e = lookup<E>(names, s);
    if (!e) fail(at(key), "unknown value '" + s + "' (expected one of: " + choices(names) + ")");
    return *e;
  }

  Reader child(std::string_view key) {
    used_.insert(std::string(key));
    return Reader(j_.at(std::string(key)), at(key));
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!used_.count(k)) fail(at(k), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

void require_open(const Reader& r, std::string_view key, double v, double lo, double hi) {
  if (!(v > lo && v < hi)) {
    Reader::fail(r.at(key), fmt(v) + " outside admissible interval (" + fmt(lo) + ", " + fmt(hi) + ")");
  }
}

void require_positive(const Reader& r, std::string_view key, double v) {
  if (!(v > 0.0)) Reader::fail(r.at(key), fmt(v) + " must be > 0");
}

void require_nonnegative(const Reader& r, std::string_view key, double v) {
  if (!(v >= 0.0)) Reader::fail(r.at(key), fmt(v) + " must be >= 0");
}

double read_alpha(Reader& r) {
  const double a = r.number("alpha");
  require_open(r, "alpha", a, 0.0, 1.0);
  return a;
}

double read_tol(Reader& r) {
  const double t = r.number("tol", kDefaultSpeedTol);
  require_open(r, "tol", t, 0.0, 1.0);
  return t;
}

double read_step(Reader& r, double def) {
  const double h = r.number("step", def);
  if (!(h > 0.0 && h <= 1.0)) Reader::fail(r.at("step"), fmt(h) + " outside admissible interval (0, 1]");
  return h;
}

InitialArgs read_initial(Reader r) {
  InitialArgs a;
  a.kind = r.choice<InitialKind>("kind", kInitialKinds);
  switch (a.kind) {
    case InitialKind::tanh_front:
      a.amplitude = r.number("amplitude", a.amplitude);
      a.offset = r.number("offset", a.offset);
      a.steepness = r.number("steepness", a.steepness);
      a.orientation = r.number("orientation", a.orientation);
      a.center = r.number("center", a.center);
      if (a.orientation != 1.0 && a.orientation != -1.0) Reader::fail(r.at("orientation"), "must be 1 or -1");
      require_positive(r, "steepness", a.steepness);
      break;
    case InitialKind::sech_dip:
      a.base = r.number("base", a.base);
      a.depth = r.number("depth", a.depth);
      a.width = r.number("width", a.width);
      a.center = r.number("center", a.center);
      require_positive(r, "width", a.width);
      break;
    case InitialKind::exp_dip:
      a.base = r.number("base", a.base);
      a.depth = r.number("depth", a.depth);
      a.rate = r.number("rate", a.rate);
      a.center = r.number("center", a.center);
      require_positive(r, "rate", a.rate);
      break;
    case InitialKind::constant:
      a.value = r.number("value", a.value);
      require_nonnegative(r, "value", a.value);
      break;
    case InitialKind::profile: {
      a.profile = r.string("profile", a.profile);
      if (!lookup<int>(kProfileSources, a.profile)) {
        Reader::fail(r.at("profile"), "unknown value '" + a.profile + "' (expected one of: " + choices(kProfileSources) + ")");
      }
      a.profile_step = r.number("profile_step", a.profile_step);
      if (!(a.profile_step > 0.0 && a.profile_step <= 1.0)) {
        Reader::fail(r.at("profile_step"), fmt(a.profile_step) + " outside admissible interval (0, 1]");
      }
      a.profile_L = r.number("profile_L", a.profile_L);
      require_nonnegative(r, "profile_L", a.profile_L);
      a.shift = r.number("shift", a.shift);
      a.scale = r.number("scale", a.scale);
      require_nonnegative(r, "scale", a.scale);
      break;
    }
    case InitialKind::table:
      a.x = r.numbers("x");
      a.u = r.numbers("u");
      if (a.x.size() < 2 || a.x.size() != a.u.size()) {
        Reader::fail(r.at("x"), "table needs x and u of equal length >= 2");
      }
      for (std::size_t i = 1; i < a.x.size(); ++i) {
        if (!(a.x[i] > a.x[i - 1])) Reader::fail(r.at("x"), "must be strictly increasing");
      }
      break;
  }
  r.finish();
  return a;
}

PdeArgs read_pde(Reader& r) {
  PdeArgs a;
  a.alpha = read_alpha(r);
  {
    auto g = r.child("grid");
    a.grid.x_min = g.number("x_min");
    a.grid.x_max = g.number("x_max");
    a.grid.dx = g.number("dx");
    g.finish();
    try {
      (void)Grid1D::make(a.grid.x_min, a.grid.x_max, a.grid.dx);
    } catch (const PreconditionError& e) {
      Reader::fail(r.at("grid"), e.what());
    }
  }
  a.dt_factor = r.number("dt_factor", a.dt_factor);
  if (!(a.dt_factor > 0.0 && a.dt_factor <= kDtFactor)) {
    Reader::fail(r.at("dt_factor"), fmt(a.dt_factor) + " outside admissible interval (0, 0.4]");
  }
  a.T = r.number("T");
  require_positive(r, "T", a.T);
  a.probes = r.numbers("probes");
  for (std::size_t i = 0; i < a.probes.size(); ++i) {
    if (!(a.probes[i] >= 0.0 && a.probes[i] <= a.T)) {
      Reader::fail(r.at("probes") + "[" + std::to_string(i) + "]", fmt(a.probes[i]) + " outside [0, T]");
    }
    if (i && !(a.probes[i] > a.probes[i - 1])) {
      Reader::fail(r.at("probes"), "must be strictly increasing");
    }
  }
  a.probe_every = r.opt_number("probe_every");
  if (a.probe_every) require_positive(r, "probe_every", *a.probe_every);
  if (!a.probes.empty() && a.probe_every) Reader::fail(r.at("probe_every"), "give either probes or probe_every");
  if (!r.has("initial")) Reader::fail(r.at("initial"), "required field is missing");
  a.initial = read_initial(r.child("initial"));
  if (r.has("track")) {
    auto t = r.child("track");
    a.track_level = t.number("level");
    t.finish();
  }
  return a;
}

SweepArgs read_sweep(Reader& r) {
  SweepArgs a;
  a.parameter = r.choice<SweepParameter>("parameter", kSweepParams, SweepParameter::alpha);
  a.quantity = r.choice<SweepQuantity>("quantity", kSweepQuantities);
  a.lo = r.number("lo");
  a.hi = r.number("hi");
  a.count = r.integer("count", a.count);
  a.alpha = r.opt_number("alpha");
  a.tol = read_tol(r);
  a.dx = r.number("dx", a.dx);
  a.T = r.number("T", a.T);
  a.half_width = r.number("half_width", a.half_width);
  if (!(a.lo < a.hi)) Reader::fail(r.at("lo"), "lo must be < hi");
  if (a.count < 2 || a.count > 100000) Reader::fail(r.at("count"), "count must lie in [2, 100000]");
  require_positive(r, "dx", a.dx);
  require_positive(r, "T", a.T);
  require_positive(r, "half_width", a.half_width);

  const bool over_c = a.quantity == SweepQuantity::endpoint_minus || a.quantity == SweepQuantity::endpoint_plus;
  if (over_c) {
    if (a.parameter != SweepParameter::c) Reader::fail(r.at("parameter"), "endpoint sweeps run over c");
    if (!a.alpha) Reader::fail(r.at("alpha"), "sweeps over c need a fixed alpha");
    require_open(r, "alpha", *a.alpha, 0.0, 1.0);
    if (!(a.lo >= 0.0)) Reader::fail(r.at("lo"), "endpoint shooting needs c >= 0");
  } else {
    if (a.parameter != SweepParameter::alpha) {
      Reader::fail(r.at("parameter"), std::string(to_string(a.quantity)) + " is swept over alpha");
    }
    if (a.alpha) Reader::fail(r.at("alpha"), "alpha is the swept parameter here");
    double lo = 0.0;
    double hi = 1.0;
    if (a.quantity == SweepQuantity::bump_max) hi = 1.0 / 3.0;
    if (a.quantity == SweepQuantity::dip_min) lo = 1.0 / 3.0;
    if (!(a.lo > lo && a.hi < hi)) {
      Reader::fail(r.at("lo"), "range [" + fmt(a.lo) + ", " + fmt(a.hi) + "] outside admissible interval (" + fmt(lo) +
                                   ", " + fmt(hi) + ") for " + std::string(to_string(a.quantity)));
    }
  }
  return a;
}

}  // namespace

std::string_view to_string(Verb v) noexcept { return kVerbs[static_cast<std::size_t>(v)]; }
std::string_view to_string(Format f) noexcept { return kFormats[static_cast<std::size_t>(f)]; }
std::string_view to_string(WaveKind k) noexcept { return kWaveKinds[static_cast<std::size_t>(k)]; }
std::string_view to_string(InitialKind k) noexcept { return kInitialKinds[static_cast<std::size_t>(k)]; }
std::string_view to_string(SweepParameter p) noexcept { return kSweepParams[static_cast<std::size_t>(p)]; }
std::string_view to_string(SweepQuantity q) noexcept { return kSweepQuantities[static_cast<std::size_t>(q)]; }
std::string_view to_string(Preset p) noexcept { return kPresets[static_cast<std::size_t>(p)]; }

Command parse_config_json(const json& doc) {
  Reader r(doc, "$");
  Command c;
  const auto verb = r.choice<Verb>("verb", kVerbs);
  switch (verb) {
    case Verb::speeds: {
      SpeedsArgs a;
      a.alpha = read_alpha(r);
      a.tol = read_tol(r);
      c.options = a;
      break;
    }
    case Verb::wave: {
      WaveArgs a;
      a.alpha = read_alpha(r);
      a.kind = r.choice<WaveKind>("kind", kWaveKinds, WaveKind::bistable);
      a.c = r.opt_number("c");
      a.L = r.number("L", 0.0);
      a.step = read_step(r, a.step);
      a.tol = read_tol(r);
      require_nonnegative(r, "L", a.L);
      if ((a.kind == WaveKind::monostable || a.kind == WaveKind::pushed) && !a.c) {
        Reader::fail(r.at("c"), "required for kind " + std::string(to_string(a.kind)));
      }
      if ((a.kind == WaveKind::bistable || a.kind == WaveKind::plateau) && a.c) {
        Reader::fail(r.at("c"), "the speed of a " + std::string(to_string(a.kind)) + " wave is computed, not given");
      }
      c.options = a;
      break;
    }
    case Verb::stationary: {
      StationaryArgs a;
      a.alpha = read_alpha(r);
      a.kind = r.choice<StationaryKind>("kind", kStationaryKinds);
      a.L = r.number("L", 0.0);
      a.u0 = r.opt_number("u0");
      a.step = read_step(r, a.step);
      require_nonnegative(r, "L", a.L);
      if (a.kind == StationaryKind::periodic && !a.u0) Reader::fail(r.at("u0"), "required for kind periodic");
      c.options = a;
      break;
    }
    case Verb::pde: c.options = read_pde(r); break;
    case Verb::sweep: c.options = read_sweep(r); break;
    case Verb::verify: {
      VerifyArgs a;
      a.preset = r.choice<Preset>("preset", kPresets, Preset::desk);
      for (double id : r.numbers("only")) {
        if (id != std::floor(id) || id < 1 || id > 10) Reader::fail(r.at("only"), "criterion ids lie in 1..10");
        a.only.push_back(static_cast<int>(id));
      }
      c.options = a;
      break;
    }
  }
  if (r.has("output")) {
    auto o = r.child("output");
    c.output.path = o.string("path", "");
    c.output.format = o.choice<Format>("format", kFormats, Format::json);
    o.finish();
  }
  r.finish();
  return c;
}

Command parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("$: invalid JSON: ") + e.what());
  }
  return parse_config_json(doc);
}

namespace {

json initial_json(const InitialArgs& a) {
  json j;
  j["kind"] = to_string(a.kind);
  switch (a.kind) {
    case InitialKind::tanh_front:
      j["amplitude"] = a.amplitude;
      j["offset"] = a.offset;
      j["steepness"] = a.steepness;
      j["orientation"] = a.orientation;
      j["center"] = a.center;
      break;
    case InitialKind::sech_dip:
      j["base"] = a.base;
      j["depth"] = a.depth;
      j["width"] = a.width;
      j["center"] = a.center;
      break;
    case InitialKind::exp_dip:
      j["base"] = a.base;
      j["depth"] = a.depth;
      j["rate"] = a.rate;
      j["center"] = a.center;
      break;
    case InitialKind::constant: j["value"] = a.value; break;
    case InitialKind::profile:
      j["profile"] = a.profile;
      j["profile_step"] = a.profile_step;
      j["profile_L"] = a.profile_L;
      j["shift"] = a.shift;
      j["scale"] = a.scale;
      break;
    case InitialKind::table:
      j["x"] = a.x;
      j["u"] = a.u;
      break;
  }
  return j;
}

}  // namespace

json to_json(const Command& c) {
  json j;
  j["verb"] = to_string(c.verb());
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, SpeedsArgs>) {
          j["alpha"] = a.alpha;
          j["tol"] = a.tol;
        } else if constexpr (std::is_same_v<T, WaveArgs>) {
          j["alpha"] = a.alpha;
          j["kind"] = to_string(a.kind);
          if (a.c) j["c"] = *a.c;
          j["L"] = a.L;
          j["step"] = a.step;
          j["tol"] = a.tol;
        } else if constexpr (std::is_same_v<T, StationaryArgs>) {
          j["alpha"] = a.alpha;
          j["kind"] = to_string(a.kind);
          j["L"] = a.L;
          if (a.u0) j["u0"] = *a.u0;
          j["step"] = a.step;
        } else if constexpr (std::is_same_v<T, PdeArgs>) {
          j["alpha"] = a.alpha;
          j["grid"] = {{"x_min", a.grid.x_min}, {"x_max", a.grid.x_max}, {"dx", a.grid.dx}};
          j["dt_factor"] = a.dt_factor;
          j["T"] = a.T;
          if (!a.probes.empty()) j["probes"] = a.probes;
          if (a.probe_every) j["probe_every"] = *a.probe_every;
          j["initial"] = initial_json(a.initial);
          if (a.track_level) j["track"] = {{"level", *a.track_level}};
        } else if constexpr (std::is_same_v<T, SweepArgs>) {
          j["parameter"] = to_string(a.parameter);
          j["quantity"] = to_string(a.quantity);
          j["lo"] = a.lo;
          j["hi"] = a.hi;
          j["count"] = a.count;
          if (a.alpha) j["alpha"] = *a.alpha;
          j["tol"] = a.tol;
          j["dx"] = a.dx;
          j["T"] = a.T;
          j["half_width"] = a.half_width;
        } else {
          j["preset"] = to_string(a.preset);
          if (!a.only.empty()) j["only"] = a.only;
        }
      },
      c.options);
  j["output"] = {{"path", c.output.path}, {"format", to_string(c.output.format)}};
  return j;
}

InitialDatum make_datum(const InitialArgs& a, double alpha) {
  switch (a.kind) {
    case InitialKind::tanh_front: return TanhFront{a.amplitude, a.offset, a.steepness, a.orientation, a.center};
    case InitialKind::sech_dip: return SechDip{a.base, a.depth, a.width, a.center};
    case InitialKind::exp_dip: return ExpDip{a.base, a.depth, a.rate, a.center};
    case InitialKind::constant: return ConstantDatum{a.value};
    case InitialKind::profile: {
      ProfileOptions o;
      o.step = a.profile_step;
      WaveProfile p;
      if (a.profile == "bistable") {
        p = bistable_profile(alpha, o);
      } else {
        StationarySpec s;
        s.kind = *lookup<StationaryKind>(kStationaryKinds, a.profile);
        s.L = a.profile_L;
        p = stationary_profile(alpha, s, o);
      }
      return ProfileDatum{std::move(p), a.shift, a.scale};
    }
    case InitialKind::table: return TableDatum{a.x, a.u};
  }
  throw PreconditionError("unknown initial datum kind");
}

std::vector<double> probe_times(const PdeArgs& a) {
  if (!a.probes.empty()) return a.probes;
  const double every = a.probe_every.value_or(a.T / 100.0);
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor(a.T / every + 1e-9));
  for (std::size_t k = 0; k <= n; ++k) out.push_back(std::min(a.T, static_cast<double>(k) * every));
  if (out.back() < a.T) out.push_back(a.T);
  return out;
}

}  // namespace fbrd::cli
