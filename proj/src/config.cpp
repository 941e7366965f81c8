#include "tmhd/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tmhd {
namespace {

using nlohmann::json;

template <typename T>
void read_into(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

System parse_system(const std::string& s) {
  if (s == "emhd") return System::EMHD;
  if (s == "hall" || s == "hall-mhd" || s == "hall_mhd") return System::HallMHD;
  throw ConfigError("config: system must be 'emhd' or 'hall'");
}

const char* system_name(System s) { return s == System::EMHD ? "emhd" : "hall"; }

Config from_json(const json& j) {
  Config c;
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    read_into(g, "n", c.grid.n);
    read_into(g, "N", c.grid.N);
    read_into(g, "period", c.grid.period);
    read_into(g, "dealias_fraction", c.grid.dealias_fraction);
  }
  if (j.contains("physics")) {
    const json& p = j.at("physics");
    read_into(p, "nu", c.physics.nu);
    read_into(p, "mu", c.physics.mu);
    read_into(p, "d_i", c.physics.d_i);
    if (p.contains("forcing") && !p.at("forcing").is_null()) {
      const json& f = p.at("forcing");
      ForcingSpec fs;
      read_into(f, "field", fs.field);
      if (f.contains("band")) {
        const auto band = f.at("band").get<std::vector<int>>();
        if (band.size() != 2) throw ConfigError("config: forcing.band must be [q_lo, q_hi]");
        fs.q_lo = band[0];
        fs.q_hi = band[1];
      }
      read_into(f, "amplitude", fs.amplitude);
      read_into(f, "seed", fs.seed);
      c.physics.forcing = fs;
    }
  }
  if (j.contains("wavenumber")) {
    const json& w = j.at("wavenumber");
    read_into(w, "r", c.wavenumber.r);
    read_into(w, "delta", c.wavenumber.delta);
    read_into(w, "sigma", c.wavenumber.sigma);
    read_into(w, "c_r", c.wavenumber.c_r);
    read_into(w, "L", c.wavenumber.L);
    read_into(w, "delta_b", c.wavenumber.delta_b);
    read_into(w, "delta_u", c.wavenumber.delta_u);
    read_into(w, "q_max", c.wavenumber.q_max);
  }
  if (j.contains("run")) {
    const json& r = j.at("run");
    read_into(r, "dt_max", c.run.dt_max);
    read_into(r, "C_cfl", c.run.c_cfl);
    read_into(r, "T_end", c.run.t_end);
    read_into(r, "snapshot_cadence", c.run.snapshot_cadence);
    read_into(r, "seed", c.run.seed);
    if (r.contains("init_band")) {
      const auto band = r.at("init_band").get<std::vector<int>>();
      if (band.size() != 2) throw ConfigError("config: run.init_band must be [q_lo, q_hi]");
      c.run.init_q_lo = band[0];
      c.run.init_q_hi = band[1];
    }
    read_into(r, "init_energy", c.run.init_energy);
  }
  if (j.contains("system")) c.system = parse_system(j.at("system").get<std::string>());
  if (j.contains("sync")) {
    const json& s = j.at("sync");
    if (s.contains("system")) c.sync.system = parse_system(s.at("system").get<std::string>());
    else c.sync.system = c.system;
    read_into(s, "s", c.sync.s);
    read_into(s, "assimilate", c.sync.assimilate);
    if (s.contains("perturbation")) {
      const json& p = s.at("perturbation");
      read_into(p, "seed", c.sync.perturbation.seed);
      if (p.contains("band")) {
        const auto band = p.at("band").get<std::vector<int>>();
        if (band.size() != 2)
          throw ConfigError("config: sync.perturbation.band must be [q_lo, q_hi]");
        c.sync.perturbation.q_lo = band[0];
        c.sync.perturbation.q_hi = band[1];
      }
      read_into(p, "relative_amplitude", c.sync.perturbation.relative_amplitude);
    }
  } else {
    c.sync.system = c.system;
  }
  if (j.contains("averaging")) {
    const json& a = j.at("averaging");
    read_into(a, "t0", c.averaging.t0);
    read_into(a, "T", c.averaging.T);
  }
  // Mirror diffusivities into the wavenumber parameters.
  c.wavenumber.mu = c.physics.mu;
  c.wavenumber.nu = c.physics.nu;
  return c;
}

json to_json(const Config& c) {
  json j;
  j["grid"] = {{"n", c.grid.n},
               {"N", c.grid.N},
               {"period", c.grid.period},
               {"dealias_fraction", c.grid.dealias_fraction}};
  j["physics"] = {{"nu", c.physics.nu}, {"mu", c.physics.mu}, {"d_i", c.physics.d_i}};
  if (c.physics.forcing) {
    j["physics"]["forcing"] = {{"field", c.physics.forcing->field},
                               {"band", {c.physics.forcing->q_lo, c.physics.forcing->q_hi}},
                               {"amplitude", c.physics.forcing->amplitude},
                               {"seed", c.physics.forcing->seed}};
  } else {
    j["physics"]["forcing"] = nullptr;
  }
  j["wavenumber"] = {{"r", c.wavenumber.r},     {"delta", c.wavenumber.delta},
                     {"sigma", c.wavenumber.sigma}, {"c_r", c.wavenumber.c_r},
                     {"L", c.wavenumber.L},     {"delta_b", c.wavenumber.delta_b},
                     {"delta_u", c.wavenumber.delta_u}, {"q_max", c.wavenumber.q_max}};
  j["run"] = {{"dt_max", c.run.dt_max},
              {"C_cfl", c.run.c_cfl},
              {"T_end", c.run.t_end},
              {"snapshot_cadence", c.run.snapshot_cadence},
              {"seed", c.run.seed},
              {"init_band", {c.run.init_q_lo, c.run.init_q_hi}},
              {"init_energy", c.run.init_energy}};
  j["system"] = system_name(c.system);
  j["sync"] = {{"system", system_name(c.sync.system)},
               {"s", c.sync.s},
               {"assimilate", c.sync.assimilate},
               {"perturbation",
                {{"seed", c.sync.perturbation.seed},
                 {"band", {c.sync.perturbation.q_lo, c.sync.perturbation.q_hi}},
                 {"relative_amplitude", c.sync.perturbation.relative_amplitude}}}};
  j["averaging"] = {{"t0", c.averaging.t0}, {"T", c.averaging.T}};
  return j;
}

void apply_override(json& j, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like key.path=value: " + kv);
  const std::string path = kv.substr(0, eq);
  const std::string value = kv.substr(eq + 1);
  json* node = &j;
  std::size_t pos = 0;
  while (true) {
    const auto dot = path.find('.', pos);
    const std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (dot == std::string::npos) {
      // Parse the value as JSON when possible; fall back to a string.
      json parsed = json::parse(value, nullptr, false);
      (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
      break;
    }
    node = &(*node)[key];
    pos = dot + 1;
  }
}

}  // namespace

SyncRunParams Config::sync_run() const {
  SyncRunParams rp;
  rp.init_seed = run.seed;
  rp.init_q_lo = run.init_q_lo;
  rp.init_q_hi = run.init_q_hi;
  rp.init_energy = run.init_energy;
  rp.dt_max = run.dt_max;
  rp.c_cfl = run.c_cfl;
  rp.t_end = run.t_end;
  return rp;
}

void Config::validate(bool for_sync, bool for_dissipation) const {
  try {
    grid.validate();
    physics.validate();
    wavenumber.validate_core(grid.n);
    if (physics.forcing) {
      if (physics.forcing->q_lo < -1 || physics.forcing->q_hi < physics.forcing->q_lo ||
          physics.forcing->q_hi > grid.block_q_max())
        throw ParameterError("config: forcing band outside resolved blocks");
    }
    if (!(run.dt_max > 0.0)) throw ParameterError("config: run.dt_max must be positive");
    if (!(run.c_cfl > 0.0)) throw ParameterError("config: run.C_cfl must be positive");
    if (run.t_end < 0.0) throw ParameterError("config: run.T_end must be >= 0");
    if (run.snapshot_cadence < 0.0)
      throw ParameterError("config: run.snapshot_cadence must be >= 0");
    if (run.init_energy < 0.0) throw ParameterError("config: run.init_energy must be >= 0");
    if (for_sync) sync.validate(wavenumber, grid.n);
    if (for_dissipation) {
      wavenumber.validate_dissipation(grid.n);
      if (!(averaging.T > 0.0)) throw ParameterError("config: averaging.T must be positive");
    }
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
}

std::string Config::to_json_string() const { return to_json(*this).dump(2); }

Config parse_config(const std::string& json_text, const std::vector<std::string>& overrides) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config: malformed JSON document");
  try {
    for (const auto& kv : overrides) apply_override(j, kv);
    return from_json(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

Config load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config file not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

}  // namespace tmhd
