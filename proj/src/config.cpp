#include "becwh/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "becwh/errors.hpp"
#include "becwh/geometry.hpp"

namespace becwh {

using nlohmann::json;

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("unknown output format '" + name + "' (expected csv or json)");
}

std::string to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

namespace {

void check_keys(const json& section, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!section.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& [key, _] : section.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + where + "." + key + "'");
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError("'" + where + "' must be a number");
  return v.get<double>();
}

template <class T>
void read(const json& section, const char* key, T& target, const std::string& where) {
  if (!section.contains(key)) return;
  const std::string path = where + "." + key;
  if constexpr (std::is_same_v<T, double>) {
    target = number(section.at(key), path);
  } else if constexpr (std::is_same_v<T, std::optional<double>>) {
    target = number(section.at(key), path);
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!section.at(key).is_string()) throw ConfigError("'" + path + "' must be a string");
    target = section.at(key).get<std::string>();
  }
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array() || v.empty()) {
    throw ConfigError("'" + where + "' must be a number or a non-empty list of numbers");
  }
  std::vector<double> out;
  for (const auto& item : v) out.push_back(number(item, where));
  return out;
}

}  // namespace

CondensateSpec RunConfig::condensate_spec() const {
  const auto& res_preset = presets.resonance(condensate.preset);
  CondensateSpec spec{presets.species(res_preset.species).species, res_preset.resonance,
                      condensate.density};
  if (condensate.mass_u) spec.species.mass_kg = *condensate.mass_u * kAtomicMassUnit;
  if (condensate.a_bg_a0) spec.resonance.a_bg_m = bohr_to_m(*condensate.a_bg_a0);
  if (condensate.width_G) spec.resonance.width_G = *condensate.width_G;
  if (condensate.B0_G) spec.resonance.B0_G = *condensate.B0_G;
  try {
    validate(spec);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("condensate: ") + e.what());
  }
  return spec;
}

void apply_preset_overrides(PresetRegistry& registry, const json& doc) {
  check_keys(doc, "presets", {"species", "resonances"});
  if (doc.contains("species")) {
    if (!doc.at("species").is_object()) throw ConfigError("'presets.species' must be an object");
    for (const auto& [key, entry] : doc.at("species").items()) {
      const std::string where = "presets.species." + key;
      check_keys(entry, where, {"mass_u", "note"});
      if (!entry.contains("mass_u")) throw ConfigError("'" + where + ".mass_u' is required");
      std::string note = "user override";
      read(entry, "note", note, where);
      try {
        registry.add_species(key, {{key, number(entry.at("mass_u"), where) * kAtomicMassUnit},
                                   note});
      } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
  }
  if (doc.contains("resonances")) {
    if (!doc.at("resonances").is_object()) throw ConfigError("'presets.resonances' must be an object");
    for (const auto& [key, entry] : doc.at("resonances").items()) {
      const std::string where = "presets.resonances." + key;
      check_keys(entry, where, {"species", "a_bg_a0", "width_G", "B0_G", "note"});
      ResonancePreset preset;
      preset.note = "user override";
      for (const char* required : {"species", "a_bg_a0", "width_G", "B0_G"}) {
        if (!entry.contains(required)) {
          throw ConfigError("'" + where + "." + required + "' is required");
        }
      }
      read(entry, "species", preset.species, where);
      read(entry, "note", preset.note, where);
      double a_bg_a0 = 0.0;
      read(entry, "a_bg_a0", a_bg_a0, where);
      preset.resonance.a_bg_m = bohr_to_m(a_bg_a0);
      read(entry, "width_G", preset.resonance.width_G, where);
      read(entry, "B0_G", preset.resonance.B0_G, where);
      if (!registry.has_species(preset.species)) {
        throw ConfigError(where + ": unknown species '" + preset.species + "'");
      }
      try {
        registry.add_resonance(key, preset);
      } catch (const DomainError& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
  }
}

RunConfig parse_config(const json& doc, RunConfig cfg) {
  check_keys(doc, "config", {"wormhole", "observer", "condensate", "grid", "layout",
                             "thresholds", "output", "presets"});
  if (doc.contains("presets")) apply_preset_overrides(cfg.presets, doc.at("presets"));

  if (doc.contains("wormhole")) {
    const auto& w = doc.at("wormhole");
    check_keys(w, "wormhole", {"b0", "q", "ellis"});
    if (w.contains("b0")) cfg.wormhole.b0 = number_list(w.at("b0"), "wormhole.b0");
    if (w.contains("q")) cfg.wormhole.q = number_list(w.at("q"), "wormhole.q");
    if (w.contains("ellis")) {
      if (!w.at("ellis").is_boolean()) throw ConfigError("'wormhole.ellis' must be a boolean");
      if (w.at("ellis").get<bool>()) {
        if (w.contains("q")) throw ConfigError("'wormhole.ellis' and 'wormhole.q' conflict");
        cfg.wormhole.q = {-1.0};
      }
    }
  }

  if (doc.contains("observer")) {
    const auto& o = doc.at("observer");
    check_keys(o, "observer", {"v_inf", "b0", "runs"});
    if (o.contains("runs")) {
      if (o.contains("v_inf") || o.contains("b0")) {
        throw ConfigError("'observer.runs' excludes 'observer.v_inf'/'observer.b0'");
      }
      if (!o.at("runs").is_array() || o.at("runs").empty()) {
        throw ConfigError("'observer.runs' must be a non-empty list");
      }
      cfg.observers.clear();
      for (const auto& run : o.at("runs")) {
        check_keys(run, "observer.runs[]", {"v_inf", "b0"});
        if (!run.contains("v_inf") || !run.contains("b0")) {
          throw ConfigError("each observer run needs 'v_inf' and 'b0'");
        }
        cfg.observers.push_back({number(run.at("v_inf"), "observer.runs[].v_inf"),
                                 number(run.at("b0"), "observer.runs[].b0")});
      }
    } else {
      double v = cfg.observers.front().v_inf, b0 = cfg.observers.front().b0;
      read(o, "v_inf", v, "observer");
      read(o, "b0", b0, "observer");
      cfg.observers = {{v, b0}};
    }
  }

  if (doc.contains("condensate")) {
    const auto& c = doc.at("condensate");
    check_keys(c, "condensate",
               {"preset", "density_m3", "mass_u", "a_bg_a0", "width_G", "B0_G"});
    read(c, "preset", cfg.condensate.preset, "condensate");
    read(c, "density_m3", cfg.condensate.density, "condensate");
    read(c, "mass_u", cfg.condensate.mass_u, "condensate");
    read(c, "a_bg_a0", cfg.condensate.a_bg_a0, "condensate");
    read(c, "width_G", cfg.condensate.width_G, "condensate");
    read(c, "B0_G", cfg.condensate.B0_G, "condensate");
  }

  if (doc.contains("grid")) {
    const auto& g = doc.at("grid");
    check_keys(g, "grid", {"x_min", "x_max", "step", "r_min_b0", "r_max_b0", "r_step_b0",
                           "throat_epsilon", "throat_exclusion", "reference_x",
                           "embed_r_max_b0", "embed_step_b0"});
    read(g, "x_min", cfg.grid.x.x_min, "grid");
    read(g, "x_max", cfg.grid.x.x_max, "grid");
    read(g, "step", cfg.grid.x.step, "grid");
    read(g, "r_min_b0", cfg.grid.r_min_b0, "grid");
    read(g, "r_max_b0", cfg.grid.r_max_b0, "grid");
    read(g, "r_step_b0", cfg.grid.r_step_b0, "grid");
    read(g, "throat_epsilon", cfg.grid.throat_epsilon, "grid");
    read(g, "throat_exclusion", cfg.grid.throat_exclusion, "grid");
    read(g, "reference_x", cfg.grid.reference_x, "grid");
    read(g, "embed_r_max_b0", cfg.grid.embed_r_max_b0, "grid");
    read(g, "embed_step_b0", cfg.grid.embed_step_b0, "grid");
  }

  if (doc.contains("layout")) {
    const auto& l = doc.at("layout");
    check_keys(l, "layout", {"R", "step"});
    read(l, "R", cfg.layout.R, "layout");
    read(l, "step", cfg.layout.step, "layout");
  }

  if (doc.contains("thresholds")) {
    const auto& t = doc.at("thresholds");
    check_keys(t, "thresholds", {"slope", "resolution_factor", "pole_delta"});
    read(t, "slope", cfg.thresholds.slope, "thresholds");
    read(t, "resolution_factor", cfg.thresholds.resolution_factor, "thresholds");
    read(t, "pole_delta", cfg.thresholds.pole_delta, "thresholds");
  }

  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    check_keys(o, "output", {"dir", "format"});
    std::string dir = cfg.output.dir.string();
    read(o, "dir", dir, "output");
    cfg.output.dir = dir;
    if (o.contains("format")) {
      std::string fmt;
      read(o, "format", fmt, "output");
      cfg.output.format = parse_format(fmt);
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  return parse_config(doc, std::move(base));
}

void apply_preset_environment(PresetRegistry& registry) {
  const char* dir = std::getenv(kPresetDirEnv);
  if (dir == nullptr || *dir == '\0') return;
  const auto path = std::filesystem::path(dir) / "presets.json";
  if (!std::filesystem::exists(path)) return;
  std::ifstream in(path);
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("preset file '" + path.string() + "': " + e.what());
  }
  apply_preset_overrides(registry, doc);
}

// ---------------------------------------------------------------------------

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

void validate_common(const RunConfig& cfg) {
  require(cfg.presets.has_resonance(cfg.condensate.preset),
          "unknown resonance preset '" + cfg.condensate.preset + "'");
  (void)cfg.condensate_spec();
}

void validate_observers(const RunConfig& cfg) {
  require(!cfg.observers.empty(), "no observer runs configured");
  for (const auto& run : cfg.observers) {
    require(positive(run.v_inf), "observer v_inf must be positive");
    require(run.v_inf < kSpeedOfLight, "observer v_inf must be below c");
    require(positive(run.b0), "observer b0 must be positive");
  }
}

}  // namespace

void validate_for_profile1d(const RunConfig& cfg) {
  validate_common(cfg);
  for (double b0 : cfg.wormhole.b0) require(positive(b0), "wormhole b0 must be positive");
  for (double q : cfg.wormhole.q) require(std::isfinite(q), "wormhole q must be finite");
  const auto& g = cfg.grid.x;
  require(positive(g.step) && g.x_max >= g.x_min && std::isfinite(g.x_min) &&
              std::isfinite(g.x_max),
          "empty 1D grid: need step > 0 and x_max >= x_min");
  require(cfg.grid.throat_exclusion >= 0.0, "throat exclusion must be non-negative");
  require(cfg.thresholds.slope >= 0.0, "slope threshold must be non-negative");
  bool covered = false;
  for (double x : g.points()) covered = covered || std::abs(x) >= cfg.grid.throat_exclusion;
  require(covered, "throat exclusion window covers the whole 1D grid");
}

void validate_for_solve_gp(const RunConfig& cfg) {
  validate_observers(cfg);
  const auto& g = cfg.grid;
  require(g.throat_epsilon > 0.0, "throat epsilon must be positive");
  require(g.r_min_b0 >= 1.0 + g.throat_epsilon,
          "radial grid must start at r >= b0 (1 + throat_epsilon)");
  require(positive(g.r_step_b0) && g.r_max_b0 >= g.r_min_b0, "empty radial grid");
  require(positive(cfg.thresholds.resolution_factor), "resolution factor must be positive");
}

void validate_for_profile3d(const RunConfig& cfg) {
  validate_common(cfg);
  validate_observers(cfg);
  require(positive(cfg.layout.R), "layout R must be positive");
  require(positive(cfg.layout.step), "layout step must be positive");
  require(cfg.thresholds.pole_delta >= 0.0, "pole delta must be non-negative");
  require(positive(cfg.thresholds.resolution_factor), "resolution factor must be positive");
}

void validate_for_embed(const RunConfig& cfg) {
  for (double b0 : cfg.wormhole.b0) require(positive(b0), "wormhole b0 must be positive");
  for (double q : cfg.wormhole.q) {
    require(classify(q) == ThroatClass::Traversable,
            "no embedding: signature broken (q = " + std::to_string(q) + " >= 1)");
  }
  require(cfg.grid.embed_r_max_b0 >= 1.0, "embedding range must reach r >= b0");
  require(positive(cfg.grid.embed_step_b0), "embedding step must be positive");
}

}  // namespace becwh
