#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "becwh/feshbach.hpp"
#include "becwh/profile1d.hpp"

namespace becwh {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(const std::string& name);
std::string to_string(OutputFormat format);

/// Configuration error: unknown key, wrong type, violated precondition.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WormholeConfig {
  std::vector<double> b0{1.0};  // μm
  std::vector<double> q{0.95};
};

struct ObserverRun {
  double v_inf;  // m/s
  double b0;     // μm
};

struct CondensateConfig {
  std::string preset = "Cs";
  double density = kTypicalDensity;  // m^-3
  // explicit overrides of the preset's fields
  std::optional<double> mass_u;
  std::optional<double> a_bg_a0;
  std::optional<double> width_G;
  std::optional<double> B0_G;
};

struct GridConfig {
  Grid1D x{};                       // 1D lab grid, μm
  double r_min_b0 = 1.1;            // radial grid of solve-gp, units of b0
  double r_max_b0 = 10.0;
  double r_step_b0 = 0.1;
  double throat_epsilon = 1e-3;
  double throat_exclusion = 1.0;    // μm
  double reference_x = 10.0;        // μm
  double embed_r_max_b0 = 10.0;
  double embed_step_b0 = 0.05;
};

struct LayoutConfig {
  double R = 5.0;      // μm
  double step = 0.01;  // μm
};

struct ThresholdConfig {
  double slope = 0.067;  // 1/μm of a/(100 a0)
  double resolution_factor = 10.0;
  double pole_delta = 1e-3;
};

struct OutputConfig {
  std::filesystem::path dir = ".";
  OutputFormat format = OutputFormat::Csv;
};

struct RunConfig {
  WormholeConfig wormhole;
  std::vector<ObserverRun> observers{{0.01, 1.0}};
  CondensateConfig condensate;
  GridConfig grid;
  LayoutConfig layout;
  ThresholdConfig thresholds;
  OutputConfig output;
  PresetRegistry presets = PresetRegistry::defaults();

  /// Condensate assembled from the preset plus explicit overrides.
  CondensateSpec condensate_spec() const;
};

/// Applies a preset override document ({"species": {...}, "resonances": {...}}).
void apply_preset_overrides(PresetRegistry& registry, const nlohmann::json& doc);

/// Parses a config document on top of the defaults. Unknown keys are errors.
RunConfig parse_config(const nlohmann::json& doc, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Loads $BECWH_PRESET_DIR/presets.json into the registry when present.
void apply_preset_environment(PresetRegistry& registry);

inline constexpr const char* kPresetDirEnv = "BECWH_PRESET_DIR";

/// Precondition checks for each pipeline; throw ConfigError.
void validate_for_profile1d(const RunConfig& cfg);
void validate_for_solve_gp(const RunConfig& cfg);
void validate_for_profile3d(const RunConfig& cfg);
void validate_for_embed(const RunConfig& cfg);

}  // namespace becwh
