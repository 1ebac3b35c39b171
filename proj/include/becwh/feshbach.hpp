#pragma once

#include <map>
#include <string>
#include <vector>

#include "becwh/constants.hpp"

namespace becwh {

struct AtomSpecies {
  std::string name;
  double mass_kg = 0.0;
};

/// Single-resonance model a(B) = a_bg (1 - width / (B - B0)).
/// Fields in Gauss, a_bg in metres.
struct FeshbachResonance {
  double a_bg_m = 0.0;
  double width_G = 0.0;
  double B0_G = 0.0;
};

struct CondensateSpec {
  AtomSpecies species;
  FeshbachResonance resonance;
  double density_per_m3 = 0.0;
};

/// Throws DomainError on any violated invariant (mass, a_bg, width, density).
void validate(const AtomSpecies& species);
void validate(const FeshbachResonance& res);
void validate(const CondensateSpec& spec);

/// Bogoliubov sound speed (ħ/m) sqrt(4π ρ a). Rejects a < 0.
double sound_speed_from_scattering(double a_m, const CondensateSpec& spec);

/// Off-resonance sound speed, i.e. the value at a = a_bg.
double background_sound_speed(const CondensateSpec& spec);

/// a(B). May be negative (attractive); B = B0 throws PoleError.
double scattering_from_field(double B_G, const FeshbachResonance& res);
/// a as a function of the detuning B - B0, exact at the zero crossing.
double scattering_from_detuning(double detuning_G, const FeshbachResonance& res);

/// Inverse of scattering_from_field. a = a_bg throws PoleError.
double field_from_scattering(double a_m, const FeshbachResonance& res);

/// c_s0 sqrt(1 - width/(B - B0)); a negative radicand throws DomainError.
double sound_speed_from_field(double B_G, const CondensateSpec& spec);
double sound_speed_from_detuning(double detuning_G, const CondensateSpec& spec);

/// Healing length ħ / (sqrt(2) m c_s), in metres.
double healing_length(double sound_speed, const AtomSpecies& species);

inline bool is_attractive(double a_m) { return a_m < 0.0; }

// ---------------------------------------------------------------------------
// Presets

struct SpeciesPreset {
  AtomSpecies species;
  std::string note;
};

struct ResonancePreset {
  std::string species;  // key into the species table
  FeshbachResonance resonance;
  std::string note;
};

/// Named species and resonances. Default contents are the five alkali
/// species used for healing-length estimates and the cesium resonance at
/// 47.766 G; entries can be added or overridden at runtime.
class PresetRegistry {
 public:
  static PresetRegistry defaults();

  void add_species(const std::string& key, SpeciesPreset preset);
  void add_resonance(const std::string& key, ResonancePreset preset);

  const SpeciesPreset& species(const std::string& key) const;
  const ResonancePreset& resonance(const std::string& key) const;
  bool has_species(const std::string& key) const { return species_.count(key) != 0; }
  bool has_resonance(const std::string& key) const { return resonances_.count(key) != 0; }

  const std::map<std::string, SpeciesPreset>& all_species() const { return species_; }
  const std::map<std::string, ResonancePreset>& all_resonances() const { return resonances_; }

  /// Condensate built from a resonance preset, its species and a density.
  CondensateSpec condensate(const std::string& resonance_key, double density_per_m3) const;

 private:
  std::map<std::string, SpeciesPreset> species_;
  std::map<std::string, ResonancePreset> resonances_;
};

inline constexpr double kTypicalDensity = 1e21;  // m^-3, i.e. 1e15 cm^-3

/// Cesium resonance preset with the typical density.
CondensateSpec cesium_condensate();

}  // namespace becwh
