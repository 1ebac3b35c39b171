#include "becwh/feshbach.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "becwh/errors.hpp"

namespace becwh {

void validate(const AtomSpecies& species) {
  if (!(species.mass_kg > 0.0) || !std::isfinite(species.mass_kg)) {
    throw DomainError("species '" + species.name + "': mass must be positive");
  }
}

void validate(const FeshbachResonance& res) {
  if (!(res.a_bg_m > 0.0)) throw DomainError("resonance: a_bg must be positive");
  if (!(res.width_G > 0.0)) throw DomainError("resonance: width must be positive");
  if (!std::isfinite(res.B0_G)) throw DomainError("resonance: B0 must be finite");
}

void validate(const CondensateSpec& spec) {
  validate(spec.species);
  validate(spec.resonance);
  if (!(spec.density_per_m3 > 0.0) || !std::isfinite(spec.density_per_m3)) {
    throw DomainError("condensate: density must be positive");
  }
}

double sound_speed_from_scattering(double a_m, const CondensateSpec& spec) {
  if (a_m < 0.0) {
    throw DomainError("sound speed undefined for negative scattering length");
  }
  return kHbar / spec.species.mass_kg * std::sqrt(4.0 * kPi * spec.density_per_m3 * a_m);
}

double background_sound_speed(const CondensateSpec& spec) {
  return sound_speed_from_scattering(spec.resonance.a_bg_m, spec);
}

double scattering_from_detuning(double detuning_G, const FeshbachResonance& res) {
  if (detuning_G == 0.0) {
    throw PoleError("scattering length diverges at the resonance", res.B0_G);
  }
  return res.a_bg_m * (1.0 - res.width_G / detuning_G);
}

double scattering_from_field(double B_G, const FeshbachResonance& res) {
  return scattering_from_detuning(B_G - res.B0_G, res);
}

double field_from_scattering(double a_m, const FeshbachResonance& res) {
  if (a_m == res.a_bg_m) {
    throw PoleError("background scattering length needs infinite detuning",
                    std::numeric_limits<double>::infinity());
  }
  return res.B0_G + res.width_G / (1.0 - a_m / res.a_bg_m);
}

double sound_speed_from_detuning(double detuning_G, const CondensateSpec& spec) {
  if (detuning_G == 0.0) {
    throw PoleError("sound speed undefined at the resonance", spec.resonance.B0_G);
  }
  const double radicand = 1.0 - spec.resonance.width_G / detuning_G;
  if (radicand < 0.0) {
    throw DomainError("imaginary sound speed: field lies in the attractive window");
  }
  return background_sound_speed(spec) * std::sqrt(radicand);
}

double sound_speed_from_field(double B_G, const CondensateSpec& spec) {
  return sound_speed_from_detuning(B_G - spec.resonance.B0_G, spec);
}

double healing_length(double sound_speed, const AtomSpecies& species) {
  if (!(sound_speed > 0.0)) throw DomainError("healing length needs c_s > 0");
  return kHbar / (std::sqrt(2.0) * species.mass_kg * sound_speed);
}

// ---------------------------------------------------------------------------

PresetRegistry PresetRegistry::defaults() {
  PresetRegistry reg;
  // Standard atomic weights of the natural elements.
  const auto add = [&reg](const char* key, double mass_u, const char* note) {
    reg.add_species(key, {{key, mass_u * kAtomicMassUnit}, note});
  };
  add("Li", 6.94, "standard atomic weight 6.94 u");
  add("Na", 22.98976928, "standard atomic weight 22.98976928 u (Na-23)");
  add("K", 39.0983, "standard atomic weight 39.0983 u");
  add("Rb", 85.4678, "standard atomic weight 85.4678 u");
  add("Cs", 132.90545196, "standard atomic weight 132.90545196 u (Cs-133)");

  reg.add_resonance("Cs", {"Cs",
                           {bohr_to_m(950.0), 0.157, 47.766},
                           "cesium resonance: width 157 mG at 47.766 G, a_bg ~ 950 a0"});
  return reg;
}

void PresetRegistry::add_species(const std::string& key, SpeciesPreset preset) {
  validate(preset.species);
  species_[key] = std::move(preset);
}

void PresetRegistry::add_resonance(const std::string& key, ResonancePreset preset) {
  validate(preset.resonance);
  resonances_[key] = std::move(preset);
}

const SpeciesPreset& PresetRegistry::species(const std::string& key) const {
  const auto it = species_.find(key);
  if (it == species_.end()) throw DomainError("unknown species preset '" + key + "'");
  return it->second;
}

const ResonancePreset& PresetRegistry::resonance(const std::string& key) const {
  const auto it = resonances_.find(key);
  if (it == resonances_.end()) throw DomainError("unknown resonance preset '" + key + "'");
  return it->second;
}

CondensateSpec PresetRegistry::condensate(const std::string& resonance_key,
                                          double density_per_m3) const {
  const auto& res = resonance(resonance_key);
  CondensateSpec spec{species(res.species).species, res.resonance, density_per_m3};
  validate(spec);
  return spec;
}

CondensateSpec cesium_condensate() {
  return PresetRegistry::defaults().condensate("Cs", kTypicalDensity);
}

}  // namespace becwh
