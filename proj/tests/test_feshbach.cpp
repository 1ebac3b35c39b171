#include <cmath>

#include "becwh/errors.hpp"
#include "becwh/feshbach.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace becwh;

namespace {
const CondensateSpec cs = cesium_condensate();
const FeshbachResonance& res = cs.resonance;
}  // namespace

TEST_CASE("cesium preset values") {
  CHECK(res.width_G == 0.157);
  CHECK(res.B0_G == 47.766);
  CHECK(m_to_bohr(res.a_bg_m) == doctest::Approx(950.0).epsilon(1e-14));
  CHECK(cs.density_per_m3 == 1e21);
  CHECK(cs.species.name == "Cs");
}

TEST_CASE("sound speed from scattering length") {
  CHECK(sound_speed_from_scattering(0.0, cs) == 0.0);
  // direct arithmetic with independently typed constants
  const double mass = 132.90545196 * oracle::amu;
  const double expected =
      oracle::hbar / mass * std::sqrt(4.0 * M_PI * 1e21 * 950.0 * oracle::bohr);
  CHECK(expected == doctest::Approx(0.0120).epsilon(0.01));
  CHECK(sound_speed_from_scattering(bohr_to_m(950.0), cs) ==
        doctest::Approx(expected).epsilon(1e-13));
  const double a_ref = bohr_to_m(120.0);
  CHECK(sound_speed_from_scattering(4.0 * a_ref, cs) ==
        doctest::Approx(2.0 * sound_speed_from_scattering(a_ref, cs)).epsilon(1e-15));
  CHECK_THROWS_AS(sound_speed_from_scattering(-1e-9, cs), DomainError);
}

TEST_CASE("scattering length versus field") {
  CHECK(scattering_from_field(res.B0_G + res.width_G, res) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(scattering_from_detuning(res.width_G, res) == 0.0);
  CHECK(scattering_from_field(1e12, res) == doctest::Approx(res.a_bg_m).epsilon(1e-12));
  CHECK(scattering_from_field(-1e12, res) == doctest::Approx(res.a_bg_m).epsilon(1e-12));
  CHECK(m_to_bohr(scattering_from_field(48.080, res)) == doctest::Approx(475.0).epsilon(1e-9));
  // attractive window is reported, not rejected
  CHECK(is_attractive(scattering_from_field(res.B0_G + 0.5 * res.width_G, res)));
  try {
    scattering_from_field(res.B0_G, res);
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.location() == res.B0_G);
  }
}

TEST_CASE("field from scattering length") {
  CHECK(field_from_scattering(0.0, res) == doctest::Approx(res.B0_G + res.width_G));
  CHECK(field_from_scattering(0.5 * res.a_bg_m, res) == doctest::Approx(48.080).epsilon(1e-12));
  CHECK_THROWS_AS(field_from_scattering(res.a_bg_m, res), PoleError);

  auto gen = oracle::rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double a = oracle::uniform(gen, -1.0, 1.0) * res.a_bg_m;
    const double back = scattering_from_field(field_from_scattering(a, res), res);
    // measured against a_bg: B - B0 cancels digits when a is near zero
    CHECK(std::abs(back - a) / res.a_bg_m < 1e-12);
  }
}

TEST_CASE("sound speed from field") {
  CHECK(sound_speed_from_detuning(res.width_G, cs) == 0.0);
  CHECK(sound_speed_from_field(1e15, cs) == doctest::Approx(background_sound_speed(cs)).epsilon(1e-12));
  CHECK_THROWS_AS(sound_speed_from_field(res.B0_G + 0.5 * res.width_G, cs), DomainError);
  CHECK_THROWS_AS(sound_speed_from_field(res.B0_G, cs), PoleError);

  auto gen = oracle::rng(2);
  for (int i = 0; i < 1000; ++i) {
    // valid fields: detuning outside (0, width)
    const double detuning = res.width_G * (1.0 + oracle::log_uniform(gen, 1e-3, 1e4));
    const double B = res.B0_G + (i % 2 == 0 ? detuning : -detuning);
    const double direct = sound_speed_from_field(B, cs);
    const double composed = sound_speed_from_scattering(scattering_from_field(B, res), cs);
    CHECK(direct == doctest::Approx(composed).epsilon(1e-12));
  }
}

TEST_CASE("healing lengths reproduce the alkali table within 2%") {
  const auto presets = PresetRegistry::defaults();
  struct Row {
    const char* species;
    double xi_slow_um;  // c_s = 0.01 m/s
    double xi_fast_um;  // c_s = 0.02 m/s
  };
  for (const Row row : {Row{"Li", 0.648, 0.324}, Row{"Na", 0.195, 0.098}, Row{"K", 0.115, 0.058},
                        Row{"Rb", 0.053, 0.026}, Row{"Cs", 0.034, 0.017}}) {
    CAPTURE(row.species);
    const auto& sp = presets.species(row.species).species;
    CHECK(m_to_microns(healing_length(0.01, sp)) == doctest::Approx(row.xi_slow_um).epsilon(0.02));
    CHECK(m_to_microns(healing_length(0.02, sp)) == doctest::Approx(row.xi_fast_um).epsilon(0.02));
    // ξ c_s is a species constant
    CHECK(healing_length(0.013, sp) * 0.013 ==
          doctest::Approx(oracle::hbar / (std::sqrt(2.0) * sp.mass_kg)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(healing_length(0.0, presets.species("Cs").species), DomainError);
}

TEST_CASE("preset registry") {
  auto reg = PresetRegistry::defaults();
  CHECK(reg.all_species().size() == 5);
  CHECK(reg.has_resonance("Cs"));
  CHECK_THROWS_AS(reg.species("Xe"), DomainError);
  reg.add_species("Sr", {{"Sr", 87.62 * kAtomicMassUnit}, "test"});
  CHECK(reg.has_species("Sr"));
  CHECK_THROWS_AS(reg.add_species("bad", {{"bad", -1.0}, ""}), DomainError);
  CHECK_THROWS_AS(reg.add_resonance("bad", {"Cs", {1e-9, 0.0, 1.0}, ""}), DomainError);
  CHECK_THROWS_AS(reg.condensate("Cs", 0.0), DomainError);
}
