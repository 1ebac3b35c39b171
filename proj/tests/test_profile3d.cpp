#include <algorithm>
#include <cmath>

#include "becwh/errors.hpp"
#include "becwh/profile3d.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace becwh;

namespace {
const CondensateSpec cs = cesium_condensate();
const FeshbachResonance& res = cs.resonance;

// c̃_s for the cesium preset from independently typed constants
double cesium_background_speed() {
  return oracle::hbar / (132.90545196 * oracle::amu) *
         std::sqrt(4.0 * M_PI * 1e21 * 950.0 * oracle::bohr);
}
}  // namespace

TEST_CASE("sound speed profile") {
  const auto throat = sound_speed_profile_3d(1.0, 0.01, 1.0);
  CHECK(throat.cs0 == 0.01);
  CHECK(throat.cs == 0.0);
  const auto p = sound_speed_profile_3d(2.0, 0.01, 1.0);
  CHECK(p.cs0 == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(p.cs == doctest::Approx(0.01 * std::sqrt(3.0)).epsilon(1e-15));

  auto gen = oracle::rng(31);
  for (int i = 0; i < 200; ++i) {
    const double b0 = oracle::uniform(gen, 0.1, 3.0);
    const double r = b0 * (1.0 + oracle::log_uniform(gen, 1e-6, 10.0));
    const double v = oracle::uniform(gen, 0.001, 0.02);
    const auto s = sound_speed_profile_3d(r, v, b0);
    CHECK(s.cs * s.cs == doctest::Approx(s.cs0 * s.cs0 - v * v).epsilon(1e-9));
  }
  CHECK_THROWS_AS(sound_speed_profile_3d(0.5, 0.01, 1.0), DomainError);
}

TEST_CASE("field asymptote location") {
  const double c_bg = cesium_background_speed();
  CHECK(background_sound_speed(cs) == doctest::Approx(c_bg).epsilon(1e-13));
  const double r_star = asymptote_radius(0.01, 1.0, cs);
  CHECK(r_star == doctest::Approx(std::sqrt(1.0 + c_bg * c_bg / 1e-4)).epsilon(1e-13));
  CHECK(r_star == doctest::Approx(1.562).epsilon(1e-3));
  CHECK(scattering_profile_3d(r_star, 0.01, 1.0, cs) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(field_denominator_3d(r_star, 0.01, 1.0, cs) == doctest::Approx(0.0).epsilon(1e-13));

  // smaller v_inf pushes the asymptote outward
  CHECK(asymptote_radius(0.009, 1.0, cs) > r_star);
}

TEST_CASE("field profile near and across the pole") {
  const auto throat = field_profile_3d(1.0, 0.01, 1.0, cs);
  CHECK(throat.B == res.B0_G + res.width_G);
  CHECK_FALSE(throat.near_asymptote);

  const double r_star = asymptote_radius(0.01, 1.0, cs);
  const auto just_inside = field_profile_3d(r_star * (1.0 - 1e-5), 0.01, 1.0, cs);
  CHECK(just_inside.B > res.B0_G + res.width_G);
  CHECK(just_inside.near_asymptote);
  const auto just_beyond = field_profile_3d(r_star * (1.0 + 1e-5), 0.01, 1.0, cs);
  CHECK(just_beyond.B < res.B0_G);
  CHECK(just_beyond.near_asymptote);
  const auto beyond = field_profile_3d(2.0 * r_star, 0.01, 1.0, cs);
  CHECK(beyond.B < res.B0_G);
  CHECK_FALSE(beyond.near_asymptote);

  // a denominator that is exactly zero: v = c̃_s, r² = 2 b0²
  const double exact_pole_v = background_sound_speed(cs);
  try {
    field_profile_3d(std::sqrt(2.0), exact_pole_v, 1.0, cs);
  } catch (const PoleError& e) {
    CHECK(e.location() == doctest::Approx(std::sqrt(2.0)));
  }
}

TEST_CASE("three parametrizations describe one profile") {
  auto gen = oracle::rng(17);
  for (int i = 0; i < 500; ++i) {
    const double b0 = oracle::uniform(gen, 0.5, 3.0);
    const double v = oracle::uniform(gen, 0.001, 0.02);
    const double r = b0 * (1.0 + oracle::log_uniform(gen, 1e-4, 9.0));
    const auto field = field_profile_3d(r, v, b0, cs);
    if (std::abs(field.denominator) < 1e-3) continue;
    const double a = scattering_profile_3d(r, v, b0, cs);
    const double a_from_field = scattering_from_field(field.B, res) / res.a_bg_m;
    // B - B0 cancels once |D| is large; rounding in B is amplified by D^2 B0 / width
    const double D = field.denominator;
    const double conditioning = 4.0 * 2.2e-16 * res.B0_G / res.width_G * D * D;
    CHECK(std::abs(a_from_field - a) <= 1e-12 * std::max(1.0, std::abs(a)) + conditioning);
    const double c_from_field = sound_speed_from_field(field.B, cs);
    const double c_direct = sound_speed_profile_3d(r, v, b0).cs;
    CHECK(std::abs(c_from_field - c_direct) <= 1e-10 * std::max(c_direct, background_sound_speed(cs)));
  }
}

TEST_CASE("lab profiles for the cesium layout") {
  const LabLayout layout{5.0, 1.0};
  const double v = 0.01;
  const double step = 0.01;
  const auto samples = lab_profiles_3d(layout, v, cs, step);
  REQUIRE(samples.size() == 1001);

  const double ratio = v / cesium_background_speed();
  CHECK(samples.front().x == 0.0);
  CHECK(samples.front().r == doctest::Approx(6.0));
  CHECK(samples.front().a_over_abg == doctest::Approx(ratio * ratio * 35.0).epsilon(1e-12));
  CHECK(samples.front().a_over_abg == doctest::Approx(24.2).epsilon(0.01));

  const auto throat = std::find_if(samples.begin(), samples.end(), [](auto& p) { return p.x == 5.0; });
  REQUIRE(throat != samples.end());
  CHECK(throat->a_over_abg == 0.0);
  CHECK(throat->B == res.B0_G + res.width_G);
  CHECK(throat->cs == 0.0);
  CHECK(throat->cs0 == v);
  CHECK(throat->vr == v);

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& p = samples[i];
    const auto& m = samples[samples.size() - 1 - i];
    CHECK(p.x + m.x == doctest::Approx(10.0));
    CHECK(p.r == doctest::Approx(m.r).epsilon(1e-12));
    CHECK(p.cs == doctest::Approx(m.cs).epsilon(1e-10));
    CHECK(p.a_over_abg == doctest::Approx(m.a_over_abg).epsilon(1e-10));
    CHECK(p.near_asymptote == m.near_asymptote);
    CHECK(p.vr == v);
    if (p.near_asymptote) {
      CHECK(std::isnan(p.B));
      CHECK_FALSE(p.valid);
    }
  }
}

TEST_CASE("asymptote detection matches the analytic positions") {
  const LabLayout layout{5.0, 1.0};
  for (double v : {0.01, 0.009}) {
    for (double step : {0.01, 0.05, 0.2}) {
      const auto detected = detect_asymptotes(layout, v, cs, step);
      const auto analytic = analytic_asymptotes(layout, v, cs);
      REQUIRE(detected.size() == 2);
      REQUIRE(analytic.size() == 2);
      for (int k = 0; k < 2; ++k) CHECK(std::abs(detected[k] - analytic[k]) <= step);
    }
  }
  const auto xs = analytic_asymptotes(layout, 0.01, cs);
  CHECK(xs[0] == doctest::Approx(4.438).epsilon(1e-3));
  CHECK(xs[1] == doctest::Approx(5.562).epsilon(1e-3));
  // slow flow: the pole lies beyond the branch length
  CHECK(detect_asymptotes(layout, 0.001, cs, 0.01).empty());
  CHECK(analytic_asymptotes(layout, 0.001, cs).empty());
}

TEST_CASE("numerical solution can replace the zero-order profile") {
  const LabLayout layout{5.0, 1.0};
  const double v = 0.01;
  const auto sol = solve_matching(v, 1.0, {1.001, 6.0, 0.01});
  ProfileOptions3D opts;
  opts.solution = &sol;
  const auto numeric = lab_profiles_3d(layout, v, cs, 0.05, opts);
  const auto zero = lab_profiles_3d(layout, v, cs, 0.05);
  REQUIRE(numeric.size() == zero.size());
  for (std::size_t i = 0; i < zero.size(); ++i) {
    CHECK(numeric[i].cs0 == doctest::Approx(zero[i].cs0).epsilon(1e-9));
    CHECK(numeric[i].vr == doctest::Approx(zero[i].vr).epsilon(1e-9));
  }
}

TEST_CASE("resolution audit") {
  const auto presets = PresetRegistry::defaults();
  const auto cesium = resolution_audit(0.01, presets.species("Cs").species, 0.4, 1.0);
  CHECK(cesium.ratio == doctest::Approx(11.8).epsilon(0.02));
  CHECK(cesium.resolution_pass);
  CHECK(cesium.throat_resolved);

  const auto lithium = resolution_audit(0.02, presets.species("Li").species, 1.5, 0.1);
  CHECK(lithium.healing_length == doctest::Approx(0.324).epsilon(0.02));
  CHECK(lithium.ratio == doctest::Approx(4.6).epsilon(0.02));
  CHECK_FALSE(lithium.resolution_pass);
  CHECK_FALSE(lithium.throat_resolved);
  // a looser "same order of magnitude" reading passes at factor 4
  CHECK(resolution_audit(0.02, presets.species("Li").species, 1.5, 0.1, {4.0}).resolution_pass);

  for (const auto& [key, preset] : presets.all_species()) {
    const double xi = m_to_microns(healing_length(0.01, preset.species));
    CHECK_FALSE(resolution_audit(0.01, preset.species, xi, 1.0).resolution_pass);
  }

  const auto profile = lab_profiles_3d({5.0, 1.0}, 0.01, cs, 0.5);
  CHECK(resolution_audit(profile, presets.species("Cs").species, 0.5, 1.0).cs0 == 0.01);
  // a grid that skips the throat audits its slowest sampled point
  const auto coarse = lab_profiles_3d({5.0, 1.0}, 0.01, cs, 0.4);
  CHECK(resolution_audit(coarse, presets.species("Cs").species, 0.4, 1.0).cs0 == doctest::Approx(0.012));
  CHECK_THROWS_AS(resolution_audit(0.01, presets.species("Cs").species, 0.0, 1.0), DomainError);
}
