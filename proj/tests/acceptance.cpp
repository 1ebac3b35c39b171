// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "becwh/cli.hpp"
#include "becwh/feshbach.hpp"
#include "becwh/geometry.hpp"
#include "becwh/gp3d.hpp"
#include "becwh/profile1d.hpp"
#include "becwh/profile3d.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace becwh;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// worst-case tracker: keeps the largest observed error and its location
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::string& at) {
    if (!(v <= value)) {
      value = v;
      where = at;
    }
  }
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Verdict slope_reproduction() {
  const auto res = cesium_condensate().resonance;
  const double slope = slope_metric(ShapeFunction{1.0, 0.95}, res, 10.0);
  return {std::abs(slope - 0.038) <= 0.001, fmt("slope at x=10 um: %.6f /um", slope)};
}

Verdict healing_length_table() {
  const std::vector<std::tuple<std::string, double, double>> table = {
      {"Li", 0.648, 0.324}, {"Na", 0.195, 0.098}, {"K", 0.115, 0.058},
      {"Rb", 0.053, 0.026}, {"Cs", 0.034, 0.017}};
  const auto presets = PresetRegistry::defaults();
  Verdict v;
  Worst worst;
  for (const auto& [key, xi_slow, xi_fast] : table) {
    const auto& species = presets.species(key).species;
    const double slow = m_to_microns(healing_length(0.01, species));
    const double fast = m_to_microns(healing_length(0.02, species));
    const double e1 = oracle::relative_error(slow, xi_slow);
    const double e2 = oracle::relative_error(fast, xi_fast);
    worst.update(std::max(e1, e2), key);
    if (e1 > 0.02 || e2 > 0.02) v.pass = false;
  }
  v.detail = fmt("worst relative deviation %.4f", worst.value) + " (" + worst.where + ")";
  return v;
}

Verdict ellis_closed_forms() {
  Verdict v;
  Worst l, z, t;
  for (double b0 : {0.1, 1.0, 3.0, 10.0}) {
    const auto s = ShapeFunction::ellis(b0);
    for (int i = 0; i <= 400; ++i) {
      // r/b0 - 1 log-spaced over [1e-6, 99]
      const double excess = 1e-6 * std::pow(99.0 / 1e-6, i / 400.0);
      const double r = b0 * (1.0 + excess);
      const std::string at = "b0=" + std::to_string(b0) + " r/b0-1=" + std::to_string(excess);
      l.update(oracle::relative_error(proper_distance(s, r), oracle::ellis_distance(b0, r)), at);
      z.update(oracle::relative_error(embedding_height(s, r), oracle::ellis_height(b0, r)), at);
      for (double energy : {1.0 + 1e-6, 1.25, 3.0}) {
        t.update(oracle::relative_error(gp_time_offset(r, energy, b0),
                                        oracle::ellis_time_offset(energy, b0, r)),
                 at);
      }
    }
  }
  v.pass = l.value < 1e-8 && z.value < 1e-8 && t.value < 1e-8;
  v.detail = fmt("max rel err l %.2e", l.value) + fmt(", z %.2e", z.value) +
             fmt(", t_r offset %.2e", t.value);
  return v;
}

Verdict gp_congruence() {
  auto gen = oracle::rng(4);
  Worst worst;
  for (int i = 0; i < 1000; ++i) {
    const double b0 = oracle::log_uniform(gen, 0.1, 10.0);
    const double r = b0 * (1.0 + oracle::log_uniform(gen, 1e-6, 100.0));
    const double gamma = 1.0 + oracle::log_uniform(gen, 1e-8, 10.0);
    const double c = oracle::log_uniform(gen, 1e-3, 3e8);
    worst.update(metric_congruence_check(r, gamma, c, b0), std::to_string(i));
  }
  bool exact = true;
  for (double r : {1.001, 1.5, 2.0, 10.0, 1e3}) {
    const auto gp = gp_metric(r, 1.0, 2.5, 1.0);
    const auto wh = wormhole_metric(r, 2.5, 1.0);
    exact = exact && gp.tr == wh.tr && metric_congruence_check(r, 1.0, 2.5, 1.0) == 0.0;
  }
  return {worst.value < 1e-12 && exact,
          fmt("max deviation %.2e over 1000 points", worst.value) +
              (exact ? ", gamma=1 exact" : ", gamma=1 NOT exact")};
}

Verdict exact_system_solver() {
  const std::vector<std::pair<double, double>> sets = {
      {0.001, 0.1}, {0.009, 1.0}, {0.01, 1.0}, {0.01, 3.0}};
  Verdict v;
  double worst_res = 0.0, worst_dev = 0.0;
  std::size_t points = 0, converged = 0;
  for (const auto& [v_inf, b0] : sets) {
    const auto sol = solve_matching(v_inf, b0, {1.1 * b0, 10.0 * b0, 0.01 * b0});
    points += sol.size();
    converged += sol.converged_count();
    for (std::size_t i = 0; i < sol.size(); ++i) {
      worst_res = std::max({worst_res, std::abs(sol.residual1[i]), std::abs(sol.residual2[i])});
      const auto zero = zero_order_solution(sol.radii[i], v_inf, b0);
      worst_dev = std::max({worst_dev, oracle::relative_error(sol.cs0[i], zero.cs0),
                            oracle::relative_error(sol.vr[i], zero.v_r)});
    }
  }
  v.pass = converged == points && worst_res < 1e-12 && worst_dev < 1e-9;
  v.detail = std::to_string(converged) + "/" + std::to_string(points) + " converged" +
             fmt(", max residual %.2e", worst_res) + fmt(", max zero-order deviation %.2e", worst_dev);
  return v;
}

Verdict asymptote_localization() {
  const auto cs = cesium_condensate();
  const double c_bg = background_sound_speed(cs);
  const double v_inf = 0.01, b0 = 1.0, R = 5.0, step = 0.01;
  const double offset = b0 * (std::sqrt(1.0 + c_bg * c_bg / (v_inf * v_inf)) - 1.0);
  const auto found = detect_asymptotes({R, b0}, v_inf, cs, step);
  Verdict v;
  v.pass = std::abs(c_bg - 0.0120) <= 0.01 * 0.0120 && found.size() == 2;
  if (found.size() == 2) {
    const double e1 = std::abs(found[0] - (R - offset));
    const double e2 = std::abs(found[1] - (R + offset));
    v.pass = v.pass && e1 <= step && e2 <= step;
    v.detail = fmt("poles at x=%.6f", found[0]) + fmt(", %.6f um", found[1]) +
               fmt(" (expected R -/+ %.6f)", offset);
  } else {
    v.detail = std::to_string(found.size()) + " poles detected";
  }
  v.detail += fmt(", background sound speed %.6f m/s", c_bg);
  return v;
}

Verdict throat_identities() {
  auto gen = oracle::rng(7);
  int failures = 0;
  for (int i = 0; i < 2000; ++i) {
    const double b0 = oracle::log_uniform(gen, 0.05, 20.0);
    const double q = oracle::uniform(gen, -3.0, 0.999);
    const double v_inf = oracle::log_uniform(gen, 1e-4, 0.05);
    const CondensateSpec spec{{"X", oracle::uniform(gen, 6.0, 140.0) * oracle::amu},
                              {oracle::uniform(gen, 50.0, 2000.0) * oracle::bohr,
                               oracle::log_uniform(gen, 0.01, 50.0),
                               oracle::uniform(gen, 1.0, 1000.0)},
                              oracle::log_uniform(gen, 1e18, 1e22)};
    const auto& res = spec.resonance;
    const ShapeFunction s{b0, q};
    const auto s3 = sound_speed_profile_3d(b0, v_inf, b0);
    const bool ok =
        scattering_profile_1d(s, b0) == 0.0 && field_profile_1d(s, res, b0) == res.B0_G + res.width_G &&
        sound_speed_from_detuning(field_detuning_1d(s, res, b0), spec) == 0.0 &&
        scattering_profile_3d(b0, v_inf, b0, spec) == 0.0 &&
        field_profile_3d(b0, v_inf, b0, spec).B == res.B0_G + res.width_G && s3.cs == 0.0 &&
        s3.cs0 == v_inf && embedding_height(s, b0) == 0.0 && proper_distance(s, b0) == 0.0 &&
        proper_distance(s, b0, Side::Lower) == 0.0;
    if (!ok) ++failures;
  }
  return {failures == 0, std::to_string(2000 - failures) + "/2000 random parameter sets"};
}

Verdict cross_parametrization() {
  auto gen = oracle::rng(8);
  const auto spec = cesium_condensate();
  const auto& res = spec.resonance;
  Worst a_err, c_err;
  std::size_t samples = 0, resonant = 0;
  // |a|/a_bg > 1e3 means |B - B0| < 1e-3 width: the Feshbach pole of a(B), where
  // a field stored in Gauss no longer resolves the detuning to 1e-10
  auto near_resonance = [&](double a_over_abg) {
    if (std::abs(a_over_abg) <= 1e3) return false;
    ++resonant;
    return true;
  };
  auto check = [&](double B, double a_over_abg, double cs, const std::string& at) {
    const double a_field = scattering_from_field(B, res);
    const double c_field = sound_speed_from_field(B, spec);
    const double c_scatter = sound_speed_from_scattering(a_over_abg * res.a_bg_m, spec);
    a_err.update(oracle::relative_error(a_field / res.a_bg_m, a_over_abg), at);
    c_err.update(std::max(oracle::relative_error(c_field, cs), oracle::relative_error(c_scatter, cs)),
                 at);
    ++samples;
  };
  for (int trial = 0; trial < 40; ++trial) {
    const double b0 = oracle::log_uniform(gen, 0.1, 5.0);
    const double q = oracle::uniform(gen, -2.0, 0.99);
    const double step = oracle::log_uniform(gen, 0.01, 0.5);
    const Grid1D grid{-oracle::uniform(gen, 5.0, 30.0), oracle::uniform(gen, 5.0, 30.0), step};
    for (const auto& p : sample_profile_1d({b0, q}, spec, grid)) {
      if (!p.valid || p.a_over_abg == 0.0 || near_resonance(p.a_over_abg)) continue;
      check(p.B, p.a_over_abg, p.cs, "1d q=" + std::to_string(q) + " x=" + std::to_string(p.x));
    }
    const double v_inf = oracle::uniform(gen, 0.002, 0.02);
    const LabLayout layout{oracle::uniform(gen, 2.0, 10.0), b0};
    for (const auto& p : lab_profiles_3d(layout, v_inf, spec, step)) {
      if (!p.valid || p.a_over_abg == 0.0 || near_resonance(p.a_over_abg)) continue;
      check(p.B, p.a_over_abg, p.cs, "3d v=" + std::to_string(v_inf) + " x=" + std::to_string(p.x));
    }
  }
  return {a_err.value < 1e-10 && c_err.value < 1e-10,
          std::to_string(samples) + " samples (" + std::to_string(resonant) +
              " within 1e-3 width of B0 skipped)" + fmt(", max rel err a %.2e", a_err.value) +
              fmt(", c_s %.2e", c_err.value) + (a_err.value < 1e-10 ? "" : " at " + a_err.where) +
              (c_err.value < 1e-10 ? "" : " at " + c_err.where)};
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    files[fs::relative(entry.path(), dir).string()] =
        std::string(std::istreambuf_iterator<char>(in), {});
  }
  return files;
}

Verdict determinism() {
  const fs::path root = fs::temp_directory_path() / "becwh_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> commands = {
      {"profile1d", "--q", "0.95", "-0.5", "--b0", "1", "10"},
      {"profile1d", "--format", "json"},
      {"solve-gp", "--v-inf", "0.009"},
      {"profile3d"},
      {"profile3d", "--format", "json"},
      {"embed", "--q", "0.5", "--b0", "3"},
      {"presets"},
      {"presets", "--format", "json"}};
  Verdict v;
  int compared = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::map<std::string, std::string> runs[2];
    std::string stdout_text[2];
    int codes[2];
    for (int k = 0; k < 2; ++k) {
      const fs::path dir = root / ("cmd" + std::to_string(i)) / std::to_string(k);
      fs::create_directories(dir);
      auto args = commands[i];
      if (args.front() != "presets") {
        args.push_back("--out");
        args.push_back(dir.string());
      }
      std::ostringstream out, err;
      codes[k] = cli::run(args, out, err);
      stdout_text[k] = out.str();
      runs[k] = snapshot(dir);
    }
    const bool same = codes[0] == 0 && codes[1] == 0 && runs[0] == runs[1] &&
                      (commands[i].front() != "presets" || stdout_text[0] == stdout_text[1]);
    if (!same) {
      v.pass = false;
      v.detail += " [" + commands[i].front() + " differs]";
    }
    compared += static_cast<int>(runs[0].size());
  }
  fs::remove_all(root);
  v.detail = std::to_string(commands.size()) + " commands, " + std::to_string(compared) +
             " files compared" + v.detail;
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0 = no runtime limit
  std::function<Verdict()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "slope reproduction", 1.0, slope_reproduction},
      {2, "healing-length table", 1.0, healing_length_table},
      {3, "Ellis closed forms", 5.0, ellis_closed_forms},
      {4, "GP congruence", 1.0, gp_congruence},
      {5, "exact-system solver", 10.0, exact_system_solver},
      {6, "asymptote localization", 1.0, asymptote_localization},
      {7, "throat identities", 1.0, throat_identities},
      {8, "cross-parametrization consistency", 5.0, cross_parametrization},
      {9, "determinism", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_s == 0.0 || elapsed < c.limit_s;
    const bool pass = v.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d (%s): %s; %.3f s", pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), elapsed);
    if (c.limit_s > 0.0) std::printf(" (limit %.0f s%s)", c.limit_s, in_time ? "" : ", EXCEEDED");
    std::printf("\n");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
