#include "becwh/cli.hpp"

#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "becwh/errors.hpp"
#include "becwh/geometry.hpp"
#include "becwh/gp3d.hpp"
#include "becwh/io.hpp"
#include "becwh/profile1d.hpp"
#include "becwh/profile3d.hpp"

namespace becwh::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string tag(const char* name, double value) { return name + format_double(value); }

// JSON keeps NaN out of documents: null instead.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void write_table(const fs::path& stem, OutputFormat format, const std::string& csv_text,
                 const json& json_rows) {
  if (format == OutputFormat::Csv) {
    write_text_file(stem.string() + ".csv", csv_text);
  } else {
    write_text_file(stem.string() + ".json", dump(json_rows));
  }
}

std::string extension(OutputFormat format) {
  return format == OutputFormat::Csv ? ".csv" : ".json";
}

json resolution_json(const ResolutionReport& r) {
  return {{"species", r.species},
          {"cs0_m_per_s", r.cs0},
          {"healing_length_um", r.healing_length},
          {"step_um", r.step},
          {"step_over_xi", r.ratio},
          {"resolution_pass", r.resolution_pass},
          {"throat_resolved", r.throat_resolved}};
}

json condensate_json(const CondensateSpec& spec) {
  return {{"species", spec.species.name},
          {"mass_kg", spec.species.mass_kg},
          {"a_bg_a0", m_to_bohr(spec.resonance.a_bg_m)},
          {"width_G", spec.resonance.width_G},
          {"B0_G", spec.resonance.B0_G},
          {"density_m3", spec.density_per_m3},
          {"background_sound_speed_m_per_s", background_sound_speed(spec)}};
}

}  // namespace

int cmd_profile1d(const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
  validate_for_profile1d(cfg);
  const auto spec = cfg.condensate_spec();
  const auto& out_dir = cfg.output.dir;
  const FeasibilityOptions1D fopts{cfg.thresholds.slope, cfg.grid.throat_exclusion,
                                   cfg.grid.reference_x};

  json runs = json::array();
  bool all_simulable = true;
  for (double q : cfg.wormhole.q) {
    for (double b0 : cfg.wormhole.b0) {
      const ShapeFunction shape(b0, q);
      const auto samples = sample_profile_1d(shape, spec, cfg.grid.x);
      const auto feas = feasibility_1d(shape, spec, cfg.grid.x, fopts);
      const auto cls = classify(shape);

      const std::string stem = "profile1d_" + tag("q", q) + "_" + tag("b0_", b0);
      std::ostringstream csv;
      write_csv(csv, samples);
      json rows = json::array();
      if (cfg.output.format == OutputFormat::Json) {
        for (const auto& p : samples) {
          rows.push_back({{"x_um", p.x}, {"r_um", p.r}, {"a_over_abg", p.a_over_abg},
                          {"a_over_100a0", p.a_over_100a0}, {"B_gauss", p.B},
                          {"cs_m_per_s", number_or_null(p.cs)}, {"valid", p.valid}});
        }
      }
      write_table(out_dir / stem, cfg.output.format, csv.str(), rows);

      std::size_t valid = 0;
      for (const auto& p : samples) valid += p.valid ? 1 : 0;
      const bool simulable = cls == ThroatClass::Traversable && feas.feasible;
      all_simulable = all_simulable && simulable;
      runs.push_back({{"q", q},
                      {"b0_um", b0},
                      {"throat_class", to_string(cls)},
                      {"file", stem + extension(cfg.output.format)},
                      {"samples", samples.size()},
                      {"valid_samples", valid},
                      {"feasibility",
                       {{"max_slope_per_um", feas.max_slope},
                        {"slope_at_um", feas.slope_at},
                        {"threshold_per_um", feas.threshold},
                        {"throat_exclusion_um", fopts.throat_exclusion},
                        {"reference_x_um", feas.reference_x},
                        {"slope_at_reference", feas.reference_slope},
                        {"slope_at_x10", std::abs(slope_metric(shape, spec.resonance, 10.0))},
                        {"feasible", feas.feasible}}},
                      {"simulable", simulable}});
      log << stem << ": max slope " << format_double(feas.max_slope) << "/um, "
          << (simulable ? "simulable" : "not simulable") << "\n";
    }
  }
  json summary = {{"command", "profile1d"},
                  {"condensate", condensate_json(spec)},
                  {"grid", {{"x_min_um", cfg.grid.x.x_min},
                            {"x_max_um", cfg.grid.x.x_max},
                            {"step_um", cfg.grid.x.step}}},
                  {"runs", runs},
                  {"all_simulable", all_simulable}};
  write_text_file(out_dir / "profile1d_summary.json", dump(summary));
  return (opts.strict && !all_simulable) ? kInfeasible : kSuccess;
}

int cmd_solve_gp(const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
  validate_for_solve_gp(cfg);
  (void)opts;
  const auto& out_dir = cfg.output.dir;
  const MatchingOptions mopts{cfg.grid.throat_epsilon, {}};

  json runs = json::array();
  for (const auto& run : cfg.observers) {
    const RadialGrid grid{cfg.grid.r_min_b0 * run.b0, cfg.grid.r_max_b0 * run.b0,
                          cfg.grid.r_step_b0 * run.b0};
    const auto sol = solve_matching(run.v_inf, run.b0, grid, kSpeedOfLight, mopts);

    const std::string stem = "solve_gp_" + tag("v", run.v_inf) + "_" + tag("b0_", run.b0);
    std::ostringstream csv;
    write_csv(csv, sol);
    json rows = json::array();
    if (cfg.output.format == OutputFormat::Json) {
      for (std::size_t i = 0; i < sol.size(); ++i) {
        rows.push_back({{"r_um", sol.radii[i]}, {"cs0_m_per_s", sol.cs0[i]},
                        {"vr_m_per_s", sol.vr[i]}, {"res1", sol.residual1[i]},
                        {"res2", sol.residual2[i]},
                        {"converged", static_cast<bool>(sol.converged[i])}});
      }
    }
    write_table(out_dir / stem, cfg.output.format, csv.str(), rows);

    double max_residual = 0.0;
    for (std::size_t i = 0; i < sol.size(); ++i) {
      if (!sol.converged[i]) continue;
      max_residual = std::max({max_residual, std::abs(sol.residual1[i]),
                               std::abs(sol.residual2[i])});
    }
    json audits = json::array();
    for (const auto& [key, preset] : cfg.presets.all_species()) {
      audits.push_back(resolution_json(resolution_audit(
          sol, preset.species, grid.step, run.b0, {cfg.thresholds.resolution_factor})));
    }
    const double deviation = sol.max_zero_order_deviation(run.v_inf, run.b0);
    runs.push_back({{"v_inf_m_per_s", run.v_inf},
                    {"b0_um", run.b0},
                    {"file", stem + extension(cfg.output.format)},
                    {"points", sol.size()},
                    {"converged", sol.converged_count()},
                    {"max_abs_residual", max_residual},
                    {"max_zero_order_deviation", deviation},
                    {"resolution", audits}});
    log << stem << ": " << sol.converged_count() << "/" << sol.size()
        << " converged, zero-order deviation " << format_double(deviation) << "\n";
  }
  json summary = {{"command", "solve-gp"},
                  {"c_m_per_s", kSpeedOfLight},
                  {"grid_b0_units", {{"r_min", cfg.grid.r_min_b0},
                                     {"r_max", cfg.grid.r_max_b0},
                                     {"step", cfg.grid.r_step_b0}}},
                  {"runs", runs}};
  write_text_file(out_dir / "solve_gp_summary.json", dump(summary));
  return kSuccess;
}

int cmd_profile3d(const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
  validate_for_profile3d(cfg);
  const auto spec = cfg.condensate_spec();
  const auto& out_dir = cfg.output.dir;

  json runs = json::array();
  bool all_feasible = true;
  for (const auto& run : cfg.observers) {
    const LabLayout layout{cfg.layout.R, run.b0};
    const auto samples =
        lab_profiles_3d(layout, run.v_inf, spec, cfg.layout.step, {cfg.thresholds.pole_delta});
    const auto detected = detect_asymptotes(layout, run.v_inf, spec, cfg.layout.step);
    const auto analytic = analytic_asymptotes(layout, run.v_inf, spec);

    const std::string stem = "profile3d_" + tag("v", run.v_inf) + "_" + tag("b0_", run.b0);
    std::ostringstream csv;
    write_csv(csv, samples);
    json rows = json::array();
    if (cfg.output.format == OutputFormat::Json) {
      for (const auto& p : samples) {
        rows.push_back({{"x_um", p.x}, {"r_um", p.r}, {"cs0_m_per_s", p.cs0},
                        {"cs_m_per_s", p.cs}, {"B_gauss", number_or_null(p.B)},
                        {"a_over_abg", p.a_over_abg}, {"vr_m_per_s", p.vr},
                        {"valid", p.valid}, {"near_asymptote", p.near_asymptote}});
      }
    }
    write_table(out_dir / stem, cfg.output.format, csv.str(), rows);

    double max_a = 0.0;
    std::size_t flagged = 0;
    for (const auto& p : samples) {
      max_a = std::max(max_a, p.a_over_abg);
      flagged += p.near_asymptote ? 1 : 0;
    }
    json audits = json::array();
    for (const auto& [key, preset] : cfg.presets.all_species()) {
      audits.push_back(resolution_json(resolution_audit(
          samples, preset.species, cfg.layout.step, run.b0,
          {cfg.thresholds.resolution_factor})));
    }
    const bool feasible = detected.empty();
    all_feasible = all_feasible && feasible;
    runs.push_back({{"v_inf_m_per_s", run.v_inf},
                    {"b0_um", run.b0},
                    {"file", stem + extension(cfg.output.format)},
                    {"samples", samples.size()},
                    {"asymptote_radius_um", asymptote_radius(run.v_inf, run.b0, spec)},
                    {"asymptotes_x_um", detected},
                    {"asymptotes_analytic_x_um", analytic},
                    {"near_asymptote_samples", flagged},
                    {"max_a_over_abg", max_a},
                    {"resolution", audits},
                    {"feasible", feasible}});
    log << stem << ": " << detected.size() << " field asymptote(s), max a/a_bg "
        << format_double(max_a) << "\n";
  }
  json summary = {{"command", "profile3d"},
                  {"condensate", condensate_json(spec)},
                  {"layout", {{"R_um", cfg.layout.R}, {"step_um", cfg.layout.step}}},
                  {"pole_delta", cfg.thresholds.pole_delta},
                  {"runs", runs},
                  {"all_feasible", all_feasible}};
  write_text_file(out_dir / "profile3d_summary.json", dump(summary));
  return (opts.strict && !all_feasible) ? kInfeasible : kSuccess;
}

int cmd_embed(const RunConfig& cfg, const RunOptions& opts, std::ostream& log) {
  validate_for_embed(cfg);
  (void)opts;
  for (double q : cfg.wormhole.q) {
    for (double b0 : cfg.wormhole.b0) {
      const ShapeFunction shape(b0, q);
      const RadialGrid grid{b0, cfg.grid.embed_r_max_b0 * b0, cfg.grid.embed_step_b0 * b0};
      const std::string stem = "embed_" + tag("q", q) + "_" + tag("b0_", b0);
      std::ostringstream csv;
      json rows = json::array();
      CsvWriter writer(csv, {"r_um", "z_um", "l_um"});
      for (double r : grid.points()) {
        const double z = embedding_height(shape, r);
        const double l = proper_distance(shape, r);
        writer << r << z << l;
        writer.end_row();
        if (cfg.output.format == OutputFormat::Json) {
          rows.push_back({{"r_um", r}, {"z_um", z}, {"l_um", l}});
        }
      }
      write_table(cfg.output.dir / stem, cfg.output.format, csv.str(), rows);
      log << stem << ": " << grid.points().size() << " points\n";
    }
  }
  return kSuccess;
}

int cmd_presets(const PresetRegistry& presets, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Json) {
    json doc = {{"species", json::object()}, {"resonances", json::object()}};
    for (const auto& [key, p] : presets.all_species()) {
      doc["species"][key] = {{"mass_u", p.species.mass_kg / kAtomicMassUnit},
                             {"mass_kg", p.species.mass_kg},
                             {"note", p.note}};
    }
    for (const auto& [key, p] : presets.all_resonances()) {
      doc["resonances"][key] = {{"species", p.species},
                                {"a_bg_a0", m_to_bohr(p.resonance.a_bg_m)},
                                {"width_G", p.resonance.width_G},
                                {"B0_G", p.resonance.B0_G},
                                {"note", p.note}};
    }
    out << dump(doc);
    return kSuccess;
  }
  out << "species:\n";
  for (const auto& [key, p] : presets.all_species()) {
    out << "  " << key << "  mass " << format_double(p.species.mass_kg / kAtomicMassUnit)
        << " u  (" << p.note << ")\n";
  }
  out << "resonances:\n";
  for (const auto& [key, p] : presets.all_resonances()) {
    out << "  " << key << "  species " << p.species << ", a_bg "
        << format_double(m_to_bohr(p.resonance.a_bg_m)) << " a0, width "
        << format_double(p.resonance.width_G) << " G, B0 " << format_double(p.resonance.B0_G)
        << " G  (" << p.note << ")\n";
  }
  return kSuccess;
}

// ---------------------------------------------------------------------------

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::string format;
  bool strict = false;
  std::vector<double> b0, q;
  std::optional<double> v_inf;
  std::optional<double> R;
  std::optional<double> step;
  std::string resonance;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  sub->add_option("--out", f.out_dir, "output directory (overrides output.dir)");
  sub->add_option("--format", f.format, "table format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--strict", f.strict, "exit 2 when the recipe is infeasible");
  sub->add_option("--resonance", f.resonance, "resonance preset key");
}

RunConfig build_config(const CommonFlags& f) {
  RunConfig base;
  apply_preset_environment(base.presets);
  RunConfig cfg = f.config_path.empty() ? base : load_config(f.config_path, base);
  if (!f.out_dir.empty()) cfg.output.dir = f.out_dir;
  if (!f.format.empty()) cfg.output.format = parse_format(f.format);
  if (!f.b0.empty()) cfg.wormhole.b0 = f.b0;
  if (!f.q.empty()) cfg.wormhole.q = f.q;
  if (!f.resonance.empty()) cfg.condensate.preset = f.resonance;
  return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Laboratory control profiles for acoustic wormhole simulation in a BEC",
               "becwh"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::vector<double> gp_b0;
  auto* p1 = app.add_subcommand("profile1d", "1+1D field/scattering-length profiles");
  add_common(p1, flags);
  p1->add_option("--b0", flags.b0, "throat radius(es) in um");
  p1->add_option("--q", flags.q, "shape exponent(s)");
  p1->add_option("--step", flags.step, "x grid step in um");

  auto* gp = app.add_subcommand("solve-gp", "solve the exact 3+1D matching system");
  add_common(gp, flags);
  gp->add_option("--v-inf", flags.v_inf, "asymptotic infall speed in m/s");
  gp->add_option("--b0", gp_b0, "throat radius in um");

  auto* p3 = app.add_subcommand("profile3d", "3+1D lab profiles and asymptote audit");
  add_common(p3, flags);
  p3->add_option("--v-inf", flags.v_inf, "asymptotic infall speed in m/s");
  p3->add_option("--b0", gp_b0, "throat radius in um");
  p3->add_option("--R", flags.R, "branch length in um");
  p3->add_option("--step", flags.step, "lab grid step in um");

  auto* em = app.add_subcommand("embed", "embedding diagram z(r)");
  add_common(em, flags);
  em->add_option("--b0", flags.b0, "throat radius(es) in um");
  em->add_option("--q", flags.q, "shape exponent(s)");

  auto* pr = app.add_subcommand("presets", "list species and resonance presets");
  add_common(pr, flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return kFailure;
  }

  try {
    RunConfig cfg = build_config(flags);
    const RunOptions opts{flags.strict};
    const bool observer_override = flags.v_inf || !gp_b0.empty();
    if (observer_override && cfg.observers.size() != 1) {
      throw ConfigError("--v-inf/--b0 need a single observer run in the config");
    }
    if (flags.v_inf) cfg.observers.front().v_inf = *flags.v_inf;
    if (!gp_b0.empty()) cfg.observers.front().b0 = gp_b0.front();
    if (flags.R) cfg.layout.R = *flags.R;

    if (p1->parsed()) {
      if (flags.step) cfg.grid.x.step = *flags.step;
      return cmd_profile1d(cfg, opts, out);
    }
    if (gp->parsed()) return cmd_solve_gp(cfg, opts, out);
    if (p3->parsed()) {
      if (flags.step) cfg.layout.step = *flags.step;
      return cmd_profile3d(cfg, opts, out);
    }
    if (em->parsed()) return cmd_embed(cfg, opts, out);
    return cmd_presets(cfg.presets, cfg.output.format, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
  } catch (const PoleError& e) {
    err << "pole error: " << e.what() << "\n";
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kFailure;
}

}  // namespace becwh::cli
