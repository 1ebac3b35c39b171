#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "becwh/config.hpp"

namespace becwh::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kInfeasible = 2 };

struct RunOptions {
  bool strict = false;
};

// Each pipeline writes its files under cfg.output.dir and returns an exit
// code; errors propagate as exceptions.
int cmd_profile1d(const RunConfig& cfg, const RunOptions& opts, std::ostream& log);
int cmd_solve_gp(const RunConfig& cfg, const RunOptions& opts, std::ostream& log);
int cmd_profile3d(const RunConfig& cfg, const RunOptions& opts, std::ostream& log);
int cmd_embed(const RunConfig& cfg, const RunOptions& opts, std::ostream& log);
int cmd_presets(const PresetRegistry& presets, OutputFormat format, std::ostream& out);

/// Full command line (argv[0] excluded). Never throws; maps failures to
/// exit code 1 with a message on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace becwh::cli
