#pragma once

#include <string>

#include "cvbell/config.hpp"

namespace cvbell {

/// Exit codes shared by all subcommands.
enum ExitCode : int {
    exit_ok = 0,
    exit_verify_failed = 1,
    exit_parse_error = 2,
    exit_degenerate = 3,
    exit_io_error = 4,
};

int cmd_eval(const RunConfig& config, int threads = 1);
int cmd_scan(const RunConfig& config, int threads = 1);
int cmd_optimize(const RunConfig& config, bool warm_paper, int threads = 1);
int cmd_verify(int dim, int cases, int rng_seed);

/// Full argv entry point used by the cvbell binary.
int run_cli(int argc, const char* const* argv);

}  // namespace cvbell
