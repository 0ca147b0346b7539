#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "implab/cli/config.hpp"
#include "implab/julia.hpp"

namespace implab::cli {

// Stable exit-status contract.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2 };

struct CommandOptions {
    std::string config_path;  // empty: built-in default scene
    std::string out_dir = "out";
    std::optional<Complex> eps;
    unsigned threads = 0;  // 0: IMPLAB_THREADS, then hardware
};

// --threads wins, then IMPLAB_THREADS, then 0.
unsigned resolve_threads(std::optional<unsigned> flag);

// Sidecar timestamp: SOURCE_DATE_EPOCH when set, otherwise derived from the
// config hash so that reruns reproduce identical files.
std::string metadata_timestamp(const RunConfig& cfg);

int cmd_verify(const CommandOptions& opt, std::ostream& log);
int cmd_render(const CommandOptions& opt, std::ostream& log);
// `report` (optional) receives the computed report.
int cmd_implode(const CommandOptions& opt, std::ostream& log, DiscontinuityReport* report = nullptr);

// Same commands on an already loaded config; validation errors still map to 2.
int run_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int run_render(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int run_implode(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log,
                DiscontinuityReport* report = nullptr);

}  // namespace implab::cli
