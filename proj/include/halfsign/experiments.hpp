#ifndef HALFSIGN_EXPERIMENTS_HPP
#define HALFSIGN_EXPERIMENTS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "halfsign/run_config.hpp"

namespace halfsign::cli {

struct Artifact {
    std::string path;  // as written, relative to the output directory
    std::string sha256;
    u64 bytes = 0;
};

struct RunResult {
    int status = 0;
    std::vector<Artifact> files;  // excludes the manifest itself
};

/// Names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

/// Runs one experiment, writes its artifact and a manifest (manifest_<name>.json, one
/// entry per artifact with its SHA-256) into config.out, and prints a short
/// summary to `log`. Throws UsageError on an invalid config.
RunResult run_experiment(const std::string& name, const RunConfig& config, std::ostream& log);

std::string sha256_hex(const std::string& bytes);

}  // namespace halfsign::cli

#endif
