#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "kdist/ini.hpp"
#include "kdist/report.hpp"

namespace kdist {

enum class Command { body_inspect, decay_scan, distset_scan, fractal_build, convert_demo, lemma_check };

std::string to_string(Command c);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  /// overrides every seed of the config when set
  std::optional<std::uint64_t> seed;
  bool write_files = true;
};

/// Artifacts of one run, keyed by file extension ("json", "csv", "svg").
struct RunOutput {
  Report report;
  std::map<std::string, std::string> artifacts;
  int exit_code = 0;  ///< 0 all verdicts pass, 2 some verdict failed
};

/// Runs one experiment described by a key = value config.
///
/// Sections: [run] (seed, name, plot), [body], and one section per command:
/// [inspect], [decay], [distset], [fractal], [convert], [lemma]. Unknown keys
/// raise ConfigError naming the field. Artifacts are written to
/// out_dir/<name>.{json,csv,svg} only after the whole run succeeded.
RunOutput run(Command command, const IniDocument& config, const RunOptions& options = {});

/// Exit code for an exception escaping run(): always 1.
constexpr int kErrorExitCode = 1;
constexpr int kThresholdExitCode = 2;

}  // namespace kdist
