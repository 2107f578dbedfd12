// kdist command line: one subcommand pair per experiment kind.
//
//   kdist body inspect   --config body.ini
//   kdist decay scan     --config decay.ini --out results/
//   kdist distset scan   --config scan.ini --seed 7 --threads 4
//   kdist fractal build  --config cantor.ini
//   kdist convert demo   --config dio.ini
//   kdist lemma check    --config lemma.ini
//
// Exit status: 0 when every verdict passes, 2 when a threshold fails and 1 for
// malformed input or unsupported requests.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "kdist/error.hpp"
#include "kdist/experiments.hpp"
#include "kdist/ini.hpp"
#include "kdist/parallel.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config,-c", f.config, "key = value experiment config")->required()->check(CLI::ExistingFile);
  sub->add_option("--out,-o", f.out, "directory for <name>.{json,csv,svg}");
  sub->add_option("--seed", f.seed, "overrides every seed in the config");
  sub->add_option("--threads", f.threads, "worker threads (0: hardware concurrency)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kdist: distance sets and Fourier decay of convex bodies"};
  app.require_subcommand(1);
  Flags flags;
  std::optional<kdist::Command> chosen;

  const struct {
    const char* group;
    const char* action;
    const char* help;
    kdist::Command command;
  } table[] = {
      {"body", "inspect", "support function, widths and curvature of a body", kdist::Command::body_inspect},
      {"decay", "scan", "Fourier decay exponent of a body", kdist::Command::decay_scan},
      {"distset", "scan", "distinct-distance growth along a point family", kdist::Command::distset_scan},
      {"fractal", "build", "Cantor sets, difference covers, energy integrals", kdist::Command::fractal_build},
      {"convert", "demo", "distance covers of diophantine fractals", kdist::Command::convert_demo},
      {"lemma", "check", "numerical checks of the chord and annulus bounds", kdist::Command::lemma_check},
  };
  for (const auto& row : table) {
    CLI::App* group = app.add_subcommand(row.group, row.help);
    group->require_subcommand(1);
    CLI::App* action = group->add_subcommand(row.action, row.help);
    add_flags(action, flags);
    const kdist::Command c = row.command;
    action->callback([&chosen, c] { chosen = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kdist::kErrorExitCode;
  }

  try {
    if (flags.threads > 0) kdist::set_thread_count(flags.threads);
    const kdist::IniDocument doc = kdist::IniDocument::parse_file(flags.config);
    kdist::RunOptions opt;
    opt.out_dir = flags.out;
    opt.seed = flags.seed;
    const kdist::RunOutput out = kdist::run(*chosen, doc, opt);
    for (const auto& v : out.report.verdicts) {
      std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << " = " << kdist::format_number(v.value) << "  ("
                << v.threshold_text() << ")\n";
    }
    return out.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "kdist: " << e.what() << "\n";
    return kdist::kErrorExitCode;
  }
}
