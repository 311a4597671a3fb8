// cqec: deterministic experiment runner.
//
//   cqec <experiment> [--seed N] [--algo NAME] [--out PATH]
//                     [--format structured|table|both] [--ansatz-depth 1..3]
//   cqec verify <file>...
//
// Result files are byte-stable for a fixed config: rerunning the same
// experiment with the same seed rewrites identical bytes.  Wall time goes to
// stderr only.  Worker count comes from the CQEC_WORKERS environment
// variable.  Exit codes: 0 success, 2 config error, 3 partial failure.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cqec/experiment.hpp"

namespace {

int run_verify(const std::vector<std::string>& paths) {
  bool all_ok = true;
  bool all_readable = true;
  for (const auto& path : paths) {
    const cqec::VerifyReport report = cqec::verify_file(path);
    const char* verdict = !report.readable   ? "unreadable"
                          : !report.hash_found ? "no content hash"
                          : report.ok          ? "ok"
                                               : "HASH MISMATCH";
    std::printf("%s: %s\n", path.c_str(), verdict);
    all_readable = all_readable && report.readable;
    all_ok = all_ok && report.ok;
  }
  if (!all_readable) return 2;
  return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catalytic error-correction experiment runner"};
  app.require_subcommand(1);

  cqec::ExperimentConfig config;
  std::string format = "both";
  std::vector<std::string> verify_paths;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", config.seed, "64-bit master seed")->capture_default_str();
    cmd->add_option("--algo", config.algorithm,
                    "benchmark target: qkan, qdrift, cfqpe, regev, ttn");
    cmd->add_option("--out", config.out_path, "output base path (suffixes .json/.csv added)");
    cmd->add_option("--format", format, "structured, table, or both")
        ->check(CLI::IsMember({"structured", "table", "both"}))
        ->capture_default_str();
    cmd->add_option("--ansatz-depth", config.ansatz_depth, "recovery circuit repetitions")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
  };

  for (const char* name :
       {"threshold", "noise-sweep", "qec-compare", "dd-sweep", "pipeline-compare", "scaling",
        "durability", "catalyst-prep", "protocol"})
    add_common(app.add_subcommand(name));
  CLI::App* verify = app.add_subcommand("verify", "re-hash result files");
  verify->add_option("files", verify_paths, "result files to check")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // any parse failure is a config error
  }

  try {
    const CLI::App* cmd = app.get_subcommands().front();
    if (cmd->get_name() == "verify") return run_verify(verify_paths);

    config.experiment = *cqec::experiment_from_name(cmd->get_name());
    config.format = format == "structured" ? cqec::OutputFormat::Structured
                    : format == "table"    ? cqec::OutputFormat::Table
                                           : cqec::OutputFormat::Both;

    const cqec::ExperimentResult result = cqec::run_experiment(config);
    for (const auto& path : cqec::write_result(result))
      std::fprintf(stderr, "wrote %s\n", path.c_str());
    std::fprintf(stderr, "%s: %zu rows in %.1f ms\n",
                 cqec::experiment_name(config.experiment).c_str(), result.rows.size(),
                 result.wall_ms);
    for (const auto& row : result.rows)
      if (!row.error.empty())
        std::fprintf(stderr, "note [%s]: %s\n", row.label.c_str(), row.error.c_str());
    return result.any_row_failed() ? 3 : 0;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
