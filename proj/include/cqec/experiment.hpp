// Deterministic experiment runner: a config selects one of the nine studies,
// run_experiment produces ordered rows, and the serializers emit byte-stable
// structured (JSON) and tabular (CSV) text with an embedded content hash.
// Wall time is provenance only and never serialized, so identical configs
// yield byte-identical files.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cqec {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "cqec 1.0.0";

enum class ExperimentKind {
  Threshold,
  NoiseSweep,
  QecCompare,
  DdSweep,
  PipelineCompare,
  Scaling,
  Durability,
  CatalystPrep,
  Protocol
};

// CLI spelling ("noise-sweep", "qec-compare", ...)
std::string experiment_name(ExperimentKind kind);
std::optional<ExperimentKind> experiment_from_name(const std::string& name);

enum class OutputFormat { Structured, Table, Both };

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Protocol;
  std::uint64_t seed = 1;
  std::string algorithm;  // benchmark name; empty selects the per-experiment default
  int ansatz_depth = 2;   // recovery circuit repetitions, 1..3
  std::string out_path;   // base path; writers append .json / .csv
  OutputFormat format = OutputFormat::Both;
};

// One record of a sweep.  A missing value (nullopt) marks a field that the
// run could not produce; `error` says why and flags the row as failed only
// when non-empty.
struct ResultRow {
  std::string label;
  std::vector<std::optional<double>> values;  // one per column
  std::string error;
};

struct ExperimentResult {
  int schema_version = kSchemaVersion;
  std::string tool_version = kToolVersion;
  ExperimentConfig config;           // echoed into every output file
  std::vector<std::string> columns;  // stable, documented column names
  std::vector<ResultRow> rows;
  double wall_ms = 0.0;  // provenance only; excluded from serialization
  bool any_row_failed() const;
};

// Runs the configured study.  Rows are assembled in grid order; all
// randomness derives from config.seed through counter substreams, so a rerun
// reproduces every value bit for bit.  Invalid configs throw
// std::invalid_argument (CLI exit 2); per-row failures land in the row's
// error field (CLI exit 3).
ExperimentResult run_experiment(const ExperimentConfig& config);

// Serializers.  Both embed config, seed, and a content hash over the entire
// text with the hash line blanked; numbers carry 17 significant digits.
std::string to_structured(const ExperimentResult& result);
std::string to_table(const ExperimentResult& result);

// FNV-1a 64-bit, the hash embedded in the files above
std::uint64_t content_hash(std::string_view text);

// Writes the selected formats next to config.out_path (base + ".json" /
// ".csv") and returns the paths written.
std::vector<std::string> write_result(const ExperimentResult& result);

struct VerifyReport {
  std::string path;
  bool readable = false;
  bool hash_found = false;
  bool ok = false;  // recomputed hash matches the embedded one
};

// Re-hashes a result file: the line carrying the hash is blanked and the
// remaining text must hash to the embedded value.
VerifyReport verify_file(const std::string& path);

}  // namespace cqec
