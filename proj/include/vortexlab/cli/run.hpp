#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vortexlab/cli/config.hpp"
#include "vortexlab/cli/output.hpp"

namespace vortexlab::cli {

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct RunFailure {
  ErrorKind kind = ErrorKind::InvalidArgument;
  std::string message;
  std::optional<double> epsilon;
};

struct RunManifest {
  std::string version;
  std::string config_echo;
  int exit_code = 0;
  std::vector<StageTiming> timings;
  std::vector<vortex::DiagnosticsReport> reports;
  std::vector<CsvRow> rows;
  /// Solver summary of a kw run.
  std::optional<kw::KWSolution> kw_solution;
  std::vector<std::string> warnings;
  std::vector<std::string> artifacts;
  std::optional<RunFailure> failure;
};

std::string version_string();

/// 0 success, 2 parse or validation error, 3 failure while solving or
/// diagnosing, 1 I/O or anything else.
int exit_code_for(ErrorKind kind) noexcept;

/// Solves, writes results.csv, heatmaps, convergence.svg and manifest.json
/// into config.output. Solver failures are recorded, not thrown; the CSV
/// keeps every completed epsilon. The config is assumed validated.
RunManifest run(const RunConfig& config);

/// Manifest for a run that never reached the solver.
RunManifest failed_manifest(const std::string& config_echo, const Error& error);

std::string manifest_json(const RunManifest& manifest);
void write_manifest(const RunManifest& manifest, const std::filesystem::path& directory);

}  // namespace vortexlab::cli
