#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vortexlab/kw/continuation.hpp"
#include "vortexlab/vortex/sweep.hpp"

namespace vortexlab::cli {

inline constexpr const char* kCsvHeader =
    "epsilon,point_index,curvature_mass,sup_deviation,bradlow_residual,identity_residual,"
    "sup_f,sup_grad_f,order_fit";

/// One CSV line. Empty optionals print as empty cells.
struct CsvRow {
  double epsilon = 0.0;
  int point_index = -1;  // -1 is the complement of the bumps
  std::optional<double> curvature_mass;
  std::optional<double> sup_deviation;
  std::optional<double> bradlow_residual;
  std::optional<double> identity_residual;
  std::optional<double> sup_f;
  std::optional<double> sup_grad_f;
  std::optional<double> order_fit;
};

/// One row per mass point and a point_index -1 row carrying the complement
/// mass; the per-epsilon columns repeat on every row of that epsilon.
std::vector<CsvRow> csv_rows(const std::vector<vortex::DiagnosticsReport>& reports);
std::string csv_text(const std::vector<CsvRow>& rows);
/// Header plus rows; numbers are written with 17 significant digits.
std::vector<CsvRow> parse_csv(const std::string& text);

/// 16-bit binary PGM, top row = largest y, linear map of [min, max] onto
/// [0, 65535] (a constant field maps to 0).
struct Heatmap {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint16_t> pixels;  // row-major, top row first
  double min = 0.0;
  double max = 0.0;
};
Heatmap make_heatmap(const torus::ScalarField& field);
std::string pgm_bytes(const Heatmap& heatmap);
Heatmap parse_pgm(const std::string& bytes);

/// Writes `path` and a `path.json` sidecar with the value range and grid.
void emit_heatmap(const torus::ScalarField& field, const std::filesystem::path& path,
                  const std::string& label);
void emit_csv(const std::vector<CsvRow>& rows, const std::filesystem::path& path);

/// Line plot of curvature masses and sup deviations against epsilon.
std::string convergence_svg(const std::vector<CsvRow>& rows);

/// Writes via a temporary sibling and rename. IoError with the path on failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
/// IoError with the path on failure.
std::string read_file(const std::filesystem::path& path);

}  // namespace vortexlab::cli
