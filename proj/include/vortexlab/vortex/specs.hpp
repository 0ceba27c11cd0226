#pragma once

// Vortex families on a flat torus and their reduction to Kazdan-Warner form.
//
// Every family is parametrised by divisors. A vanishing density
// P = c * exp(u_D) carries the zeros of a holomorphic section, and the
// unknown f of the scalar problem is a complex gauge exponent.
//
//   classical     eps^2 iLF = 1 - |phi|^2,  |phi|^2 = P e^v,
//                 -eps^2 lap v + 2 P e^v + (4 pi d eps^2 / Vol - 2) = 0
//   generalized   eps^2 iLF + sum k_j |phi_j|^2 + tau = 0,  |phi_j|^2 = P_j e^{k_j f},
//                 -(eps^2/2) lap f + sum k_j P_j e^{k_j f} + 2 pi dbar eps^2 / Vol + tau = 0
//   mixed         generalized with weights (1, -1)
//
// Curvature: iLF = -1/2 lap f + 2 pi d / Vol away from the divisor, so the
// total curvature is 2 pi d for every f.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vortexlab/green/divisor.hpp"
#include "vortexlab/kw/problem.hpp"

namespace vortexlab::vortex {

using green::Divisor;
using torus::GridSpec;
using torus::Point;
using torus::ScalarField;
using torus::TorusGeometry;

enum class VortexKind { Classical, Mixed, Generalized };
std::string_view to_string(VortexKind kind) noexcept;

/// How the constant c in P = c * scale * exp(u_D) is fixed.
enum class DensityNormalization {
  MeanOne,  // mean(P) = scale
  UnitL2,   // integral of P = scale (the section has unit L2 norm)
  Raw,      // c = 1
};
std::string_view to_string(DensityNormalization n) noexcept;

struct ClassicalVortexSpec {
  Divisor divisor;  // effective
  double epsilon;
  TorusGeometry geometry;
  GridSpec grid;
};

struct MixedVortexSpec {
  Divisor divisor_plus;   // zeros of the first section
  Divisor divisor_minus;  // zeros of the second section
  double tau = 0.0;
  double scale_plus = 1.0;
  double scale_minus = 1.0;
  double epsilon;
  TorusGeometry geometry;
  GridSpec grid;
  /// Line-bundle degree; (d+ - d-)/2 when absent. A value that disagrees with
  /// (d+ - d-)/2 is accepted with a warning.
  std::optional<double> degree;
  DensityNormalization normalization = DensityNormalization::MeanOne;
};

struct GeneralizedTerm {
  Divisor divisor;  // effective
  int weight;       // k_j != 0
  double scale = 1.0;
};

struct GeneralizedSpec {
  std::vector<GeneralizedTerm> terms;
  double tau;
  double epsilon;
  TorusGeometry geometry;
  GridSpec grid;
  DensityNormalization normalization = DensityNormalization::MeanOne;
};

using VortexSpec = std::variant<ClassicalVortexSpec, MixedVortexSpec, GeneralizedSpec>;

double spec_epsilon(const VortexSpec& spec);
const TorusGeometry& spec_geometry(const VortexSpec& spec);
const GridSpec& spec_grid(const VortexSpec& spec);
/// Copy of `spec` at another epsilon and grid.
VortexSpec respecify(const VortexSpec& spec, double epsilon, const GridSpec& grid);

/// One section: |phi_j|^2 = P_j e^{weight * f}, P_j(x) = exp(log_scale + u_D(x)).
struct SectionTerm {
  Divisor divisor;
  int weight;
  double log_scale;
  ScalarField density;  // P_j on the grid, exactly 0 on divisor samples

  double density_at(Point p) const;
};

/// A divisor point at which curvature concentrates.
struct MassPoint {
  Point point;
  /// Limit of the curvature mass / 2 pi when it is known in closed form.
  std::optional<double> expected_mass;
};

struct ReducedModel {
  VortexKind kind;
  double epsilon;
  double tau;     // classical: -1
  double degree;  // d, or dbar for the generalized family
  TorusGeometry geometry;
  GridSpec grid;
  std::vector<SectionTerm> sections;
  std::vector<MassPoint> mass_points;
  kw::KWProblem problem;
  std::vector<std::string> warnings;
};

/// Errors: BradlowViolation when 2 pi d eps^2 >= Vol, MixedSignDivisor,
/// InvalidArgument for eps <= 0 or a geometry mismatch.
ReducedModel reduce_classical(const ClassicalVortexSpec& spec);
ReducedModel reduce_mixed(const MixedVortexSpec& spec);
/// Unsolvable unless the weights have mixed signs or are all positive with tau < 0.
ReducedModel reduce_generalized(const GeneralizedSpec& spec);
ReducedModel reduce(const VortexSpec& spec);

/// The eps = 0 member of the family (the Kazdan-Warner problem with eps = 0
/// and the eps-dependent part of w removed). Suitable for kw_limit only.
ReducedModel reduce_limit(const VortexSpec& spec);

struct Reconstruction {
  std::vector<ScalarField> phi_sq;  // one per section
  ScalarField phi_sq_total;
  ScalarField curvature;            // iLF
};

/// Densities of a solution f of model.problem. The classical curvature is
/// the algebraic (1 - |phi|^2)/eps^2; the others use -1/2 lap f + 2 pi d / Vol.
Reconstruction reconstruct(const ReducedModel& model, const ScalarField& f);

/// Classical only: sup of the difference between the algebraic curvature and
/// 2 pi d / Vol - 1/2 lap v. Equal to sup|residual| / (2 eps^2).
double classical_curvature_mismatch(const ReducedModel& model, const ScalarField& v);

/// Pointwise eps = 0 limit of |phi|^2 (summed over sections) at an arbitrary
/// point, from the closed-form densities. Classical: 1 off the divisor.
/// Mixed with tau = 0: 2 sqrt(PQ). Otherwise the scalar balance is solved.
double limit_phi_sq_at(const ReducedModel& model, Point p);

}  // namespace vortexlab::vortex
