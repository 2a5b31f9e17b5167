#pragma once

#include <string>

#include "ffsim/sliding_mode.hpp"

namespace ffsim {

/// Per-axis ultimate bound on the tracking error while |s_i| <= epsilon.
struct ErrorBound {
  Vector3 bound = Vector3::Zero();
  Vector3 residual = Vector3::Zero();  // F(bound) per axis
};

/// F(x) = epsilon - alpha x^rho - beta x for x >= 0.
double bound_function(double x, double alpha, double beta, double rho, double epsilon);

/// Root of F per axis by bisection on [0, epsilon / beta].
ErrorBound error_bound_solve(const NftsmParams& p);

/// Scalar root for a single axis; alpha may be zero (linear limit).
double error_bound_axis(double alpha, double beta, double rho, double epsilon);

/// Per-axis bound implied by a 3 m position sphere (3 / sqrt(3)).
double orbit_axis_requirement(double sphere_radius_m = 3.0);
/// Per-axis quaternion bound implied by a pointing requirement in degrees:
/// sin(angle / sqrt(3) / 2).
double attitude_axis_requirement(double pointing_deg = 3.0);

/// Smallest common ratio c = alpha/eps = beta/eps with F(requirement) <= 0,
/// i.e. the root of 1 - c (R^rho + R) = 0.
double exact_ratio_threshold(double axis_requirement, double rho);

struct FeasibilityReport {
  std::string loop;
  double axis_requirement = 0.0;
  Vector3 alpha_ratio = Vector3::Zero();  // alpha / epsilon
  Vector3 beta_ratio = Vector3::Zero();   // beta / epsilon
  double published_threshold = 0.0;
  double exact_threshold = 0.0;
  bool passes_published = false;
  bool passes_exact = false;
  ErrorBound bound;
  bool bound_within_requirement = false;
};

/// Published ratio thresholds for the two loops.
inline constexpr double kPublishedOrbitRatio = 0.29;
inline constexpr double kPublishedAttitudeRatio = 24.0;

FeasibilityReport param_feasibility(const std::string& loop, double axis_requirement,
                                    double published_threshold, const NftsmParams& p);

FeasibilityReport orbit_feasibility(const NftsmParams& p);
FeasibilityReport attitude_feasibility(const NftsmParams& p);

/// Multi-line text rendering used by the CLI.
std::string format_feasibility(const FeasibilityReport& report);

}  // namespace ffsim
