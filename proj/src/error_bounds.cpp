#include "ffsim/error_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ffsim/constants.hpp"

namespace ffsim {

double bound_function(double x, double alpha, double beta, double rho, double epsilon) {
  return epsilon - alpha * sig_pow_scalar(x, rho) - beta * x;
}

double error_bound_axis(double alpha, double beta, double rho, double epsilon) {
  if (!(beta > 0.0) || !(epsilon > 0.0) || alpha < 0.0) {
    throw std::invalid_argument("error bound needs alpha >= 0, beta > 0, epsilon > 0");
  }
  double lo = 0.0;
  double hi = epsilon / beta;
  // F(lo) > 0 > F(hi) unless alpha == 0, where hi is the exact root.
  if (bound_function(hi, alpha, beta, rho, epsilon) >= 0.0) return hi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = bound_function(mid, alpha, beta, rho, epsilon);
    if (f == 0.0) return mid;
    (f > 0.0 ? lo : hi) = mid;
  }
  const double f_lo = bound_function(lo, alpha, beta, rho, epsilon);
  const double f_hi = bound_function(hi, alpha, beta, rho, epsilon);
  return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

ErrorBound error_bound_solve(const NftsmParams& p) {
  p.validate();
  ErrorBound out;
  for (int i = 0; i < 3; ++i) {
    out.bound[i] = error_bound_axis(p.alpha[i], p.beta[i], p.rho, p.epsilon);
    out.residual[i] = bound_function(out.bound[i], p.alpha[i], p.beta[i], p.rho, p.epsilon);
  }
  return out;
}

double orbit_axis_requirement(double sphere_radius_m) { return sphere_radius_m / std::sqrt(3.0); }

double attitude_axis_requirement(double pointing_deg) {
  return std::sin(pointing_deg / std::sqrt(3.0) / 2.0 * constants::kDegToRad);
}

double exact_ratio_threshold(double axis_requirement, double rho) {
  if (!(axis_requirement > 0.0)) throw std::invalid_argument("requirement must be positive");
  return 1.0 / (std::pow(axis_requirement, rho) + axis_requirement);
}

FeasibilityReport param_feasibility(const std::string& loop, double axis_requirement,
                                    double published_threshold, const NftsmParams& p) {
  p.validate();
  FeasibilityReport r;
  r.loop = loop;
  r.axis_requirement = axis_requirement;
  r.alpha_ratio = p.alpha / p.epsilon;
  r.beta_ratio = p.beta / p.epsilon;
  r.published_threshold = published_threshold;
  r.exact_threshold = exact_ratio_threshold(axis_requirement, p.rho);
  const double min_ratio = std::min(r.alpha_ratio.minCoeff(), r.beta_ratio.minCoeff());
  // Ratios are compared at the printed precision of the thresholds.
  r.passes_published = min_ratio >= published_threshold * (1.0 - 1e-12);
  r.passes_exact = min_ratio >= r.exact_threshold;
  r.bound = error_bound_solve(p);
  r.bound_within_requirement = r.bound.bound.maxCoeff() <= axis_requirement;
  return r;
}

FeasibilityReport orbit_feasibility(const NftsmParams& p) {
  return param_feasibility("orbit", orbit_axis_requirement(), kPublishedOrbitRatio, p);
}

FeasibilityReport attitude_feasibility(const NftsmParams& p) {
  return param_feasibility("attitude", attitude_axis_requirement(), kPublishedAttitudeRatio, p);
}

std::string format_feasibility(const FeasibilityReport& r) {
  char buf[1024];
  const auto verdict = [](bool ok) { return ok ? "pass" : "FAIL"; };
  std::snprintf(buf, sizeof(buf),
                "[%s]\n"
                "  per-axis requirement        : %.6g\n"
                "  alpha/epsilon               : %.6g %.6g %.6g\n"
                "  beta/epsilon                : %.6g %.6g %.6g\n"
                "  published threshold         : %.6g -> %s\n"
                "  exact recomputed threshold  : %.6g -> %s\n"
                "  error bound per axis        : %.9g %.9g %.9g\n"
                "  bound residual              : %.3g %.3g %.3g\n"
                "  bound within requirement    : %s\n",
                r.loop.c_str(), r.axis_requirement, r.alpha_ratio.x(), r.alpha_ratio.y(),
                r.alpha_ratio.z(), r.beta_ratio.x(), r.beta_ratio.y(), r.beta_ratio.z(),
                r.published_threshold, verdict(r.passes_published), r.exact_threshold,
                verdict(r.passes_exact), r.bound.bound.x(), r.bound.bound.y(), r.bound.bound.z(),
                r.bound.residual.x(), r.bound.residual.y(), r.bound.residual.z(),
                r.bound_within_requirement ? "yes" : "no");
  return buf;
}

}  // namespace ffsim
