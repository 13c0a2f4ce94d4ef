#pragma once

#include <functional>
#include <vector>

#include "hypgeo/errors.hpp"

namespace hypgeo::metrics {

// Rotationally symmetric conformal metrics h(rho)^2 (drho^2 + sinh^2(rho) dtheta^2)
// in hyperbolic polar coordinates rho = 2 arctanh|z|.

enum class MetricKind { punctured_disk, annulus, intermediate, custom };

struct RadialMetric {
  MetricKind kind = MetricKind::custom;
  double rho_min = 0.0;
  double rho_max = 0.0;  // +inf allowed
  std::function<double(double)> h;
  // Empty dh/d2h means: differentiate h by central differences on demand.
  std::function<double(double)> dh;
  std::function<double(double)> d2h;
  double R1 = 0.0, R2 = 0.0;  // annulus parameters when applicable

  double density(double rho) const { return h(rho); }
  double density_d1(double rho) const;
  double density_d2(double rho) const;
};

struct AnnulusSpec {
  double R1, R2;  // Euclidean radii, 0 < R1 < R2 <= 1
};

struct IntermediateMetricSpec {
  double R1, R2;
  double rho0;
  double delta;
  std::function<double(double)> chi0;  // smooth cutoff, 0 on (-inf,0], 1 on [1,inf)
};

struct TransitionChoice {
  double rho0;
  double R_of_rho0;
};

// Density of the complete hyperbolic metric on the punctured unit disk:
// h_O(rho) = 1/(sinh(rho) log coth(rho/2)). Throws std::domain_error for rho <= 0.
double density_punctured_disk(double rho);
double density_punctured_disk_d1(double rho);
double density_punctured_disk_d2(double rho);

// Density of the hyperbolic metric on the round annulus R1 < |z| < R2, as a
// function of rho; defined for tanh(rho/2) in (R1, R2), throws std::domain_error
// outside.
double density_annulus(const AnnulusSpec& spec, double rho);
double density_annulus_d1(const AnnulusSpec& spec, double rho);
double density_annulus_d2(const AnnulusSpec& spec, double rho);

// Core geodesic of the annulus: located at tanh(rho/2) = sqrt(R1 R2), with
// length 2 pi^2 / log(R2/R1).
double annulus_core_rho(const AnnulusSpec& spec);
double annulus_core_length(const AnnulusSpec& spec);

RadialMetric make_punctured_disk_metric();
RadialMetric make_annulus_metric(const AnnulusSpec& spec);

// K = -(1/h^2) ((log h)'' + (log h)' coth(rho) + 1).
double gaussian_curvature(const RadialMetric& metric, double rho);

// Smallest rho0 on the geometric search grid {2, 3, 4.5, ...} (cap 60) such
// that, with t0 = 1 - tanh(rho0/2) and R(rho0) = 1 - t0^3, the annulus density
// stays flat on [rho0, rho0+1]: sup |h-1|, sup |h'|, sup |h''| <= delta/6 for
// every R2 in [R(rho0), 1], and tanh((rho0+1)/2) < R(rho0). The delta/6 margin
// (rather than delta) absorbs the cutoff-derivative amplification in the
// blended metric so its curvature actually lands within delta of -1.
Result<TransitionChoice> choose_transition(double R1, double delta);

// The standard bump-quotient cutoff used when a spec does not supply one.
double default_cutoff(double x);

struct CutoffBounds {
  double c1;  // max |chi0'|
  double c2;  // max |chi0''|
};
// Measured (not assumed) derivative bounds of a cutoff on [0,1].
CutoffBounds cutoff_derivative_bounds(const std::function<double(double)>& chi0);

// Interpolates the annulus density into the punctured-disk density across
// [rho0, rho0+1] and certifies the curvature band [-1-delta, -1+delta] on a
// 2000-point grid over the blend zone plus 200 points on each plateau, along
// with the pointwise sandwich h_annulus >= h >= h_disk. Fails with
// curvature_out_of_band when rho0 is too small for the requested pinch.
Result<RadialMetric> intermediate_metric(const IntermediateMetricSpec& spec);

// Euclidean radius r(l) = exp(-2 pi / l) of the horoball disk whose boundary
// horocycle has length l.
double cusp_radius(double l);

// Distance |log(l1/l2)| between the horocycles of lengths l1, l2 around a cusp.
double horocycle_distance(double l1, double l2);

// Effective half-collar width (1-delta)(log l - log(2 pi eps0) - 2 pi eps0)
// of a cusp region cut at horocycle length l, truncated at eps0.
Result<double> large_cusp_collar_width(double l, double delta, double eps0);

// Smallest l at which the width above turns positive: 2 pi eps0 e^{2 pi eps0}.
double large_cusp_positivity_threshold(double eps0);

struct ProfileRow {
  double rho, h, dh, d2h, K;
};
std::vector<ProfileRow> sample_profile(const RadialMetric& metric, double rho_lo, double rho_hi,
                                       std::size_t n);

}  // namespace hypgeo::metrics
