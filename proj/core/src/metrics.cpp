#include "hypgeo/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hypgeo/numerics.hpp"
#include "hypgeo/parallel.hpp"

namespace hypgeo::metrics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log coth(rho/2), written to stay accurate when it is ~ 2 e^{-rho}
double log_coth_half(double rho) { return std::log1p(2.0 / std::expm1(rho)); }

}  // namespace

double RadialMetric::density_d1(double rho) const {
  if (dh) return dh(rho);
  return num::central_diff([this](double r) { return h(r); }, rho);
}

double RadialMetric::density_d2(double rho) const {
  if (d2h) return d2h(rho);
  return num::central_diff2([this](double r) { return h(r); }, rho);
}

double density_punctured_disk(double rho) {
  if (!(rho > 0.0)) throw std::domain_error("density_punctured_disk: rho must be > 0");
  return 1.0 / (std::sinh(rho) * log_coth_half(rho));
}

// With H = sinh(rho) log coth(rho/2) = 1/h:
//   H'  = cosh(rho) log coth(rho/2) - 1
//   H'' = sinh(rho) log coth(rho/2) - coth(rho)
double density_punctured_disk_d1(double rho) {
  if (!(rho > 0.0)) throw std::domain_error("density_punctured_disk_d1: rho must be > 0");
  const double L = log_coth_half(rho);
  const double H = std::sinh(rho) * L;
  const double H1 = std::cosh(rho) * L - 1.0;
  return -H1 / (H * H);
}

double density_punctured_disk_d2(double rho) {
  if (!(rho > 0.0)) throw std::domain_error("density_punctured_disk_d2: rho must be > 0");
  const double L = log_coth_half(rho);
  const double H = std::sinh(rho) * L;
  const double H1 = std::cosh(rho) * L - 1.0;
  const double H2 = std::sinh(rho) * L - num::coth(rho);
  return (2.0 * H1 * H1 - H * H2) / (H * H * H);
}

namespace {

void check_annulus(const AnnulusSpec& s) {
  if (!(s.R1 > 0.0) || !(s.R1 < s.R2) || !(s.R2 <= 1.0))
    throw std::invalid_argument("annulus: need 0 < R1 < R2 <= 1");
}

// sigma(rho) = (log R2 - log tanh(rho/2)) / log(R2/R1) lies in (0,1) on the
// annulus interior; the density is (pi/L) / (sinh(rho) sin(pi sigma)).
struct AnnulusEval {
  double L, sigma;
};

AnnulusEval annulus_eval(const AnnulusSpec& s, double rho) {
  check_annulus(s);
  const double t = std::tanh(0.5 * rho);
  if (!(t > s.R1) || !(t < s.R2))
    throw std::domain_error("density_annulus: tanh(rho/2) outside (R1, R2)");
  const double L = std::log(s.R2 / s.R1);
  return {L, (std::log(s.R2) - std::log(t)) / L};
}

}  // namespace

double density_annulus(const AnnulusSpec& spec, double rho) {
  const auto [L, sigma] = annulus_eval(spec, rho);
  return (num::pi / L) / (std::sinh(rho) * std::sin(num::pi * sigma));
}

// With H = (L/pi) sinh(rho) sin(pi sigma) = 1/h and sigma' = -1/(L sinh rho):
//   H'  = (L/pi) cosh(rho) sin(pi sigma) - cos(pi sigma)
//   H'' = (L/pi) sinh(rho) sin(pi sigma) - cosh(rho) cos(pi sigma)/sinh(rho)
//         - (pi/L) sin(pi sigma)/sinh(rho)
double density_annulus_d1(const AnnulusSpec& spec, double rho) {
  const auto [L, sigma] = annulus_eval(spec, rho);
  const double sn = std::sin(num::pi * sigma), cs = std::cos(num::pi * sigma);
  const double H = (L / num::pi) * std::sinh(rho) * sn;
  const double H1 = (L / num::pi) * std::cosh(rho) * sn - cs;
  return -H1 / (H * H);
}

double density_annulus_d2(const AnnulusSpec& spec, double rho) {
  const auto [L, sigma] = annulus_eval(spec, rho);
  const double sn = std::sin(num::pi * sigma), cs = std::cos(num::pi * sigma);
  const double sh = std::sinh(rho), ch = std::cosh(rho);
  const double H = (L / num::pi) * sh * sn;
  const double H1 = (L / num::pi) * ch * sn - cs;
  const double H2 = (L / num::pi) * sh * sn - ch * cs / sh - (num::pi / L) * sn / sh;
  return (2.0 * H1 * H1 - H * H2) / (H * H * H);
}

double annulus_core_rho(const AnnulusSpec& spec) {
  check_annulus(spec);
  return 2.0 * num::arctanh(std::sqrt(spec.R1 * spec.R2));
}

double annulus_core_length(const AnnulusSpec& spec) {
  check_annulus(spec);
  return 2.0 * num::pi * num::pi / std::log(spec.R2 / spec.R1);
}

RadialMetric make_punctured_disk_metric() {
  RadialMetric m;
  m.kind = MetricKind::punctured_disk;
  m.rho_min = 0.0;
  m.rho_max = kInf;
  m.h = [](double r) { return density_punctured_disk(r); };
  m.dh = [](double r) { return density_punctured_disk_d1(r); };
  m.d2h = [](double r) { return density_punctured_disk_d2(r); };
  return m;
}

RadialMetric make_annulus_metric(const AnnulusSpec& spec) {
  check_annulus(spec);
  RadialMetric m;
  m.kind = MetricKind::annulus;
  m.R1 = spec.R1;
  m.R2 = spec.R2;
  m.rho_min = 2.0 * num::arctanh(spec.R1);
  m.rho_max = spec.R2 < 1.0 ? 2.0 * num::arctanh(spec.R2) : kInf;
  m.h = [spec](double r) { return density_annulus(spec, r); };
  m.dh = [spec](double r) { return density_annulus_d1(spec, r); };
  m.d2h = [spec](double r) { return density_annulus_d2(spec, r); };
  return m;
}

double gaussian_curvature(const RadialMetric& metric, double rho) {
  if (!(rho > metric.rho_min) || !(rho < metric.rho_max))
    throw std::domain_error("gaussian_curvature: rho not interior to the metric domain");
  const double h = metric.density(rho);
  const double d1 = metric.density_d1(rho);
  const double d2 = metric.density_d2(rho);
  const double lg1 = d1 / h;
  const double lg2 = d2 / h - lg1 * lg1;
  return -(lg2 + lg1 * num::coth(rho) + 1.0) / (h * h);
}

namespace {

// sup over [rho0, rho0+1] of |h-1|, |h'|, |h''| for one annulus
struct FlatnessSup {
  double dev, d1, d2;
};

FlatnessSup annulus_flatness(const AnnulusSpec& s, double rho0) {
  constexpr int kSamples = 129;
  FlatnessSup sup{0.0, 0.0, 0.0};
  for (int i = 0; i < kSamples; ++i) {
    const double rho = rho0 + static_cast<double>(i) / (kSamples - 1);
    sup.dev = std::max(sup.dev, std::fabs(density_annulus(s, rho) - 1.0));
    sup.d1 = std::max(sup.d1, std::fabs(density_annulus_d1(s, rho)));
    sup.d2 = std::max(sup.d2, std::fabs(density_annulus_d2(s, rho)));
  }
  return sup;
}

}  // namespace

Result<TransitionChoice> choose_transition(double R1, double delta) {
  if (!(R1 > 0.0) || !(R1 < 1.0) || !(delta > 0.0) || !(delta < 1.0))
    return make_error(Errc::invalid_argument, "choose_transition: need R1, delta in (0,1)");
  constexpr double kCap = 60.0;
  const double budget = delta / 6.0;
  for (double rho0 = 2.0; rho0 <= kCap; rho0 *= 1.5) {
    const double t0 = 1.0 - std::tanh(0.5 * rho0);
    const double R = 1.0 - t0 * t0 * t0;
    if (!(std::tanh(0.5 * (rho0 + 1.0)) < R)) continue;
    if (!(R > R1)) continue;  // annulus must still contain the window
    bool ok = true;
    for (int k = 0; k < 5 && ok; ++k) {
      const double R2 = R + (1.0 - R) * k / 4.0;
      const AnnulusSpec s{R1, R2};
      const FlatnessSup sup = annulus_flatness(s, rho0);
      ok = sup.dev <= budget && sup.d1 <= budget && sup.d2 <= budget;
    }
    if (ok) return TransitionChoice{rho0, R};
  }
  return make_error(Errc::search_exhausted, "choose_transition: no rho0 <= 60 satisfies the bounds");
}

double default_cutoff(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

CutoffBounds cutoff_derivative_bounds(const std::function<double(double)>& chi0) {
  constexpr int n = 2000;
  CutoffBounds out{0.0, 0.0};
  for (int i = 1; i < n; ++i) {
    const double x = static_cast<double>(i) / n;
    out.c1 = std::max(out.c1, std::fabs(num::central_diff(chi0, x, 1e-5)));
    out.c2 = std::max(out.c2, std::fabs(num::central_diff2(chi0, x, 1e-4)));
  }
  return out;
}

Result<RadialMetric> intermediate_metric(const IntermediateMetricSpec& spec) {
  if (!(spec.R1 > 0.0) || !(spec.R1 < spec.R2) || !(spec.R2 <= 1.0))
    return make_error(Errc::invalid_argument, "intermediate_metric: need 0 < R1 < R2 <= 1");
  if (!(spec.rho0 > 0.0) || !(spec.delta > 0.0))
    return make_error(Errc::invalid_argument, "intermediate_metric: need rho0, delta > 0");
  if (!(std::tanh(0.5 * (spec.rho0 + 1.0)) < spec.R2))
    return make_error(Errc::invalid_argument,
                      "intermediate_metric: blend window leaves the annulus (tanh((rho0+1)/2) >= R2)");
  auto chi = spec.chi0 ? spec.chi0 : default_cutoff;
  const AnnulusSpec ann{spec.R1, spec.R2};
  const double rho0 = spec.rho0;

  auto blend = [ann, rho0, chi](double rho) {
    if (rho <= rho0) return density_annulus(ann, rho);
    if (rho >= rho0 + 1.0) return density_punctured_disk(rho);
    const double c = chi(rho - rho0);
    return (1.0 - c) * density_annulus(ann, rho) + c * density_punctured_disk(rho);
  };

  RadialMetric m;
  m.kind = MetricKind::intermediate;
  m.R1 = spec.R1;
  m.R2 = spec.R2;
  m.rho_min = 2.0 * num::arctanh(spec.R1);
  m.rho_max = kInf;
  m.h = blend;
  // blended density is differentiated numerically (closed forms only for the
  // pure pieces); central differences with the Richardson sweep
  m.dh = [blend](double r) { return num::central_diff(blend, r, 1e-5); };
  m.d2h = [blend](double r) { return num::central_diff2(blend, r, 1e-4); };

  // certification: 2000 points across the blend zone, 200 on each plateau
  const double lo_plateau = std::max(0.5 * (m.rho_min + rho0), rho0 - 1.0);
  std::vector<double> grid;
  grid.reserve(2400);
  for (int i = 0; i < 200; ++i)
    grid.push_back(lo_plateau + (rho0 - lo_plateau) * (i + 0.5) / 200.0);
  for (int i = 0; i < 2000; ++i) grid.push_back(rho0 + (i + 0.5) / 2000.0);
  for (int i = 0; i < 200; ++i) grid.push_back(rho0 + 1.0 + (i + 0.5) / 200.0);

  std::vector<double> curv(grid.size());
  std::vector<char> sandwich_ok(grid.size(), 1);
  parallel_for(grid.size(), [&](std::size_t i) {
    const double rho = grid[i];
    curv[i] = gaussian_curvature(m, rho);
    const double hd = m.h(rho);
    const double above = density_annulus(ann, rho) - hd;
    const double below = hd - density_punctured_disk(rho);
    sandwich_ok[i] = (above >= -1e-12 && below >= -1e-12) ? 1 : 0;
  });

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!sandwich_ok[i]) {
      std::ostringstream os;
      os << "sandwich h_annulus >= h >= h_disk violated at rho=" << grid[i];
      return make_error(Errc::curvature_out_of_band, os.str());
    }
    if (std::fabs(curv[i] + 1.0) > spec.delta) {
      std::ostringstream os;
      os << "curvature " << curv[i] << " at rho=" << grid[i] << " leaves [-1-delta, -1+delta], delta="
         << spec.delta << " (rho0 too small)";
      return make_error(Errc::curvature_out_of_band, os.str());
    }
  }
  return m;
}

double cusp_radius(double l) {
  if (!(l > 0.0)) throw std::invalid_argument("cusp_radius: length must be positive");
  return std::exp(-2.0 * num::pi / l);
}

double horocycle_distance(double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0))
    throw std::invalid_argument("horocycle_distance: lengths must be positive");
  // |log(l1/l2)|, split so the result is exactly symmetric in its arguments
  return std::fabs(std::log(l1) - std::log(l2));
}

Result<double> large_cusp_collar_width(double l, double delta, double eps0) {
  if (!(eps0 > 0.0)) return make_error(Errc::invalid_argument, "eps0 must be positive");
  if (!(delta >= 0.0) || !(delta < 1.0 / 3.0))
    return make_error(Errc::domain_error, "delta must lie in [0, 1/3)");
  if (!(l >= 2.0 * num::pi * eps0))
    return make_error(Errc::domain_error, "cusp length below 2 pi eps0");
  return (1.0 - delta) * (std::log(l) - std::log(2.0 * num::pi * eps0) - 2.0 * num::pi * eps0);
}

double large_cusp_positivity_threshold(double eps0) {
  if (!(eps0 > 0.0)) throw std::invalid_argument("eps0 must be positive");
  const double a = 2.0 * num::pi * eps0;
  return a * std::exp(a);
}

std::vector<ProfileRow> sample_profile(const RadialMetric& metric, double rho_lo, double rho_hi,
                                       std::size_t n) {
  if (!(rho_lo < rho_hi) || n < 2) throw std::invalid_argument("sample_profile: bad range");
  std::vector<ProfileRow> rows(n);
  parallel_for(n, [&](std::size_t i) {
    const double rho = rho_lo + (rho_hi - rho_lo) * static_cast<double>(i) / (n - 1);
    rows[i] = ProfileRow{rho, metric.h(rho), metric.density_d1(rho), metric.density_d2(rho),
                         gaussian_curvature(metric, rho)};
  });
  return rows;
}

}  // namespace hypgeo::metrics
