#include "hypgeo/collar_modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hypgeo/numerics.hpp"

namespace hypgeo::modes {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kInf = std::numeric_limits<double>::infinity();

// joint state: phi, phi', psi, psi', I_phi, I_psi (all in the 2^exp2 frame)
using State = std::array<double, 6>;

struct Walker {
  ModeODEParams p;
  double nu2;  // 1/4 + 4 pi^2 j^2 / ell^2
  State y{0.0, 1.0, 1.0, 0.0, 0.0, 0.0};
  long exp2 = 0;
  double t = 0.0;
  double dir = 1.0;
  double max_drift = 0.0;
  bool positive = true;

  explicit Walker(const ModeODEParams& params, double direction)
      : p(params), nu2(0.25 + num::sq(2.0 * num::pi * params.j / params.ell)), dir(direction) {}

  double q(double rho) const { return 0.25 - p.lambda + nu2 / num::sq(std::cosh(rho)); }

  State deriv(double rho, const State& s) const {
    const double qq = q(rho);
    return State{s[1], qq * s[0], s[3], qq * s[2], s[0] * s[0], s[2] * s[2]};
  }

  void rescale_if_needed() {
    const double m = std::max(std::max(std::fabs(y[0]), std::fabs(y[1])),
                              std::max(std::fabs(y[2]), std::fabs(y[3])));
    if (m < 0x1p400) return;
    int k = 0;
    (void)std::frexp(m, &k);
    const double s = std::ldexp(1.0, -k);
    for (int i = 0; i < 4; ++i) y[i] *= s;
    const double s2 = std::ldexp(1.0, -2 * k);
    y[4] *= s2;
    y[5] *= s2;
    exp2 += k;
  }

  void advance_to(double target) {
    num::OdeOptions opt;
    opt.hmax = 0.05;
    y = num::ode45<6>([this](double rho, const State& s) { return deriv(rho, s); }, t, y, target,
                      opt);
    t = target;
    rescale_if_needed();
    observe();
  }

  void observe() {
    if (t != 0.0) {
      // parity: leftward of 0 the odd solution is negative
      positive = positive && (dir * y[0] > 0.0) && (y[2] > 0.0);
    }
    const double p1 = y[0] * y[3], p2 = y[2] * y[1];
    const double w_scaled = p1 - p2;
    const double target = std::ldexp(1.0, static_cast<int>(std::max(-2 * exp2, -1100L)));
    const double denom = std::max(target, std::fabs(p1) + std::fabs(p2));
    max_drift = std::max(max_drift, std::fabs(w_scaled + target) / denom);
  }

  ModeSample sample() const { return ModeSample{t, y[0], y[1], y[2], y[3], exp2}; }

  double log_mass_phi() const { return y[4] > 0.0 ? std::log(y[4]) + 2.0 * exp2 * kLn2 : -kInf; }
  double log_mass_psi() const { return y[5] > 0.0 ? std::log(y[5]) + 2.0 * exp2 * kLn2 : -kInf; }
};

}  // namespace

double mode_potential(const ModeODEParams& p, double rho) {
  return 0.25 - p.lambda + (0.25 + num::sq(2.0 * num::pi * p.j / p.ell)) / num::sq(std::cosh(rho));
}

Result<ModeSolutionPair> solve_mode(const ModeODEParams& p, double w_max) {
  if (!(p.ell > 0.0)) return make_error(Errc::invalid_argument, "solve_mode: ell must be positive");
  if (p.j < 0) return make_error(Errc::invalid_argument, "solve_mode: j must be >= 0");
  if (w_max == 0.0 || !std::isfinite(w_max))
    return make_error(Errc::invalid_argument, "solve_mode: w_max must be finite and nonzero");

  const double dir = w_max > 0.0 ? 1.0 : -1.0;
  const double span = std::fabs(w_max);
  constexpr double kStep = 0.025;

  ModeSolutionPair out;
  out.params = p;
  out.w_max = w_max;

  Walker walk(p, dir);
  out.samples.push_back(walk.sample());
  out.log_mass_phi.push_back(-kInf);
  out.log_mass_psi.push_back(-kInf);

  try {
    const auto nsteps = static_cast<std::size_t>(std::ceil(span / kStep));
    for (std::size_t k = 1; k <= nsteps; ++k) {
      const double target = dir * std::min(span, static_cast<double>(k) * kStep);
      if (target == walk.t) continue;
      walk.advance_to(target);
      out.samples.push_back(walk.sample());
      out.log_mass_phi.push_back(walk.log_mass_phi());
      out.log_mass_psi.push_back(walk.log_mass_psi());
    }
  } catch (const std::runtime_error& e) {
    return make_error(Errc::integration_failure, e.what());
  }

  out.positive = walk.positive;
  out.wronskian_drift = walk.max_drift;
  return out;
}

Result<std::vector<MassCuts>> mode_log_masses(const ModeODEParams& p, std::vector<double> cuts) {
  if (cuts.empty()) return std::vector<MassCuts>{};
  for (double c : cuts)
    if (!(c >= 0.0) || !std::isfinite(c))
      return make_error(Errc::invalid_argument, "mode_log_masses: cuts must be finite and >= 0");
  std::vector<double> sorted = cuts;
  std::sort(sorted.begin(), sorted.end());

  Walker walk(p, 1.0);
  std::vector<MassCuts> at;
  at.reserve(sorted.size());
  constexpr double kStep = 0.025;
  try {
    for (double cut : sorted) {
      while (walk.t < cut) walk.advance_to(std::min(cut, walk.t + kStep));
      at.push_back(MassCuts{cut, walk.log_mass_phi(), walk.log_mass_psi()});
    }
  } catch (const std::runtime_error& e) {
    return make_error(Errc::integration_failure, e.what());
  }

  // hand results back in the caller's order
  std::vector<MassCuts> out;
  out.reserve(cuts.size());
  for (double c : cuts) {
    const auto it = std::find_if(at.begin(), at.end(), [&](const MassCuts& m) { return m.rho == c; });
    out.push_back(*it);
  }
  return out;
}

Result<double> collar_norm(const std::vector<ModeCoefficients>& coeffs,
                           const std::vector<ModeSolutionPair>& pairs, double ell, double w,
                           BoundaryCondition bc) {
  if (!(ell > 0.0) || !(w > 0.0))
    return make_error(Errc::invalid_argument, "collar_norm: ell and w must be positive");
  if (coeffs.size() > pairs.size())
    return make_error(Errc::invalid_argument, "collar_norm: more coefficient rows than solved modes");
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (pairs[j].w_max < w - 1e-12) {
      std::ostringstream os;
      os << "collar_norm: mode " << j << " solved to " << pairs[j].w_max << " < " << w;
      return make_error(Errc::horizon_too_short, os.str());
    }
  }

  double total = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const ModeCoefficients& c = coeffs[j];
    const bool base = pairs[j].params.j == 0;  // no sine partner for the constant mode
    const double c2_phi = base ? num::sq(c.a_phi) : num::sq(c.a_phi) + num::sq(c.b_phi);
    const double c2_psi = base ? num::sq(c.a_psi) : num::sq(c.a_psi) + num::sq(c.b_psi);
    const bool want_phi = bc != BoundaryCondition::neumann && c2_phi > 0.0;
    const bool want_psi = bc != BoundaryCondition::dirichlet && c2_psi > 0.0;
    if (!want_phi && !want_psi) continue;

    auto masses = mode_log_masses(pairs[j].params, {w});
    if (!masses.ok()) return masses.error();
    const double i_phi = want_phi ? std::exp(masses->front().log_phi2) : 0.0;
    const double i_psi = want_psi ? std::exp(masses->front().log_psi2) : 0.0;
    const double weight = base ? 1.0 : 0.5;
    total += weight * (c2_phi * i_phi + c2_psi * i_psi);
  }
  const double front = bc == BoundaryCondition::interior ? 2.0 * ell : ell;
  return front * total;
}

Result<MassRatioBound> mass_ratio_bound(double lambda, double w1, double w2) {
  if (!(w1 > 0.0) || !(w1 <= w2))
    return make_error(Errc::domain_error, "mass_ratio_bound: need 0 < w1 <= w2");
  if (lambda > 0.25 + 1e-15)
    return make_error(Errc::domain_error, "mass_ratio_bound: lambda must be <= 1/4");
  const double delta = std::sqrt(std::max(0.0, 0.25 - lambda));
  MassRatioBound out{};
  out.asymptotic = 2.0 * std::exp(-2.0 * delta * (w2 - w1));
  if (delta < 1e-12) {
    out.bound = w1 / w2;
    return out;
  }
  const double x1 = 2.0 * delta * w1, x2 = 2.0 * delta * w2;
  if (x2 <= 30.0) {
    out.bound = (4.0 * delta * w1 + std::sinh(x1)) / (4.0 * delta * w2 + std::sinh(x2));
  } else {
    // log form keeps the quotient finite when sinh overflows
    auto logw = [](double x, double dw) {
      return x > 30.0
                 ? x - std::log(2.0) + std::log1p(8.0 * dw * std::exp(-x) - std::exp(-2.0 * x))
                 : std::log(4.0 * dw + std::sinh(x));
    };
    out.bound = std::exp(logw(x1, delta * w1) - logw(x2, delta * w2));
  }
  return out;
}

Result<MassRatioReport> verify_mass_distribution(const ModeODEParams& p, double w1, double w2,
                                                 BoundaryCondition bc) {
  auto bound = mass_ratio_bound(p.lambda, w1, w2);
  if (!bound.ok()) return bound.error();

  Walker walk(p, 1.0);
  constexpr double kStep = 0.025;
  double log_phi_w1 = 0.0, log_psi_w1 = 0.0;
  try {
    while (walk.t < w1) walk.advance_to(std::min(w1, walk.t + kStep));
    log_phi_w1 = walk.log_mass_phi();
    log_psi_w1 = walk.log_mass_psi();
    while (walk.t < w2) walk.advance_to(std::min(w2, walk.t + kStep));
  } catch (const std::runtime_error& e) {
    return make_error(Errc::integration_failure, e.what());
  }

  MassRatioReport rep;
  rep.w1 = w1;
  rep.w2 = w2;
  rep.bound = bound->bound;
  rep.boundary_condition = bc;
  rep.ratio_phi = std::exp(log_phi_w1 - walk.log_mass_phi());
  rep.ratio_psi = std::exp(log_psi_w1 - walk.log_mass_psi());
  rep.wronskian_drift = walk.max_drift;
  switch (bc) {
    case BoundaryCondition::interior: rep.ratio = std::max(rep.ratio_phi, rep.ratio_psi); break;
    case BoundaryCondition::neumann: rep.ratio = rep.ratio_psi; break;
    case BoundaryCondition::dirichlet: rep.ratio = rep.ratio_phi; break;
  }

  if (rep.ratio > rep.bound + 1e-8) {
    std::ostringstream os;
    os << "mass ratio " << rep.ratio << " exceeds bound " << rep.bound << " (lambda=" << p.lambda
       << ", j=" << p.j << ", ell=" << p.ell << ", w1=" << w1 << ", w2=" << w2 << ")";
    return make_error(Errc::bound_violated, os.str());
  }
  return rep;
}

Result<bool> integral_monotonicity_check(const std::function<double(double)>& u1,
                                         const std::function<double(double)>& u2, double w1,
                                         double w2) {
  if (!(w1 > 0.0) || !(w1 <= w2))
    return make_error(Errc::invalid_argument, "integral_monotonicity_check: need 0 < w1 <= w2");

  // differential inequality u2'' u1 - u2 u1'' >= 0 on [0, w2]
  constexpr int kGrid = 400;
  constexpr double kTol = 1e-9;
  for (int i = 0; i <= kGrid; ++i) {
    const double x = w2 * i / kGrid;
    const double lhs = num::central_diff2(u2, x) * u1(x) - u2(x) * num::central_diff2(u1, x);
    if (lhs < -kTol * std::max(1.0, std::fabs(u1(x) * u2(x)))) {
      std::ostringstream os;
      os << "u2'' u1 - u2 u1'' = " << lhs << " < 0 at rho = " << x;
      return make_error(Errc::precondition_unmet, os.str());
    }
  }
  const double wr0 = num::central_diff(u2, 0.0) * u1(0.0) - u2(0.0) * num::central_diff(u1, 0.0);
  if (wr0 < -1e-9)
    return make_error(Errc::precondition_unmet, "(u2' u1 - u2 u1')(0) < 0");

  auto sq1 = [&](double x) { return num::sq(u1(x)); };
  auto sq2 = [&](double x) { return num::sq(u2(x)); };
  const double q1 = num::integrate(sq1, 0.0, w1) / num::integrate(sq1, 0.0, w2);
  const double q2 = num::integrate(sq2, 0.0, w1) / num::integrate(sq2, 0.0, w2);
  return q2 <= q1 + 1e-12;
}

}  // namespace hypgeo::modes
