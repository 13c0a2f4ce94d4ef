#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "hypgeo/errors.hpp"

namespace hypgeo::modes {

// Fourier-mode equation of the Laplacian on a collar with core length ell,
// reduced by u = sqrt(cosh rho) * f to u'' = q(rho) u with
//   q(rho) = 1/4 - lambda + (1/4 + 4 pi^2 j^2 / ell^2) / cosh^2(rho).
struct ModeODEParams {
  double lambda = 0.0;
  int j = 0;
  double ell = 1.0;
};

double mode_potential(const ModeODEParams& p, double rho);

// Solutions can grow like e^{500 rho} for small ell and large j, far past
// double range over a w = 20 horizon. The pair is therefore integrated
// jointly in a rescaled frame: true values are mantissa * 2^exp2 with one
// shared exponent per sample, and squared-mass integrals are carried as
// log values. Rescaling uses powers of two, so it is exact.
struct ModeSample {
  double rho = 0.0;
  double phi = 0.0, dphi = 0.0;  // odd solution: phi(0)=0, phi'(0)=1
  double psi = 0.0, dpsi = 0.0;  // even solution: psi(0)=1, psi'(0)=0
  long exp2 = 0;
};

inline double sample_log(double mantissa, long exp2) {
  return std::log(mantissa) + static_cast<double>(exp2) * 0.6931471805599453;
}
inline double log_phi(const ModeSample& s) { return sample_log(s.phi, s.exp2); }
inline double log_psi(const ModeSample& s) { return sample_log(s.psi, s.exp2); }

struct ModeSolutionPair {
  ModeODEParams params;
  double w_max = 0.0;
  std::vector<ModeSample> samples;  // from 0 to w_max inclusive, ~0.025 apart
  // log(integral_0^rho of u^2) per sample node, -inf at rho = 0
  std::vector<double> log_mass_phi;
  std::vector<double> log_mass_psi;
  bool positive = false;        // phi, psi > 0 at every interior sample
  double wronskian_drift = 0.0;  // max normalized |W + 1| over the horizon
};

// Integrates both fundamental solutions from 0 to w_max (w_max < 0 integrates
// leftwards; used for parity checks). Drift is |W_scaled + 2^{-2 exp2}|
// normalized by the magnitude of the products forming W, which coincides with
// |W + 1| while the solutions are O(1) and stays meaningful beyond the range
// where -1 is representable against the products' size.
Result<ModeSolutionPair> solve_mode(const ModeODEParams& p, double w_max);

// log(integral_0^w u^2 drho) for u = phi and u = psi at each requested cut.
// One integration pass; every cut is hit exactly.
struct MassCuts {
  double rho;
  double log_phi2;
  double log_psi2;
};
Result<std::vector<MassCuts>> mode_log_masses(const ModeODEParams& p, std::vector<double> cuts);

enum class BoundaryCondition { interior, neumann, dirichlet };
constexpr const char* bc_name(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::interior: return "interior";
    case BoundaryCondition::neumann: return "neumann";
    case BoundaryCondition::dirichlet: return "dirichlet";
  }
  return "?";
}

// Per-mode coefficients of an expansion on the collar; for j = 0 only the
// a-coefficients exist, for j >= 1 the cosine/sine pairs combine as
// c^2 = a^2 + b^2 (cross terms vanish by parity).
struct ModeCoefficients {
  double a_phi = 0.0, a_psi = 0.0;
  double b_phi = 0.0, b_psi = 0.0;
};

// L^2 norm^2 of the expansion over the collar cut at |rho| <= w (interior) or
// the half-collar [0, w] (neumann keeps psi terms, dirichlet keeps phi terms).
Result<double> collar_norm(const std::vector<ModeCoefficients>& coeffs,
                           const std::vector<ModeSolutionPair>& pairs, double ell, double w,
                           BoundaryCondition bc);

struct MassRatioBound {
  double bound;       // w1/w2 at lambda = 1/4, else the 4dw + sinh(2dw) quotient
  double asymptotic;  // 2 e^{-2 delta (w2 - w1)}
};
Result<MassRatioBound> mass_ratio_bound(double lambda, double w1, double w2);

struct MassRatioReport {
  double w1 = 0.0, w2 = 0.0;
  double ratio = 0.0;  // worst applicable per-mode ratio
  double bound = 0.0;
  BoundaryCondition boundary_condition = BoundaryCondition::interior;
  double ratio_phi = 0.0, ratio_psi = 0.0;
  double wronskian_drift = 0.0;
};

// Measures integral_0^w1 u^2 / integral_0^w2 u^2 for the solutions selected
// by the boundary condition and checks them against mass_ratio_bound.
Result<MassRatioReport> verify_mass_distribution(const ModeODEParams& p, double w1, double w2,
                                                 BoundaryCondition bc);

// Checks the comparison-of-quotients step: if u2'' u1 - u2 u1'' >= 0 on [0, w2]
// and (u2' u1 - u2 u1')(0) >= 0, then the w1/w2 mass quotient of u2 is at most
// that of u1. Inputs failing the differential inequality are rejected.
Result<bool> integral_monotonicity_check(const std::function<double(double)>& u1,
                                         const std::function<double(double)>& u2, double w1,
                                         double w2);

}  // namespace hypgeo::modes
