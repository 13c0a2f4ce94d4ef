#pragma once

#include <functional>
#include <vector>

#include "hypgeo/errors.hpp"

namespace hypgeo::oracle {

// Independent numerical cross-checks for the collar mode machinery: a
// finite-difference Sturm-Liouville eigensolver, a shooting eigensolver,
// finite-difference curvature, and density-ratio sweeps. Everything here is
// deliberately built on different discretizations than the modules it checks.

enum class EndCondition { neumann, dirichlet };

// The radial operator -(1/cosh rho) d/drho(cosh rho d/drho) + V with
// V = (4 pi^2 j^2 / ell^2) / cosh^2(rho), acting on [0, w] or [-w, w].
// Symmetric with weight cosh(rho); spectrum real, simple, increasing.
struct SturmLiouvilleProblem {
  double ell = 1.0;
  double w = 1.0;
  int j = 0;
  EndCondition bc_inner = EndCondition::neumann;
  EndCondition bc_outer = EndCondition::neumann;
};

struct Grid1D {
  int nodes = 2048;  // >= 16
  double a = 0.0;
  double b = 1.0;
  double spacing() const { return (b - a) / (nodes - 1); }
};

// Lowest `count` eigenvalues of the second-order conservative discretization
// (midpoint cosh weights, lumped mass, ghost-free flux boundary rows), found
// by shifted inverse power iteration with deflation. Second-order convergent:
// pair a run with one at doubled nodes for Richardson extrapolation.
// Grid endpoints must span [0, w] or [-w, w]; count <= nodes/4.
Result<std::vector<double>> collar_fd_spectrum(const SturmLiouvilleProblem& problem,
                                               const Grid1D& grid, int count);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

// Neumann eigenvalue on [0, w] (Neumann at both ends) located by shooting the
// even solution from 0 and driving the boundary mismatch
//   u'(w) - (tanh(w)/2) u(w)
// to zero, which is the Neumann condition translated through u = sqrt(cosh) f.
// The bracket must straddle a sign change of the mismatch. The eigenfunction
// is the even solution of the mode equation at the returned eigenvalue.
Result<double> shooting_neumann_eigen(double ell, double w, int j, Bracket bracket);

// Uniformly sampled radial density: value h[i] at rho0 + i * drho.
struct DensitySamples {
  double rho0 = 0.0;
  double drho = 0.0;
  std::vector<double> h;
};

// Gaussian curvature at rho from sampled log-density differences alone,
// linearly interpolated between the two bracketing nodes. Needs one node of
// margin on each side (two to the right unless rho sits on a node) and
// spacing at most 1e-3.
Result<double> curvature_fd(const DensitySamples& samples, double rho);

struct RatioRange {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

// Extremes of h2/h1 over grid_n uniform nodes on [lo, hi], endpoints included.
// Preconditions (lo < hi, grid_n >= 2, h1 > 0 on the grid) are the caller's;
// violations throw std::invalid_argument.
RatioRange metric_compare(const std::function<double(double)>& h1,
                          const std::function<double(double)>& h2, double lo, double hi,
                          int grid_n);

}  // namespace hypgeo::oracle
