#pragma once

#include "hypgeo/errors.hpp"

namespace hypgeo::trig {

// Right-angled polygons with the consecutive-side labeling used throughout:
// trirectangle (a, b, alpha, beta), pentagon (a, b, alpha, c, beta),
// hexagon (a, gamma, b, alpha, c, beta). All angles are right angles; the
// "alpha"/"beta"/"gamma" fields are side lengths, not angles.

struct Trirectangle {
  double a, b, alpha, beta;
};

struct Pentagon {
  double a, b, alpha, c, beta;
};

struct Hexagon {
  double a, gamma, b, alpha, c, beta;
  // common perpendicular between sides c and gamma
  double d;
  // altitude of the pentagon cut off by that perpendicular on the alpha side
  double h_alpha;
};

struct Collar {
  double ell;  // core geodesic length
  double w;    // half-width
  bool half;   // boundary half-collar vs full two-sided collar
};

// Seams of a pair of pants with boundary lengths (l_alpha, l_beta, l_gamma):
// the three simple common perpendiculars between boundary pairs.
struct PantsSeams {
  double between_alpha_beta;
  double between_beta_gamma;
  double between_gamma_alpha;
};

// Completes (a, b) to the trirectangle via tanh(alpha) = cosh(b) tanh(a).
// Infeasible once cosh(b) tanh(a) >= 1: no such quadrilateral exists.
Result<Trirectangle> trirectangle_solve(double a, double b);

// Completes two legs meeting at a right angle to the pentagon with
// cosh(c) = sinh(a) sinh(b); needs sinh(a) sinh(b) > 1.
Result<Pentagon> pentagon_from_legs(double a, double b);

// Builds the hexagon with alternating sides (a, b, c); the other three sides
// come out of the cyclic cosh rule. Every positive triple is feasible.
// Throws std::invalid_argument on nonpositive input.
Hexagon hexagon_solve(double a, double b, double c);

// Cyclic relabeling (a,gamma,b,alpha,c,beta) -> (b,alpha,c,beta,a,gamma),
// with the perpendicular and altitude recomputed for the new (c, gamma) pair.
Hexagon hexagon_rotate(const Hexagon& h);

// Seam lengths of the pants with the given boundary lengths, via the
// right-angled hexagon on the half-lengths.
PantsSeams pants_perpendiculars(double l_alpha, double l_beta, double l_gamma);

// Half-width arcsinh(1 / sinh(ell/2)) of the standard embedded collar.
double collar_width(double ell);

// Any closed geodesic crossing a core of length ell is at least this long.
double crossing_length_bound(double ell);

Collar make_collar(double ell, bool half = false);

// 2 ell sinh(w) for a full collar, ell sinh(w) for a half-collar.
double collar_area(const Collar& c);

}  // namespace hypgeo::trig
