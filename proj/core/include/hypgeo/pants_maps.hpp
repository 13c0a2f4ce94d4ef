#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hypgeo/errors.hpp"

namespace hypgeo::maps {

// Boundary-length perturbation maps between right-angled pentagons, hexagons
// and pairs of pants, with grid certification of the metric distortion.
//
// Everything lives in Fermi coordinates along a base geodesic segment: (u, v)
// is the point at signed distance v from the base, over the foot at arclength
// u. The hyperbolic metric in these coordinates is cosh^2(v) du^2 + dv^2.

// Right-angled pentagon with consecutive sides alpha, b, gamma, d, c, placed
// so that d runs from (0,0) to (d,0), side c is the perpendicular wall at
// u = 0 and gamma the wall at u = d. The roof v = h(u) consists of side alpha
// over [0, u0] and side b over [u0, d]; the two branches meet at the alpha/b
// corner, above the foot u0 of the tallest altitude.
struct FermiPentagon {
  double alpha, b, gamma, d, c;
  double u0;  // tanh(u0) = tanh^2(alpha) tanh(d)
  double h0;  // roof height at u0

  // Roof height over u. Ties at u = u0 take the left branch; by continuity
  // the value is the same, the rule only pins the branch choice.
  double altitude(double u) const;

  // d/du of tanh(altitude(u)). Discontinuous exactly at u0: there side < 0
  // picks the left branch slope, side > 0 the right one, side == 0 the tie
  // rule. Away from u0 the side argument is ignored.
  double altitude_tanh_slope(double u, int side = 0) const;
};

struct FermiPoint {
  double u = 0.0, v = 0.0;
};

// Assembles the pentagon record from the four sides touching the base: walls
// must close up, i.e. cosh(c) tanh(alpha) tanh(d) = 1 and
// cosh(d) tanh(gamma) tanh(c) = 1 to 1e-8, otherwise geometry_inconsistent.
// The remaining side comes out of sinh(b) = cosh(d) / sinh(alpha).
Result<FermiPentagon> fermi_pentagon(double alpha, double d, double c, double gamma);

// The unique right-angled pentagon with the given alpha and d; the other
// three sides are forced by the closure identities.
Result<FermiPentagon> pentagon_from_alpha_d(double alpha, double d);

// Same alpha, base rescaled to sinh(d') = (1 + rel) sinh(d). rel may be
// negative; the pentagon degenerates once 1 + rel <= 0.
Result<FermiPentagon> perturb_base(const FermiPentagon& p, double rel);

// |sinh d'/sinh d - 1|, the size of the base perturbation from p to q.
double base_perturbation(const FermiPentagon& p, const FermiPentagon& q);

// The perturbation map: u' keeps tanh(u)/tanh(d) and v' keeps
// tanh(v)/tanh(h(u)). Needs alpha(P) = alpha(Pp) and z inside P (a hair of
// slack absorbs roundoff from callers that computed z on the boundary).
// Returns domain_error outside, precondition_unmet on an alpha mismatch.
Result<FermiPoint> pentagon_map(const FermiPentagon& P, const FermiPentagon& Pp,
                                FermiPoint z);

// The same map without domain validation. The defining relations extend to a
// neighbourhood of the pentagon, which finite-difference probes rely on.
FermiPoint pentagon_map_raw(const FermiPentagon& P, const FermiPentagon& Pp,
                            FermiPoint z);

struct PentagonJacobian {
  double du_du;      // du'/du
  double dv_dv;      // dv'/dv
  double dv_du;      // dv'/du, one-sided at the roof corner u0
  FermiPoint image;  // (u', v')
};

// Closed-form differential of pentagon_map at z. du'/dv vanishes identically.
// side picks the roof branch at the single non-smooth abscissa u0, as in
// altitude_tanh_slope; interior tanh values are carried exactly so an
// identical pair reports du_du = dv_dv = 1 and dv_du = 0 with no roundoff.
Result<PentagonJacobian> pentagon_jacobian(const FermiPentagon& P,
                                           const FermiPentagon& Pp, FermiPoint z,
                                           int side = 0);

struct BoundaryTraceDiagnostics {
  double max_identity_gap = 0.0;   // worst |tanh a(u) tanh(alpha) - tanh a'(u') tanh(alpha')|
  double max_arclength_gap = 0.0;  // worst |a(u) - a'(u')| along the side
  std::string reason;              // empty when the check passes
};

// Samples arclength along side alpha (the roof over [0, u0]) and verifies the
// map preserves it: tanh a(u) tanh(alpha) = tanh a'(u') tanh(alpha') and
// a(u) = a'(u') to 1e-10. Returns false with diagnostics when the sides
// disagree or the identity fails; never errors.
bool boundary_trace_check(const FermiPentagon& P, const FermiPentagon& Pp,
                          BoundaryTraceDiagnostics* diag = nullptr,
                          int samples = 1000);

struct DistortionReport {
  double ratio_max = 0.0;  // largest pulled-back/source metric eigenvalue seen
  double ratio_min = 0.0;  // smallest one
  double cross_max = 0.0;  // max |dv'/du|
  double delta_d = 0.0;    // base perturbation |sinh d'/sinh d - 1|
  double bound = 0.0;      // certified budget 54 e^{2 max(h0,h0')} sqrt(delta_d)
  // one-sided |dv'/du| extremes along the roof-corner column u = u0
  double cross_u0_left = 0.0;
  double cross_u0_right = 0.0;
  bool certified = false;  // ratio extremes within 1 +- bound, cross_max <= bound/3
};

struct CertifyOptions {
  int grid_n = 200;            // grid resolution in u and in v
  int boundary_samples = 1000; // extra samples spread along the four walls
  double tol = 1e-9;           // slack added to every certified comparison
};

// Evaluates the closed-form differential on a grid over the pentagon (plus
// wall samples and both one-sided branches of the u0 column), checks the four
// pointwise derivative inequalities against the budget
//   delta0 = 54 e^{2 max(h0,h0')} sqrt(delta_d):
//     |  (du'/du)^2       - 1 | <= delta0^2/9
//     |  (dv'/dv)^2       - 1 | <= delta0^2/9
//        (dv'/du)^2           <= delta0^2/9
//     | cosh^2 v'/cosh^2 v - 1 | <= delta0^2/9
// and accumulates the exact quadratic-form extremes of the pulled-back metric
// against cosh^2(v) du^2 + dv^2. A coarse sub-grid cross-checks the closed
// forms against central finite differences to 1e-6.
// admissibility_failed when delta0 > 1; certification_failed (with the point
// and margin) if any sample violates a bound or the cross-check disagrees.
Result<DistortionReport> certify_pentagon_map(const FermiPentagon& P,
                                              const FermiPentagon& Pp,
                                              const CertifyOptions& opt = {});

// Per-point distortion data for heatmap export.
struct DistortionSample {
  double u, v;
  double ratio_min, ratio_max;
  double cross;  // |dv'/du|
};
Result<std::vector<DistortionSample>> distortion_samples(const FermiPentagon& P,
                                                         const FermiPentagon& Pp,
                                                         int grid_n);

// Eigenvalue extremes {min, max} of the pulled-back quadratic form against
// the source form, both in Fermi coordinates: source cosh^2(v) du^2 + dv^2 at
// height v, target at height v_prime, with differential
// [[du_du, 0], [dv_du, dv_dv]].
std::pair<double, double> fermi_form_ratio(double du_du, double dv_du,
                                           double dv_dv, double v, double v_prime);

// Worst absolute slacks, over a grid, of the stepping-stone ratio bounds that
// feed the certification budget. Every slack >= 0 means the corresponding
// two-sided bound held; each applies only under the listed delta_d ceiling.
struct IntermediateBounds {
  double delta_d;
  double hbar;             // max roof height of the pair
  double tanh_base;        // tanh d'/tanh d within 1 -+ delta_d
  double cosh_base;        // cosh d'/cosh d within 1 -+ delta_d
  double cosh_u;           // cosh u'/cosh u within 1 -+ delta_d      (delta_d <= 1)
  double tanh_tail;        // tanh(d'-u')/tanh(d-u) in [1-2d, 1+3d]   (delta_d <= 1)
  double cosh_tail;        // cosh(d'-u')/cosh(d-u) within 1 -+ d     (delta_d <= 1)
  double sinh_wall;        // sinh c'/sinh c in [1-d, 1+2d]           (delta_d <= 1/2)
  double sinh_far_wall;    // sinh gamma'/sinh gamma in [1-d, 1+2d]   (delta_d <= 1/2)
  double tanh_roof;        // tanh h'/tanh h in [1-2d, 1+4d]          (delta_d <= 1/2)
  double cosh_roof;        // cosh h'/cosh h in [1-3d, 1+7d]          (delta_d <= 1/5)
  double cosh_height;      // cosh v'/cosh v in [1-3d, 1+7d]          (delta_d <= 1/5)
  double base_stretch_sq;  // (du'/du)^2 within 1 -+ (10 sqrt(d))^2/9 (delta_d <= 1/15)
  double height_stretch_sq;// (dv'/dv)^2 within 1 -+ (21 sqrt(d))^2/9 (delta_d <= 1/735)
  double cross_sq;         // (dv'/du)^2 <= (54 e^{2hbar} d)^2/9      (delta_d <= 1/15)
  double cosh_height_sq;   // cosh^2 v'/cosh^2 v within 1 -+ (12 sqrt(d))^2/9 (delta_d <= 1/49)
};

Result<IntermediateBounds> intermediate_bound_margins(const FermiPentagon& P,
                                                      const FermiPentagon& Pp,
                                                      int grid_n = 64);

// True when every slack whose delta_d ceiling is met is >= -tol.
bool intermediate_bounds_ok(const IntermediateBounds& b, double tol = 1e-12);

// Right-angled hexagon with consecutive sides alpha, c, beta, a, gamma, b:
// alpha, beta, gamma alternate with the seams c (joining alpha to beta),
// a (beta to gamma) and b (gamma to alpha).
struct RightHexagon {
  double alpha, c, beta, a, gamma, b;
};

// Hexagon from its alternating sides; the seams come out of the cyclic cosh
// rule. Throws std::invalid_argument on nonpositive input.
RightHexagon hexagon_from_alternating(double alpha, double beta, double gamma);

// The perpendicular between sides c and gamma cuts the hexagon into two
// pentagons that share it as their base, u = 0 at the foot on side c. The
// alpha-side pentagon keeps v > 0, the beta-side one v < 0.
struct HexagonSplit {
  double d;
  FermiPentagon alpha_side;  // (alpha, b, gamma_piece, d, c_piece)
  FermiPentagon beta_side;   // (beta, a, ...)
};

Result<HexagonSplit> split_hexagon(const RightHexagon& H);

// Perturbation map between hexagons in the Fermi coordinates of the split,
// pentagon_map on the matching half (v >= 0 alpha side, v < 0 beta side; both
// give the same image on the shared perpendicular). Preconditions: equal
// alpha and beta sides, both >= arcsinh(1), and the admissibility condition
//   1350 e^{5 max(gamma, gamma')} sqrt(|gamma/gamma' - 1|) <= 1.
Result<FermiPoint> hexagon_map(const RightHexagon& H, const RightHexagon& Hp,
                               FermiPoint z);

// Pair of pants, described by its three boundary geodesic lengths.
struct Pants {
  double len_alpha, len_beta, len_gamma;
};

// The right-angled hexagon on the boundary half-lengths; cutting the pants
// along its three seams gives two isometric copies of it.
RightHexagon pants_hexagon(const Pants& P);

// A pants point: which of the two isometric hexagons (0 front, 1 back), plus
// Fermi coordinates inside it.
struct PantsPoint {
  int hexagon = 0;
  FermiPoint z;
};

// Perturbation map between pants that agree on the alpha and beta boundaries
// (both >= 2 arcsinh(1)): hexagon_map on each half. Restricted to those two
// boundaries the map preserves arclength. Admissibility:
//   450 e^{5 max(len_gamma, len_gamma')} sqrt(|len_gamma/len_gamma' - 1|) <= 1.
Result<PantsPoint> pants_map(const Pants& P, const Pants& Pp, PantsPoint z);

// Grid estimate of the extreme singular values of a map between Fermi
// patches, distances measured by cosh^2(v) du^2 + dv^2 on both sides. The
// differential comes from central differences, so the map must evaluate in a
// small neighbourhood of the domain (see pentagon_map_raw). The grid is inset
// by the finite-difference step; upper is a lower bound for the Lipschitz
// constant that becomes an estimate from above under grid refinement.
using PlanarMap = std::function<FermiPoint(double u, double v)>;

struct StripDomain {
  double u_min, u_max;
  std::function<double(double)> v_lo, v_hi;  // wall heights at u
};

struct LipschitzRange {
  double upper;
  double lower;
};

LipschitzRange lipschitz_estimate(const PlanarMap& map, const StripDomain& domain,
                                  int grid_n);

}  // namespace hypgeo::maps
