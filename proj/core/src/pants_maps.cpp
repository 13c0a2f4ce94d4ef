#include "hypgeo/pants_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "hypgeo/hyptrig.hpp"
#include "hypgeo/numerics.hpp"
#include "hypgeo/parallel.hpp"

namespace hypgeo::maps {
namespace {

constexpr double kSideMatchTol = 1e-12;  // relative, for "equal side" preconditions
constexpr double kClosureTol = 1e-8;     // pentagon / hexagon closure identities
constexpr double kDomainSlack = 1e-9;    // absorbs roundoff in boundary points

bool sides_match(double a, double b) {
  return std::fabs(a - b) <= kSideMatchTol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

std::string point_str(double u, double v) {
  std::ostringstream os;
  os << "(u=" << u << ", v=" << v << ")";
  return os.str();
}

// Everything the differential needs at one abscissa, carried in tanh form.
// Identical pentagon pairs must reproduce the identity with no roundoff, so
// both columns are computed by the same expressions in tanh(u) and
// tanh(u') = r tanh(u); with r == 1 they agree bitwise and every ratio
// collapses to exactly 1.
struct TanhFrame {
  double tu, tup;    // tanh u, tanh u'
  double du_du;      // du'/du
  double cu_ratio;   // cosh u' / cosh u
  double Th, Thp;    // tanh of the roof height at u resp. u'
  double dTh, dThp;  // d/du tanh h(u), d/du' tanh h'(u')
  double rho;        // Thp / Th
  double rho_u;      // d rho / du
};

TanhFrame tanh_frame(const FermiPentagon& P, const FermiPentagon& Pp, double u,
                     int side) {
  TanhFrame f;
  const double td = std::tanh(P.d), tdp = std::tanh(Pp.d);
  const double r = tdp / td;
  f.tu = std::tanh(u);
  f.tup = r * f.tu;
  const double cu = 1.0 / std::sqrt((1.0 - f.tu) * (1.0 + f.tu));
  const double cup = 1.0 / std::sqrt((1.0 - f.tup) * (1.0 + f.tup));
  f.du_du = r * (((1.0 - f.tu) * (1.0 + f.tu)) / ((1.0 - f.tup) * (1.0 + f.tup)));
  f.cu_ratio = cup / cu;
  bool left = u < P.u0 || (u == P.u0 && side <= 0);
  if (u > P.u0) left = false;
  if (left) {
    const double tc = std::tanh(P.c), tcp = std::tanh(Pp.c);
    f.Th = tc * cu;
    f.Thp = tcp * cup;
    f.dTh = tc * f.tu * cu;    // tanh(c) sinh(u)
    f.dThp = tcp * f.tup * cup;
  } else {
    // cosh(d-u) = cosh(d) cosh(u) (1 - tanh(d) tanh(u)), and the matching
    // sinh(d-u) = cosh(d) cosh(u) (tanh(d) - tanh(u))
    const double tg = std::tanh(P.gamma), tgp = std::tanh(Pp.gamma);
    const double cd = std::cosh(P.d), cdp = std::cosh(Pp.d);
    f.Th = tg * cd * cu * (1.0 - td * f.tu);
    f.Thp = tgp * cdp * cup * (1.0 - tdp * f.tup);
    f.dTh = -tg * cd * cu * (td - f.tu);
    f.dThp = -tgp * cdp * cup * (tdp - f.tup);
  }
  f.rho = f.Thp / f.Th;
  f.rho_u = (f.dThp * f.du_du - f.rho * f.dTh) / f.Th;
  return f;
}

// v-dependent part of the differential at a fixed frame.
struct VSlice {
  double dv_dv;
  double dv_du;
  double ch_ratio_sq;  // cosh^2 v' / cosh^2 v
  double inv_ch2;      // 1 / cosh^2 v
  double tvp;          // tanh v'
};

VSlice v_slice(const TanhFrame& f, double v) {
  const double tv = std::tanh(v);
  const double tvp = f.rho * tv;
  const double om_tv2 = (1.0 - tv) * (1.0 + tv);
  const double om_tvp2 = (1.0 - tvp) * (1.0 + tvp);
  const double cr = om_tv2 / om_tvp2;
  return {f.rho * cr, tv * f.rho_u / om_tvp2, cr, om_tv2, tvp};
}

PentagonJacobian jacobian_at(const FermiPentagon& P, const FermiPentagon& Pp,
                             FermiPoint z, int side) {
  const TanhFrame f = tanh_frame(P, Pp, z.u, side);
  const VSlice s = v_slice(f, z.v);
  return {f.du_du, s.dv_dv, s.dv_du, {num::arctanh(f.tup), num::arctanh(s.tvp)}};
}

// Extreme eigenvalues of the pulled-back form against the source form, both
// diag(cosh^2 v, 1), after symmetrizing with the source square root.
std::pair<double, double> form_extremes(double du_du, double dv_du, double dv_dv,
                                        double ch_ratio_sq, double inv_ch2) {
  const double m11 = du_du * du_du * ch_ratio_sq + dv_du * dv_du * inv_ch2;
  const double m22 = dv_dv * dv_dv;
  const double m12 = dv_du * dv_dv * std::sqrt(inv_ch2);
  const double tr = m11 + m22;
  const double disc = std::sqrt((m11 - m22) * (m11 - m22) + 4.0 * m12 * m12);
  return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

// min distance of x to the two ends of [lo, hi]; >= 0 iff x is inside
double two_sided_slack(double x, double lo, double hi) {
  return std::min(x - lo, hi - x);
}

bool inside_pentagon(const FermiPentagon& P, FermiPoint z) {
  if (!(z.u >= -kDomainSlack) || !(z.u <= P.d + kDomainSlack)) return false;
  const double h = P.altitude(std::clamp(z.u, 0.0, P.d));
  return z.v >= -kDomainSlack && z.v <= h + kDomainSlack;
}

}  // namespace

double FermiPentagon::altitude(double u) const {
  const double th = u <= u0 ? std::cosh(u) * std::tanh(c)
                            : std::cosh(d - u) * std::tanh(gamma);
  return num::arctanh(th);
}

double FermiPentagon::altitude_tanh_slope(double u, int side) const {
  bool left = u < u0 || (u == u0 && side <= 0);
  if (u > u0) left = false;
  return left ? std::sinh(u) * std::tanh(c) : -std::sinh(d - u) * std::tanh(gamma);
}

Result<FermiPentagon> fermi_pentagon(double alpha, double d, double c, double gamma) {
  for (double s : {alpha, d, c, gamma})
    if (!(s > 0.0) || !std::isfinite(s))
      return make_error(Errc::invalid_argument, "fermi_pentagon: sides must be positive and finite");
  // the wall sides are determined by (alpha, d); reject a tuple that does not
  // close up into a right-angled pentagon
  if (num::rel_err(std::cosh(c) * std::tanh(alpha) * std::tanh(d), 1.0) > kClosureTol)
    return make_error(Errc::geometry_inconsistent,
                      "fermi_pentagon: cosh(c) tanh(alpha) tanh(d) = 1 fails");
  if (num::rel_err(std::cosh(gamma), std::sinh(c) * std::sinh(alpha)) > kClosureTol)
    return make_error(Errc::geometry_inconsistent,
                      "fermi_pentagon: cosh(gamma) = sinh(c) sinh(alpha) fails");
  FermiPentagon p;
  p.alpha = alpha;
  p.d = d;
  p.c = c;
  p.gamma = gamma;
  p.b = num::arcsinh(std::cosh(d) / std::sinh(alpha));
  p.u0 = num::arctanh(num::sq(std::tanh(alpha)) * std::tanh(d));
  p.h0 = num::arcsinh(std::cosh(alpha) * std::sinh(c));
  return p;
}

Result<FermiPentagon> pentagon_from_alpha_d(double alpha, double d) {
  if (!(alpha > 0.0) || !(d > 0.0) || !std::isfinite(alpha) || !std::isfinite(d))
    return make_error(Errc::invalid_argument, "pentagon_from_alpha_d: sides must be positive and finite");
  const double c = num::arccosh(num::coth(alpha) * num::coth(d));
  const double gamma = num::arcsinh(std::cosh(alpha) / std::sinh(d));
  return fermi_pentagon(alpha, d, c, gamma);
}

Result<FermiPentagon> perturb_base(const FermiPentagon& p, double rel) {
  if (!std::isfinite(rel) || !(1.0 + rel > 0.0))
    return make_error(Errc::invalid_argument, "perturb_base: need 1 + rel > 0");
  return pentagon_from_alpha_d(p.alpha, num::arcsinh((1.0 + rel) * std::sinh(p.d)));
}

double base_perturbation(const FermiPentagon& p, const FermiPentagon& q) {
  return std::fabs(std::sinh(q.d) / std::sinh(p.d) - 1.0);
}

FermiPoint pentagon_map_raw(const FermiPentagon& P, const FermiPentagon& Pp,
                            FermiPoint z) {
  const TanhFrame f = tanh_frame(P, Pp, z.u, 0);
  return {num::arctanh(f.tup), num::arctanh(f.rho * std::tanh(z.v))};
}

Result<FermiPoint> pentagon_map(const FermiPentagon& P, const FermiPentagon& Pp,
                                FermiPoint z) {
  if (!sides_match(P.alpha, Pp.alpha))
    return make_error(Errc::precondition_unmet,
                      "pentagon_map: the pentagons must share the alpha side");
  if (!inside_pentagon(P, z))
    return make_error(Errc::domain_error,
                      "pentagon_map: point " + point_str(z.u, z.v) + " lies outside the pentagon");
  return pentagon_map_raw(P, Pp, z);
}

Result<PentagonJacobian> pentagon_jacobian(const FermiPentagon& P,
                                           const FermiPentagon& Pp, FermiPoint z,
                                           int side) {
  if (!sides_match(P.alpha, Pp.alpha))
    return make_error(Errc::precondition_unmet,
                      "pentagon_jacobian: the pentagons must share the alpha side");
  if (!inside_pentagon(P, z))
    return make_error(Errc::domain_error,
                      "pentagon_jacobian: point " + point_str(z.u, z.v) + " lies outside the pentagon");
  return jacobian_at(P, Pp, z, side);
}

bool boundary_trace_check(const FermiPentagon& P, const FermiPentagon& Pp,
                          BoundaryTraceDiagnostics* diag, int samples) {
  BoundaryTraceDiagnostics d;
  if (!sides_match(P.alpha, Pp.alpha)) {
    d.max_arclength_gap = std::fabs(P.alpha - Pp.alpha);
    d.reason = "alpha sides differ";
    if (diag) *diag = d;
    return false;
  }
  const double cc = std::cosh(P.c), ccp = std::cosh(Pp.c);
  for (int k = 0; k <= samples; ++k) {
    // arclength a along the alpha side corresponds to the abscissa with
    // tanh(u) = tanh(a) / cosh(c)
    const double a = P.alpha * static_cast<double>(k) / static_cast<double>(samples);
    const double u = num::arctanh(std::tanh(a) / cc);
    const FermiPoint w = pentagon_map_raw(P, Pp, {u, P.altitude(u)});
    const double ap = num::arctanh(std::min(ccp * std::tanh(w.u), 1.0 - 1e-16));
    d.max_identity_gap =
        std::max(d.max_identity_gap, std::fabs(std::tanh(a) * std::tanh(P.alpha) -
                                               std::tanh(ap) * std::tanh(Pp.alpha)));
    d.max_arclength_gap = std::max(d.max_arclength_gap, std::fabs(a - ap));
  }
  const bool ok = d.max_identity_gap <= 1e-10 && d.max_arclength_gap <= 1e-10;
  if (!ok) d.reason = "the map does not preserve arclength along the alpha side";
  if (diag) *diag = d;
  return ok;
}

std::pair<double, double> fermi_form_ratio(double du_du, double dv_du,
                                           double dv_dv, double v, double v_prime) {
  const double ch2 = num::sq(std::cosh(v));
  return form_extremes(du_du, dv_du, dv_dv, num::sq(std::cosh(v_prime)) / ch2,
                       1.0 / ch2);
}

Result<DistortionReport> certify_pentagon_map(const FermiPentagon& P,
                                              const FermiPentagon& Pp,
                                              const CertifyOptions& opt) {
  if (opt.grid_n < 2 || opt.boundary_samples < 0 || !(opt.tol >= 0.0))
    return make_error(Errc::invalid_argument, "certify_pentagon_map: bad options");
  if (!sides_match(P.alpha, Pp.alpha))
    return make_error(Errc::precondition_unmet,
                      "certify_pentagon_map: the pentagons must share the alpha side");

  DistortionReport rep;
  rep.delta_d = base_perturbation(P, Pp);
  const double hbar = std::max(P.h0, Pp.h0);
  rep.bound = 54.0 * std::exp(2.0 * hbar) * std::sqrt(rep.delta_d);
  if (rep.bound > 1.0) {
    std::ostringstream os;
    os << "certify_pentagon_map: 54 e^{2 max(h0,h0')} sqrt(delta_d) = " << rep.bound
       << " exceeds 1";
    return make_error(Errc::admissibility_failed, os.str());
  }
  const double budget = rep.bound * rep.bound / 9.0 + opt.tol;

  struct Sample {
    double u, v;
    int side;
  };
  const int n = opt.grid_n;
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(n) * n + 2 * n + opt.boundary_samples + 8);
  for (int i = 0; i < n; ++i) {
    const double u = P.d * static_cast<double>(i) / static_cast<double>(n - 1);
    const double h = P.altitude(u);
    for (int j = 0; j < n; ++j)
      samples.push_back({u, h * static_cast<double>(j) / static_cast<double>(n - 1), 0});
  }
  // the roof corner column, once per one-sided branch
  for (int j = 0; j < n; ++j) {
    const double v = P.h0 * static_cast<double>(j) / static_cast<double>(n - 1);
    samples.push_back({P.u0, v, -1});
    samples.push_back({P.u0, v, +1});
  }
  const int per_wall = std::max(opt.boundary_samples / 4, 2);
  for (int k = 0; k <= per_wall; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(per_wall);
    samples.push_back({0.0, P.c * t, 0});             // near wall
    samples.push_back({P.d, P.gamma * t, 0});         // far wall
    samples.push_back({P.d * t, 0.0, 0});             // base
    samples.push_back({P.d * t, P.altitude(P.d * t), 0});  // roof
  }

  struct Eval {
    double du_du, dv_dv, dv_du, ch_ratio_sq;
    double lam_min, lam_max;
  };
  std::vector<Eval> evals(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const Sample& s = samples[i];
    const TanhFrame f = tanh_frame(P, Pp, s.u, s.side);
    const VSlice vs = v_slice(f, s.v);
    const auto [lo, hi] =
        form_extremes(f.du_du, vs.dv_du, vs.dv_dv, vs.ch_ratio_sq, vs.inv_ch2);
    evals[i] = {f.du_du, vs.dv_dv, vs.dv_du, vs.ch_ratio_sq, lo, hi};
  });

  rep.ratio_min = std::numeric_limits<double>::infinity();
  rep.ratio_max = -rep.ratio_min;
  double worst_excess = 0.0;
  std::size_t worst_at = 0;
  const char* worst_what = nullptr;
  for (std::size_t i = 0; i < evals.size(); ++i) {
    const Eval& e = evals[i];
    const double excess[4] = {
        std::fabs(e.du_du * e.du_du - 1.0) - budget,
        std::fabs(e.dv_dv * e.dv_dv - 1.0) - budget,
        e.dv_du * e.dv_du - budget,
        std::fabs(e.ch_ratio_sq - 1.0) - budget,
    };
    static const char* kWhat[4] = {"(du'/du)^2", "(dv'/dv)^2", "(dv'/du)^2",
                                   "cosh^2 v'/cosh^2 v"};
    for (int q = 0; q < 4; ++q) {
      if (excess[q] > worst_excess) {
        worst_excess = excess[q];
        worst_at = i;
        worst_what = kWhat[q];
      }
    }
    rep.ratio_min = std::min(rep.ratio_min, e.lam_min);
    rep.ratio_max = std::max(rep.ratio_max, e.lam_max);
    const double cross = std::fabs(e.dv_du);
    rep.cross_max = std::max(rep.cross_max, cross);
    if (samples[i].side < 0) rep.cross_u0_left = std::max(rep.cross_u0_left, cross);
    if (samples[i].side > 0) rep.cross_u0_right = std::max(rep.cross_u0_right, cross);
  }
  if (worst_what) {
    std::ostringstream os;
    os << "certify_pentagon_map: " << worst_what << " at "
       << point_str(samples[worst_at].u, samples[worst_at].v)
       << " violates its bound by " << worst_excess;
    return make_error(Errc::certification_failed, os.str());
  }

  // spot-check the closed forms against central differences, away from the
  // roof corner where dv'/du is one-sided
  const double step = 1e-5;
  const int k = std::min(9, n);
  for (int a = 0; a < k; ++a) {
    const double u = P.d * (a + 0.5) / k;
    if (std::fabs(u - P.u0) < 1e-3) continue;
    const TanhFrame f = tanh_frame(P, Pp, u, 0);
    for (int b = 0; b < k; ++b) {
      const double v = P.altitude(u) * (b + 0.5) / k;
      const VSlice vs = v_slice(f, v);
      const FermiPoint pu1 = pentagon_map_raw(P, Pp, {u + step, v});
      const FermiPoint pu0 = pentagon_map_raw(P, Pp, {u - step, v});
      const FermiPoint pv1 = pentagon_map_raw(P, Pp, {u, v + step});
      const FermiPoint pv0 = pentagon_map_raw(P, Pp, {u, v - step});
      const double fd[3] = {(pu1.u - pu0.u) / (2.0 * step),
                            (pu1.v - pu0.v) / (2.0 * step),
                            (pv1.v - pv0.v) / (2.0 * step)};
      const double an[3] = {f.du_du, vs.dv_du, vs.dv_dv};
      for (int q = 0; q < 3; ++q) {
        if (std::fabs(fd[q] - an[q]) > 1e-6 * (1.0 + std::fabs(an[q]))) {
          std::ostringstream os;
          os << "certify_pentagon_map: analytic partial " << an[q]
             << " disagrees with finite difference " << fd[q] << " at "
             << point_str(u, v);
          return make_error(Errc::certification_failed, os.str());
        }
      }
    }
  }

  rep.certified = rep.ratio_max <= 1.0 + rep.bound + opt.tol &&
                  rep.ratio_min >= 1.0 - rep.bound - opt.tol &&
                  rep.cross_max <= rep.bound / 3.0 + opt.tol;
  if (!rep.certified)
    return make_error(Errc::certification_failed,
                      "certify_pentagon_map: eigenvalue range exceeds the certified budget");
  return rep;
}

Result<std::vector<DistortionSample>> distortion_samples(const FermiPentagon& P,
                                                         const FermiPentagon& Pp,
                                                         int grid_n) {
  if (grid_n < 2)
    return make_error(Errc::invalid_argument, "distortion_samples: grid_n must be at least 2");
  if (!sides_match(P.alpha, Pp.alpha))
    return make_error(Errc::precondition_unmet,
                      "distortion_samples: the pentagons must share the alpha side");
  std::vector<DistortionSample> out(static_cast<std::size_t>(grid_n) * grid_n);
  parallel_for(static_cast<std::size_t>(grid_n), [&](std::size_t i) {
    const double u = P.d * static_cast<double>(i) / static_cast<double>(grid_n - 1);
    const TanhFrame f = tanh_frame(P, Pp, u, 0);
    const double h = P.altitude(u);
    for (int j = 0; j < grid_n; ++j) {
      const double v = h * static_cast<double>(j) / static_cast<double>(grid_n - 1);
      const VSlice vs = v_slice(f, v);
      const auto [lo, hi] =
          form_extremes(f.du_du, vs.dv_du, vs.dv_dv, vs.ch_ratio_sq, vs.inv_ch2);
      out[i * grid_n + j] = {u, v, lo, hi, std::fabs(vs.dv_du)};
    }
  });
  return out;
}

Result<IntermediateBounds> intermediate_bound_margins(const FermiPentagon& P,
                                                      const FermiPentagon& Pp,
                                                      int grid_n) {
  if (grid_n < 2)
    return make_error(Errc::invalid_argument, "intermediate_bound_margins: grid_n must be at least 2");
  if (!sides_match(P.alpha, Pp.alpha))
    return make_error(Errc::precondition_unmet,
                      "intermediate_bound_margins: the pentagons must share the alpha side");

  IntermediateBounds b;
  const double D = b.delta_d = base_perturbation(P, Pp);
  b.hbar = std::max(P.h0, Pp.h0);
  b.tanh_base = two_sided_slack(std::tanh(Pp.d) / std::tanh(P.d), 1.0 - D, 1.0 + D);
  b.cosh_base = two_sided_slack(std::cosh(Pp.d) / std::cosh(P.d), 1.0 - D, 1.0 + D);
  b.sinh_wall = two_sided_slack(std::sinh(Pp.c) / std::sinh(P.c), 1.0 - D, 1.0 + 2.0 * D);
  b.sinh_far_wall =
      two_sided_slack(std::sinh(Pp.gamma) / std::sinh(P.gamma), 1.0 - D, 1.0 + 2.0 * D);

  const double inf = std::numeric_limits<double>::infinity();
  b.cosh_u = b.tanh_tail = b.cosh_tail = b.tanh_roof = b.cosh_roof = inf;
  b.cosh_height = b.base_stretch_sq = b.height_stretch_sq = inf;
  b.cross_sq = b.cosh_height_sq = inf;

  const double td = std::tanh(P.d), tdp = std::tanh(Pp.d);
  const double cd = std::cosh(P.d), cdp = std::cosh(Pp.d);
  const double r = tdp / td;
  const double cross_allowed = num::sq(18.0 * std::exp(2.0 * b.hbar) * D);

  for (int i = 0; i < grid_n; ++i) {
    const double u = P.d * static_cast<double>(i) / static_cast<double>(grid_n - 1);
    const TanhFrame f = tanh_frame(P, Pp, u, 0);
    b.cosh_u = std::min(b.cosh_u, two_sided_slack(f.cu_ratio, 1.0 - D, 1.0 + D));
    // tanh(d'-u')/tanh(d-u) = r (1 - td tu) / (1 - tdp tu'), well defined
    // through u = d where numerator and denominator of the raw ratio vanish
    const double tail = r * (1.0 - td * f.tu) / (1.0 - tdp * f.tup);
    b.tanh_tail = std::min(b.tanh_tail, two_sided_slack(tail, 1.0 - 2.0 * D, 1.0 + 3.0 * D));
    const double ctail = (cdp / cd) * f.cu_ratio * (1.0 - tdp * f.tup) / (1.0 - td * f.tu);
    b.cosh_tail = std::min(b.cosh_tail, two_sided_slack(ctail, 1.0 - D, 1.0 + D));
    b.tanh_roof = std::min(b.tanh_roof, two_sided_slack(f.rho, 1.0 - 2.0 * D, 1.0 + 4.0 * D));
    const double croof = std::sqrt(((1.0 - f.Th) * (1.0 + f.Th)) /
                                   ((1.0 - f.Thp) * (1.0 + f.Thp)));
    b.cosh_roof = std::min(b.cosh_roof, two_sided_slack(croof, 1.0 - 3.0 * D, 1.0 + 7.0 * D));
    b.base_stretch_sq = std::min(
        b.base_stretch_sq,
        two_sided_slack(num::sq(f.du_du), 1.0 - 100.0 / 9.0 * D, 1.0 + 100.0 / 9.0 * D));
    const double h = P.altitude(u);
    for (int j = 0; j < grid_n; ++j) {
      const double v = h * static_cast<double>(j) / static_cast<double>(grid_n - 1);
      const VSlice vs = v_slice(f, v);
      b.cosh_height = std::min(
          b.cosh_height,
          two_sided_slack(std::sqrt(vs.ch_ratio_sq), 1.0 - 3.0 * D, 1.0 + 7.0 * D));
      b.height_stretch_sq = std::min(
          b.height_stretch_sq,
          two_sided_slack(num::sq(vs.dv_dv), 1.0 - 49.0 * D, 1.0 + 49.0 * D));
      b.cross_sq = std::min(b.cross_sq, cross_allowed - num::sq(vs.dv_du));
      b.cosh_height_sq = std::min(
          b.cosh_height_sq,
          two_sided_slack(vs.ch_ratio_sq, 1.0 - 16.0 * D, 1.0 + 16.0 * D));
    }
  }
  return b;
}

bool intermediate_bounds_ok(const IntermediateBounds& b, double tol) {
  const double d = b.delta_d;
  const auto ok = [&](double slack) { return slack >= -tol; };
  if (!ok(b.tanh_base) || !ok(b.cosh_base)) return false;
  if (d <= 1.0 && (!ok(b.cosh_u) || !ok(b.tanh_tail) || !ok(b.cosh_tail))) return false;
  if (d <= 0.5 && (!ok(b.sinh_wall) || !ok(b.sinh_far_wall) || !ok(b.tanh_roof)))
    return false;
  if (d <= 0.2 && (!ok(b.cosh_roof) || !ok(b.cosh_height))) return false;
  if (d <= 1.0 / 15.0 && (!ok(b.base_stretch_sq) || !ok(b.cross_sq))) return false;
  if (d <= 1.0 / 735.0 && !ok(b.height_stretch_sq)) return false;
  if (d <= 1.0 / 49.0 && !ok(b.cosh_height_sq)) return false;
  return true;
}

RightHexagon hexagon_from_alternating(double alpha, double beta, double gamma) {
  const trig::Hexagon h = trig::hexagon_solve(alpha, beta, gamma);
  // hexagon_solve labels each output by the input pair it sits between;
  // reread them into the consecutive (alpha, c, beta, a, gamma, b) order
  return {alpha, h.gamma, beta, h.alpha, gamma, h.beta};
}

Result<HexagonSplit> split_hexagon(const RightHexagon& H) {
  for (double s : {H.alpha, H.c, H.beta, H.a, H.gamma, H.b})
    if (!(s > 0.0) || !std::isfinite(s))
      return make_error(Errc::invalid_argument, "split_hexagon: sides must be positive and finite");
  const double chd = std::sinh(H.alpha) * std::sinh(H.b);
  if (!(chd > 1.0))
    return make_error(Errc::geometry_inconsistent,
                      "split_hexagon: sinh(alpha) sinh(b) must exceed 1");
  HexagonSplit s;
  s.d = num::arccosh(chd);
  const double sd = std::sinh(s.d);
  const double gamma_b = num::arcsinh(std::cosh(H.alpha) / sd);
  const double gamma_a = num::arcsinh(std::cosh(H.beta) / sd);
  const double c_alpha = num::arcsinh(std::cosh(H.b) / sd);
  const double c_beta = num::arcsinh(std::cosh(H.a) / sd);
  if (num::rel_err(gamma_b + gamma_a, H.gamma) > kClosureTol ||
      num::rel_err(c_alpha + c_beta, H.c) > kClosureTol)
    return make_error(Errc::geometry_inconsistent,
                      "split_hexagon: the perpendicular pieces do not close up");
  auto pa = fermi_pentagon(H.alpha, s.d, c_alpha, gamma_b);
  if (!pa.ok()) return pa.error();
  auto pb = fermi_pentagon(H.beta, s.d, c_beta, gamma_a);
  if (!pb.ok()) return pb.error();
  s.alpha_side = *pa;
  s.beta_side = *pb;
  return s;
}

Result<FermiPoint> hexagon_map(const RightHexagon& H, const RightHexagon& Hp,
                               FermiPoint z) {
  if (!sides_match(H.alpha, Hp.alpha) || !sides_match(H.beta, Hp.beta))
    return make_error(Errc::precondition_unmet,
                      "hexagon_map: the hexagons must share the alpha and beta sides");
  const double min_side = num::arcsinh(1.0);
  if (H.alpha < min_side - kSideMatchTol || H.beta < min_side - kSideMatchTol)
    return make_error(Errc::precondition_unmet,
                      "hexagon_map: alpha and beta must be at least arcsinh(1)");
  const double ell = std::max(H.gamma, Hp.gamma);
  const double adm =
      1350.0 * std::exp(5.0 * ell) * std::sqrt(std::fabs(H.gamma / Hp.gamma - 1.0));
  if (adm > 1.0) {
    std::ostringstream os;
    os << "hexagon_map: 1350 e^{5 max(gamma,gamma')} sqrt(|gamma/gamma' - 1|) = " << adm
       << " exceeds 1";
    return make_error(Errc::admissibility_failed, os.str());
  }
  auto S = split_hexagon(H);
  if (!S.ok()) return S.error();
  auto Sp = split_hexagon(Hp);
  if (!Sp.ok()) return Sp.error();
  if (z.v >= 0.0) return pentagon_map(S->alpha_side, Sp->alpha_side, z);
  auto w = pentagon_map(S->beta_side, Sp->beta_side, {z.u, -z.v});
  if (!w.ok()) return w.error();
  return FermiPoint{w->u, -w->v};
}

RightHexagon pants_hexagon(const Pants& P) {
  const trig::PantsSeams s =
      trig::pants_perpendiculars(P.len_alpha, P.len_beta, P.len_gamma);
  return {0.5 * P.len_alpha, s.between_alpha_beta, 0.5 * P.len_beta,
          s.between_beta_gamma, 0.5 * P.len_gamma, s.between_gamma_alpha};
}

Result<PantsPoint> pants_map(const Pants& P, const Pants& Pp, PantsPoint z) {
  for (double l : {P.len_alpha, P.len_beta, P.len_gamma, Pp.len_alpha, Pp.len_beta,
                   Pp.len_gamma})
    if (!(l > 0.0) || !std::isfinite(l))
      return make_error(Errc::invalid_argument, "pants_map: boundary lengths must be positive and finite");
  if (z.hexagon != 0 && z.hexagon != 1)
    return make_error(Errc::invalid_argument, "pants_map: hexagon index must be 0 or 1");
  if (!sides_match(P.len_alpha, Pp.len_alpha) || !sides_match(P.len_beta, Pp.len_beta))
    return make_error(Errc::precondition_unmet,
                      "pants_map: the pants must share the alpha and beta boundary lengths");
  const double min_len = 2.0 * num::arcsinh(1.0);
  if (P.len_alpha < min_len - kSideMatchTol || P.len_beta < min_len - kSideMatchTol)
    return make_error(Errc::precondition_unmet,
                      "pants_map: alpha and beta boundaries must be at least 2 arcsinh(1)");
  const double ell = std::max(P.len_gamma, Pp.len_gamma);
  const double adm = 450.0 * std::exp(5.0 * ell) *
                     std::sqrt(std::fabs(P.len_gamma / Pp.len_gamma - 1.0));
  if (adm > 1.0) {
    std::ostringstream os;
    os << "pants_map: 450 e^{5 max(l,l')} sqrt(|l/l' - 1|) = " << adm << " exceeds 1";
    return make_error(Errc::admissibility_failed, os.str());
  }
  auto w = hexagon_map(pants_hexagon(P), pants_hexagon(Pp), z.z);
  if (!w.ok()) return w.error();
  return PantsPoint{z.hexagon, *w};
}

LipschitzRange lipschitz_estimate(const PlanarMap& map, const StripDomain& domain,
                                  int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("lipschitz_estimate: grid_n must be at least 2");
  if (!(domain.u_max > domain.u_min))
    throw std::invalid_argument("lipschitz_estimate: empty u range");
  const double step = 1e-5;
  double kmax = 0.0, kmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(grid_n - 1);
    const double u = (domain.u_min + step) + (domain.u_max - domain.u_min - 2.0 * step) * t;
    const double lo = domain.v_lo(u) + step, hi = domain.v_hi(u) - step;
    if (!(hi >= lo)) continue;  // sliver thinner than the stencil
    for (int j = 0; j < grid_n; ++j) {
      const double v = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(grid_n - 1);
      const FermiPoint pc = map(u, v);
      const FermiPoint pu1 = map(u + step, v), pu0 = map(u - step, v);
      const FermiPoint pv1 = map(u, v + step), pv0 = map(u, v - step);
      const double a = (pu1.u - pu0.u) / (2.0 * step);   // du'/du
      const double c = (pu1.v - pu0.v) / (2.0 * step);   // dv'/du
      const double bb = (pv1.u - pv0.u) / (2.0 * step);  // du'/dv
      const double dd = (pv1.v - pv0.v) / (2.0 * step);  // dv'/dv
      const double ch2 = num::sq(std::cosh(v)), chp2 = num::sq(std::cosh(pc.v));
      const double m11 = (a * a * chp2 + c * c) / ch2;
      const double m12 = (a * bb * chp2 + c * dd) / std::cosh(v);
      const double m22 = bb * bb * chp2 + dd * dd;
      const double tr = m11 + m22;
      const double disc = std::sqrt((m11 - m22) * (m11 - m22) + 4.0 * m12 * m12);
      kmax = std::max(kmax, std::sqrt(0.5 * (tr + disc)));
      kmin = std::min(kmin, std::sqrt(std::max(0.5 * (tr - disc), 0.0)));
    }
  }
  return {kmax, kmin};
}

}  // namespace hypgeo::maps
