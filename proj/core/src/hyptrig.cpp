#include "hypgeo/hyptrig.hpp"

#include <cmath>
#include <stdexcept>

#include "hypgeo/numerics.hpp"

namespace hypgeo::trig {

using num::arccosh;
using num::arcsinh;
using num::arctanh;

Result<Trirectangle> trirectangle_solve(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    return make_error(Errc::invalid_argument, "trirectangle sides must be positive");
  const double ta = std::cosh(b) * std::tanh(a);
  if (ta >= 1.0)
    return make_error(Errc::geometry_infeasible, "cosh(b) tanh(a) >= 1, no trirectangle");
  Trirectangle t{};
  t.a = a;
  t.b = b;
  t.alpha = arctanh(ta);
  t.beta = arccosh(std::sinh(t.alpha) / std::sinh(a));
  return t;
}

Result<Pentagon> pentagon_from_legs(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    return make_error(Errc::invalid_argument, "pentagon legs must be positive");
  const double s = std::sinh(a) * std::sinh(b);
  if (s <= 1.0)
    return make_error(Errc::geometry_infeasible, "sinh(a) sinh(b) <= 1, legs too short");
  Pentagon p{};
  p.a = a;
  p.b = b;
  p.c = arccosh(s);
  const double sc = std::sinh(p.c);
  p.alpha = arcsinh(std::cosh(a) / sc);
  p.beta = arcsinh(std::cosh(b) / sc);
  return p;
}

Hexagon hexagon_solve(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
    throw std::invalid_argument("hexagon_solve: sides must be positive");
  Hexagon h{};
  h.a = a;
  h.b = b;
  h.c = c;
  const double ca = std::cosh(a), cb = std::cosh(b), cc = std::cosh(c);
  const double sa = std::sinh(a), sb = std::sinh(b), sc = std::sinh(c);
  h.gamma = arccosh((cc + ca * cb) / (sa * sb));
  h.alpha = arccosh((ca + cb * cc) / (sb * sc));
  h.beta = arccosh((cb + cc * ca) / (sc * sa));

  const double cal = std::cosh(h.alpha), cbe = std::cosh(h.beta), cga = std::cosh(h.gamma);
  const double s2 = (cal * cal + cbe * cbe + 2.0 * cal * cbe * cga) / num::sq(std::sinh(h.gamma));
  h.d = arcsinh(std::sqrt(s2));
  h.h_alpha = arcsinh(1.0 / (std::tanh(h.alpha) * std::tanh(b) * std::tanh(h.d)));
  return h;
}

Hexagon hexagon_rotate(const Hexagon& h) {
  // shifting the consecutive labeling by two sides maps the alternating
  // triple (a,b,c) to (b,c,a)
  return hexagon_solve(h.b, h.c, h.a);
}

PantsSeams pants_perpendiculars(double l_alpha, double l_beta, double l_gamma) {
  if (!(l_alpha > 0.0) || !(l_beta > 0.0) || !(l_gamma > 0.0))
    throw std::invalid_argument("pants_perpendiculars: boundary lengths must be positive");
  // Cutting the pants along its seams gives two isometric right-angled
  // hexagons whose alternating sides are the boundary half-lengths.
  const Hexagon h = hexagon_solve(0.5 * l_alpha, 0.5 * l_beta, 0.5 * l_gamma);
  PantsSeams s{};
  s.between_alpha_beta = h.gamma;  // opposite the gamma half-length
  s.between_beta_gamma = h.alpha;
  s.between_gamma_alpha = h.beta;
  return s;
}

double collar_width(double ell) {
  if (!(ell > 0.0)) throw std::invalid_argument("collar_width: length must be positive");
  return arcsinh(1.0 / std::sinh(0.5 * ell));
}

double crossing_length_bound(double ell) { return 2.0 * collar_width(ell); }

Collar make_collar(double ell, bool half) { return Collar{ell, collar_width(ell), half}; }

double collar_area(const Collar& c) {
  const double one_side = c.ell * std::sinh(c.w);
  return c.half ? one_side : 2.0 * one_side;
}

}  // namespace hypgeo::trig
