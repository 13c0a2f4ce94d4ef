#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace hypgeo::num {

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Inverse hyperbolics in log form. The polygon identities downstream are held
// to 1e-12, which std::acosh/std::atanh do not reliably deliver near 1.
inline double arccosh(double x) {
  if (x < 1.0) throw std::domain_error("arccosh: argument below 1");
  const double t = x - 1.0;
  return std::log1p(t + std::sqrt(t * (x + 1.0)));
}

inline double arctanh(double x) {
  if (!(std::fabs(x) < 1.0)) throw std::domain_error("arctanh: |argument| must be < 1");
  return 0.5 * std::log1p(2.0 * x / (1.0 - x));
}

inline double arcsinh(double x) { return std::asinh(x); }
inline double coth(double x) { return 1.0 / std::tanh(x); }
inline double sech(double x) { return 1.0 / std::cosh(x); }

inline double sq(double x) { return x * x; }

inline double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

// First derivative, central differences with one Richardson sweep.
template <class F>
double central_diff(F&& f, double x, double h = 1e-5) {
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

// Second derivative, same treatment.
template <class F>
double central_diff2(F&& f, double x, double h = 1e-4) {
  const double fx = f(x);
  const double d1 = (f(x + h) - 2.0 * fx + f(x - h)) / (h * h);
  const double d2 = (f(x + 0.5 * h) - 2.0 * fx + f(x - 0.5 * h)) / (0.25 * h * h);
  return (4.0 * d2 - d1) / 3.0;
}

namespace detail {

template <class F>
double simpson_rec(F& f, double a, double m, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-10) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, 48);
}

// Composite Simpson with a fixed even subdivision count.
template <class F>
double simpson_n(F&& f, double a, double b, std::size_t n) {
  if (n % 2) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double s = f(a) + f(b);
  for (std::size_t k = 1; k < n; ++k) s += f(a + h * static_cast<double>(k)) * (k % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Brent's method on a sign-changing bracket.
template <class F>
double find_root(F&& f, double a, double b, double tol = 1e-12, int maxit = 200) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw std::invalid_argument("find_root: bracket does not change sign");
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < maxit; ++it) {
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

struct OdeOptions {
  double atol = 1e-10;
  double rtol = 1e-10;
  double hmax = 0.25;
  double hmin = 1e-13;
};

// Dormand-Prince 5(4) with PI-free step control. Integrates y' = f(t, y) from
// t0 to t1 (either direction) and returns y(t1). Throws on step underflow.
template <std::size_t N, class F>
std::array<double, N> ode45(F&& f, double t0, std::array<double, N> y, double t1,
                            const OdeOptions& opt = {}) {
  using Vec = std::array<double, N>;
  if (t0 == t1) return y;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  double t = t0;
  double h = dir * std::min(opt.hmax, std::fabs(t1 - t0));

  Vec k1 = f(t, y);
  while (dir * (t1 - t) > 0.0) {
    bool last = false;
    if (std::fabs(h) >= std::fabs(t1 - t)) {
      h = t1 - t;
      last = true;
    }
    Vec k2, k3, k4, k5, k6, k7, yt, y5, y4;

    auto axpy = [&](const Vec& base, std::initializer_list<std::pair<double, const Vec*>> terms) {
      Vec out = base;
      for (auto& [c, v] : terms)
        for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*v)[i];
      return out;
    };

    yt = axpy(y, {{1.0 / 5, &k1}});
    k2 = f(t + h / 5, yt);
    yt = axpy(y, {{3.0 / 40, &k1}, {9.0 / 40, &k2}});
    k3 = f(t + 3 * h / 10, yt);
    yt = axpy(y, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}});
    k4 = f(t + 4 * h / 5, yt);
    yt = axpy(y, {{19372.0 / 6561, &k1}, {-25360.0 / 2187, &k2}, {64448.0 / 6561, &k3}, {-212.0 / 729, &k4}});
    k5 = f(t + 8 * h / 9, yt);
    yt = axpy(y, {{9017.0 / 3168, &k1}, {-355.0 / 33, &k2}, {46732.0 / 5247, &k3}, {49.0 / 176, &k4}, {-5103.0 / 18656, &k5}});
    k6 = f(t + h, yt);
    y5 = axpy(y, {{35.0 / 384, &k1}, {500.0 / 1113, &k3}, {125.0 / 192, &k4}, {-2187.0 / 6784, &k5}, {11.0 / 84, &k6}});
    k7 = f(t + h, y5);
    y4 = axpy(y, {{5179.0 / 57600, &k1}, {7571.0 / 16695, &k3}, {393.0 / 640, &k4},
                  {-92097.0 / 339200, &k5}, {187.0 / 2100, &k6}, {1.0 / 40, &k7}});

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double scale = opt.atol + opt.rtol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
      err += sq((y5[i] - y4[i]) / scale);
    }
    err = std::sqrt(err / N);

    if (err <= 1.0) {
      if (last) return y5;  // lands on t1 exactly, no rounding residue
      t += h;
      y = y5;
      k1 = k7;  // FSAL
    }
    const double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-300), -0.2), 0.2, 5.0);
    h *= factor;
    if (std::fabs(h) > opt.hmax) h = dir * opt.hmax;
    if (std::fabs(h) < opt.hmin) throw std::runtime_error("ode45: step size underflow");
  }
  return y;
}

}  // namespace hypgeo::num
