#include "hypgeo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hypgeo/collar_modes.hpp"
#include "hypgeo/numerics.hpp"
#include "hypgeo/rng.hpp"

namespace hypgeo::oracle {

namespace {

// LU factorization of a tridiagonal matrix with partial pivoting (the
// gttrf/gtts2 pair). Pivoting fills one extra superdiagonal.
struct TriLU {
  std::vector<double> sub, diag, sup, fill;
  std::vector<bool> swapped;

  TriLU(std::vector<double> sub_in, std::vector<double> diag_in, std::vector<double> sup_in)
      : sub(std::move(sub_in)), diag(std::move(diag_in)), sup(std::move(sup_in)) {
    const std::size_t m = diag.size();
    fill.assign(m > 2 ? m - 2 : 0, 0.0);
    swapped.assign(m > 1 ? m - 1 : 0, false);
    constexpr double tiny = 1e-300;  // keeps inverse iteration alive at an exact shift
    for (std::size_t i = 0; i + 1 < m; ++i) {
      if (std::fabs(diag[i]) >= std::fabs(sub[i])) {
        if (diag[i] == 0.0) diag[i] = tiny;
        const double fact = sub[i] / diag[i];
        sub[i] = fact;
        diag[i + 1] -= fact * sup[i];
        if (i + 2 < m) fill[i] = 0.0;
      } else {
        swapped[i] = true;
        const double fact = diag[i] / sub[i];
        diag[i] = sub[i];
        sub[i] = fact;
        const double tmp = sup[i];
        sup[i] = diag[i + 1];
        diag[i + 1] = tmp - fact * diag[i + 1];
        if (i + 2 < m) {
          fill[i] = sup[i + 1];
          sup[i + 1] = -fact * sup[i + 1];
        }
      }
    }
    if (diag[m - 1] == 0.0) diag[m - 1] = tiny;
  }

  void solve(std::vector<double>& b) const {
    const std::size_t m = diag.size();
    for (std::size_t i = 0; i + 1 < m; ++i) {
      if (!swapped[i]) {
        b[i + 1] -= sub[i] * b[i];
      } else {
        const double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - sub[i] * b[i];
      }
    }
    b[m - 1] /= diag[m - 1];
    if (m > 1) b[m - 2] = (b[m - 2] - sup[m - 2] * b[m - 1]) / diag[m - 2];
    for (std::size_t i = m > 2 ? m - 2 : 0; i-- > 0;)
      b[i] = (b[i] - sup[i] * b[i + 1] - fill[i] * b[i + 2]) / diag[i];
  }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& u : basis) {
      const double c = dot(v, u);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
    }
}

bool normalize(std::vector<double>& v) {
  const double n = std::sqrt(dot(v, v));
  if (!(n > 1e-200)) return false;
  for (double& x : v) x /= n;
  return true;
}

struct Tridiag {
  std::vector<double> sub, diag;  // symmetric: sup == sub

  std::vector<double> apply(const std::vector<double>& x) const {
    const std::size_t m = diag.size();
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
      double s = diag[i] * x[i];
      if (i > 0) s += sub[i - 1] * x[i - 1];
      if (i + 1 < m) s += sub[i] * x[i + 1];
      y[i] = s;
    }
    return y;
  }

  void gershgorin(double& lo, double& hi) const {
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      double r = 0.0;
      if (i > 0) r += std::fabs(sub[i - 1]);
      if (i + 1 < diag.size()) r += std::fabs(sub[i]);
      lo = std::min(lo, diag[i] - r);
      hi = std::max(hi, diag[i] + r);
    }
  }

  // number of eigenvalues strictly below sigma, by the LDL^T sign count
  int count_below(double sigma) const {
    int cnt = 0;
    double q = diag[0] - sigma;
    if (q < 0.0) ++cnt;
    for (std::size_t i = 1; i < diag.size(); ++i) {
      q = diag[i] - sigma - sub[i - 1] * sub[i - 1] / (q == 0.0 ? 1e-300 : q);
      if (q < 0.0) ++cnt;
    }
    return cnt;
  }
};

// k-th eigenpair: the shift is pinned down first by bisection on the Sturm
// count (the boundary mass lumping makes Gershgorin far too loose to seed a
// fixed-shift iteration), then inverse iteration with the iterate kept
// orthogonal to the already-found eigenvectors delivers the pair.
Result<double> eigenpair_at(const Tridiag& T, int k, double glo, double ghi,
                            std::vector<std::vector<double>>& found, Rng& rng) {
  double lo = glo, hi = ghi;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
       ++it) {
    const double mid = 0.5 * (lo + hi);
    (T.count_below(mid) >= k + 1 ? hi : lo) = mid;
  }
  const double shift = 0.5 * (lo + hi);

  const std::size_t m = T.diag.size();
  double tnorm = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double r = std::fabs(T.diag[i]);
    if (i > 0) r += std::fabs(T.sub[i - 1]);
    if (i + 1 < m) r += std::fabs(T.sub[i]);
    tnorm = std::max(tnorm, r);
  }

  std::vector<double> v(m);
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  orthogonalize(v, found);
  if (!normalize(v)) return make_error(Errc::search_exhausted, "inverse iteration: degenerate start");

  std::vector<double> sub = T.sub, diag = T.diag, sup = T.sub;
  for (double& d : diag) d -= shift;
  const TriLU lu(std::move(sub), std::move(diag), std::move(sup));

  for (int it = 0; it < 40; ++it) {
    lu.solve(v);
    orthogonalize(v, found);
    if (!normalize(v)) return make_error(Errc::search_exhausted, "inverse iteration: collapsed iterate");
    const std::vector<double> tv = T.apply(v);
    double res2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) res2 += num::sq(tv[i] - shift * v[i]);
    if (std::sqrt(res2) <= 1e-9 * tnorm) {
      found.push_back(v);
      return shift;  // the bisected value; the pair certifies it
    }
  }
  return make_error(Errc::search_exhausted, "inverse iteration stagnated");
}

}  // namespace

Result<std::vector<double>> collar_fd_spectrum(const SturmLiouvilleProblem& problem,
                                               const Grid1D& grid, int count) {
  if (!(problem.ell > 0.0) || !(problem.w > 0.0) || problem.j < 0)
    return make_error(Errc::invalid_argument, "collar_fd_spectrum: bad problem parameters");
  if (grid.nodes < 16) return make_error(Errc::invalid_argument, "collar_fd_spectrum: nodes < 16");
  if (count < 1 || count > grid.nodes / 4)
    return make_error(Errc::invalid_argument, "collar_fd_spectrum: count must be in [1, nodes/4]");
  const double tol = 1e-9 * std::max(1.0, problem.w);
  const bool from_zero = std::fabs(grid.a) <= tol;
  const bool full = std::fabs(grid.a + problem.w) <= tol;
  if (std::fabs(grid.b - problem.w) > tol || (!from_zero && !full))
    return make_error(Errc::invalid_argument,
                      "collar_fd_spectrum: grid endpoints must span [0, w] or [-w, w]");

  const int n = grid.nodes;
  const double dx = grid.spacing();
  const double vfac = num::sq(2.0 * num::pi * problem.j / problem.ell);
  auto x_at = [&](int i) { return grid.a + dx * i; };

  // lumped-mass conservative assembly over the elements
  std::vector<double> stiff_diag(n, 0.0), stiff_sub(n - 1, 0.0), mass(n, 0.0);
  for (int e = 0; e + 1 < n; ++e) {
    const double p = std::cosh(x_at(e) + 0.5 * dx) / dx;
    stiff_diag[e] += p;
    stiff_diag[e + 1] += p;
    stiff_sub[e] -= p;
    mass[e] += 0.5 * dx * std::cosh(x_at(e));
    mass[e + 1] += 0.5 * dx * std::cosh(x_at(e + 1));
  }

  const int i0 = problem.bc_inner == EndCondition::dirichlet ? 1 : 0;
  const int i1 = n - 1 - (problem.bc_outer == EndCondition::dirichlet ? 1 : 0);
  const int m = i1 - i0 + 1;

  Tridiag T;
  T.diag.resize(m);
  T.sub.resize(m - 1);
  for (int k = 0; k < m; ++k) {
    const int i = i0 + k;
    const double v = vfac / num::sq(std::cosh(x_at(i)));
    T.diag[k] = stiff_diag[i] / mass[i] + v;
    if (k + 1 < m) T.sub[k] = stiff_sub[i] / std::sqrt(mass[i] * mass[i + 1]);
  }

  Rng rng(0x0fd5eedULL);
  std::vector<std::vector<double>> vectors;
  std::vector<double> values;
  values.reserve(count);
  double glo = 0.0, ghi = 0.0;
  T.gershgorin(glo, ghi);
  for (int k = 0; k < count; ++k) {
    auto lam = eigenpair_at(T, k, glo, ghi, vectors, rng);
    if (!lam.ok()) return lam.error();
    values.push_back(*lam);
  }
  std::sort(values.begin(), values.end());
  return values;
}

Result<double> shooting_neumann_eigen(double ell, double w, int j, Bracket bracket) {
  if (!(ell > 0.0) || !(w > 0.0) || j < 0)
    return make_error(Errc::invalid_argument, "shooting_neumann_eigen: bad parameters");
  if (!(bracket.lo < bracket.hi))
    return make_error(Errc::invalid_argument, "shooting_neumann_eigen: empty bracket");

  const double half_tanh = 0.5 * std::tanh(w);
  Error failure = make_error(Errc::integration_failure, "");
  bool failed = false;
  // scaled by 2^exp2 > 0, so sign and roots are those of the true mismatch
  auto mismatch = [&](double lambda) {
    auto sol = modes::solve_mode({lambda, j, ell}, w);
    if (!sol.ok()) {
      failure = sol.error();
      failed = true;
      return 0.0;
    }
    const auto& s = sol->samples.back();
    return s.dpsi - half_tanh * s.psi;
  };

  const double flo = mismatch(bracket.lo);
  const double fhi = mismatch(bracket.hi);
  if (failed) return failure;
  if (!(flo * fhi < 0.0)) {
    std::ostringstream os;
    os << "no sign change of the Neumann mismatch on [" << bracket.lo << ", " << bracket.hi << "]";
    return make_error(Errc::precondition_unmet, os.str());
  }
  const double root = num::find_root(mismatch, bracket.lo, bracket.hi, 1e-12);
  if (failed) return failure;
  return root;
}

Result<double> curvature_fd(const DensitySamples& samples, double rho) {
  const auto n = static_cast<long>(samples.h.size());
  if (samples.drho <= 0.0 || n < 4)
    return make_error(Errc::invalid_argument, "curvature_fd: need positive spacing and >= 4 samples");
  if (samples.drho > 1e-3 + 1e-15)
    return make_error(Errc::invalid_argument, "curvature_fd: sample spacing must be <= 1e-3");
  if (!(samples.rho0 > 0.0))
    return make_error(Errc::invalid_argument, "curvature_fd: samples must start at rho > 0");

  const double s = (rho - samples.rho0) / samples.drho;
  const auto i = static_cast<long>(std::floor(s));
  const double frac = s - static_cast<double>(i);
  const bool on_node = frac < 1e-12;
  if (i < 1 || (on_node ? i + 1 : i + 2) > n - 1)
    return make_error(Errc::domain_error, "curvature_fd: rho too close to the sampled boundary");

  auto k_at = [&](long m) {
    const double hm = samples.h[m];
    const double gl = std::log(samples.h[m - 1]);
    const double gc = std::log(hm);
    const double gr = std::log(samples.h[m + 1]);
    const double d1 = (gr - gl) / (2.0 * samples.drho);
    const double d2 = (gr - 2.0 * gc + gl) / num::sq(samples.drho);
    const double x = samples.rho0 + samples.drho * static_cast<double>(m);
    return -(d2 + d1 * num::coth(x) + 1.0) / num::sq(hm);
  };
  for (long m = i - 1; m <= (on_node ? i + 1 : i + 2); ++m)
    if (!(samples.h[m] > 0.0))
      return make_error(Errc::domain_error, "curvature_fd: nonpositive density sample");

  if (on_node) return k_at(i);
  return (1.0 - frac) * k_at(i) + frac * k_at(i + 1);
}

RatioRange metric_compare(const std::function<double(double)>& h1,
                          const std::function<double(double)>& h2, double lo, double hi,
                          int grid_n) {
  if (!(lo < hi) || grid_n < 2) throw std::invalid_argument("metric_compare: bad interval or grid");
  RatioRange out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (int k = 0; k < grid_n; ++k) {
    const double x = lo + (hi - lo) * k / (grid_n - 1);
    const double base = h1(x);
    if (!(base > 0.0)) throw std::invalid_argument("metric_compare: h1 not positive on the grid");
    const double r = h2(x) / base;
    out.min_ratio = std::min(out.min_ratio, r);
    out.max_ratio = std::max(out.max_ratio, r);
  }
  return out;
}

}  // namespace hypgeo::oracle
