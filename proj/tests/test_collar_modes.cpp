#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "hypgeo/collar_modes.hpp"
#include "hypgeo/numerics.hpp"
#include "hypgeo/rng.hpp"

using namespace hypgeo;
using namespace hypgeo::modes;

namespace {

// Independent oracle: classical RK4 at a fixed tiny step on the same
// six-component system (both solutions plus their squared-mass integrals).
// No adaptivity, no rescaling; only valid while values fit in a double.
struct Rk4Ref {
  double phi, dphi, psi, dpsi, mass_phi, mass_psi;
};

Rk4Ref rk4_reference(const ModeODEParams& p, double w, double h = 2e-4) {
  const double nu2 = 0.25 + num::sq(2.0 * num::pi * p.j / p.ell);
  auto q = [&](double rho) { return 0.25 - p.lambda + nu2 / num::sq(std::cosh(rho)); };
  using Y = std::array<double, 6>;
  auto f = [&](double rho, const Y& y) {
    const double qq = q(rho);
    return Y{y[1], qq * y[0], y[3], qq * y[2], y[0] * y[0], y[2] * y[2]};
  };
  Y y{0.0, 1.0, 1.0, 0.0, 0.0, 0.0};
  const auto n = static_cast<long>(std::ceil(w / h));
  const double step = w / static_cast<double>(n);
  double t = 0.0;
  for (long i = 0; i < n; ++i) {
    const Y k1 = f(t, y);
    Y ym;
    for (int c = 0; c < 6; ++c) ym[c] = y[c] + 0.5 * step * k1[c];
    const Y k2 = f(t + 0.5 * step, ym);
    for (int c = 0; c < 6; ++c) ym[c] = y[c] + 0.5 * step * k2[c];
    const Y k3 = f(t + 0.5 * step, ym);
    for (int c = 0; c < 6; ++c) ym[c] = y[c] + step * k3[c];
    const Y k4 = f(t + step, ym);
    for (int c = 0; c < 6; ++c)
      y[c] += step / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    t += step;
  }
  return Rk4Ref{y[0], y[1], y[2], y[3], y[4], y[5]};
}

}  // namespace

TEST_CASE("mode potential matches its definition") {
  ModeODEParams p{0.1, 1, 2.0 * num::pi};
  CHECK(mode_potential(p, 0.0) == doctest::Approx(1.4).epsilon(1e-15));
  // decays to the constant part away from the core
  CHECK(mode_potential(p, 30.0) == doctest::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("fundamental pair keeps a unit Wronskian") {
  ModeODEParams p{0.16, 0, 2.0};
  auto sol = solve_mode(p, 5.0);
  REQUIRE(sol.ok());
  CHECK(sol->positive);
  CHECK(sol->wronskian_drift < 1e-8);
  for (double rho : {0.5, 1.0, 5.0}) {
    // all samples stay O(e^{1.5}) here, so exp2 should never move
    const auto& s = *std::find_if(sol->samples.begin(), sol->samples.end(),
                                  [&](const ModeSample& m) { return std::fabs(m.rho - rho) < 1e-12; });
    REQUIRE(s.exp2 == 0);
    CHECK(s.phi * s.dpsi - s.psi * s.dphi == doctest::Approx(-1.0).epsilon(1e-9));
  }
}

TEST_CASE("solutions agree with a fixed-step reference integrator") {
  ModeODEParams p{0.16, 1, 2.0};
  const double w = 3.0;
  auto sol = solve_mode(p, w);
  REQUIRE(sol.ok());
  const auto& last = sol->samples.back();
  REQUIRE(last.exp2 == 0);
  const Rk4Ref ref = rk4_reference(p, w);
  CHECK(last.phi == doctest::Approx(ref.phi).epsilon(1e-8));
  CHECK(last.dphi == doctest::Approx(ref.dphi).epsilon(1e-8));
  CHECK(last.psi == doctest::Approx(ref.psi).epsilon(1e-8));
  CHECK(last.dpsi == doctest::Approx(ref.dpsi).epsilon(1e-8));
  CHECK(sol->log_mass_phi.back() == doctest::Approx(std::log(ref.mass_phi)).epsilon(1e-7));
  CHECK(sol->log_mass_psi.back() == doctest::Approx(std::log(ref.mass_psi)).epsilon(1e-7));
}

TEST_CASE("negative horizon exposes the parity of the pair") {
  ModeODEParams p{0.21, 0, 3.0};
  auto right = solve_mode(p, 1.5);
  auto left = solve_mode(p, -1.5);
  REQUIRE(right.ok());
  REQUIRE(left.ok());
  CHECK(right->positive);
  CHECK(left->positive);
  REQUIRE(left->samples.size() == right->samples.size());
  for (std::size_t i = 0; i < right->samples.size(); ++i) {
    const auto& r = right->samples[i];
    const auto& l = left->samples[i];
    REQUIRE(l.rho == doctest::Approx(-r.rho).epsilon(1e-15));
    REQUIRE(l.exp2 == 0);
    REQUIRE(r.exp2 == 0);
    CHECK(l.phi == doctest::Approx(-r.phi).epsilon(1e-10));
    CHECK(l.psi == doctest::Approx(r.psi).epsilon(1e-10));
  }
}

TEST_CASE("even solution grows at least like cosh(delta rho)") {
  // lambda = 1/4 - 0.09, so the comparison profile is cosh(0.3 rho)
  ModeODEParams p{0.16, 0, 1.0};
  auto sol = solve_mode(p, 4.0);
  REQUIRE(sol.ok());
  double prev = -1e300;
  for (const auto& s : sol->samples) {
    const double v = log_psi(s) - std::log(std::cosh(0.3 * s.rho));
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("rapidly growing modes stay finite in the rescaled frame") {
  ModeODEParams p{0.25, 8, 0.1};
  auto sol = solve_mode(p, 2.0);
  REQUIRE(sol.ok());
  CHECK(sol->positive);
  CHECK(sol->wronskian_drift < 1e-3);
  CHECK(sol->samples.back().exp2 > 400);
  const double lp = log_phi(sol->samples.back());
  CHECK(lp > 600.0);
  CHECK(lp < 800.0);
  // masses must be finite and non-decreasing along the horizon
  for (std::size_t i = 2; i < sol->log_mass_phi.size(); ++i) {
    CHECK(std::isfinite(sol->log_mass_phi[i]));
    CHECK(sol->log_mass_phi[i] >= sol->log_mass_phi[i - 1]);
    CHECK(sol->log_mass_psi[i] >= sol->log_mass_psi[i - 1]);
  }
}

TEST_CASE("solve_mode rejects bad parameters") {
  CHECK(solve_mode({0.1, 0, 0.0}, 1.0).error().code == Errc::invalid_argument);
  CHECK(solve_mode({0.1, -1, 1.0}, 1.0).error().code == Errc::invalid_argument);
  CHECK(solve_mode({0.1, 0, 1.0}, 0.0).error().code == Errc::invalid_argument);
}

TEST_CASE("mass cuts come back in caller order and increase with rho") {
  ModeODEParams p{0.2, 1, 1.5};
  auto cuts = mode_log_masses(p, {2.0, 0.5, 1.0});
  REQUIRE(cuts.ok());
  REQUIRE(cuts->size() == 3);
  CHECK((*cuts)[0].rho == 2.0);
  CHECK((*cuts)[1].rho == 0.5);
  CHECK((*cuts)[2].rho == 1.0);
  CHECK((*cuts)[1].log_phi2 < (*cuts)[2].log_phi2);
  CHECK((*cuts)[2].log_phi2 < (*cuts)[0].log_phi2);
  CHECK((*cuts)[1].log_psi2 < (*cuts)[2].log_psi2);

  const Rk4Ref ref = rk4_reference(p, 2.0);
  CHECK((*cuts)[0].log_phi2 == doctest::Approx(std::log(ref.mass_phi)).epsilon(1e-7));
  CHECK((*cuts)[0].log_psi2 == doctest::Approx(std::log(ref.mass_psi)).epsilon(1e-7));
}

TEST_CASE("mass ratio bound reproduces the closed forms") {
  auto b = mass_ratio_bound(0.16, 1.0, 3.0);
  REQUIRE(b.ok());
  CHECK(b->bound == doctest::Approx(0.2807405460735381).epsilon(1e-14));
  CHECK(b->asymptotic == doctest::Approx(0.6023884238244042).epsilon(1e-14));

  auto flat = mass_ratio_bound(0.25, 1.0, 2.0);
  REQUIRE(flat.ok());
  CHECK(flat->bound == doctest::Approx(0.5).epsilon(1e-15));

  auto quarter = mass_ratio_bound(0.25, 1.0, 4.0);
  REQUIRE(quarter.ok());
  CHECK(quarter->bound == doctest::Approx(0.25).epsilon(1e-15));

  for (double lam : {0.25, 0.16, 0.0, -2.0}) {
    auto eq = mass_ratio_bound(lam, 2.0, 2.0);
    REQUIRE(eq.ok());
    CHECK(eq->bound == doctest::Approx(1.0).epsilon(1e-15));
  }

  // deep below the threshold the sinh quotient must survive in log form
  auto deep = mass_ratio_bound(-400.0, 10.0, 20.0);
  REQUIRE(deep.ok());
  CHECK(std::isfinite(deep->bound));
  CHECK(deep->bound > 0.0);
  CHECK(deep->bound < 1e-100);

  CHECK(mass_ratio_bound(0.3, 1.0, 2.0).error().code == Errc::domain_error);
  CHECK(mass_ratio_bound(0.1, 0.0, 2.0).error().code == Errc::domain_error);
  CHECK(mass_ratio_bound(0.1, 3.0, 2.0).error().code == Errc::domain_error);
}

TEST_CASE("measured mass ratios respect the bound") {
  ModeODEParams p{0.16, 0, 2.0};
  auto rep = verify_mass_distribution(p, 1.0, 3.0, BoundaryCondition::interior);
  REQUIRE(rep.ok());
  CHECK(rep->ratio <= rep->bound + 1e-8);
  CHECK(rep->ratio_phi > 0.0);
  CHECK(rep->ratio_psi > 0.0);
  CHECK(rep->wronskian_drift < 1e-8);
  CHECK(rep->bound == doctest::Approx(0.2807405460735381).epsilon(1e-14));

  auto low = verify_mass_distribution({0.2, 0, 1.0}, 1.0, 2.0, BoundaryCondition::interior);
  REQUIRE(low.ok());
  CHECK(low->ratio <= low->bound + 1e-8);

  auto top = verify_mass_distribution({0.25, 3, 0.5}, 0.5, 4.0, BoundaryCondition::interior);
  REQUIRE(top.ok());
  CHECK(top->bound == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(top->ratio <= 0.125 + 1e-8);

  auto degen = verify_mass_distribution({0.1, 1, 1.0}, 2.0, 2.0, BoundaryCondition::neumann);
  REQUIRE(degen.ok());
  CHECK(degen->ratio == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(degen->bound == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("reported ratios are converged against step refinement") {
  ModeODEParams p{0.2, 0, 1.0};
  auto rep = verify_mass_distribution(p, 1.0, 2.0, BoundaryCondition::interior);
  REQUIRE(rep.ok());
  const Rk4Ref c1 = rk4_reference(p, 1.0, 4e-4), f1 = rk4_reference(p, 1.0, 2e-4);
  const Rk4Ref c2 = rk4_reference(p, 2.0, 4e-4), f2 = rk4_reference(p, 2.0, 2e-4);
  const double coarse = c1.mass_psi / c2.mass_psi;
  const double fine = f1.mass_psi / f2.mass_psi;
  CHECK(std::fabs(fine - coarse) < 1e-6);
  CHECK(rep->ratio_psi == doctest::Approx(fine).epsilon(1e-6));
}

TEST_CASE("odd-even product integrates to zero across the full collar") {
  ModeODEParams p{0.21, 1, 2.0};
  auto right = solve_mode(p, 2.0);
  auto left = solve_mode(p, -2.0);
  REQUIRE(right.ok());
  REQUIRE(left.ok());
  // trapezoid with unsigned spacing: equals the rho-integral on the right
  // half and its negative on the left half, so the two sum to zero
  auto cross = [](const ModeSolutionPair& s) {
    double acc = 0.0, scale = 0.0;
    for (std::size_t i = 1; i < s.samples.size(); ++i) {
      const auto &a = s.samples[i - 1], &b = s.samples[i];
      const double seg = std::fabs(b.rho - a.rho) * 0.5 * (a.phi * a.psi + b.phi * b.psi);
      acc += seg;
      scale += std::fabs(seg);
    }
    return std::pair{acc, scale};
  };
  const auto [pos, pos_scale] = cross(*right);
  const auto [neg, neg_scale] = cross(*left);
  // phi odd, psi even: the two half-integrals cancel exactly
  CHECK(std::fabs(pos + neg) < 1e-9 * (pos_scale + neg_scale));
}

TEST_CASE("mass ratios respect the bound across random parameters") {
  Rng rng(20260816);
  for (int trial = 0; trial < 200; ++trial) {
    ModeODEParams p;
    p.lambda = rng.uniform(0.0, 0.25);
    p.j = static_cast<int>(rng.below(9));
    p.ell = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    const double w1 = rng.uniform(0.2, 5.0);
    const double w2 = w1 + rng.uniform(0.0, 5.0);
    const auto bc = static_cast<BoundaryCondition>(rng.below(3));
    auto rep = verify_mass_distribution(p, w1, w2, bc);
    REQUIRE_MESSAGE(rep.ok(), (rep.ok() ? "" : rep.error().detail));
    CHECK(rep->ratio <= rep->bound + 1e-8);
    CHECK(rep->wronskian_drift < 1e-3);
  }
}

TEST_CASE("collar norm assembles mode masses with the right weights") {
  const double ell = 1.5, w = 2.0;
  std::vector<ModeSolutionPair> pairs;
  for (int j : {0, 1}) {
    auto sol = solve_mode({0.2, j, ell}, w);
    REQUIRE(sol.ok());
    pairs.push_back(*sol);
  }
  auto m0 = mode_log_masses({0.2, 0, ell}, {w});
  auto m1 = mode_log_masses({0.2, 1, ell}, {w});
  REQUIRE(m0.ok());
  REQUIRE(m1.ok());
  const double iphi0 = std::exp(m0->front().log_phi2), ipsi0 = std::exp(m0->front().log_psi2);
  const double iphi1 = std::exp(m1->front().log_phi2), ipsi1 = std::exp(m1->front().log_psi2);

  std::vector<ModeCoefficients> coeffs(2);
  coeffs[0] = {0.7, 1.3, 0.0, 0.0};
  coeffs[1] = {0.2, 0.4, -0.5, 0.1};

  auto interior = collar_norm(coeffs, pairs, ell, w, BoundaryCondition::interior);
  auto neumann = collar_norm(coeffs, pairs, ell, w, BoundaryCondition::neumann);
  auto dirichlet = collar_norm(coeffs, pairs, ell, w, BoundaryCondition::dirichlet);
  REQUIRE(interior.ok());
  REQUIRE(neumann.ok());
  REQUIRE(dirichlet.ok());

  const double want_int =
      2.0 * ell *
      (0.49 * iphi0 + 1.69 * ipsi0 + 0.5 * ((0.04 + 0.25) * iphi1 + (0.16 + 0.01) * ipsi1));
  const double want_neu = ell * (1.69 * ipsi0 + 0.5 * (0.16 + 0.01) * ipsi1);
  const double want_dir = ell * (0.49 * iphi0 + 0.5 * (0.04 + 0.25) * iphi1);
  CHECK(*interior == doctest::Approx(want_int).epsilon(1e-12));
  CHECK(*neumann == doctest::Approx(want_neu).epsilon(1e-12));
  CHECK(*dirichlet == doctest::Approx(want_dir).epsilon(1e-12));
  CHECK(*interior == doctest::Approx(2.0 * (*neumann + *dirichlet)).epsilon(1e-12));

  // against the fixed-step oracle: a pure psi_0 expansion under Neumann
  std::vector<ModeCoefficients> lone(1);
  lone[0].a_psi = 1.0;
  auto single = collar_norm(lone, {pairs[0]}, ell, w, BoundaryCondition::neumann);
  REQUIRE(single.ok());
  const Rk4Ref ref = rk4_reference({0.2, 0, ell}, w);
  CHECK(*single == doctest::Approx(ell * ref.mass_psi).epsilon(1e-7));
}

TEST_CASE("collar norm edge cases") {
  auto sol = solve_mode({0.2, 0, 1.0}, 1.0);
  REQUIRE(sol.ok());

  std::vector<ModeCoefficients> zero(1);
  auto none = collar_norm(zero, {*sol}, 1.0, 1.0, BoundaryCondition::interior);
  REQUIRE(none.ok());
  CHECK(*none == 0.0);

  std::vector<ModeCoefficients> coeffs(1);
  coeffs[0].a_phi = 1.0;
  auto far = collar_norm(coeffs, {*sol}, 1.0, 2.0, BoundaryCondition::interior);
  CHECK(far.error().code == Errc::horizon_too_short);

  auto mismatched = collar_norm({coeffs[0], coeffs[0]}, {*sol}, 1.0, 1.0, BoundaryCondition::interior);
  CHECK(mismatched.error().code == Errc::invalid_argument);
}

TEST_CASE("quotient comparison accepts ordered profiles and rejects swapped ones") {
  auto slow = [](double x) { return std::cosh(0.3 * x); };
  auto fast = [](double x) { return std::cosh(0.5 * x); };

  auto ok = integral_monotonicity_check(slow, fast, 1.0, 3.0);
  REQUIRE(ok.ok());
  CHECK(*ok);

  auto swapped = integral_monotonicity_check(fast, slow, 1.0, 3.0);
  CHECK(swapped.error().code == Errc::precondition_unmet);

  auto same = integral_monotonicity_check(slow, slow, 1.0, 3.0);
  REQUIRE(same.ok());
  CHECK(*same);

  CHECK(integral_monotonicity_check(slow, fast, 0.0, 3.0).error().code == Errc::invalid_argument);
}
