/// @file test_solver.cpp
/// @brief Leray projection, viscosity operators, IMEX stepping and energy
///        ledgers against analytic decay/conservation oracles.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mns/solver.hpp"
#include "mns/testfields.hpp"

using namespace mns;

namespace {

ManifoldSpec torus_spec() { return {ManifoldKind::torus, 1.0, 0.3, 0.99}; }
ManifoldSpec sphere_spec(double a = 1.0) {
  return {ManifoldKind::sphere, a, 0.3, 0.99};
}
ManifoldSpec hyperbolic_spec(double a = 1.0) {
  return {ManifoldKind::hyperbolic, a, 0.3, 0.99};
}

OneFormField diff(const Geometry& G, const OneFormField& a, const OneFormField& b) {
  OneFormField d(a.n1, a.n2);
  for (int k = 0; k < G.size(); ++k) {
    d.c1[k] = a.c1[k] - b.c1[k];
    d.c2[k] = a.c2[k] - b.c2[k];
  }
  return d;
}

OneFormField scaled(const Geometry& G, const OneFormField& a, double s) {
  OneFormField d(a.n1, a.n2);
  for (int k = 0; k < G.size(); ++k) {
    d.c1[k] = s * a.c1[k];
    d.c2[k] = s * a.c2[k];
  }
  return d;
}

double l2_report_rel(const Geometry& G, const OneFormField& a,
                     const OneFormField& b) {
  return l2_norm(G, diff(G, a, b), Region::report) /
         std::max(l2_norm(G, b, Region::report), 1e-30);
}

// Padded region for Killing-field comparisons (adjoint boundary rows carry
// the chart flux).
double l2_padded(const Geometry& G, const OneFormField& u) {
  double s = 0.0;
  const auto& M = G.metric;
  for (int i = 0; i < G.grid.n1; ++i) {
    if (G.spec.kind == ManifoldKind::sphere) {
      const double pad = G.spec.phi_min + 0.12;
      if (G.grid.x1[i] < pad || G.grid.x1[i] > kPi - pad) continue;
    }
    for (int j = 0; j < G.grid.n2; ++j) {
      const int k = G.grid.idx(i, j);
      if (!G.grid.in_report[k]) continue;
      s += G.wq[k] * (M.gi11[k] * u.c1[k] * u.c1[k] +
                      2.0 * M.gi12[k] * u.c1[k] * u.c2[k] +
                      M.gi22[k] * u.c2[k] * u.c2[k]);
    }
  }
  return std::sqrt(s);
}

}  // namespace

// ============================================================================
// Leray projection
// ============================================================================

TEST_CASE("leray: pure gradients project to zero") {
  for (const ManifoldSpec& spec :
       {torus_spec(), sphere_spec(), hyperbolic_spec()}) {
    const Geometry G = build_geometry(spec, 48);
    ScalarField q = random_stream(G, 17);
    // Keep q inside the pressure test space.
    for (int k = 0; k < G.size(); ++k)
      if (!G.grid.in_adj[k]) q.v[k] = 0.0;
    const OneFormField w = exterior_d0(G, q);
    const LerayResult pr = leray_project(G, w);
    CHECK(l2_norm(G, pr.u, Region::chart) < 1e-8 * (1.0 + l2_norm(G, w, Region::chart)));
    // p recovers q up to its mean.
    double qm = 0.0, wsum = 0.0;
    for (int k = 0; k < G.size(); ++k) {
      if (!G.grid.in_adj[k]) continue;
      qm += G.wq[k] * q.v[k];
      wsum += G.wq[k];
    }
    qm /= wsum;
    double sup = 0.0;
    for (int k = 0; k < G.size(); ++k)
      if (G.grid.in_adj[k])
        sup = std::max(sup, std::abs(pr.p.v[k] - (q.v[k] - qm)));
    CHECK(sup < 1e-7 * (1.0 + sup_norm(G, q, Region::chart)));
  }
}

TEST_CASE("leray: divergence-free input is fixed, projection is idempotent") {
  for (const ManifoldSpec& spec :
       {torus_spec(), sphere_spec(), hyperbolic_spec()}) {
    const Geometry G = build_geometry(spec, 48);
    const OneFormField w = random_divfree_one_form(G, 19);
    const LerayResult pr = leray_project(G, w);
    CHECK(l2_norm(G, diff(G, pr.u, w), Region::chart) <
          1e-9 * std::max(1.0, l2_norm(G, w, Region::chart)));

    const OneFormField mixed = random_one_form(G, 20);
    const LerayResult p1 = leray_project(G, mixed);
    const LerayResult p2 = leray_project(G, p1.u);
    CHECK(l2_norm(G, diff(G, p2.u, p1.u), Region::chart) <
          1e-9 * std::max(1.0, l2_norm(G, mixed, Region::chart)));
    // Divergence invariant.
    const double nrm = l2_norm(G, p1.u, Region::chart);
    CHECK(l2_norm(G, codifferential_1(G, p1.u), Region::chart) <=
          1e-8 * std::max(nrm, 1e-14));
  }
}

TEST_CASE("leray: harmonic differentials survive projection") {
  const Geometry G = build_geometry(hyperbolic_spec(), 128);
  {
    // Uncut dF: the flux rows sit outside the pressure support, so the
    // projection fixes it to solver tolerance.
    const OneFormField df = init_field(G, "harmonic-dF", 0);
    const LerayResult pr = leray_project(G, df);
    CHECK(l2_report_rel(G, pr.u, df) < 1e-9);
  }
  {
    // chi-cut dF: the cut introduces divergence in the transition band; the
    // harmonic part still survives on the chi = 1 region within 2%.
    OneFormField w = init_field(G, "harmonic-dF", 0);
    for (int k = 0; k < G.size(); ++k) {
      w.c1[k] *= G.grid.cutoff.v[k];
      w.c2[k] *= G.grid.cutoff.v[k];
    }
    const LerayResult pr = leray_project(G, w);
    const OneFormField df = init_field(G, "harmonic-dF", 0);
    CHECK(l2_report_rel(G, pr.u, df) < 0.02);
  }
}

// ============================================================================
// Viscosity operators
// ============================================================================

TEST_CASE("apply_viscosity: flat coincidence of the three candidates") {
  const Geometry G = build_geometry(torus_spec(), 96);
  const OneFormField u = random_divfree_one_form(G, 23);
  const OneFormField h = apply_viscosity(G, u, ViscosityChoice::hodge);
  const OneFormField b = apply_viscosity(G, u, ViscosityChoice::bochner);
  const OneFormField d = apply_viscosity(G, u, ViscosityChoice::deformation);
  const double nh = l2_norm(G, h);
  CHECK(l2_norm(G, diff(G, h, b)) / nh < 5e-3);
  CHECK(l2_norm(G, diff(G, h, d)) / nh < 1e-12);  // Ric = 0: same operator
}

TEST_CASE("apply_viscosity: sphere Killing eigenvalues") {
  const double a = 1.0;
  const Geometry G = build_geometry(sphere_spec(a), 128);
  const OneFormField u = init_field(G, "killing", 0);
  const double nu_ref = l2_padded(G, u);
  const OneFormField h = apply_viscosity(G, u, ViscosityChoice::hodge);
  const OneFormField b = apply_viscosity(G, u, ViscosityChoice::bochner);
  const OneFormField d = apply_viscosity(G, u, ViscosityChoice::deformation);
  CHECK(l2_padded(G, diff(G, h, scaled(G, u, -2.0 * a * a))) / nu_ref < 5e-3);
  CHECK(l2_padded(G, diff(G, b, scaled(G, u, -a * a))) / nu_ref < 5e-3);
  CHECK(l2_padded(G, d) / nu_ref < 5e-3);
}

TEST_CASE("apply_viscosity: hyperbolic harmonic-form eigenvalues") {
  const double a = 1.0;
  const Geometry G = build_geometry(hyperbolic_spec(a), 128);
  const OneFormField u = init_field(G, "harmonic-dF", 0);
  const double nu_ref = l2_norm(G, u, Region::report);
  const OneFormField h = apply_viscosity(G, u, ViscosityChoice::hodge);
  const OneFormField b = apply_viscosity(G, u, ViscosityChoice::bochner);
  const OneFormField d = apply_viscosity(G, u, ViscosityChoice::deformation);
  CHECK(l2_norm(G, h, Region::report) / nu_ref < 1e-12);
  CHECK(l2_norm(G, diff(G, b, scaled(G, u, -a * a)), Region::report) / nu_ref < 5e-3);
  CHECK(l2_norm(G, diff(G, d, scaled(G, u, -2.0 * a * a)), Region::report) / nu_ref <
        1e-12);
}

// ============================================================================
// Advection
// ============================================================================

TEST_CASE("advect: zero field and x1-independent flat mode") {
  const Geometry G = build_geometry(torus_spec(), 48);
  CHECK(sup_norm(G, advect(G, OneFormField(48, 48)), Region::chart) == 0.0);
  const OneFormField u = init_field(G, "mode", 0);
  CHECK(sup_norm(G, advect(G, u), Region::chart) < 1e-13);
}

TEST_CASE("advect: Killing self-advection is a pure gradient") {
  const double a = 1.0;
  const Geometry G = build_geometry(sphere_spec(a), 96);
  const OneFormField u = init_field(G, "killing", 0);
  const OneFormField adv = advect(G, u);
  // nabla_u u = -1/2 d |u|^2.
  ScalarField half_u2(96, 96);
  const auto& M = G.metric;
  for (int k = 0; k < G.size(); ++k) {
    const double m = M.gi22[k] * u.c2[k] * u.c2[k];
    half_u2.v[k] = -0.5 * m;
  }
  const OneFormField grad = exterior_d0(G, half_u2);
  CHECK(l2_padded(G, diff(G, adv, grad)) / std::max(l2_padded(G, grad), 1e-30) <
        5e-3);
  // The projection therefore absorbs the nonlinear term.
  const LerayResult pr = leray_project(G, adv);
  CHECK(l2_norm(G, pr.u, Region::chart) / l2_norm(G, adv, Region::chart) < 0.02);
}

// ============================================================================
// Stepping
// ============================================================================

TEST_CASE("step: zero state stays zero") {
  const Geometry G = build_geometry(torus_spec(), 32);
  SolverConfig cfg;
  cfg.spec = torus_spec();
  cfg.n = 32;
  FlowState s;
  s.u = OneFormField(32, 32);
  s.p = ScalarField(32, 32);
  EnergyLedger led;
  const FlowState next = step(G, s, cfg, led);
  CHECK(l2_norm(G, next.u, Region::chart) == 0.0);
  CHECK(next.t == doctest::Approx(cfg.dt));
}

TEST_CASE("step: hodge viscosity freezes the harmonic form") {
  const Geometry G = build_geometry(hyperbolic_spec(), 128);
  SolverConfig cfg;
  cfg.spec = hyperbolic_spec();
  cfg.n = 128;
  cfg.choice = ViscosityChoice::hodge;
  FlowState s;
  s.u = init_field(G, "harmonic-dF", 0);
  s.p = ScalarField(128, 128);
  EnergyLedger led;
  const FlowState next = step(G, s, cfg, led);
  CHECK(l2_report_rel(G, next.u, s.u) < 1e-8);
}

TEST_CASE("step: single-step consistency with the heat factor") {
  const Geometry G = build_geometry(torus_spec(), 128);
  SolverConfig cfg;
  cfg.spec = torus_spec();
  cfg.n = 128;
  cfg.dt = 1e-3;
  cfg.choice = ViscosityChoice::hodge;
  FlowState s;
  s.u = init_field(G, "mode", 0);
  s.p = ScalarField(128, 128);
  EnergyLedger led;
  const FlowState next = step(G, s, cfg, led);
  const double ratio =
      l2_norm(G, next.u, Region::chart) / l2_norm(G, s.u, Region::chart);
  // Implicit Euler on the unit eigenmode: O(dt^2) + O(h^2 dt).
  CHECK(std::abs(ratio - std::exp(-cfg.dt)) < 5e-6);
}

// ============================================================================
// Full runs
// ============================================================================

TEST_CASE("run: torus single-mode heat decay matches the exponential") {
  SolverConfig cfg;
  cfg.spec = torus_spec();
  cfg.n = 96;
  cfg.dt = 1e-3;
  cfg.T = 0.2;
  cfg.init = "mode";
  for (ViscosityChoice c : {ViscosityChoice::hodge, ViscosityChoice::bochner,
                            ViscosityChoice::deformation}) {
    cfg.choice = c;
    const RunResult rr = run(cfg);
    REQUIRE(rr.completed);
    const double ratio = rr.ledger.rows.back().E / rr.ledger.rows.front().E;
    CHECK(std::abs(ratio - std::exp(-2.0 * cfg.T)) < 0.02 * std::exp(-2.0 * cfg.T));
  }
}

TEST_CASE("run: the three viscosity choices coincide on flat data") {
  SolverConfig cfg;
  cfg.spec = torus_spec();
  cfg.n = 48;
  cfg.dt = 1e-3;
  cfg.T = 0.03;
  cfg.init = "random";
  cfg.seed = 5;
  std::vector<OneFormField> finals;
  for (ViscosityChoice c : {ViscosityChoice::hodge, ViscosityChoice::bochner,
                            ViscosityChoice::deformation}) {
    cfg.choice = c;
    const RunResult rr = run(cfg);
    REQUIRE(rr.completed);
    finals.push_back(rr.state.u);
  }
  const Geometry G = build_geometry(cfg.spec, cfg.n);
  CHECK(l2_norm(G, diff(G, finals[0], finals[1]), Region::chart) < 1e-9);
  CHECK(l2_norm(G, diff(G, finals[0], finals[2]), Region::chart) < 1e-9);
}

TEST_CASE("run: discrete energy identity with manufactured forcing") {
  for (const ManifoldSpec& spec :
       {torus_spec(), sphere_spec(), hyperbolic_spec()}) {
    for (ViscosityChoice c : {ViscosityChoice::hodge, ViscosityChoice::bochner,
                              ViscosityChoice::deformation}) {
      SolverConfig cfg;
      cfg.spec = spec;
      cfg.n = 48;
      cfg.dt = 1e-3;
      cfg.T = 0.05;
      cfg.choice = c;
      cfg.forcing = "manufactured";
      cfg.init = "random";
      cfg.seed = 3;
      const RunResult rr = run(cfg);
      REQUIRE(rr.completed);
      const auto& rows = rr.ledger.rows;
      double diss = 0.0, f2 = 0.0;
      for (size_t j = 1; j < rows.size(); ++j) {
        const double d = c == ViscosityChoice::hodge
                             ? rows[j].Dd
                             : (c == ViscosityChoice::bochner ? rows[j].G
                                                              : rows[j].Ddef);
        diss += cfg.dt * cfg.nu * d;
        f2 += cfg.dt;  // forcing amplitude is O(1)
      }
      const double defect =
          std::abs(rows.back().E - rows.front().E - rows.back().W + diss);
      const double scale = rows.front().E + rows.back().E + f2 + 1.0;
      const double h = build_geometry(spec, cfg.n).grid.d1;
      CHECK(defect <= 5.0 * (cfg.dt + h * h) * scale);
    }
  }
}

TEST_CASE("run: hodge conserves harmonic energy, deformation decays at 4a^2") {
  SolverConfig cfg;
  cfg.spec = hyperbolic_spec();
  cfg.n = 96;
  cfg.dt = 1e-3;
  cfg.T = 0.2;
  cfg.init = "harmonic-dF";
  {
    cfg.choice = ViscosityChoice::hodge;
    const RunResult rr = run(cfg);
    REQUIRE(rr.completed);
    const double drift =
        std::abs(rr.ledger.rows.back().E / rr.ledger.rows.front().E - 1.0);
    CHECK(drift < 1e-10);
    CHECK(rr.ledger.rows.back().G > 0.0);
  }
  {
    cfg.choice = ViscosityChoice::deformation;
    const RunResult rr = run(cfg);
    REQUIRE(rr.completed);
    const double rate = fitted_decay_rate(rr.ledger);
    CHECK(rate == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("run: CFL violation is recorded for nonlinear runs") {
  SolverConfig cfg;
  cfg.spec = torus_spec();
  cfg.n = 32;
  cfg.dt = 1.0;  // far beyond the advective limit
  cfg.T = 1.0;
  cfg.init = "mode";
  cfg.nonlinear = true;
  const RunResult rr = run(cfg);
  bool found = false;
  for (const auto& w : rr.ledger.warnings)
    if (w.find("cfl") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("ledger CSV format") {
  EnergyLedger led;
  led.rows.push_back({0.0, 1.0, 2.0, 3.0, 4.0, 0.0});
  led.rows.push_back({0.5, 0.5, 1.0, 1.5, 2.0, 0.25});
  const std::string csv = led.to_csv();
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,E,G,Dd,Ddef,W");
  std::string row;
  std::getline(in, row);
  CHECK(row.find("0.000000000000e+00") == 0);
  int rows = 1;
  while (std::getline(in, row)) ++rows;
  CHECK(rows == 2);
}

// ============================================================================
// The explicit weak solution (global energy equality failure)
// ============================================================================

TEST_CASE("energy equality experiment reproduces the closed forms") {
  const double T = 1.0, r0 = 0.99;
  const EnergyEqualityResult res =
      energy_equality_experiment(hyperbolic_spec(), 128, T, 200);

  // E(t) = (8/9) t^{3/2} ||dF||^2 (proportionality is exact in the build).
  for (size_t k = 1; k < res.ledger.rows.size(); k += 37) {
    const auto& row = res.ledger.rows[k];
    const double expect = (8.0 / 9.0) * std::pow(row.t, 1.5) * res.df_norm2;
    CHECK(row.E == doctest::Approx(expect).epsilon(1e-12));
  }
  // Work equals energy up to the time-quadrature error.
  CHECK(std::abs(res.E_T - res.W_T) / res.E_T < 1e-3);
  // Hodge dissipation vanishes on harmonic data ...
  CHECK(res.ledger.rows.back().Dd < 1e-20);
  // ... while the gradient dissipation is strictly positive:
  // D(T) = (32/45) T^{5/2} pi r0^4.
  const double expectD = (32.0 / 45.0) * std::pow(T, 2.5) * kPi * std::pow(r0, 4);
  CHECK(res.D_T > 0.0);
  CHECK(res.D_T == doctest::Approx(expectD).epsilon(0.02));
}

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  cfg.spec = torus_spec();
  cfg.dt = -1.0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArguments);
  cfg.dt = 1e-3;
  cfg.n = 4;
  CHECK_THROWS_AS(cfg.validate(), InvalidResolution);
  CHECK_THROWS_AS(viscosity_from_string("fancy"), InvalidArguments);
  CHECK(to_string(viscosity_from_string("deformation")) == "deformation");
}
