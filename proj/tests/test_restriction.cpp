/// @file test_restriction.cpp
/// @brief Tangential Laplacian candidates on the unit sphere against exact
///        Cartesian polynomial oracles, and the divergence non-inheritance
///        example.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mns/restriction.hpp"
#include "mns/testfields.hpp"

using namespace mns;

namespace {

OneFormField diff(const Geometry& G, const OneFormField& a, const OneFormField& b) {
  OneFormField d(a.n1, a.n2);
  for (int k = 0; k < G.size(); ++k) {
    d.c1[k] = a.c1[k] - b.c1[k];
    d.c2[k] = a.c2[k] - b.c2[k];
  }
  return d;
}

double l2_padded(const Geometry& G, const OneFormField& u, double pad = 0.12) {
  double s = 0.0;
  const auto& M = G.metric;
  for (int i = 0; i < G.grid.n1; ++i) {
    const double lo = G.spec.phi_min + pad;
    if (G.grid.x1[i] < lo || G.grid.x1[i] > kPi - lo) continue;
    for (int j = 0; j < G.grid.n2; ++j) {
      const int k = G.grid.idx(i, j);
      s += G.wq[k] * (M.gi11[k] * u.c1[k] * u.c1[k] +
                      2.0 * M.gi12[k] * u.c1[k] * u.c2[k] +
                      M.gi22[k] * u.c2[k] * u.c2[k]);
    }
  }
  return std::sqrt(s);
}

}  // namespace

// ============================================================================
// Polynomial oracle
// ============================================================================

TEST_CASE("poly3 arithmetic, differentiation, evaluation") {
  const Poly3 x = Poly3::monomial(1, 0, 0, 1.0);
  const Poly3 y = Poly3::monomial(0, 1, 0, 1.0);
  const Poly3 p = x * x * y + y.scaled(3.0);  // x^2 y + 3y
  CHECK(p.eval(2.0, 1.5, 0.0) == doctest::Approx(6.0 + 4.5));
  CHECK(p.diff(0).eval(2.0, 1.5, 0.0) == doctest::Approx(6.0));  // 2xy
  CHECK(p.diff(1).eval(2.0, 1.5, 0.0) == doctest::Approx(7.0));  // x^2 + 3
  CHECK(p.diff(2).is_zero());
  CHECK(p.degree() == 3);
}

TEST_CASE("cartesian laplacian oracle on the named examples") {
  {
    CartesianVectorPoly v{Poly3::monomial(0, 0, 1, 1.0), Poly3(), Poly3()};
    const CartesianVectorPoly lv = cartesian_laplacian_oracle(v);
    CHECK(lv.x.is_zero());
    CHECK(lv.y.is_zero());
    CHECK(lv.z.is_zero());
  }
  {
    CartesianVectorPoly v{Poly3::monomial(2, 0, 0, 1.0), Poly3(), Poly3()};
    const CartesianVectorPoly lv = cartesian_laplacian_oracle(v);
    CHECK(lv.x.eval(0.3, -0.4, 0.2) == doctest::Approx(2.0));
    CHECK(!divergence(v).is_zero());  // oracle-only field
  }
  {
    // v = (-yz, xz, 0): divergence-free with harmonic components.
    CartesianVectorPoly v{Poly3::monomial(0, 1, 1, -1.0),
                          Poly3::monomial(1, 0, 1, 1.0), Poly3()};
    CHECK(divergence(v).is_zero());
    const CartesianVectorPoly lv = cartesian_laplacian_oracle(v);
    CHECK(lv.x.is_zero());
    CHECK(lv.y.is_zero());
  }
}

// ============================================================================
// Tangential candidates
// ============================================================================

TEST_CASE("tangential hodge candidate: zero and Killing eigenrelation") {
  const ShellGrid S = make_shell_grid(96);
  const Geometry& G = S.sphere;
  {
    const OneFormField out = tangential_hodge_candidate(S, OneFormField(96, 96));
    CHECK(sup_norm(G, out, Region::chart) == 0.0);
  }
  {
    // v^T = (0, sin^2 phi): output -2 v^T at second order.
    const OneFormField killing = init_field(G, "killing", 0);
    const OneFormField out = tangential_hodge_candidate(S, killing);
    OneFormField expect(96, 96);
    for (int k = 0; k < G.size(); ++k) {
      expect.c1[k] = -2.0 * killing.c1[k];
      expect.c2[k] = -2.0 * killing.c2[k];
    }
    CHECK(l2_padded(G, diff(G, out, expect)) / l2_padded(G, expect) < 1e-3);
  }
}

TEST_CASE("tangential hodge candidate matches the intrinsic Hodge Laplacian") {
  std::vector<double> hs, errs;
  for (int n : {48, 96, 192}) {
    const ShellGrid S = make_shell_grid(n);
    const Geometry& G = S.sphere;
    const OneFormField vT = random_divfree_one_form(G, 41);
    const OneFormField cand = tangential_hodge_candidate(S, vT);
    const OneFormField intr = hodge_laplacian(G, vT);
    hs.push_back(G.grid.d1);
    errs.push_back(l2_norm(G, diff(G, cand, intr)) /
                   std::max(l2_norm(G, intr), 1e-30));
  }
  CHECK(convergence_order(hs, errs).order >= 1.9);
  CHECK(errs.back() < 5e-3);
}

TEST_CASE("bochner candidate and the curvature-sized disagreement") {
  const ShellGrid S = make_shell_grid(128);
  const Geometry& G = S.sphere;
  const OneFormField killing = init_field(G, "killing", 0);
  {
    const OneFormField b = tangential_bochner_candidate(S, killing);
    OneFormField expect(128, 128);
    for (int k = 0; k < G.size(); ++k) {
      expect.c1[k] = -killing.c1[k];
      expect.c2[k] = -killing.c2[k];
    }
    CHECK(l2_padded(G, diff(G, b, expect)) / l2_padded(G, expect) < 1e-3);
  }
  {
    // Delta_T^H - Delta_T^B = -Ric on divergence-free fields; the
    // disagreement itself is O(1), not a discretization artifact.
    const OneFormField h = tangential_hodge_candidate(S, killing);
    const OneFormField b = tangential_bochner_candidate(S, killing);
    const OneFormField ric = ricci_action(G, killing);
    OneFormField bw(128, 128), dis(128, 128);
    for (int k = 0; k < G.size(); ++k) {
      dis.c1[k] = h.c1[k] - b.c1[k];
      dis.c2[k] = h.c2[k] - b.c2[k];
      bw.c1[k] = dis.c1[k] + ric.c1[k];
      bw.c2[k] = dis.c2[k] + ric.c2[k];
    }
    const double nk = l2_padded(G, killing);
    CHECK(l2_padded(G, bw) / nk < 1e-3);        // BW consistency, O(h^2)
    CHECK(l2_padded(G, dis) / nk > 0.5);        // O(1) disagreement
  }
  {
    // The BW residual of the candidates is bounded by C h^2 on random
    // divergence-free data (large constant: the rotated-gradient fields
    // carry 1/sin^2 factors through two second-order operators).
    std::vector<double> hs, errs;
    for (int n : {64, 128, 256}) {
      const ShellGrid Sn = make_shell_grid(n);
      const Geometry& Gn = Sn.sphere;
      const OneFormField vT = random_divfree_one_form(Gn, 43);
      const OneFormField h = tangential_hodge_candidate(Sn, vT);
      const OneFormField b = tangential_bochner_candidate(Sn, vT);
      const OneFormField ric = ricci_action(Gn, vT);
      OneFormField bw(n, n);
      for (int k = 0; k < Gn.size(); ++k) {
        bw.c1[k] = h.c1[k] - b.c1[k] + ric.c1[k];
        bw.c2[k] = h.c2[k] - b.c2[k] + ric.c2[k];
      }
      hs.push_back(Gn.grid.d1);
      errs.push_back(l2_norm(Gn, bw) / std::max(l2_norm(Gn, vT), 1e-30));
      CHECK(errs.back() <= 500.0 * hs.back() * hs.back());
    }
    CHECK(convergence_order(hs, errs).order >= 1.8);
    CHECK(errs.front() > errs.back());
  }
}

// ============================================================================
// Full spherical display chain
// ============================================================================

TEST_CASE("spherical hodge display equals minus the Cartesian Laplacian") {
  // Divergence-free polynomial fields; the display is *d*dv, i.e. the
  // positive Hodge Laplacian, which is -Delta componentwise on R^3.
  const std::vector<CartesianVectorPoly> fields = {
      {Poly3::monomial(0, 1, 1, -1.0), Poly3::monomial(1, 0, 1, 1.0), Poly3()},
      {Poly3::monomial(2, 1, 0, 1.0), Poly3::monomial(1, 2, 0, -1.0), Poly3()},
      {Poly3::monomial(1, 0, 1, 2.0), Poly3(), Poly3::monomial(0, 0, 2, -1.0)},
  };
  for (const CartesianVectorPoly& v : fields) {
    REQUIRE(divergence(v).is_zero());
  }
  std::vector<double> hs, errs;
  for (int n : {48, 96, 192}) {
    const ShellGrid S = make_shell_grid(n);
    const Geometry& G = S.sphere;
    double worst = 0.0;
    for (const CartesianVectorPoly& v : fields) {
      const SphericalVectorField f = sample_cartesian(S, v);
      const FullHodgeDisplay disp = spherical_hodge_display(S, f);
      CartesianVectorPoly lap = cartesian_laplacian_oracle(v);
      lap.x = lap.x.scaled(-1.0);
      lap.y = lap.y.scaled(-1.0);
      lap.z = lap.z.scaled(-1.0);
      const SphericalVectorField expect = sample_cartesian(S, lap);
      OneFormField dang(n, n);
      ScalarField drad(n, n);
      double ref = 0.0;
      for (int k = 0; k < G.size(); ++k) {
        dang.c1[k] = disp.angular.c1[k] - expect.vphi[1].v[k];
        dang.c2[k] = disp.angular.c2[k] - expect.vtheta[1].v[k];
        drad.v[k] = disp.radial.v[k] - expect.vr[1].v[k];
        ref = std::max(ref, 1.0);
      }
      const double err = std::max(l2_norm(G, dang), l2_norm(G, drad)) / ref;
      worst = std::max(worst, err);
    }
    hs.push_back(S.sphere.grid.d1);
    errs.push_back(worst);
  }
  CHECK(convergence_order(hs, errs).order >= 1.9);
  CHECK(errs.back() < 5e-3);
}

// ============================================================================
// Divergence non-inheritance
// ============================================================================

TEST_CASE("surface divergence defect: rotation vs (z,0,0)") {
  const ShellGrid S = make_shell_grid(96);
  {
    // Rigid rotation restricts to a Killing (hence divergence-free) field.
    CartesianVectorPoly rot{Poly3::monomial(0, 1, 0, -1.0),
                            Poly3::monomial(1, 0, 0, 1.0), Poly3()};
    const DivergenceDefect d = surface_divergence_defect(S, rot);
    CHECK(d.ambient_div_sup == 0.0);
    CHECK(d.surface_div_sup < 1e-10);
  }
  {
    // v = (z, 0, 0): div_R3 v = 0 but div_S2 v^T = -3 sin cos phi cos theta.
    CartesianVectorPoly zf{Poly3::monomial(0, 0, 1, 1.0), Poly3(), Poly3()};
    const DivergenceDefect d = surface_divergence_defect(S, zf);
    CHECK(d.ambient_div_sup == 0.0);
    CHECK(d.surface_div_sup >= 0.1);
    const Geometry& G = S.sphere;
    double prof_err = 0.0;
    for (int i = 0; i < G.grid.n1; ++i)
      for (int j = 0; j < G.grid.n2; ++j) {
        const double expect = -3.0 * std::sin(G.grid.x1[i]) *
                              std::cos(G.grid.x1[i]) * std::cos(G.grid.x2[j]);
        prof_err = std::max(prof_err,
                            std::abs(d.surface_div.at(i, j) - expect));
      }
    CHECK(prof_err < 0.02);  // one-sided rows at the caps carry the C
    // The chart sees the full amplitude 3/2 at phi = pi/4.
    CHECK(d.surface_div_sup == doctest::Approx(1.5).epsilon(0.01));
  }
}

TEST_CASE("restriction report aggregates the section's findings") {
  const RestrictionReport rep = restriction_report(96, 0.3, 7);
  CHECK(rep.resolution == 96);
  CHECK(rep.bw_consistency_residual < 0.01);
  CHECK(rep.candidate_disagreement_l2 > 0.5);
  CHECK(rep.intrinsic_match_rel < 0.01);
  CHECK(rep.div_defect_sup >= 0.1);
  CHECK(rep.killing_div_sup < 1e-10);
}
