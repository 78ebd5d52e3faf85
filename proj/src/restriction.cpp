#include "mns/restriction.hpp"

#include <cmath>

#include "mns/testfields.hpp"

namespace mns {

// ---------------------------------------------------------------------------
// Poly3
// ---------------------------------------------------------------------------

Poly3 Poly3::monomial(int px, int py, int pz, double c) {
  Poly3 p;
  if (c != 0.0) p.c_[{px, py, pz}] = c;
  return p;
}

Poly3 Poly3::operator+(const Poly3& o) const {
  Poly3 r = *this;
  for (const auto& [k, v] : o.c_) {
    r.c_[k] += v;
    if (r.c_[k] == 0.0) r.c_.erase(k);
  }
  return r;
}

Poly3 Poly3::operator-(const Poly3& o) const { return *this + o.scaled(-1.0); }

Poly3 Poly3::operator*(const Poly3& o) const {
  Poly3 r;
  for (const auto& [ka, va] : c_)
    for (const auto& [kb, vb] : o.c_) {
      const Key k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]};
      if (k[0] + k[1] + k[2] > 24)
        throw UnsupportedInput("unsupported-input: polynomial degree overflow");
      r.c_[k] += va * vb;
    }
  return r;
}

Poly3 Poly3::scaled(double s) const {
  Poly3 r;
  if (s == 0.0) return r;
  for (const auto& [k, v] : c_) r.c_[k] = s * v;
  return r;
}

Poly3 Poly3::diff(int axis) const {
  Poly3 r;
  for (const auto& [k, v] : c_) {
    if (k[axis] == 0) continue;
    Key kk = k;
    kk[axis] -= 1;
    r.c_[kk] += v * k[axis];
  }
  return r;
}

double Poly3::eval(double x, double y, double z) const {
  double s = 0.0;
  for (const auto& [k, v] : c_)
    s += v * std::pow(x, k[0]) * std::pow(y, k[1]) * std::pow(z, k[2]);
  return s;
}

int Poly3::degree() const {
  int d = 0;
  for (const auto& [k, v] : c_) d = std::max(d, k[0] + k[1] + k[2]);
  return d;
}

bool Poly3::is_zero(double tol) const {
  for (const auto& [k, v] : c_)
    if (std::abs(v) > tol) return false;
  return true;
}

Poly3 divergence(const CartesianVectorPoly& v) {
  return v.x.diff(0) + v.y.diff(1) + v.z.diff(2);
}

CartesianVectorPoly cartesian_laplacian_oracle(const CartesianVectorPoly& v) {
  auto lap = [](const Poly3& p) {
    return p.diff(0).diff(0) + p.diff(1).diff(1) + p.diff(2).diff(2);
  };
  return {lap(v.x), lap(v.y), lap(v.z)};
}

// ---------------------------------------------------------------------------
// Shell sampling
// ---------------------------------------------------------------------------

ShellGrid make_shell_grid(int n, double phi_min) {
  ShellGrid S;
  ManifoldSpec spec;
  spec.kind = ManifoldKind::sphere;
  spec.a = 1.0;
  spec.phi_min = phi_min;
  S.sphere = build_geometry(spec, n);
  S.hr = S.sphere.grid.d1;
  S.r = {1.0 - S.hr, 1.0, 1.0 + S.hr};
  return S;
}

SphericalVectorField sample_cartesian(const ShellGrid& S,
                                      const CartesianVectorPoly& v) {
  const ChartGrid& g = S.sphere.grid;
  SphericalVectorField f;
  f.n1 = g.n1;
  f.n2 = g.n2;
  for (int s = 0; s < 3; ++s) {
    f.vr[s] = ScalarField(g.n1, g.n2);
    f.vphi[s] = ScalarField(g.n1, g.n2);
    f.vtheta[s] = ScalarField(g.n1, g.n2);
    const double r = S.r[s];
    for (int i = 0; i < g.n1; ++i) {
      const double phi = g.x1[i];
      const double sp = std::sin(phi), cp = std::cos(phi);
      for (int j = 0; j < g.n2; ++j) {
        const double th = g.x2[j];
        const double st = std::sin(th), ct = std::cos(th);
        const double x = r * sp * ct, y = r * sp * st, z = r * cp;
        const double a = v.x.eval(x, y, z);
        const double b = v.y.eval(x, y, z);
        const double c = v.z.eval(x, y, z);
        // Pullbacks of dx, dy, dz to spherical coordinates.
        f.vr[s].at(i, j) = a * sp * ct + b * sp * st + c * cp;
        f.vphi[s].at(i, j) = r * (a * cp * ct + b * cp * st - c * sp);
        f.vtheta[s].at(i, j) = r * sp * (-a * st + b * ct);
      }
    }
  }
  return f;
}

OneFormField tangential_part(const SphericalVectorField& v) {
  OneFormField u(v.n1, v.n2);
  u.c1 = v.vphi[1].v;
  u.c2 = v.vtheta[1].v;
  return u;
}

// ---------------------------------------------------------------------------
// Tangential candidates
// ---------------------------------------------------------------------------

OneFormField tangential_hodge_candidate(const ShellGrid& S, const OneFormField& vT) {
  const Geometry& G = S.sphere;
  const ChartGrid& g = G.grid;
  // Displayed truncation at r = 1:
  //   dphi:   -(d2^2 vphi - d2 d1 vtheta) / sin^2
  //   dtheta: (d1 vtheta - d2 vphi) cot - d1^2 vtheta + d1 d2 vphi
  const auto d2vphi = G.D2.apply(vT.c1);
  const auto d1vth = G.D1.apply(vT.c2);
  const auto d22vphi = G.D2.apply(d2vphi);
  const auto d21vth = G.D2.apply(d1vth);
  const auto d11vth = G.D1.apply(d1vth);
  const auto d12vphi = G.D1.apply(d2vphi);

  OneFormField out(vT.n1, vT.n2);
  for (int i = 0; i < g.n1; ++i) {
    const double sp = std::sin(g.x1[i]), cp = std::cos(g.x1[i]);
    for (int j = 0; j < g.n2; ++j) {
      const int k = g.idx(i, j);
      const double disp_phi = -(d22vphi[k] - d21vth[k]) / (sp * sp);
      const double disp_th =
          (d1vth[k] - d2vphi[k]) * (cp / sp) - d11vth[k] + d12vphi[k];
      // Sign aligned with Delta_H = -(d d* + d* d).
      out.c1[k] = -disp_phi;
      out.c2[k] = -disp_th;
    }
  }
  return out;
}

OneFormField tangential_hodge_candidate(const ShellGrid& S,
                                        const SphericalVectorField& v) {
  return tangential_hodge_candidate(S, tangential_part(v));
}

OneFormField tangential_bochner_candidate(const ShellGrid& S,
                                          const OneFormField& vT) {
  return bochner_laplacian(S.sphere, vT);
}

FullHodgeDisplay spherical_hodge_display(const ShellGrid& S,
                                         const SphericalVectorField& v) {
  const Geometry& G = S.sphere;
  const ChartGrid& g = G.grid;
  const double hr = S.hr;
  const int N = g.size();

  // Radial derivatives at r = 1 from the three shells.
  auto dr = [&](const std::array<ScalarField, 3>& f) {
    std::vector<double> out(N);
    for (int k = 0; k < N; ++k) out[k] = (f[2].v[k] - f[0].v[k]) / (2.0 * hr);
    return out;
  };
  auto drr = [&](const std::array<ScalarField, 3>& f) {
    std::vector<double> out(N);
    for (int k = 0; k < N; ++k)
      out[k] = (f[2].v[k] - 2.0 * f[1].v[k] + f[0].v[k]) / (hr * hr);
    return out;
  };

  const auto dr_vphi = dr(v.vphi), drr_vphi = drr(v.vphi);
  const auto dr_vth = dr(v.vtheta), drr_vth = drr(v.vtheta);
  const auto dr_vr = dr(v.vr);
  const auto d1_vr = G.D1.apply(v.vr[1].v), d2_vr = G.D2.apply(v.vr[1].v);
  const auto d1_dr_vr = G.D1.apply(dr_vr), d2_dr_vr = G.D2.apply(dr_vr);
  const auto d11_vr = G.D1.apply(d1_vr), d22_vr = G.D2.apply(d2_vr);
  const auto d1_vphi = G.D1.apply(v.vphi[1].v), d2_vphi = G.D2.apply(v.vphi[1].v);
  const auto d1_vth = G.D1.apply(v.vtheta[1].v), d2_vth = G.D2.apply(v.vtheta[1].v);
  const auto d22_vphi = G.D2.apply(d2_vphi);
  const auto d21_vth = G.D2.apply(d1_vth);
  const auto d11_vth = G.D1.apply(d1_vth);
  const auto d12_vphi = G.D1.apply(d2_vphi);
  const auto d1_dr_vphi = G.D1.apply(dr_vphi);
  const auto d2_dr_vth = G.D2.apply(dr_vth);

  FullHodgeDisplay out;
  out.angular = OneFormField(g.n1, g.n2);
  out.radial = ScalarField(g.n1, g.n2);
  const double r = 1.0, r2 = 1.0;
  for (int i = 0; i < g.n1; ++i) {
    const double sp = std::sin(g.x1[i]), cp = std::cos(g.x1[i]);
    for (int j = 0; j < g.n2; ++j) {
      const int k = g.idx(i, j);
      const double comp_phi =
          -(1.0 / sp) * ((drr_vphi[k] - d1_dr_vr[k]) * sp +
                         (d22_vphi[k] - d21_vth[k]) / (r2 * sp));
      const double comp_th =
          sp * ((d2_dr_vr[k] - drr_vth[k]) / sp +
                (d1_vth[k] - d2_vphi[k]) * cp / (r2 * sp * sp) -
                (d11_vth[k] - d12_vphi[k]) / (r2 * sp));
      const double comp_r =
          (1.0 / (r2 * sp)) * ((d1_dr_vphi[k] - d11_vr[k]) * sp +
                               (dr_vphi[k] - d1_vr[k]) * cp +
                               (d2_dr_vth[k] - d22_vr[k]) / sp);
      out.angular.c1[k] = comp_phi;
      out.angular.c2[k] = comp_th;
      out.radial.v[k] = comp_r;
      (void)r;
    }
  }
  return out;
}

DivergenceDefect surface_divergence_defect(const ShellGrid& S,
                                           const CartesianVectorPoly& v) {
  DivergenceDefect out;
  const Poly3 div3 = divergence(v);
  for (const auto& [k, c] : div3.terms())
    out.ambient_div_sup = std::max(out.ambient_div_sup, std::abs(c));

  const SphericalVectorField f = sample_cartesian(S, v);
  const OneFormField vT = tangential_part(f);
  // Intrinsic surface divergence; the analytic codifferential path is
  // second-order accurate up to the chart edges.
  const ScalarField delta = codifferential_1_analytic(S.sphere, vT);
  out.surface_div = ScalarField(vT.n1, vT.n2);
  for (int k = 0; k < S.sphere.size(); ++k) out.surface_div.v[k] = -delta.v[k];
  out.surface_div_sup = sup_norm(S.sphere, out.surface_div, Region::chart);
  return out;
}

RestrictionReport restriction_report(int n, double phi_min, uint64_t seed) {
  RestrictionReport rep;
  rep.resolution = n;
  const ShellGrid S = make_shell_grid(n, phi_min);
  const Geometry& G = S.sphere;

  // Killing data: rigid rotation about the z axis.
  const OneFormField killing = init_field(G, "killing", seed);
  const OneFormField hodge_c = tangential_hodge_candidate(S, killing);
  const OneFormField boch_c = tangential_bochner_candidate(S, killing);
  const OneFormField ric = ricci_action(G, killing);
  OneFormField diff(n, n), bw(n, n);
  for (int k = 0; k < G.size(); ++k) {
    diff.c1[k] = hodge_c.c1[k] - boch_c.c1[k];
    diff.c2[k] = hodge_c.c2[k] - boch_c.c2[k];
    bw.c1[k] = diff.c1[k] + ric.c1[k];
    bw.c2[k] = diff.c2[k] + ric.c2[k];
  }
  const double nk = l2_norm(G, killing);
  rep.candidate_disagreement_l2 = l2_norm(G, diff) / nk;
  rep.bw_consistency_residual = l2_norm(G, bw) / nk;

  // Cap-supported divergence-free data: candidate vs intrinsic Hodge.
  const OneFormField vT = random_divfree_one_form(G, seed);
  const OneFormField cand = tangential_hodge_candidate(S, vT);
  const OneFormField intrinsic = hodge_laplacian(G, vT);
  OneFormField mis(n, n);
  for (int k = 0; k < G.size(); ++k) {
    mis.c1[k] = cand.c1[k] - intrinsic.c1[k];
    mis.c2[k] = cand.c2[k] - intrinsic.c2[k];
  }
  const double ni = l2_norm(G, intrinsic);
  rep.intrinsic_match_rel = ni > 0 ? l2_norm(G, mis) / ni : l2_norm(G, mis);

  // Divergence defects: (z,0,0) versus the rigid rotation (-y, x, 0).
  CartesianVectorPoly zfield{Poly3::monomial(0, 0, 1, 1.0), Poly3(), Poly3()};
  rep.div_defect_sup = surface_divergence_defect(S, zfield).surface_div_sup;
  CartesianVectorPoly rot{Poly3::monomial(0, 1, 0, -1.0),
                          Poly3::monomial(1, 0, 0, 1.0), Poly3()};
  rep.killing_div_sup = surface_divergence_defect(S, rot).surface_div_sup;
  return rep;
}

}  // namespace mns
