#include "mns/operators.hpp"

#include <algorithm>
#include <cmath>

namespace mns {

namespace {

// Mass-weighted contravariant components w_q g^{ij} u_j.
void mass_one_form(const Geometry& G, const OneFormField& u, std::vector<double>& m1,
                   std::vector<double>& m2) {
  const int N = G.size();
  m1.resize(N);
  m2.resize(N);
  const auto& M = G.metric;
  for (int k = 0; k < N; ++k) {
    m1[k] = G.wq[k] * (M.gi11[k] * u.c1[k] + M.gi12[k] * u.c2[k]);
    m2[k] = G.wq[k] * (M.gi12[k] * u.c1[k] + M.gi22[k] * u.c2[k]);
  }
}

const std::vector<uint8_t>& region_mask(const Geometry& G, Region r) {
  return r == Region::chart ? G.grid.in_chart : G.grid.in_report;
}

}  // namespace

OneFormField exterior_d0(const Geometry& G, const ScalarField& f) {
  OneFormField u(f.n1, f.n2);
  G.D1.apply(f.v, u.c1);
  G.D2.apply(f.v, u.c2);
  return u;
}

TwoFormField exterior_d1(const Geometry& G, const OneFormField& u) {
  TwoFormField w(u.n1, u.n2);
  std::vector<double> a = G.D1.apply(u.c2);
  std::vector<double> b = G.D2.apply(u.c1);
  for (int k = 0; k < w.size(); ++k) w.w[k] = a[k] - b[k];
  return w;
}

ScalarField codifferential_1(const Geometry& G, const OneFormField& u) {
  const int N = G.size();
  std::vector<double> m1, m2;
  mass_one_form(G, u, m1, m2);
  std::vector<double> t1 = G.D1t.apply(m1);
  std::vector<double> t2 = G.D2t.apply(m2);
  ScalarField out(u.n1, u.n2);
  for (int k = 0; k < N; ++k) {
    if (G.grid.in_adj[k] && G.wq[k] > 0.0) out.v[k] = (t1[k] + t2[k]) / G.wq[k];
  }
  return out;
}

OneFormField codifferential_2(const Geometry& G, const TwoFormField& w) {
  const int N = G.size();
  // 2-form mass: w_q |g|^{-1} = d1 d2 tau / sqrt|g|.
  std::vector<double> mw(N, 0.0);
  for (int k = 0; k < N; ++k) {
    const double sd = G.metric.sqrt_det[k];
    if (G.wq[k] > 0.0) mw[k] = G.wq[k] / (sd * sd) * w.w[k];
  }
  std::vector<double> t1 = G.D1t.apply(mw);
  std::vector<double> t2 = G.D2t.apply(mw);
  OneFormField out(w.n1, w.n2);
  const auto& M = G.metric;
  for (int k = 0; k < N; ++k) {
    if (G.wq[k] <= 0.0) continue;
    // w_q g^{ij} (delta2 w)_j = (-t2, t1); lower with the metric.
    const double a1 = -t2[k] / G.wq[k];
    const double a2 = t1[k] / G.wq[k];
    out.c1[k] = M.g11[k] * a1 + M.g12[k] * a2;
    out.c2[k] = M.g12[k] * a1 + M.g22[k] * a2;
  }
  return out;
}

ScalarField codifferential_1_analytic(const Geometry& G, const OneFormField& u) {
  const int N = G.size();
  std::vector<double> f1(N, 0.0), f2(N, 0.0);
  const auto& M = G.metric;
  for (int k = 0; k < N; ++k) {
    f1[k] = M.sqrt_det[k] * (M.gi11[k] * u.c1[k] + M.gi12[k] * u.c2[k]);
    f2[k] = M.sqrt_det[k] * (M.gi12[k] * u.c1[k] + M.gi22[k] * u.c2[k]);
  }
  std::vector<double> a = G.D1.apply(f1);
  std::vector<double> b = G.D2.apply(f2);
  ScalarField out(u.n1, u.n2);
  for (int k = 0; k < N; ++k) {
    if (G.grid.in_chart[k]) out.v[k] = -(a[k] + b[k]) / M.sqrt_det[k];
  }
  return out;
}

Tensor2Field covariant_derivative(const Geometry& G, const OneFormField& u) {
  Tensor2Field t(u.n1, u.n2);
  G.D1.apply(u.c1, t.t11);
  G.D1.apply(u.c2, t.t12);
  G.D2.apply(u.c1, t.t21);
  G.D2.apply(u.c2, t.t22);
  const auto& C = G.gamma;
  const int N = G.size();
  for (int k = 0; k < N; ++k) {
    t.t11[k] -= C.g111[k] * u.c1[k] + C.g211[k] * u.c2[k];
    t.t12[k] -= C.g112[k] * u.c1[k] + C.g212[k] * u.c2[k];  // nabla_1 u_2
    t.t21[k] -= C.g112[k] * u.c1[k] + C.g212[k] * u.c2[k];  // nabla_2 u_1
    t.t22[k] -= C.g122[k] * u.c1[k] + C.g222[k] * u.c2[k];
  }
  return t;
}

SymTensorField deformation(const Geometry& G, const OneFormField& u) {
  const Tensor2Field t = covariant_derivative(G, u);
  SymTensorField s(u.n1, u.n2);
  const int N = G.size();
  for (int k = 0; k < N; ++k) {
    s.s11[k] = t.t11[k];
    s.s12[k] = 0.5 * (t.t12[k] + t.t21[k]);
    s.s22[k] = t.t22[k];
  }
  return s;
}

OneFormField def_adjoint(const Geometry& G, const SymTensorField& S) {
  const int N = G.size();
  // P^{ij} = w_q g^{ia} S_ab g^{bj} (symmetric).
  std::vector<double> p11(N, 0.0), p12(N, 0.0), p22(N, 0.0);
  const auto& M = G.metric;
  for (int k = 0; k < N; ++k) {
    const double a11 = M.gi11[k] * S.s11[k] + M.gi12[k] * S.s12[k];
    const double a12 = M.gi11[k] * S.s12[k] + M.gi12[k] * S.s22[k];
    const double a21 = M.gi12[k] * S.s11[k] + M.gi22[k] * S.s12[k];
    const double a22 = M.gi12[k] * S.s12[k] + M.gi22[k] * S.s22[k];
    p11[k] = G.wq[k] * (a11 * M.gi11[k] + a12 * M.gi12[k]);
    p12[k] = G.wq[k] * (a11 * M.gi12[k] + a12 * M.gi22[k]);
    p22[k] = G.wq[k] * (a21 * M.gi12[k] + a22 * M.gi22[k]);
  }
  // <Def u, S> = sum_j u_j [ sum_i D_i^T P^{ij} ] - sum_k u_k P^{ij} Gamma^k_ij.
  std::vector<double> r1 = G.D1t.apply(p11);
  {
    std::vector<double> tmp = G.D2t.apply(p12);
    for (int k = 0; k < N; ++k) r1[k] += tmp[k];
  }
  std::vector<double> r2 = G.D1t.apply(p12);
  {
    std::vector<double> tmp = G.D2t.apply(p22);
    for (int k = 0; k < N; ++k) r2[k] += tmp[k];
  }
  const auto& C = G.gamma;
  OneFormField out(S.n1, S.n2);
  for (int k = 0; k < N; ++k) {
    if (G.wq[k] <= 0.0) continue;
    const double q1 =
        p11[k] * C.g111[k] + 2.0 * p12[k] * C.g112[k] + p22[k] * C.g122[k];
    const double q2 =
        p11[k] * C.g211[k] + 2.0 * p12[k] * C.g212[k] + p22[k] * C.g222[k];
    const double b1 = (r1[k] - q1) / G.wq[k];  // contravariant
    const double b2 = (r2[k] - q2) / G.wq[k];
    out.c1[k] = M.g11[k] * b1 + M.g12[k] * b2;
    out.c2[k] = M.g12[k] * b1 + M.g22[k] * b2;
  }
  return out;
}

OneFormField def_adjoint_analytic(const Geometry& G, const SymTensorField& S) {
  const int N = G.size();
  // nabla_i S_kj = D_i S_kj - Gamma^l_ik S_lj - Gamma^l_ij S_kl.
  const auto d1s11 = G.D1.apply(S.s11), d1s12 = G.D1.apply(S.s12),
             d1s22 = G.D1.apply(S.s22);
  const auto d2s11 = G.D2.apply(S.s11), d2s12 = G.D2.apply(S.s12),
             d2s22 = G.D2.apply(S.s22);
  const auto& C = G.gamma;
  const auto& M = G.metric;
  OneFormField out(S.n1, S.n2);
  for (int k = 0; k < N; ++k) {
    if (!G.grid.in_chart[k]) continue;
    auto s = [&](int a, int b) {
      if (a == 1 && b == 1) return S.s11[k];
      if (a == 2 && b == 2) return S.s22[k];
      return S.s12[k];
    };
    auto gam = [&](int l, int a, int b) {
      if (a > b) std::swap(a, b);
      if (l == 1) return a == 1 ? (b == 1 ? C.g111[k] : C.g112[k]) : C.g122[k];
      return a == 1 ? (b == 1 ? C.g211[k] : C.g212[k]) : C.g222[k];
    };
    auto ds = [&](int i, int a, int b) {
      if (a > b) std::swap(a, b);
      if (i == 1) return a == 1 ? (b == 1 ? d1s11[k] : d1s12[k]) : d1s22[k];
      return a == 1 ? (b == 1 ? d2s11[k] : d2s12[k]) : d2s22[k];
    };
    auto gi = [&](int a, int b) {
      if (a == 1 && b == 1) return M.gi11[k];
      if (a == 2 && b == 2) return M.gi22[k];
      return M.gi12[k];
    };
    for (int j = 1; j <= 2; ++j) {
      double acc = 0.0;
      for (int i = 1; i <= 2; ++i) {
        for (int kk = 1; kk <= 2; ++kk) {
          double nab = ds(i, kk, j);
          for (int l = 1; l <= 2; ++l)
            nab -= gam(l, i, kk) * s(l, j) + gam(l, i, j) * s(kk, l);
          acc += gi(i, kk) * nab;
        }
      }
      (j == 1 ? out.c1[k] : out.c2[k]) = -acc;
    }
  }
  return out;
}

OneFormField hodge_laplacian(const Geometry& G, const OneFormField& u) {
  const ScalarField del = codifferential_1(G, u);
  const OneFormField a = exterior_d0(G, del);
  const OneFormField b = codifferential_2(G, exterior_d1(G, u));
  OneFormField out(u.n1, u.n2);
  for (int k = 0; k < G.size(); ++k) {
    out.c1[k] = -(a.c1[k] + b.c1[k]);
    out.c2[k] = -(a.c2[k] + b.c2[k]);
  }
  return out;
}

OneFormField bochner_laplacian(const Geometry& G, const OneFormField& u) {
  const Tensor2Field t = covariant_derivative(G, u);
  // g^{il} [ D_i t_lj - Gamma^s_il t_sj - Gamma^s_ij t_ls ].
  const auto d1t11 = G.D1.apply(t.t11), d1t12 = G.D1.apply(t.t12);
  const auto d1t21 = G.D1.apply(t.t21), d1t22 = G.D1.apply(t.t22);
  const auto d2t11 = G.D2.apply(t.t11), d2t12 = G.D2.apply(t.t12);
  const auto d2t21 = G.D2.apply(t.t21), d2t22 = G.D2.apply(t.t22);
  const auto& C = G.gamma;
  const auto& M = G.metric;
  OneFormField out(u.n1, u.n2);
  const int N = G.size();
  for (int k = 0; k < N; ++k) {
    if (!G.grid.in_chart[k]) continue;
    auto tt = [&](int a, int b) {
      if (a == 1) return b == 1 ? t.t11[k] : t.t12[k];
      return b == 1 ? t.t21[k] : t.t22[k];
    };
    auto dt = [&](int i, int a, int b) {
      if (i == 1) {
        if (a == 1) return b == 1 ? d1t11[k] : d1t12[k];
        return b == 1 ? d1t21[k] : d1t22[k];
      }
      if (a == 1) return b == 1 ? d2t11[k] : d2t12[k];
      return b == 1 ? d2t21[k] : d2t22[k];
    };
    auto gam = [&](int l, int a, int b) {
      if (a > b) std::swap(a, b);
      if (l == 1) return a == 1 ? (b == 1 ? C.g111[k] : C.g112[k]) : C.g122[k];
      return a == 1 ? (b == 1 ? C.g211[k] : C.g212[k]) : C.g222[k];
    };
    auto gi = [&](int a, int b) {
      if (a == 1 && b == 1) return M.gi11[k];
      if (a == 2 && b == 2) return M.gi22[k];
      return M.gi12[k];
    };
    for (int j = 1; j <= 2; ++j) {
      double acc = 0.0;
      for (int i = 1; i <= 2; ++i) {
        for (int l = 1; l <= 2; ++l) {
          double nab = dt(i, l, j);
          for (int s = 1; s <= 2; ++s)
            nab -= gam(s, i, l) * tt(s, j) + gam(s, i, j) * tt(l, s);
          acc += gi(i, l) * nab;
        }
      }
      (j == 1 ? out.c1[k] : out.c2[k]) = acc;
    }
  }
  return out;
}

OneFormField ricci_action(const Geometry& G, const OneFormField& u) {
  OneFormField out(u.n1, u.n2);
  const int N = G.size();
  const auto& M = G.metric;
  const auto& R = G.ric;
  for (int k = 0; k < N; ++k) {
    const double v1 = M.gi11[k] * u.c1[k] + M.gi12[k] * u.c2[k];
    const double v2 = M.gi12[k] * u.c1[k] + M.gi22[k] * u.c2[k];
    out.c1[k] = R.s11[k] * v1 + R.s12[k] * v2;
    out.c2[k] = R.s12[k] * v1 + R.s22[k] * v2;
  }
  return out;
}

SymTensorField stress_tensor(const Geometry& G, const OneFormField& u,
                             const ScalarField& p, double nu) {
  const SymTensorField def = deformation(G, u);
  const ScalarField del = codifferential_1(G, u);
  SymTensorField T(u.n1, u.n2);
  const auto& M = G.metric;
  const int N = G.size();
  for (int k = 0; k < N; ++k) {
    const double divu = -del.v[k];
    const double iso = -p.v[k] - (2.0 / 3.0) * nu * divu;
    T.s11[k] = iso * M.g11[k] + 2.0 * nu * def.s11[k];
    T.s12[k] = iso * M.g12[k] + 2.0 * nu * def.s12[k];
    T.s22[k] = iso * M.g22[k] + 2.0 * nu * def.s22[k];
  }
  return T;
}

// ---------------------------------------------------------------------------
// Inner products
// ---------------------------------------------------------------------------

static void check_same(int a, int b) {
  if (a != b)
    throw InvalidArguments("invalid-arguments: fields live on different grids");
}

double l2_inner(const Geometry& G, const ScalarField& a, const ScalarField& b,
                Region r) {
  check_same(a.size(), b.size());
  check_same(a.size(), G.size());
  const auto& mask = region_mask(G, r);
  double s = 0.0;
  for (int k = 0; k < G.size(); ++k)
    if (mask[k]) s += G.wq[k] * a.v[k] * b.v[k];
  return s;
}

double l2_inner(const Geometry& G, const OneFormField& a, const OneFormField& b,
                Region r) {
  check_same(a.size(), b.size());
  check_same(a.size(), G.size());
  const auto& mask = region_mask(G, r);
  const auto& M = G.metric;
  double s = 0.0;
  for (int k = 0; k < G.size(); ++k) {
    if (!mask[k]) continue;
    s += G.wq[k] * (M.gi11[k] * a.c1[k] * b.c1[k] +
                    M.gi12[k] * (a.c1[k] * b.c2[k] + a.c2[k] * b.c1[k]) +
                    M.gi22[k] * a.c2[k] * b.c2[k]);
  }
  return s;
}

double l2_inner(const Geometry& G, const TwoFormField& a, const TwoFormField& b,
                Region r) {
  check_same(a.size(), b.size());
  check_same(a.size(), G.size());
  const auto& mask = region_mask(G, r);
  double s = 0.0;
  for (int k = 0; k < G.size(); ++k) {
    if (!mask[k]) continue;
    const double sd = G.metric.sqrt_det[k];
    s += G.wq[k] / (sd * sd) * a.w[k] * b.w[k];
  }
  return s;
}

double l2_inner(const Geometry& G, const SymTensorField& a, const SymTensorField& b,
                Region r) {
  check_same(a.size(), b.size());
  check_same(a.size(), G.size());
  const auto& mask = region_mask(G, r);
  const auto& M = G.metric;
  double s = 0.0;
  for (int k = 0; k < G.size(); ++k) {
    if (!mask[k]) continue;
    // g^{ia} g^{jb} a_ij b_ab with symmetric a, b.
    const double i11 = M.gi11[k], i12 = M.gi12[k], i22 = M.gi22[k];
    const double a11 = a.s11[k], a12 = a.s12[k], a22 = a.s22[k];
    const double b11 = b.s11[k], b12 = b.s12[k], b22 = b.s22[k];
    // Raise both indices of a.
    const double A11 = i11 * (i11 * a11 + i12 * a12) + i12 * (i11 * a12 + i12 * a22);
    const double A12 = i11 * (i12 * a11 + i22 * a12) + i12 * (i12 * a12 + i22 * a22);
    const double A22 = i12 * (i12 * a11 + i22 * a12) + i22 * (i12 * a12 + i22 * a22);
    s += G.wq[k] * (A11 * b11 + 2.0 * A12 * b12 + A22 * b22);
  }
  return s;
}

double l2_inner(const Geometry& G, const Tensor2Field& a, const Tensor2Field& b,
                Region r) {
  check_same(a.size(), b.size());
  check_same(a.size(), G.size());
  const auto& mask = region_mask(G, r);
  const auto& M = G.metric;
  double s = 0.0;
  for (int k = 0; k < G.size(); ++k) {
    if (!mask[k]) continue;
    const double i11 = M.gi11[k], i12 = M.gi12[k], i22 = M.gi22[k];
    double acc = 0.0;
    const double A[2][2] = {{a.t11[k], a.t12[k]}, {a.t21[k], a.t22[k]}};
    const double B[2][2] = {{b.t11[k], b.t12[k]}, {b.t21[k], b.t22[k]}};
    const double gi[2][2] = {{i11, i12}, {i12, i22}};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q) acc += gi[i][p] * gi[j][q] * A[i][j] * B[p][q];
    s += G.wq[k] * acc;
  }
  return s;
}

double sup_norm(const Geometry& G, const ScalarField& a, Region r) {
  const auto& mask = region_mask(G, r);
  double s = 0.0;
  for (int k = 0; k < G.size(); ++k)
    if (mask[k]) s = std::max(s, std::abs(a.v[k]));
  return s;
}

double sup_norm(const Geometry& G, const OneFormField& a, Region r) {
  const auto& mask = region_mask(G, r);
  const auto& M = G.metric;
  double s = 0.0;
  for (int k = 0; k < G.size(); ++k) {
    if (!mask[k]) continue;
    const double m = M.gi11[k] * a.c1[k] * a.c1[k] +
                     2.0 * M.gi12[k] * a.c1[k] * a.c2[k] +
                     M.gi22[k] * a.c2[k] * a.c2[k];
    s = std::max(s, std::sqrt(std::max(m, 0.0)));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Identity checks
// ---------------------------------------------------------------------------

ResidualReport verify_weitzenbock(const Geometry& G, const OneFormField& u) {
  const OneFormField b = bochner_laplacian(G, u);
  const OneFormField hd = exterior_d0(G, codifferential_1(G, u));
  const OneFormField hc = codifferential_2(G, exterior_d1(G, u));
  const OneFormField ric = ricci_action(G, u);
  OneFormField res(u.n1, u.n2), ref(u.n1, u.n2);
  for (int k = 0; k < G.size(); ++k) {
    const double nn1 = -b.c1[k];  // nabla* nabla u
    const double nn2 = -b.c2[k];
    res.c1[k] = nn1 - (hd.c1[k] + hc.c1[k]) + ric.c1[k];
    res.c2[k] = nn2 - (hd.c2[k] + hc.c2[k]) + ric.c2[k];
    ref.c1[k] = nn1;
    ref.c2[k] = nn2;
  }
  ResidualReport rep;
  rep.check = "weitzenbock";
  rep.manifold = to_string(G.spec.kind);
  rep.a = G.spec.a;
  rep.n = G.grid.n1;
  double rl2 = l2_norm(G, ref), rsup = sup_norm(G, ref);
  // Guard the Killing/harmonic cases where nabla*nabla u is small.
  OneFormField alt(u.n1, u.n2);
  for (int k = 0; k < G.size(); ++k) {
    alt.c1[k] = hd.c1[k] + hc.c1[k];
    alt.c2[k] = hd.c2[k] + hc.c2[k];
  }
  rl2 = std::max({rl2, l2_norm(G, alt), 1e-30});
  rsup = std::max({rsup, sup_norm(G, alt), 1e-30});
  rep.l2_rel = l2_norm(G, res) / rl2;
  rep.sup_rel = sup_norm(G, res) / rsup;
  return rep;
}

ResidualReport verify_divdef(const Geometry& G, const OneFormField& u) {
  const OneFormField lhs2 = def_adjoint(G, deformation(G, u));
  const OneFormField hd = exterior_d0(G, codifferential_1(G, u));
  const OneFormField hc = codifferential_2(G, exterior_d1(G, u));
  const OneFormField ric = ricci_action(G, u);
  OneFormField res(u.n1, u.n2), ref(u.n1, u.n2);
  for (int k = 0; k < G.size(); ++k) {
    ref.c1[k] = 2.0 * lhs2.c1[k];
    ref.c2[k] = 2.0 * lhs2.c2[k];
    res.c1[k] = ref.c1[k] - (2.0 * hd.c1[k] + hc.c1[k]) + 2.0 * ric.c1[k];
    res.c2[k] = ref.c2[k] - (2.0 * hd.c2[k] + hc.c2[k]) + 2.0 * ric.c2[k];
  }
  ResidualReport rep;
  rep.check = "divdef";
  rep.manifold = to_string(G.spec.kind);
  rep.a = G.spec.a;
  rep.n = G.grid.n1;
  double rl2 = l2_norm(G, ref), rsup = sup_norm(G, ref);
  // Reference can vanish (Killing fields); fall back to the RHS magnitude.
  if (rl2 < 1e-14) {
    OneFormField alt(u.n1, u.n2);
    for (int k = 0; k < G.size(); ++k) {
      alt.c1[k] = 2.0 * hd.c1[k] + hc.c1[k];
      alt.c2[k] = 2.0 * hd.c2[k] + hc.c2[k];
    }
    rl2 = l2_norm(G, alt);
    rsup = sup_norm(G, alt);
  }
  if (rl2 < 1e-14) rl2 = 1.0;
  if (rsup < 1e-14) rsup = 1.0;
  rep.l2_rel = l2_norm(G, res) / rl2;
  rep.sup_rel = sup_norm(G, res) / rsup;
  return rep;
}

DBoundReport verify_d_bound(const Geometry& G, const OneFormField& u) {
  DBoundReport r;
  r.lhs = l2_norm(G, exterior_d1(G, u));
  r.rhs = std::sqrt(2.0) * l2_norm(G, covariant_derivative(G, u));
  r.tol = 1e-8 + 0.02 * r.rhs;
  r.ok = r.lhs <= r.rhs + r.tol;
  return r;
}

SphereNormReport verify_sphere_norm_identity(const Geometry& G,
                                             const OneFormField& u) {
  if (G.spec.kind != ManifoldKind::sphere)
    throw InvalidArguments("invalid-arguments: sphere norm identity needs a sphere");
  const double nu = l2_norm(G, u);
  const double ndiv = l2_norm(G, codifferential_1(G, u));
  if (nu > 0.0 && ndiv / nu > 1e-6)
    throw RejectedInput("rejected-input: field is not divergence-free");
  SphereNormReport rep;
  rep.du2 = l2_inner(G, exterior_d1(G, u), exterior_d1(G, u));
  const Tensor2Field grad = covariant_derivative(G, u);
  rep.grad2 = l2_inner(G, grad, grad);
  rep.u2 = l2_inner(G, u, u);
  const double a2 = G.spec.a * G.spec.a;
  if (rep.du2 <= 0.0) {
    rep.defect_rel = 0.0;  // 0/0 convention
  } else {
    rep.defect_rel = std::abs(rep.du2 - rep.grad2 - a2 * rep.u2) / rep.du2;
  }
  return rep;
}

OrderFit convergence_order(const std::vector<double>& h,
                           const std::vector<double>& residual) {
  if (h.size() < 3 || h.size() != residual.size())
    throw InvalidArguments("invalid-arguments: need >= 3 (h, residual) pairs");
  OrderFit fit;
  const int m = int(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(std::max(residual[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.order = std::clamp(fit.order, -99.0, 99.0);
  // Residuals should shrink with h; flag non-monotone sequences.
  for (int i = 0; i + 1 < m; ++i) {
    const bool h_dec = h[i] > h[i + 1];
    if ((h_dec && residual[i + 1] > residual[i]) ||
        (!h_dec && residual[i] > residual[i + 1]))
      fit.monotone = false;
  }
  return fit;
}

}  // namespace mns
