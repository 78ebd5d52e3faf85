#include "mns/metric.hpp"

#include <cmath>

namespace mns {

MetricField build_metric(const ManifoldSpec& spec, const ChartGrid& grid) {
  spec.validate();
  MetricField m(grid.n1, grid.n2);
  const double a = spec.a;

  switch (spec.kind) {
    case ManifoldKind::torus:
      break;  // identity everywhere
    case ManifoldKind::sphere: {
      for (int i = 0; i < grid.n1; ++i) {
        const double sphi = std::sin(grid.x1[i]);
        const double gpp = 1.0 / (a * a);
        const double gtt = sphi * sphi / (a * a);
        for (int j = 0; j < grid.n2; ++j) {
          const int k = grid.idx(i, j);
          m.g11[k] = gpp;
          m.g22[k] = gtt;
          m.gi11[k] = 1.0 / gpp;
          m.gi22[k] = 1.0 / gtt;
          m.sqrt_det[k] = std::sqrt(gpp * gtt);
        }
      }
      break;
    }
    case ManifoldKind::hyperbolic: {
      for (int i = 0; i < grid.n1; ++i) {
        for (int j = 0; j < grid.n2; ++j) {
          const int k = grid.idx(i, j);
          if (!grid.in_chart[k]) continue;  // identity placeholder off chart
          const double r2 = grid.x1[i] * grid.x1[i] + grid.x2[j] * grid.x2[j];
          const double lam = 2.0 / (a * (1.0 - r2));
          const double l2 = lam * lam;
          m.g11[k] = l2;
          m.g22[k] = l2;
          m.gi11[k] = 1.0 / l2;
          m.gi22[k] = 1.0 / l2;
          m.sqrt_det[k] = l2;
        }
      }
      break;
    }
  }
  return m;
}

ChristoffelField christoffel(const ManifoldSpec& spec, const MetricField& metric,
                             const ChartGrid& grid) {
  ChristoffelField c(grid.n1, grid.n2);
  (void)metric;

  switch (spec.kind) {
    case ManifoldKind::torus:
      break;  // flat
    case ManifoldKind::sphere: {
      // Gamma^phi_{theta theta} = -sin cos, Gamma^theta_{phi theta} = cot.
      for (int i = 0; i < grid.n1; ++i) {
        const double phi = grid.x1[i];
        const double gptt = -std::sin(phi) * std::cos(phi);
        const double gtpt = std::cos(phi) / std::sin(phi);
        for (int j = 0; j < grid.n2; ++j) {
          const int k = grid.idx(i, j);
          c.g122[k] = gptt;
          c.g212[k] = gtpt;
        }
      }
      break;
    }
    case ManifoldKind::hyperbolic: {
      // Conformal metric lambda^2 I with d(log lambda)_i = 2 x_i / (1-r^2).
      for (int i = 0; i < grid.n1; ++i) {
        for (int j = 0; j < grid.n2; ++j) {
          const int k = grid.idx(i, j);
          if (!grid.in_chart[k]) continue;
          const double x = grid.x1[i], y = grid.x2[j];
          const double r2 = x * x + y * y;
          const double mu = 2.0 / (1.0 - r2);
          const double mx = mu * x, my = mu * y;
          c.g111[k] = mx;
          c.g112[k] = my;
          c.g122[k] = -mx;
          c.g211[k] = -my;
          c.g212[k] = mx;
          c.g222[k] = my;
        }
      }
      break;
    }
  }
  return c;
}

ChristoffelField christoffel_fd(const MetricField& m, const ChartGrid& grid,
                                const SparseOp& D1, const SparseOp& D2) {
  ChristoffelField c(grid.n1, grid.n2);
  const auto d1g11 = D1.apply(m.g11), d1g12 = D1.apply(m.g12), d1g22 = D1.apply(m.g22);
  const auto d2g11 = D2.apply(m.g11), d2g12 = D2.apply(m.g12), d2g22 = D2.apply(m.g22);

  const int N = grid.size();
  for (int k = 0; k < N; ++k) {
    if (!grid.in_chart[k]) continue;
    // Lower symbols G_{l,ij} = 1/2 (d_i g_jl + d_j g_il - d_l g_ij).
    const double G1_11 = 0.5 * d1g11[k];
    const double G1_12 = 0.5 * d2g11[k];
    const double G1_22 = d2g12[k] - 0.5 * d1g22[k];
    const double G2_11 = d1g12[k] - 0.5 * d2g11[k];
    const double G2_12 = 0.5 * d1g22[k];
    const double G2_22 = 0.5 * d2g22[k];
    c.g111[k] = m.gi11[k] * G1_11 + m.gi12[k] * G2_11;
    c.g112[k] = m.gi11[k] * G1_12 + m.gi12[k] * G2_12;
    c.g122[k] = m.gi11[k] * G1_22 + m.gi12[k] * G2_22;
    c.g211[k] = m.gi12[k] * G1_11 + m.gi22[k] * G2_11;
    c.g212[k] = m.gi12[k] * G1_12 + m.gi22[k] * G2_12;
    c.g222[k] = m.gi12[k] * G1_22 + m.gi22[k] * G2_22;
  }
  return c;
}

double ricci_scalar_factor(const ManifoldSpec& spec) {
  switch (spec.kind) {
    case ManifoldKind::torus: return 0.0;
    case ManifoldKind::sphere: return spec.a * spec.a;
    case ManifoldKind::hyperbolic: return -spec.a * spec.a;
  }
  return 0.0;
}

SymTensorField ricci(const ManifoldSpec& spec, const ChartGrid& grid,
                     const MetricField& metric) {
  SymTensorField r(grid.n1, grid.n2);
  const double K = ricci_scalar_factor(spec);
  const int N = grid.size();
  for (int k = 0; k < N; ++k) {
    r.s11[k] = K * metric.g11[k];
    r.s12[k] = K * metric.g12[k];
    r.s22[k] = K * metric.g22[k];
  }
  return r;
}

}  // namespace mns
