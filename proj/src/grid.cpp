#include "mns/grid.hpp"

#include <algorithm>
#include <cmath>

namespace mns {

std::string to_string(ManifoldKind k) {
  switch (k) {
    case ManifoldKind::torus: return "torus";
    case ManifoldKind::sphere: return "sphere";
    case ManifoldKind::hyperbolic: return "hyperbolic";
  }
  return "?";
}

ManifoldKind manifold_from_string(const std::string& s) {
  if (s == "torus") return ManifoldKind::torus;
  if (s == "sphere") return ManifoldKind::sphere;
  if (s == "hyperbolic") return ManifoldKind::hyperbolic;
  throw InvalidSpec("invalid-spec: unknown manifold '" + s + "'");
}

void ManifoldSpec::validate() const {
  if (!(a > 0.0)) throw InvalidSpec("invalid-spec: curvature scale a must be > 0");
  if (kind == ManifoldKind::sphere && !(phi_min > 0.0 && phi_min < kPi / 2))
    throw InvalidSpec("invalid-spec: phi_min must lie in (0, pi/2)");
  if (kind == ManifoldKind::hyperbolic && !(r0 > 0.0 && r0 < 1.0))
    throw InvalidSpec("invalid-spec: r0 must lie in (0, 1)");
}

double smoothstep5(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

ChartGrid build_grid(const ManifoldSpec& spec, int n) {
  spec.validate();
  if (n < 8) throw InvalidResolution("invalid-resolution: n must be >= 8");

  ChartGrid g;
  g.kind = spec.kind;
  g.n1 = g.n2 = n;
  g.x1.resize(n);
  g.x2.resize(n);
  const int N = n * n;
  g.in_chart.assign(N, 1);
  g.in_report.assign(N, 1);
  g.in_adj.assign(N, 1);
  g.cutoff = ScalarField(n, n);
  for (double& c : g.cutoff.v) c = 1.0;

  switch (spec.kind) {
    case ManifoldKind::torus: {
      g.periodic1 = g.periodic2 = true;
      g.d1 = g.d2 = 2.0 * kPi / n;
      for (int i = 0; i < n; ++i) g.x1[i] = i * g.d1;
      for (int j = 0; j < n; ++j) g.x2[j] = j * g.d2;
      break;
    }
    case ManifoldKind::sphere: {
      g.periodic1 = false;
      g.periodic2 = true;
      g.d1 = (kPi - 2.0 * spec.phi_min) / (n - 1);
      g.d2 = 2.0 * kPi / n;
      for (int i = 0; i < n; ++i) g.x1[i] = spec.phi_min + i * g.d1;
      for (int j = 0; j < n; ++j) g.x2[j] = j * g.d2;
      break;
    }
    case ManifoldKind::hyperbolic: {
      g.periodic1 = g.periodic2 = false;
      const double r0 = spec.r0;
      g.d1 = g.d2 = 2.0 * r0 / (n - 1);
      for (int i = 0; i < n; ++i) g.x1[i] = -r0 + i * g.d1;
      for (int j = 0; j < n; ++j) g.x2[j] = -r0 + j * g.d2;

      const double r1 = 0.9 * r0;
      // Codifferential support: staircase flux columns start at r0 - 3h, so
      // the mask must end below that for harmonic forms to be machine-
      // divergence-free, while staying above r1 + h so report-region stencil
      // compositions see unclipped values. Prefer the latter when the chart
      // is too coarse to satisfy both.
      {
        const double lo = r1 + 1.25 * g.d1;
        const double hi = r0 - 3.25 * g.d1;
        g.r_adj = std::clamp(0.5 * (r1 + r0), std::min(lo, hi), std::max(lo, hi));
        if (lo > hi) g.r_adj = lo;
      }
      const double tol = 1e-12;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double r = std::hypot(g.x1[i], g.x2[j]);
          const int k = g.idx(i, j);
          const bool inside = r <= r0 + tol;
          g.in_chart[k] = inside ? 1 : 0;
          g.in_report[k] = (r <= r1 + tol) ? 1 : 0;
          g.in_adj[k] = (inside && r <= g.r_adj + tol) ? 1 : 0;
          g.cutoff.v[k] = inside ? 1.0 - smoothstep5((r - r1) / (r0 - r1)) : 0.0;
        }
      }
      break;
    }
  }
  return g;
}

}  // namespace mns
