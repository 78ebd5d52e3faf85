#include "mns/geometry.hpp"

namespace mns {

Geometry build_geometry(const ManifoldSpec& spec, int n) {
  Geometry g;
  g.spec = spec;
  g.grid = build_grid(spec, n);
  g.metric = build_metric(spec, g.grid);
  g.gamma = christoffel(spec, g.metric, g.grid);
  g.ric = ricci(spec, g.grid, g.metric);
  g.ricci_k = ricci_scalar_factor(spec);
  g.D1 = build_derivative(g.grid, 1);
  g.D2 = build_derivative(g.grid, 2);
  g.D1t = g.D1.transposed();
  g.D2t = g.D2.transposed();

  const int N = g.grid.size();
  g.wq.assign(N, 0.0);
  for (int i = 0; i < g.grid.n1; ++i) {
    const double t1 =
        (!g.grid.periodic1 && (i == 0 || i == g.grid.n1 - 1)) ? 0.5 : 1.0;
    for (int j = 0; j < g.grid.n2; ++j) {
      const double t2 =
          (!g.grid.periodic2 && (j == 0 || j == g.grid.n2 - 1)) ? 0.5 : 1.0;
      const int k = g.grid.idx(i, j);
      if (!g.grid.in_chart[k]) continue;
      double tau = t1 * t2;
      // The hyperbolic chart boundary is the disk staircase, not the grid
      // frame; plain weights there.
      if (spec.kind == ManifoldKind::hyperbolic) tau = 1.0;
      g.wq[k] = g.metric.sqrt_det[k] * g.grid.d1 * g.grid.d2 * tau;
    }
  }
  return g;
}

}  // namespace mns
