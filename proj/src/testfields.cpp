#include "mns/testfields.hpp"

#include <cmath>
#include <random>

namespace mns {

double bump_window(double s) {
  const double s2 = s * s;
  if (s2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s2));
}

double smoothstep9(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double s5 = s * s * s * s * s;
  return s5 * (126.0 + s * (-420.0 + s * (540.0 + s * (-315.0 + 70.0 * s))));
}

OneFormField rotated_gradient(const Geometry& G, const ScalarField& psi) {
  const auto d1 = G.D1.apply(psi.v);
  const auto d2 = G.D2.apply(psi.v);
  OneFormField u(psi.n1, psi.n2);
  const auto& M = G.metric;
  for (int k = 0; k < G.size(); ++k) {
    const double a1 = M.gi11[k] * d1[k] + M.gi12[k] * d2[k];
    const double a2 = M.gi12[k] * d1[k] + M.gi22[k] * d2[k];
    u.c1[k] = M.sqrt_det[k] * a2;
    u.c2[k] = -M.sqrt_det[k] * a1;
  }
  return u;
}

namespace {

// C^4 windows with wide ramps so fourth derivatives stay resolved at the
// coarsest sweep resolutions.
double sphere_cap_window(const Geometry& G, double phi) {
  const double lo = 2.0 * G.spec.phi_min;
  const double hi = kPi - 2.0 * G.spec.phi_min;
  const double w = 0.35 * (hi - lo) / 2.0;
  return smoothstep9((phi - lo) / w) * smoothstep9((hi - phi) / w);
}

double hyperbolic_window(const Geometry& G, double r) {
  const double rc = 0.95 * 0.9 * G.spec.r0;  // inside the chi = 1 region
  return smoothstep9((rc - r) / (0.55 * rc));
}

// Smooth seeded scalar on each chart; the window factors keep sphere and
// hyperbolic fields compactly supported in the reporting region.
ScalarField seeded_scalar(const Geometry& G, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const ChartGrid& g = G.grid;
  ScalarField f(g.n1, g.n2);

  switch (G.spec.kind) {
    case ManifoldKind::torus: {
      struct Mode {
        int k1, k2;
        double a, b;
      };
      std::vector<Mode> modes;
      for (int k1 = 0; k1 <= 3; ++k1)
        for (int k2 = -3; k2 <= 3; ++k2) {
          if (k1 == 0 && k2 <= 0) continue;
          const double decay = 1.0 / (1.0 + k1 * k1 + k2 * k2);
          modes.push_back({k1, k2, gauss(rng) * decay, gauss(rng) * decay});
        }
      for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
          double s = 0.0;
          for (const Mode& m : modes) {
            const double ph = m.k1 * g.x1[i] + m.k2 * g.x2[j];
            s += m.a * std::cos(ph) + m.b * std::sin(ph);
          }
          f.at(i, j) = s;
        }
      break;
    }
    case ManifoldKind::sphere: {
      // Angular trig modes times smooth phi profiles, cap-windowed.
      struct Mode {
        int m, q;
        double a, b;
      };
      std::vector<Mode> modes;
      for (int m = 0; m <= 2; ++m)
        for (int q = 1; q <= 2; ++q) {
          const double decay = 1.0 / (1.0 + m * m + q * q);
          modes.push_back({m, q, gauss(rng) * decay, gauss(rng) * decay});
        }
      const double span = kPi - 2.0 * G.spec.phi_min;
      for (int i = 0; i < g.n1; ++i) {
        const double phi = g.x1[i];
        const double w = sphere_cap_window(G, phi);
        const double s01 = (phi - G.spec.phi_min) / span;
        for (int j = 0; j < g.n2; ++j) {
          double s = 0.0;
          for (const Mode& m : modes) {
            const double prof = std::sin(m.q * kPi * s01);
            s += (m.a * std::cos(m.m * g.x2[j]) + m.b * std::sin(m.m * g.x2[j])) * prof;
          }
          f.at(i, j) = w * s;
        }
      }
      break;
    }
    case ManifoldKind::hyperbolic: {
      // Low-degree polynomial in chart coordinates, radially windowed.
      double coef[5][5];
      for (int p = 0; p <= 4; ++p)
        for (int q = 0; q + p <= 4; ++q) coef[p][q] = gauss(rng) / (1.0 + p + q);
      for (int i = 0; i < g.n1; ++i)
        for (int j = 0; j < g.n2; ++j) {
          const double x = g.x1[i], y = g.x2[j];
          const double w = hyperbolic_window(G, std::hypot(x, y));
          if (w == 0.0) continue;
          double s = 0.0;
          double xp = 1.0;
          for (int p = 0; p <= 4; ++p) {
            double yq = 1.0;
            for (int q = 0; p + q <= 4; ++q) {
              s += coef[p][q] * xp * yq;
              yq *= y;
            }
            xp *= x;
          }
          f.at(i, j) = w * s;
        }
      break;
    }
  }
  return f;
}

}  // namespace

ScalarField random_stream(const Geometry& G, uint64_t seed) {
  return seeded_scalar(G, seed);
}

OneFormField random_one_form(const Geometry& G, uint64_t seed) {
  const ScalarField f1 = seeded_scalar(G, seed * 2654435761u + 1);
  const ScalarField f2 = seeded_scalar(G, seed * 2654435761u + 2);
  OneFormField u(f1.n1, f1.n2);
  u.c1 = f1.v;
  u.c2 = f2.v;
  return u;
}

OneFormField random_divfree_one_form(const Geometry& G, uint64_t seed) {
  return rotated_gradient(G, random_stream(G, seed));
}

std::string default_init_name(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::torus: return "mode";
    case ManifoldKind::sphere: return "killing";
    case ManifoldKind::hyperbolic: return "harmonic-dF";
  }
  return "mode";
}

OneFormField init_field(const Geometry& G, const std::string& name, uint64_t seed) {
  const ChartGrid& g = G.grid;
  OneFormField u(g.n1, g.n2);

  if (name == "random") return random_divfree_one_form(G, seed);

  if (name == "mode") {
    if (G.spec.kind != ManifoldKind::torus)
      throw InvalidArguments("invalid-arguments: init 'mode' needs the torus");
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j) u.c1[g.idx(i, j)] = std::sin(g.x2[j]);
    return u;
  }
  if (name == "killing") {
    if (G.spec.kind != ManifoldKind::sphere)
      throw InvalidArguments("invalid-arguments: init 'killing' needs the sphere");
    const double a2 = G.spec.a * G.spec.a;
    for (int i = 0; i < g.n1; ++i) {
      const double s = std::sin(g.x1[i]);
      for (int j = 0; j < g.n2; ++j) u.c2[g.idx(i, j)] = s * s / a2;
    }
    return u;
  }
  if (name == "harmonic-dF") {
    if (G.spec.kind != ManifoldKind::hyperbolic)
      throw InvalidArguments("invalid-arguments: init 'harmonic-dF' needs the hyperbolic chart");
    // dF for F = Re z: constant chart components.
    for (int k = 0; k < g.size(); ++k) u.c1[k] = 1.0;
    return u;
  }
  if (name == "stream-bump") {
    if (G.spec.kind != ManifoldKind::sphere)
      throw InvalidArguments("invalid-arguments: init 'stream-bump' needs the sphere");
    const double kk = 12.0;
    ScalarField psi(g.n1, g.n2);
    for (int i = 0; i < g.n1; ++i) {
      const double dphi = g.x1[i] - kPi / 2.0;
      const double prof = std::exp(-kk * dphi * dphi);
      for (int j = 0; j < g.n2; ++j)
        psi.at(i, j) = prof * std::sin(g.x2[j]);
    }
    return rotated_gradient(G, psi);
  }
  throw InvalidArguments("invalid-arguments: unknown init field '" + name + "'");
}

OneFormField forcing_field(const Geometry& G, const std::string& name, double t,
                           uint64_t seed) {
  if (name == "none" || name.empty()) return OneFormField(G.grid.n1, G.grid.n2);
  if (name == "manufactured") {
    OneFormField f = init_field(G, default_init_name(G.spec.kind), seed);
    const double amp = std::cos(2.0 * t);
    for (double& v : f.c1) v *= amp;
    for (double& v : f.c2) v *= amp;
    return f;
  }
  throw InvalidArguments("invalid-arguments: unknown forcing '" + name + "'");
}

}  // namespace mns
