#pragma once
/// @file grid.hpp
/// @brief Model geometries and their chart grids.
///
/// Three charts are supported:
///   torus       -- [0,2pi)^2, periodic in both axes, flat metric
///   sphere      -- (phi,theta) in [phi_min, pi-phi_min] x [0,2pi), theta
///                  periodic; round metric of radius 1/a
///   hyperbolic  -- Poincare disk coordinates on [-r0,r0]^2 with nodes outside
///                  radius r0 masked; curvature -a^2

#include <cstdint>
#include <string>
#include <vector>

#include "mns/errors.hpp"
#include "mns/fields.hpp"

namespace mns {

inline constexpr double kPi = 3.14159265358979323846;

enum class ManifoldKind { torus, sphere, hyperbolic };

std::string to_string(ManifoldKind k);
ManifoldKind manifold_from_string(const std::string& s);

struct ManifoldSpec {
  ManifoldKind kind = ManifoldKind::torus;
  double a = 1.0;        // sphere radius 1/a, hyperbolic curvature -a^2
  double phi_min = 0.3;  // polar cap exclusion angle (sphere)
  double r0 = 0.99;      // chart truncation radius (hyperbolic)

  void validate() const;
};

/// Node-centered uniform chart grid plus the region masks used throughout:
///   in_chart  -- nodes carrying quadrature weight (the whole chart; on the
///                hyperbolic chart the disk r <= r0)
///   in_report -- the chi = 1 region where residual reports are evaluated
///   in_adj    -- support of the compact test space the codifferential maps
///                into (hyperbolic: r <= r_adj strictly inside the disk, so
///                that chart-boundary flux rows never enter; elsewhere the
///                whole chart)
struct ChartGrid {
  ManifoldKind kind = ManifoldKind::torus;
  int n1 = 0, n2 = 0;
  double d1 = 0.0, d2 = 0.0;
  bool periodic1 = false, periodic2 = false;
  std::vector<double> x1, x2;  // coordinates per axis
  std::vector<uint8_t> in_chart, in_report, in_adj;
  ScalarField cutoff;  // chi
  double r_adj = 0.0;  // hyperbolic only

  int idx(int i, int j) const { return i * n2 + j; }
  int size() const { return n1 * n2; }
};

ChartGrid build_grid(const ManifoldSpec& spec, int n);

/// Quintic smoothstep, 0 for s<=0, 1 for s>=1 (C^2 at the ends).
double smoothstep5(double s);

}  // namespace mns
