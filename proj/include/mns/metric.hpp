#pragma once
/// @file metric.hpp
/// @brief Metric data, Christoffel symbols and Ricci tensors for the model
///        geometries. Closed forms are evaluated exactly at grid nodes; a
///        finite-difference Levi-Civita fallback is provided as a cross-check.

#include "mns/fields.hpp"
#include "mns/grid.hpp"
#include "mns/stencil.hpp"

namespace mns {

struct MetricField {
  int n1 = 0, n2 = 0;
  std::vector<double> g11, g12, g22;     // covariant components
  std::vector<double> gi11, gi12, gi22;  // contravariant (exact 2x2 inverse)
  std::vector<double> sqrt_det;

  MetricField() = default;
  MetricField(int n1_, int n2_)
      : n1(n1_), n2(n2_) {
    const size_t N = size_t(n1_) * n2_;
    g11.assign(N, 1.0);
    g12.assign(N, 0.0);
    g22.assign(N, 1.0);
    gi11.assign(N, 1.0);
    gi12.assign(N, 0.0);
    gi22.assign(N, 1.0);
    sqrt_det.assign(N, 1.0);
  }
  int size() const { return n1 * n2; }
};

/// Gamma^k_{ij}, symmetric in (i,j).
struct ChristoffelField {
  int n1 = 0, n2 = 0;
  std::vector<double> g111, g112, g122;  // k = 1; (ij) = 11, 12, 22
  std::vector<double> g211, g212, g222;  // k = 2

  ChristoffelField() = default;
  ChristoffelField(int n1_, int n2_) : n1(n1_), n2(n2_) {
    const size_t N = size_t(n1_) * n2_;
    g111.assign(N, 0.0);
    g112.assign(N, 0.0);
    g122.assign(N, 0.0);
    g211.assign(N, 0.0);
    g212.assign(N, 0.0);
    g222.assign(N, 0.0);
  }
  int size() const { return n1 * n2; }
};

MetricField build_metric(const ManifoldSpec& spec, const ChartGrid& grid);

/// Closed-form Levi-Civita symbols per geometry.
ChristoffelField christoffel(const ManifoldSpec& spec, const MetricField& metric,
                             const ChartGrid& grid);

/// Generic finite-difference fallback
/// Gamma^k_ij = 1/2 g^{kl} (D_i g_jl + D_j g_il - D_l g_ij);
/// agrees with the closed forms to O(h^2).
ChristoffelField christoffel_fd(const MetricField& metric, const ChartGrid& grid,
                                const SparseOp& D1, const SparseOp& D2);

/// Ric = K g with K in {0, a^2, -a^2}.
SymTensorField ricci(const ManifoldSpec& spec, const ChartGrid& grid,
                     const MetricField& metric);

/// The constant K above.
double ricci_scalar_factor(const ManifoldSpec& spec);

}  // namespace mns
