#pragma once
/// @file geometry.hpp
/// @brief Bundle of everything the discrete operators need for one chart:
///        grid, metric data, derivative matrices and their transposes, and
///        the diagonal quadrature weights. Immutable after construction.

#include "mns/grid.hpp"
#include "mns/metric.hpp"
#include "mns/stencil.hpp"

namespace mns {

struct Geometry {
  ManifoldSpec spec;
  ChartGrid grid;
  MetricField metric;
  ChristoffelField gamma;
  SymTensorField ric;
  double ricci_k = 0.0;  // Ric = ricci_k * g
  SparseOp D1, D2, D1t, D2t;
  std::vector<double> wq;  // sqrt|g| d1 d2 (trapezoid-corrected), 0 off chart

  int size() const { return grid.size(); }
};

Geometry build_geometry(const ManifoldSpec& spec, int n);

}  // namespace mns
