#pragma once
/// @file stencil.hpp
/// @brief Sparse partial-derivative operators over a chart grid.
///
/// Derivatives are assembled once per grid as CSR matrices so that the exact
/// transpose is available for the adjoint construction of codifferentials.
/// Stencil selection per node and axis: periodic wrap or central where both
/// neighbours are in the chart, second-order one-sided at chart edges and at
/// the masked disk boundary, first-order one-sided where only one neighbour
/// exists, zero otherwise. Every stencil annihilates constants.

#include <vector>

#include "mns/grid.hpp"

namespace mns {

struct SparseOp {
  int rows = 0, cols = 0;
  std::vector<int> rowptr, col;
  std::vector<double> val;

  void apply(const std::vector<double>& x, std::vector<double>& y) const;
  std::vector<double> apply(const std::vector<double>& x) const;
  SparseOp transposed() const;
};

/// axis 1 differentiates along the first index, axis 2 along the second.
SparseOp build_derivative(const ChartGrid& g, int axis);

}  // namespace mns
