#pragma once
/// @file fields.hpp
/// @brief Discrete sections over a chart grid: scalars, 1-forms, 2-forms,
///        symmetric and full (0,2)-tensors. Components are stored per node in
///        the chart coordinate basis, row-major with index i*n2 + j.

#include <cstddef>
#include <vector>

namespace mns {

struct ScalarField {
  int n1 = 0, n2 = 0;
  std::vector<double> v;

  ScalarField() = default;
  ScalarField(int n1_, int n2_) : n1(n1_), n2(n2_), v(size_t(n1_) * n2_, 0.0) {}
  int size() const { return n1 * n2; }
  double& at(int i, int j) { return v[size_t(i) * n2 + j]; }
  double at(int i, int j) const { return v[size_t(i) * n2 + j]; }
};

/// Covariant components (u_1, u_2).
struct OneFormField {
  int n1 = 0, n2 = 0;
  std::vector<double> c1, c2;

  OneFormField() = default;
  OneFormField(int n1_, int n2_)
      : n1(n1_), n2(n2_), c1(size_t(n1_) * n2_, 0.0), c2(size_t(n1_) * n2_, 0.0) {}
  int size() const { return n1 * n2; }
};

/// Coefficient w of w * dx^1 ^ dx^2.
struct TwoFormField {
  int n1 = 0, n2 = 0;
  std::vector<double> w;

  TwoFormField() = default;
  TwoFormField(int n1_, int n2_) : n1(n1_), n2(n2_), w(size_t(n1_) * n2_, 0.0) {}
  int size() const { return n1 * n2; }
};

/// Symmetric covariant 2-tensor, S_12 stored once.
struct SymTensorField {
  int n1 = 0, n2 = 0;
  std::vector<double> s11, s12, s22;

  SymTensorField() = default;
  SymTensorField(int n1_, int n2_)
      : n1(n1_),
        n2(n2_),
        s11(size_t(n1_) * n2_, 0.0),
        s12(size_t(n1_) * n2_, 0.0),
        s22(size_t(n1_) * n2_, 0.0) {}
  int size() const { return n1 * n2; }
};

/// Full (0,2)-tensor T_ij, not symmetrized (holds covariant derivatives).
struct Tensor2Field {
  int n1 = 0, n2 = 0;
  std::vector<double> t11, t12, t21, t22;

  Tensor2Field() = default;
  Tensor2Field(int n1_, int n2_)
      : n1(n1_),
        n2(n2_),
        t11(size_t(n1_) * n2_, 0.0),
        t12(size_t(n1_) * n2_, 0.0),
        t21(size_t(n1_) * n2_, 0.0),
        t22(size_t(n1_) * n2_, 0.0) {}
  int size() const { return n1 * n2; }
};

inline void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
  for (size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
}

}  // namespace mns
