#pragma once
/// @file operators.hpp
/// @brief Discrete exterior calculus and covariant operators.
///
/// d is a pure stencil operator. The codifferentials and Def* are exact
/// discrete adjoints of d and Def under the weighted inner products below
/// (matrix-transpose construction); the analytic divergence formulas are
/// kept alongside as O(h^2) cross-checks. Sign conventions follow
/// Delta_H = -(d d* + d* d), and the Bochner (rough) Laplacian is div grad =
/// -nabla* nabla.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mns/fields.hpp"
#include "mns/geometry.hpp"

namespace mns {

// ---------------------------------------------------------------------------
// First-order operators
// ---------------------------------------------------------------------------

OneFormField exterior_d0(const Geometry& G, const ScalarField& f);
TwoFormField exterior_d1(const Geometry& G, const OneFormField& u);

/// Adjoint of exterior_d0; output restricted to the compact test-space mask.
ScalarField codifferential_1(const Geometry& G, const OneFormField& u);
/// Adjoint of exterior_d1.
OneFormField codifferential_2(const Geometry& G, const TwoFormField& w);
/// Reference formula -(1/sqrt|g|) d_i (sqrt|g| g^{ij} u_j).
ScalarField codifferential_1_analytic(const Geometry& G, const OneFormField& u);

/// nabla_i u_j = d_i u_j - Gamma^k_ij u_k.
Tensor2Field covariant_derivative(const Geometry& G, const OneFormField& u);
/// (Def u)_ij = 1/2 (nabla_i u_j + nabla_j u_i).
SymTensorField deformation(const Geometry& G, const OneFormField& u);
/// Adjoint of deformation: <Def u, S> = <u, def_adjoint(S)> exactly.
OneFormField def_adjoint(const Geometry& G, const SymTensorField& S);
/// Reference formula (Def* S)_j = -g^{ik} nabla_i S_kj.
OneFormField def_adjoint_analytic(const Geometry& G, const SymTensorField& S);

// ---------------------------------------------------------------------------
// Laplacian candidates and friends
// ---------------------------------------------------------------------------

/// Delta_H u = -(d0 delta1 + delta2 d1) u.
OneFormField hodge_laplacian(const Geometry& G, const OneFormField& u);
/// (div grad) u = g^{ij} nabla_i nabla_j u via the coordinate formula.
OneFormField bochner_laplacian(const Geometry& G, const OneFormField& u);
/// (Ric u)_i = Ric_ij g^{jk} u_k.
OneFormField ricci_action(const Geometry& G, const OneFormField& u);

/// T = -p g + 2 nu Def u - (2/3) nu (div u) g, div u = -codifferential_1(u).
SymTensorField stress_tensor(const Geometry& G, const OneFormField& u,
                             const ScalarField& p, double nu);

// ---------------------------------------------------------------------------
// Inner products and norms (diagonal quadrature; region-selectable)
// ---------------------------------------------------------------------------

enum class Region { chart, report };

double l2_inner(const Geometry& G, const ScalarField& a, const ScalarField& b,
                Region r = Region::report);
double l2_inner(const Geometry& G, const OneFormField& a, const OneFormField& b,
                Region r = Region::report);
double l2_inner(const Geometry& G, const TwoFormField& a, const TwoFormField& b,
                Region r = Region::report);
double l2_inner(const Geometry& G, const SymTensorField& a, const SymTensorField& b,
                Region r = Region::report);
double l2_inner(const Geometry& G, const Tensor2Field& a, const Tensor2Field& b,
                Region r = Region::report);

template <class F>
double l2_norm(const Geometry& G, const F& a, Region r = Region::report) {
  const double s = l2_inner(G, a, a, r);
  return s > 0.0 ? std::sqrt(s) : 0.0;
}

/// Pointwise sup of the metric magnitude over a region.
double sup_norm(const Geometry& G, const ScalarField& a, Region r = Region::report);
double sup_norm(const Geometry& G, const OneFormField& a, Region r = Region::report);

// ---------------------------------------------------------------------------
// Identity checks
// ---------------------------------------------------------------------------

struct ResidualReport {
  std::string check;
  std::string manifold;
  double a = 0.0;
  int n = 0;
  double l2_rel = 0.0;
  double sup_rel = 0.0;
  std::optional<double> observed_order;
};

/// Weitzenbock: nabla*nabla = d d* + d* d - Ric. Residual of
/// (-bochner u) - (d0 delta1 u + delta2 d1 u) + Ric(u), norms on the report
/// region relative to ||nabla*nabla u||.
ResidualReport verify_weitzenbock(const Geometry& G, const OneFormField& u);

/// 2 Def* Def = 2 d d* + d* d - 2 Ric (the duplicated d d* reading; both
/// coincide on divergence-free inputs).
ResidualReport verify_divdef(const Geometry& G, const OneFormField& u);

struct DBoundReport {
  double lhs = 0.0;  // ||du||
  double rhs = 0.0;  // sqrt(2) ||nabla u||
  double tol = 0.0;
  bool ok = false;
};

/// ||du|| <= sqrt(2) ||nabla u|| with tol = 1e-8 + 2% discretization slack.
DBoundReport verify_d_bound(const Geometry& G, const OneFormField& u);

struct SphereNormReport {
  double du2 = 0.0;     // ||du||^2
  double grad2 = 0.0;   // ||nabla u||^2
  double u2 = 0.0;      // ||u||^2
  double defect_rel = 0.0;
};

/// ||du||^2 = ||nabla u||^2 + a^2 ||u||^2 for divergence-free u on the sphere.
/// Throws RejectedInput if ||delta u|| / ||u|| > 1e-6.
SphereNormReport verify_sphere_norm_identity(const Geometry& G, const OneFormField& u);

struct OrderFit {
  double order = 0.0;
  bool monotone = true;
};

/// Least-squares slope of log(residual) against log(h).
OrderFit convergence_order(const std::vector<double>& h,
                           const std::vector<double>& residual);

}  // namespace mns
