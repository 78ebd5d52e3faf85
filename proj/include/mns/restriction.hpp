#pragma once
/// @file restriction.hpp
/// @brief Restriction of the R^3 vector Laplacian to the unit sphere: the
///        tangential Hodge and Bochner candidates, the full spherical-
///        coordinate Hodge chain on a three-shell grid, and the divergence
///        non-inheritance example. Test fields are Cartesian polynomials so
///        divergence and Laplacian oracles are symbolically exact.

#include <array>
#include <cstdint>
#include <map>

#include "mns/geometry.hpp"
#include "mns/operators.hpp"

namespace mns {

/// Sparse trivariate polynomial in (x, y, z).
class Poly3 {
 public:
  using Key = std::array<int, 3>;

  static Poly3 monomial(int px, int py, int pz, double c);
  static Poly3 constant(double c) { return monomial(0, 0, 0, c); }

  Poly3 operator+(const Poly3& o) const;
  Poly3 operator-(const Poly3& o) const;
  Poly3 operator*(const Poly3& o) const;
  Poly3 scaled(double s) const;
  Poly3 diff(int axis) const;  // 0 = x, 1 = y, 2 = z
  double eval(double x, double y, double z) const;
  int degree() const;
  bool is_zero(double tol = 0.0) const;

  const std::map<Key, double>& terms() const { return c_; }

 private:
  std::map<Key, double> c_;
};

/// v = vx dx + vy dy + vz dz with polynomial components.
struct CartesianVectorPoly {
  Poly3 x, y, z;
};

Poly3 divergence(const CartesianVectorPoly& v);
/// Componentwise Cartesian Laplacian, exact.
CartesianVectorPoly cartesian_laplacian_oracle(const CartesianVectorPoly& v);

/// Angular grid at the unit sphere (a = 1) plus shells {1-hr, 1, 1+hr}.
struct ShellGrid {
  Geometry sphere;  // intrinsic unit-sphere geometry for the angular chart
  double hr = 0.0;
  std::array<double, 3> r{};
};

ShellGrid make_shell_grid(int n, double phi_min = 0.3);

/// Covariant spherical components (v_r, v_phi, v_theta) per shell and node.
struct SphericalVectorField {
  int n1 = 0, n2 = 0;
  std::array<ScalarField, 3> vr, vphi, vtheta;
};

SphericalVectorField sample_cartesian(const ShellGrid& S,
                                      const CartesianVectorPoly& v);

/// Tangential part at r = 1: the (v_phi, v_theta) covariant components.
OneFormField tangential_part(const SphericalVectorField& v);

/// The tangential truncation of the spherical Hodge display (terms in dphi
/// and dtheta with v_r and d_r dropped), with the sign aligned to
/// Delta_H = -(d d* + d* d); on the Killing form it returns -2 v^T.
OneFormField tangential_hodge_candidate(const ShellGrid& S, const OneFormField& vT);
OneFormField tangential_hodge_candidate(const ShellGrid& S,
                                        const SphericalVectorField& v);

/// (div grad) v^T with the induced unit-sphere metric.
OneFormField tangential_bochner_candidate(const ShellGrid& S, const OneFormField& vT);

/// All three components of the spherical Hodge chain *d*dv at r = 1,
/// using the three shells for the radial derivatives. Assumes div_{R^3} v = 0.
struct FullHodgeDisplay {
  OneFormField angular;  // dphi, dtheta components
  ScalarField radial;    // dr component
};

FullHodgeDisplay spherical_hodge_display(const ShellGrid& S,
                                         const SphericalVectorField& v);

struct DivergenceDefect {
  double surface_div_sup = 0.0;    // sup |div_S2 v^T| over the chart
  double ambient_div_sup = 0.0;    // symbolic |div_R3 v| (exact coefficients)
  ScalarField surface_div;
};

DivergenceDefect surface_divergence_defect(const ShellGrid& S,
                                           const CartesianVectorPoly& v);

struct RestrictionReport {
  int resolution = 0;
  double candidate_disagreement_l2 = 0.0;  // normalized, Killing data
  double bw_consistency_residual = 0.0;    // ||H - B + Ric v|| / ||v||
  double intrinsic_match_rel = 0.0;        // candidate vs intrinsic Hodge
  double div_defect_sup = 0.0;             // (z,0,0) example
  double killing_div_sup = 0.0;            // rigid rotation example
};

RestrictionReport restriction_report(int n, double phi_min, uint64_t seed);

}  // namespace mns
