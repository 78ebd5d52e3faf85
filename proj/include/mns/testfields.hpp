#pragma once
/// @file testfields.hpp
/// @brief Named and seeded test fields.
///
/// Random fields are band-limited combinations of smooth basis functions with
/// seeded coefficients, so the same seed yields the same analytic field at
/// every resolution. Sphere fields vanish identically within 2*phi_min of the
/// polar caps; hyperbolic fields are cut by a C-infinity radial window inside
/// the chi = 1 region.

#include <cstdint>
#include <string>

#include "mns/geometry.hpp"
#include "mns/operators.hpp"

namespace mns {

/// exp(1 - 1/(1-s^2)) on |s| < 1, zero outside; value 1 at s = 0.
double bump_window(double s);

/// Ninth-degree smoothstep: 0 at s<=0, 1 at s>=1, C^4 at both ends.
double smoothstep9(double s);

/// Stream function -> divergence-free 1-form u_i = sqrt|g| eps_ik g^{kl} d_l psi.
/// Discretely divergence-free to machine precision for interior-supported psi.
OneFormField rotated_gradient(const Geometry& G, const ScalarField& psi);

ScalarField random_stream(const Geometry& G, uint64_t seed);
OneFormField random_one_form(const Geometry& G, uint64_t seed);
OneFormField random_divfree_one_form(const Geometry& G, uint64_t seed);

/// Registry of named initial fields: torus "mode", sphere "killing" and
/// "stream-bump", hyperbolic "harmonic-dF", and "random" everywhere.
OneFormField init_field(const Geometry& G, const std::string& name, uint64_t seed);

/// Default init name per geometry (mode / killing / harmonic-dF).
std::string default_init_name(ManifoldKind kind);

/// Named forcing: "none" or "manufactured" (= cos(2t) times the default init).
OneFormField forcing_field(const Geometry& G, const std::string& name, double t,
                           uint64_t seed);

}  // namespace mns
