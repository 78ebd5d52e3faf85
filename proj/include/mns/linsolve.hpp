#pragma once
/// @file linsolve.hpp
/// @brief Preconditioned conjugate gradients over flat coefficient vectors
///        with a caller-supplied inner product. All systems assembled in this
///        project are symmetric positive (semi)definite with respect to the
///        discrete L^2 inner products by the adjoint construction.

#include <functional>
#include <vector>

namespace mns {

using Vec = std::vector<double>;
using LinOp = std::function<void(const Vec&, Vec&)>;
using Dot = std::function<double(const Vec&, const Vec&)>;

struct CgResult {
  bool converged = false;
  int iters = 0;
  double rel_residual = 0.0;
};

/// Solves A x = b to ||r|| <= max(rel_tol ||b||, abs_tol) in the norm induced
/// by dot. x is used as the initial guess. precond, when given, applies an
/// SPD approximation of A^{-1} (diagonal Jacobi in practice). abs_tol guards
/// against right-hand sides that are already at the roundoff floor of the
/// surrounding computation.
CgResult conjugate_gradient(const LinOp& A, const Vec& b, Vec& x, const Dot& dot,
                            double rel_tol, int max_iters,
                            const LinOp* precond = nullptr, double abs_tol = 0.0);

}  // namespace mns
