#include "mns/linsolve.hpp"

#include <cmath>

namespace mns {

CgResult conjugate_gradient(const LinOp& A, const Vec& b, Vec& x, const Dot& dot,
                            double rel_tol, int max_iters, const LinOp* precond,
                            double abs_tol) {
  const size_t n = b.size();
  if (x.size() != n) x.assign(n, 0.0);

  Vec r(n), z(n), p(n), Ap(n);
  A(x, Ap);
  for (size_t k = 0; k < n; ++k) r[k] = b[k] - Ap[k];

  const double bnorm = std::sqrt(std::max(dot(b, b), 0.0));
  const double target = std::max(rel_tol * bnorm, abs_tol);
  CgResult out;
  if (bnorm <= abs_tol || bnorm == 0.0) {
    x.assign(n, 0.0);
    out.converged = true;
    return out;
  }

  auto apply_precond = [&](const Vec& in, Vec& outv) {
    if (precond)
      (*precond)(in, outv);
    else
      outv = in;
  };

  apply_precond(r, z);
  p = z;
  double rz = dot(r, z);
  double rnorm = std::sqrt(std::max(dot(r, r), 0.0));

  for (int it = 0; it < max_iters; ++it) {
    if (rnorm <= target) {
      out.converged = true;
      out.iters = it;
      out.rel_residual = rnorm / bnorm;
      return out;
    }
    A(p, Ap);
    const double pAp = dot(p, Ap);
    if (!(pAp > 0.0)) break;  // lost positive definiteness / breakdown
    const double alpha = rz / pAp;
    for (size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * Ap[k];
    }
    apply_precond(r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    rnorm = std::sqrt(std::max(dot(r, r), 0.0));
    out.iters = it + 1;
  }
  out.converged = rnorm <= target;
  out.rel_residual = bnorm > 0 ? rnorm / bnorm : rnorm;
  return out;
}

}  // namespace mns
