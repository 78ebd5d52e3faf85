#include "mns/solver.hpp"

#include <cmath>
#include <cstdio>

#include "mns/linsolve.hpp"
#include "mns/testfields.hpp"

namespace mns {

std::string to_string(ViscosityChoice c) {
  switch (c) {
    case ViscosityChoice::hodge: return "hodge";
    case ViscosityChoice::bochner: return "bochner";
    case ViscosityChoice::deformation: return "deformation";
  }
  return "?";
}

ViscosityChoice viscosity_from_string(const std::string& s) {
  if (s == "hodge") return ViscosityChoice::hodge;
  if (s == "bochner") return ViscosityChoice::bochner;
  if (s == "deformation") return ViscosityChoice::deformation;
  throw InvalidArguments("invalid-arguments: unknown viscosity '" + s + "'");
}

void SolverConfig::validate() const {
  spec.validate();
  if (n < 8) throw InvalidResolution("invalid-resolution: n must be >= 8");
  if (!(nu > 0.0)) throw InvalidArguments("invalid-arguments: nu must be > 0");
  if (!(dt > 0.0)) throw InvalidArguments("invalid-arguments: dt must be > 0");
  if (!(T >= 0.0)) throw InvalidArguments("invalid-arguments: T must be >= 0");
}

std::string EnergyLedger::to_csv() const {
  std::string out = "t,E,G,Dd,Ddef,W\n";
  char buf[160];
  for (const LedgerRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e,%.12e,%.12e\n", r.t,
                  r.E, r.G, r.Dd, r.Ddef, r.W);
    out += buf;
  }
  return out;
}

namespace {

constexpr double kSolveTol = 1e-10;
constexpr int kMaxIters = 50000;

// Packed (c1, c2) helpers for the one-form CG.
void pack(const OneFormField& u, Vec& x) {
  const int N = u.size();
  x.resize(2 * N);
  std::copy(u.c1.begin(), u.c1.end(), x.begin());
  std::copy(u.c2.begin(), u.c2.end(), x.begin() + N);
}

void unpack(const Vec& x, OneFormField& u) {
  const int N = u.size();
  std::copy(x.begin(), x.begin() + N, u.c1.begin());
  std::copy(x.begin() + N, x.end(), u.c2.begin());
}

double dot_scalar(const Geometry& G, const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int k = 0; k < G.size(); ++k) s += G.wq[k] * a[k] * b[k];
  return s;
}

double dot_one_form(const Geometry& G, const Vec& a, const Vec& b) {
  const int N = G.size();
  const auto& M = G.metric;
  double s = 0.0;
  for (int k = 0; k < N; ++k) {
    s += G.wq[k] * (M.gi11[k] * a[k] * b[k] +
                    M.gi12[k] * (a[k] * b[N + k] + a[N + k] * b[k]) +
                    M.gi22[k] * a[N + k] * b[N + k]);
  }
  return s;
}

// The ricci action on these geometries is the pointwise multiple K u.
void hodge_plus_ric_shift(const Geometry& G, double dtnu, double ric_shift,
                          const OneFormField& u, OneFormField& out) {
  const ScalarField del = codifferential_1(G, u);
  const OneFormField a = exterior_d0(G, del);
  const OneFormField b = codifferential_2(G, exterior_d1(G, u));
  const double shift = dtnu * ric_shift * G.ricci_k;
  for (int k = 0; k < G.size(); ++k) {
    out.c1[k] = u.c1[k] + dtnu * (a.c1[k] + b.c1[k]) - shift * u.c1[k];
    out.c2[k] = u.c2[k] + dtnu * (a.c2[k] + b.c2[k]) - shift * u.c2[k];
  }
}

double ric_shift_for(ViscosityChoice c) {
  switch (c) {
    case ViscosityChoice::hodge: return 0.0;
    case ViscosityChoice::bochner: return 1.0;
    case ViscosityChoice::deformation: return 2.0;
  }
  return 0.0;
}

}  // namespace

LerayResult leray_project(const Geometry& G, const OneFormField& w,
                          ScalarField* warm_p) {
  const int N = G.size();
  const bool compact = G.spec.kind == ManifoldKind::hyperbolic;

  const ScalarField rhs_f = codifferential_1(G, w);
  Vec b(rhs_f.v);

  // Constants span the kernel on the closed charts; keep everything mean-free.
  auto project_mean = [&](Vec& v) {
    if (compact) return;
    double m = 0.0, wsum = 0.0;
    for (int k = 0; k < N; ++k) {
      m += G.wq[k] * v[k];
      wsum += G.wq[k];
    }
    m /= wsum;
    for (int k = 0; k < N; ++k)
      if (G.grid.in_adj[k]) v[k] -= m;
  };
  project_mean(b);

  LinOp A = [&](const Vec& x, Vec& y) {
    ScalarField p(G.grid.n1, G.grid.n2);
    p.v = x;
    const OneFormField dp = exterior_d0(G, p);
    const ScalarField lp = codifferential_1(G, dp);
    y = lp.v;
    project_mean(y);
  };

  // Jacobi estimate of the Poisson diagonal.
  Vec diag(N, 1.0);
  for (int k = 0; k < N; ++k) {
    if (!G.grid.in_adj[k]) continue;
    diag[k] = 0.5 * (G.metric.gi11[k] / (G.grid.d1 * G.grid.d1) +
                     G.metric.gi22[k] / (G.grid.d2 * G.grid.d2));
  }
  LinOp precond = [&](const Vec& r, Vec& z) {
    z.resize(r.size());
    for (int k = 0; k < N; ++k) z[k] = G.grid.in_adj[k] ? r[k] / diag[k] : 0.0;
    // Keep the Krylov space inside the mean-free subspace of the singular
    // closed-chart system.
    project_mean(z);
  };

  Dot dot = [&](const Vec& a, const Vec& bb) { return dot_scalar(G, a, bb); };

  // The divergence of an already-projected field sits at the roundoff floor
  // of the surrounding computation; do not chase relative residuals there.
  const double wscale = l2_norm(G, w, Region::chart);
  const double abs_tol =
      1e-13 * wscale / std::min(G.grid.d1, G.grid.d2);

  Vec x(N, 0.0);
  if (warm_p && int(warm_p->v.size()) == N) x = warm_p->v;
  const CgResult cg = conjugate_gradient(A, b, x, dot, kSolveTol, kMaxIters,
                                         &precond, abs_tol);
  if (!cg.converged)
    throw ProjectionFailure("projection-failure: pressure solve stagnated",
                            cg.rel_residual);

  LerayResult out;
  out.iters = cg.iters;
  out.rel_residual = cg.rel_residual;
  // u comes from the raw solve; the mean-zero gauge is applied to the
  // reported pressure only (on the compact support a blanket shift would put
  // a jump at the support rim).
  {
    ScalarField praw(G.grid.n1, G.grid.n2);
    praw.v = x;
    const OneFormField dp = exterior_d0(G, praw);
    out.u = OneFormField(G.grid.n1, G.grid.n2);
    for (int k = 0; k < N; ++k) {
      out.u.c1[k] = w.c1[k] - dp.c1[k];
      out.u.c2[k] = w.c2[k] - dp.c2[k];
    }
  }
  if (warm_p) {
    *warm_p = ScalarField(G.grid.n1, G.grid.n2);
    warm_p->v = x;
  }
  out.p = ScalarField(G.grid.n1, G.grid.n2);
  out.p.v = std::move(x);
  {
    double m = 0.0, wsum = 0.0;
    for (int k = 0; k < N; ++k) {
      if (!G.grid.in_adj[k]) continue;
      m += G.wq[k] * out.p.v[k];
      wsum += G.wq[k];
    }
    if (wsum > 0.0) {
      m /= wsum;
      for (int k = 0; k < N; ++k)
        if (G.grid.in_adj[k]) out.p.v[k] -= m;
    }
  }
  return out;
}

OneFormField apply_viscosity(const Geometry& G, const OneFormField& u,
                             ViscosityChoice choice) {
  switch (choice) {
    case ViscosityChoice::hodge: return hodge_laplacian(G, u);
    case ViscosityChoice::bochner: return bochner_laplacian(G, u);
    case ViscosityChoice::deformation: {
      OneFormField out = hodge_laplacian(G, u);
      const OneFormField r = ricci_action(G, u);
      for (int k = 0; k < G.size(); ++k) {
        out.c1[k] += 2.0 * r.c1[k];
        out.c2[k] += 2.0 * r.c2[k];
      }
      return out;
    }
  }
  return u;
}

OneFormField advect(const Geometry& G, const OneFormField& u) {
  const Tensor2Field t = covariant_derivative(G, u);
  OneFormField out(u.n1, u.n2);
  const auto& M = G.metric;
  for (int k = 0; k < G.size(); ++k) {
    const double v1 = M.gi11[k] * u.c1[k] + M.gi12[k] * u.c2[k];
    const double v2 = M.gi12[k] * u.c1[k] + M.gi22[k] * u.c2[k];
    out.c1[k] = v1 * t.t11[k] + v2 * t.t21[k];
    out.c2[k] = v1 * t.t12[k] + v2 * t.t22[k];
  }
  return out;
}

double cfl_limit(const Geometry& G, const OneFormField& u) {
  const auto& M = G.metric;
  double m1 = 0.0, m2 = 0.0;
  for (int k = 0; k < G.size(); ++k) {
    if (!G.grid.in_chart[k]) continue;
    m1 = std::max(m1, std::abs(M.gi11[k] * u.c1[k] + M.gi12[k] * u.c2[k]));
    m2 = std::max(m2, std::abs(M.gi12[k] * u.c1[k] + M.gi22[k] * u.c2[k]));
  }
  double lim = 1e300;
  if (m1 > 0) lim = std::min(lim, G.grid.d1 / m1);
  if (m2 > 0) lim = std::min(lim, G.grid.d2 / m2);
  return 0.5 * lim;
}

FlowState step(const Geometry& G, const FlowState& state, const SolverConfig& cfg,
               EnergyLedger& ledger, ScalarField* warm_p) {
  const int N = G.size();
  OneFormField ustar = state.u;

  if (cfg.nonlinear) {
    if (cfg.dt > cfl_limit(G, state.u)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "cfl-violation at t=%.6e", state.t);
      ledger.warnings.push_back(buf);
    }
    const OneFormField adv = advect(G, state.u);
    for (int k = 0; k < N; ++k) {
      ustar.c1[k] -= cfg.dt * adv.c1[k];
      ustar.c2[k] -= cfg.dt * adv.c2[k];
    }
  }
  if (cfg.forcing != "none" && !cfg.forcing.empty()) {
    const OneFormField f = forcing_field(G, cfg.forcing, state.t, cfg.seed);
    for (int k = 0; k < N; ++k) {
      ustar.c1[k] += cfg.dt * f.c1[k];
      ustar.c2[k] += cfg.dt * f.c2[k];
    }
  }

  // Implicit viscosity: (I - dt nu L) u** = u*.
  const double dtnu = cfg.dt * cfg.nu;
  const double shift = ric_shift_for(cfg.choice);
  OneFormField tmp_in(G.grid.n1, G.grid.n2), tmp_out(G.grid.n1, G.grid.n2);
  LinOp A = [&](const Vec& x, Vec& y) {
    unpack(x, tmp_in);
    hodge_plus_ric_shift(G, dtnu, shift, tmp_in, tmp_out);
    pack(tmp_out, y);
  };
  Vec diag(2 * N, 1.0);
  for (int k = 0; k < N; ++k) {
    const double est = 1.0 +
                       dtnu * 0.5 *
                           (G.metric.gi11[k] / (G.grid.d1 * G.grid.d1) +
                            G.metric.gi22[k] / (G.grid.d2 * G.grid.d2)) -
                       dtnu * shift * G.ricci_k;
    diag[k] = diag[N + k] = std::max(est, 1e-8);
  }
  LinOp precond = [&](const Vec& r, Vec& z) {
    z.resize(r.size());
    for (size_t k = 0; k < r.size(); ++k) z[k] = r[k] / diag[k];
  };
  Dot dot = [&](const Vec& a, const Vec& b) { return dot_one_form(G, a, b); };

  Vec b, x;
  pack(ustar, b);
  pack(state.u, x);  // warm start
  const CgResult cg = conjugate_gradient(A, b, x, dot, kSolveTol, kMaxIters, &precond);
  if (!cg.converged)
    throw StepFailure("step-failure: viscous solve stagnated", cg.rel_residual);

  OneFormField ustar2(G.grid.n1, G.grid.n2);
  unpack(x, ustar2);

  FlowState next;
  const LerayResult proj = leray_project(G, ustar2, warm_p);
  next.u = proj.u;
  next.p = proj.p;
  next.t = state.t + cfg.dt;

  // Divergence invariant after projection.
  const double nu_norm = l2_norm(G, next.u, Region::chart);
  const double ndiv = l2_norm(G, codifferential_1(G, next.u), Region::chart);
  if (ndiv > 1e-8 * std::max(nu_norm, 1e-14)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "divergence-invariant at t=%.6e: %.3e", next.t,
                  ndiv / std::max(nu_norm, 1e-14));
    ledger.warnings.push_back(buf);
  }
  return next;
}

namespace {

LedgerRow make_row(const Geometry& G, const FlowState& s, double W) {
  LedgerRow r;
  r.t = s.t;
  r.E = 0.5 * l2_inner(G, s.u, s.u, Region::chart);
  const Tensor2Field grad = covariant_derivative(G, s.u);
  r.G = l2_inner(G, grad, grad, Region::chart);
  const TwoFormField du = exterior_d1(G, s.u);
  r.Dd = l2_inner(G, du, du, Region::chart);
  const SymTensorField def = deformation(G, s.u);
  r.Ddef = 2.0 * l2_inner(G, def, def, Region::chart);
  r.W = W;
  return r;
}

}  // namespace

RunResult run(const SolverConfig& cfg) {
  cfg.validate();
  RunResult rr;
  const Geometry G = build_geometry(cfg.spec, cfg.n);

  const std::string init =
      cfg.init.empty() ? default_init_name(cfg.spec.kind) : cfg.init;
  const OneFormField u0 = init_field(G, init, cfg.seed);
  const LerayResult pr = leray_project(G, u0);

  FlowState s;
  s.t = 0.0;
  s.u = pr.u;
  s.p = pr.p;

  double W = 0.0;
  rr.ledger.rows.push_back(make_row(G, s, W));

  ScalarField warm_p = s.p;
  const int nsteps = int(std::llround(cfg.T / cfg.dt));
  try {
    for (int k = 0; k < nsteps; ++k) {
      const double t_n = s.t;
      FlowState next = step(G, s, cfg, rr.ledger, &warm_p);
      if (cfg.forcing != "none" && !cfg.forcing.empty()) {
        const OneFormField f = forcing_field(G, cfg.forcing, t_n, cfg.seed);
        W += cfg.dt * l2_inner(G, f, next.u, Region::chart);
      }
      s = std::move(next);
      rr.ledger.rows.push_back(make_row(G, s, W));
    }
    rr.completed = true;
  } catch (const Error& e) {
    rr.error = e.what();  // partial ledger retained
  }
  rr.state = std::move(s);
  return rr;
}

EnergyEqualityResult energy_equality_experiment(const ManifoldSpec& spec, int n,
                                                double T, int steps) {
  if (spec.kind != ManifoldKind::hyperbolic)
    throw InvalidArguments(
        "invalid-arguments: the energy equality experiment runs on the "
        "hyperbolic chart");
  if (steps < 2) throw InvalidArguments("invalid-arguments: need >= 2 time nodes");

  const Geometry G = build_geometry(spec, n);
  const OneFormField df = init_field(G, "harmonic-dF", 0);

  EnergyEqualityResult out;
  out.df_norm2 = l2_inner(G, df, df, Region::chart);
  const Tensor2Field grad_df = covariant_derivative(G, df);
  out.grad_df_norm2 = l2_inner(G, grad_df, grad_df, Region::chart);
  const TwoFormField ddf = exterior_d1(G, df);
  const double ddf2 = l2_inner(G, ddf, ddf, Region::chart);
  const SymTensorField def_df = deformation(G, df);
  const double def2 = 2.0 * l2_inner(G, def_df, def_df, Region::chart);

  const double dt = T / steps;
  double W = 0.0, D = 0.0;
  double prev_w = 0.0, prev_g = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    const double amp = (4.0 / 3.0) * std::pow(t, 0.75);
    LedgerRow row;
    row.t = t;
    row.E = 0.5 * amp * amp * out.df_norm2;
    row.G = amp * amp * out.grad_df_norm2;
    row.Dd = amp * amp * ddf2;
    row.Ddef = amp * amp * def2;
    // <f(t), v(t)> = (4/3) sqrt(t) ||dF||^2; zero in the limit t -> 0.
    const double wk = k == 0 ? 0.0 : std::pow(t, -0.25) * amp * out.df_norm2;
    if (k > 0) {
      W += 0.5 * dt * (prev_w + wk);
      D += 0.5 * dt * (prev_g + row.G);
    }
    prev_w = wk;
    prev_g = row.G;
    row.W = W;
    out.ledger.rows.push_back(row);
  }
  out.E_T = out.ledger.rows.back().E;
  out.W_T = W;
  out.D_T = D;
  return out;
}

double fitted_decay_rate(const EnergyLedger& ledger) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const LedgerRow& r : ledger.rows) {
    if (r.E <= 0.0) continue;
    const double x = r.t, y = std::log(r.E);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) return 0.0;
  return -(m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace mns
