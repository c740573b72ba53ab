// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include "fucik.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <Eigen/LU>
#include "errors.hpp"
#include "spectral.hpp"

namespace logfucik
{

FucikFunctional FucikFunctional::Fucik(const FormMatrices &forms, const Mesh &mesh, double r)
{
  Require(r >= 0.0 && std::isfinite(r), ErrorCode::Argument, "offset r must be >= 0");
  FucikFunctional f;
  f.forms = &forms;
  f.mesh = &mesh;
  f.r_plus = r;
  return f;
}

double EnergyAndGradient(const FucikFunctional &f, const Vector &u, Vector &gradient)
{
  const Vector au = f.forms->A * u;
  const SignIntegrals si = IntegrateBySign(*f.mesh, u, f.w_plus, f.w_minus);
  gradient = 2.0 * au - (2.0 * f.r_plus) * si.load_plus + (2.0 * f.r_minus) * si.load_minus;
  return u.dot(au) - (f.r_plus * si.mass_plus + f.r_minus * si.mass_minus);
}

double Energy(const FucikFunctional &f, const Vector &u)
{
  Vector g;
  return EnergyAndGradient(f, u, g);
}

Vector ConstrainedGradient(const FucikFunctional &f, const Metric &metric, const Vector &u)
{
  Vector g;
  EnergyAndGradient(f, u, g);
  return ProjectedGradient(metric, u, g, true);
}

double LagrangeMultiplier(const FucikFunctional &f, const Vector &u)
{
  return Energy(f, u);
}

namespace
{

// Points at equal angle on the M-great circle from a to b, both unit vectors.
void AppendArc(const Matrix &M, const Vector &a, const Vector &b, std::size_t steps,
               PathEnsemble &out)
{
  const double cosang = std::clamp(a.dot(M * b), -1.0, 1.0);
  const double ang = std::acos(cosang);
  const Vector perp = b - cosang * a;
  const double pn = std::sqrt(std::max(perp.dot(M * perp), 0.0));
  for (std::size_t j = 1; j <= steps; j++)
  {
    if (j == steps)
    {
      out.push_back(b);
      break;
    }
    const double phi = ang * static_cast<double>(j) / static_cast<double>(steps);
    out.push_back(Retract(M, std::cos(phi) * a + std::sin(phi) * (perp / pn)));
  }
}

}  // namespace

PathEnsemble InitialPath(const Metric &metric, const Vector &phi1, const Vector &seed,
                         std::size_t m)
{
  Require(m >= 3, ErrorCode::Argument, "path needs at least 3 nodes");
  Require(seed.size() == phi1.size(), ErrorCode::Argument, "seed size does not match phi1");
  const Matrix &M = metric.mass();
  const Vector p = Retract(M, phi1);
  const double sn = std::sqrt(seed.dot(M * seed));
  Require(sn > 0.0, ErrorCode::Argument, "seed must be nonzero");
  const Vector s = seed / sn;
  const Vector orth = s - s.dot(M * p) * p;
  Require(std::sqrt(std::max(orth.dot(M * orth), 0.0)) > 1e-8, ErrorCode::Argument,
          "seed is parallel to phi1");

  // Normalized segments are great-circle arcs, so equal angles give equal arclength.
  const std::size_t mid = (m - 1) / 2;
  PathEnsemble path;
  path.reserve(m);
  path.push_back(-p);
  AppendArc(M, -p, s, mid, path);
  AppendArc(M, s, p, m - 1 - mid, path);
  return path;
}

MountainPassResult MountainPass(const FucikFunctional &f, const PathEnsemble &path,
                                const MountainPassOptions &options)
{
  Require(path.size() >= 3, ErrorCode::Argument, "path needs at least 3 nodes");
  const Metric metric(*f.forms, options.metric);
  MountainPassResult out;
  out.norm_a = PencilNorm(*f.forms);

  StringOptions so;
  so.grad_tol = options.grad_tol > 0.0 ? options.grad_tol : options.rel_grad_tol * out.norm_a;
  so.max_sweeps = options.max_sweeps;
  so.warmup_sweeps = options.warmup_sweeps;
  // The energy gradient carries a factor 2, hence the extra halving.
  so.step = 0.5 * options.step_fraction / MetricSpectralRadius(*f.forms, metric);
  so.on_sphere = true;

  const Objective objective = [&f](const Vector &u, Vector &g)
  { return EnergyAndGradient(f, u, g); };
  out.string = RunString(objective, metric, path, so);
  out.c = out.string.c;
  out.u = out.string.u;
  return out;
}

namespace
{

struct NewtonState
{
  Vector au;
  Vector p;  // M+(u) u
  Vector q;  // M-(u) u
  SignMasses masses;
  Vector f;  // residual of the shifted system, size n + 1
};

// Sums are formed as x + y of separately computed terms so that the mirrored problem
// (beta, alpha, -u) produces bitwise negated quantities.
NewtonState Evaluate(const FormMatrices &forms, const Mesh &mesh, double alpha, double beta,
                     const Vector &u, double t)
{
  const std::size_t n = forms.size();
  NewtonState s;
  s.au = forms.A * u;
  s.masses = SignRestrictedMass(mesh, u);
  s.p = s.masses.plus * u;
  s.q = s.masses.minus * u;
  const Vector x = (alpha + t) * s.p;
  const Vector y = (beta + t) * s.q;
  const Vector rhs = x + y;
  s.f.resize(n + 1);
  s.f.head(n) = s.au - rhs;
  s.f[n] = 0.5 * (u.dot(forms.M * u) - 1.0);
  return s;
}

double UnshiftedResidual(const NewtonState &s, double alpha, double beta)
{
  const Vector x = alpha * s.p;
  const Vector y = beta * s.q;
  const Vector rhs = x + y;
  const double denom = s.au.norm();
  return denom > 0.0 ? (s.au - rhs).norm() / denom : std::numeric_limits<double>::infinity();
}

}  // namespace

VerifyResult VerifyPair(const FormMatrices &forms, const Mesh &mesh, double alpha, double beta,
                        const Vector &u0, const VerifyOptions &options)
{
  const std::size_t n = forms.size();
  Require(static_cast<std::size_t>(u0.size()) == n, ErrorCode::Argument,
          "seed size does not match the form");
  Require(std::isfinite(alpha) && std::isfinite(beta), ErrorCode::Argument,
          "alpha and beta must be finite");
  Require(u0.cwiseAbs().maxCoeff() > 0.0, ErrorCode::Argument, "seed must be nonzero");
  Require(options.damping > 0.0 && options.damping < 1.0, ErrorCode::Argument,
          "damping must lie in (0, 1)");

  Vector u = Retract(forms.M, u0);
  double t;
  {
    const SignIntegrals si = IntegrateBySign(mesh, u);
    const double x = alpha * si.mass_plus;
    const double y = beta * si.mass_minus;
    t = (u.dot(forms.A * u) - (x + y)) / u.dot(forms.M * u);
  }

  NewtonState state = Evaluate(forms, mesh, alpha, beta, u, t);
  double fnorm = state.f.norm();
  VerifyResult out;
  int it = 0;
  for (; it < options.max_iter; it++)
  {
    if (fnorm <= 1e-15 * state.au.norm())
    {
      break;
    }
    Matrix K(n + 1, n + 1);
    const Matrix x = (alpha + t) * state.masses.plus;
    const Matrix y = (beta + t) * state.masses.minus;
    K.topLeftCorner(n, n) = forms.A - (x + y);
    const Vector mu = forms.M * u;
    K.topRightCorner(n, 1) = -(state.p + state.q);
    K.bottomLeftCorner(1, n) = mu.transpose();
    K(n, n) = 0.0;
    const Vector delta = K.partialPivLu().solve(-state.f);
    if (!delta.allFinite())
    {
      break;
    }

    double lambda = 1.0;
    bool accepted = false;
    for (int b = 0; b <= options.max_backtracks; b++)
    {
      const Vector u_try = u + lambda * delta.head(n);
      const double t_try = t + lambda * delta[n];
      NewtonState trial = Evaluate(forms, mesh, alpha, beta, u_try, t_try);
      const double tn = trial.f.norm();
      if (std::isfinite(tn) && tn < fnorm)
      {
        u = u_try;
        t = t_try;
        state = std::move(trial);
        fnorm = tn;
        accepted = true;
        break;
      }
      lambda *= options.damping;
    }
    if (!accepted)
    {
      break;
    }
  }

  out.u = u;
  out.shift = t;
  out.iterations = it;
  out.converged = fnorm <= 1e-10 * state.au.norm();
  out.residual = UnshiftedResidual(state, alpha, beta);
  return out;
}

CurveResult TraceCurve(const FormMatrices &forms, const Mesh &mesh,
                       const std::vector<double> &r_grid, const CurveOptions &options)
{
  Require(!r_grid.empty(), ErrorCode::Argument, "r grid is empty");
  Require(r_grid.front() >= 0.0, ErrorCode::Argument, "r grid must be nonnegative");
  for (std::size_t i = 1; i < r_grid.size(); i++)
  {
    Require(r_grid[i] > r_grid[i - 1], ErrorCode::Argument, "r grid must be increasing");
  }
  const auto eig = SolveEig(forms, 2);
  CurveResult out;
  out.lambda1 = eig[0].lambda;
  out.lambda2 = eig[1].lambda;

  const Metric metric(forms, options.mountain_pass.metric);
  PathEnsemble path = InitialPath(metric, eig[0].vector, eig[1].vector, options.mountain_pass.nodes);
  for (double r : r_grid)
  {
    const FucikFunctional f = FucikFunctional::Fucik(forms, mesh, r);
    const MountainPassResult mp = MountainPass(f, path, options.mountain_pass);
    path = mp.string.path;

    FucikPoint pt;
    pt.r = r;
    pt.c = mp.c;
    pt.alpha = r + mp.c;
    pt.beta = mp.c;
    pt.iters = mp.string.sweeps;
    pt.apex = mp.string.apex;
    const VerifyResult vr = VerifyPair(forms, mesh, pt.alpha, pt.beta, mp.u, options.verify);
    pt.residual = vr.residual;
    pt.converged = mp.string.converged && vr.residual <= options.verify.tol;
    pt.eigenfunction = mp.u;
    out.points.push_back(std::move(pt));
  }

  const std::size_t count = out.points.size();
  for (std::size_t i = 0; i < count; i++)
  {
    const FucikPoint &p = out.points[i];
    FucikPoint q = p;
    q.alpha = p.beta;
    q.beta = p.alpha;
    q.mirrored = true;
    q.eigenfunction = -p.eigenfunction;
    const VerifyResult vr = VerifyPair(forms, mesh, q.alpha, q.beta, q.eigenfunction, options.verify);
    q.residual = vr.residual;
    q.converged = p.converged && vr.residual <= options.verify.tol;
    out.points.push_back(std::move(q));
  }
  return out;
}

SplitDiagnostics SplittingDefects(const FormMatrices &forms, const Mesh &mesh, double r,
                                  double theta, const Vector &u)
{
  const Vector up = PositivePart(u), um = NegativePart(u);
  const SignIntegrals si = IntegrateBySign(mesh, u);
  SplitDiagnostics d;
  d.cross = -up.dot(forms.A * um);
  d.plus_defect = up.dot(forms.A * up) + d.cross -
                  ((r + theta) * up.dot(si.load_plus) - theta * up.dot(si.load_minus));
  d.minus_defect = um.dot(forms.A * um) + d.cross -
                   (theta * um.dot(si.load_minus) - (r + theta) * um.dot(si.load_plus));
  return d;
}

}  // namespace logfucik
