// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include "nonresonance.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include "errors.hpp"
#include "quadrature.hpp"
#include "spectral.hpp"

namespace logfucik
{

NonlinearitySpec DefaultNonlinearity(const Mesh &mesh, double lambda1, double alpha, double beta,
                                     double fraction, double epsilon)
{
  Require(fraction > 0.0 && fraction < 1.0, ErrorCode::Argument,
          "slope fraction must lie in (0, 1)");
  Require(alpha > lambda1 && beta > lambda1, ErrorCode::Argument,
          "target point must lie above (lambda1, lambda1)");
  Require(std::isfinite(epsilon), ErrorCode::Argument, "perturbation must be finite");
  const double qp = lambda1 + fraction * (alpha - lambda1);
  const double qm = lambda1 + fraction * (beta - lambda1);
  const double room = std::min({qp - lambda1, alpha - qp, qm - lambda1, beta - qm});
  const double margin = 0.25 * room;

  NonlinearitySpec spec;
  spec.lambda1 = lambda1;
  spec.alpha = alpha;
  spec.beta = beta;
  spec.f = [qp, qm, epsilon](double, double s)
  { return qp * std::max(s, 0.0) - qm * std::max(-s, 0.0) + epsilon * std::atan(s); };
  spec.F = [qp, qm, epsilon](double, double s)
  {
    const double sp = std::max(s, 0.0), sm = std::max(-s, 0.0);
    return 0.5 * qp * sp * sp + 0.5 * qm * sm * sm +
           epsilon * (s * std::atan(s) - 0.5 * std::log1p(s * s));
  };
  const Vector ones = Vector::Ones(mesh.n);
  spec.gamma_plus = spec.delta_plus = (qp - margin) * ones;
  spec.Gamma_plus = spec.Delta_plus = (qp + margin) * ones;
  spec.gamma_minus = spec.delta_minus = (qm - margin) * ones;
  spec.Gamma_minus = spec.Delta_minus = (qm + margin) * ones;
  return spec;
}

namespace
{

void Check(bool cond, const std::string &what, std::size_t node)
{
  Require(cond, ErrorCode::Argument,
          "nonlinearity rejected: " + what + " at node " + std::to_string(node));
}

}  // namespace

void ValidateSpec(const NonlinearitySpec &spec, const Mesh &mesh, const ValidationOptions &options)
{
  const std::size_t n = mesh.n;
  Require(static_cast<bool>(spec.f) && static_cast<bool>(spec.F), ErrorCode::Argument,
          "nonlinearity rejected: f and F must be set");
  for (const Vector *v : {&spec.gamma_plus, &spec.gamma_minus, &spec.Gamma_plus, &spec.Gamma_minus,
                          &spec.delta_plus, &spec.delta_minus, &spec.Delta_plus,
                          &spec.Delta_minus})
  {
    Require(static_cast<std::size_t>(v->size()) == n && v->allFinite(), ErrorCode::Argument,
            "nonlinearity rejected: bound vectors must be finite with one value per node");
  }
  const double l1 = spec.lambda1, tol = options.tol;
  bool strict_plus = false, strict_minus = false;
  bool below_alpha = true, below_beta = true;
  for (std::size_t i = 0; i < n; i++)
  {
    Check(l1 <= spec.gamma_plus[i] + tol, "lambda1 <= gamma+ fails", i);
    Check(l1 <= spec.gamma_minus[i] + tol, "lambda1 <= gamma- fails", i);
    Check(spec.gamma_plus[i] < spec.Gamma_plus[i], "gamma+ < Gamma+ fails", i);
    Check(spec.gamma_minus[i] < spec.Gamma_minus[i], "gamma- < Gamma- fails", i);
    Check(spec.Gamma_plus[i] <= spec.alpha + tol, "Gamma+ <= alpha fails", i);
    Check(spec.Gamma_minus[i] <= spec.beta + tol, "Gamma- <= beta fails", i);
    Check(l1 <= spec.delta_plus[i] + tol, "lambda1 <= delta+ fails", i);
    Check(l1 <= spec.delta_minus[i] + tol, "lambda1 <= delta- fails", i);
    Check(spec.delta_plus[i] <= spec.Delta_plus[i], "delta+ <= Delta+ fails", i);
    Check(spec.delta_minus[i] <= spec.Delta_minus[i], "delta- <= Delta- fails", i);
    strict_plus = strict_plus || spec.delta_plus[i] > l1;
    strict_minus = strict_minus || spec.delta_minus[i] > l1;
    below_alpha = below_alpha && spec.Delta_plus[i] < spec.alpha;
    below_beta = below_beta && spec.Delta_minus[i] < spec.beta;
  }
  Require(strict_plus && strict_minus, ErrorCode::Argument,
          "nonlinearity rejected: delta+- must exceed lambda1 on a set of positive measure");
  Require(below_alpha || below_beta, ErrorCode::Argument,
          "nonlinearity rejected: need Delta+ < alpha or Delta- < beta everywhere");

  const double asym_tol = 1e-6;
  const double big = options.probe;
  for (std::size_t i = 0; i < n; i++)
  {
    const double x = mesh.nodes[i];
    for (double s : {big, -big})
    {
      const bool pos = s > 0.0;
      const double slope = spec.f(x, s) / s;
      const double prim = 2.0 * spec.F(x, s) / (s * s);
      const double lo_f = pos ? spec.gamma_plus[i] : spec.gamma_minus[i];
      const double hi_f = pos ? spec.Gamma_plus[i] : spec.Gamma_minus[i];
      const double lo_p = pos ? spec.delta_plus[i] : spec.delta_minus[i];
      const double hi_p = pos ? spec.Delta_plus[i] : spec.Delta_minus[i];
      Check(std::isfinite(slope) && slope >= lo_f - asym_tol && slope <= hi_f + asym_tol,
            "asymptotic slope f/s outside [gamma, Gamma]", i);
      Check(std::isfinite(prim) && prim >= lo_p - asym_tol && prim <= hi_p + asym_tol,
            "asymptotic ratio 2F/s^2 outside [delta, Delta]", i);
    }
  }

  // F must be the primitive of f.
  const Rule &g = GaussLegendre(20);
  const std::size_t stride = std::max<std::size_t>(1, n / 8);
  for (std::size_t i = 0; i < n; i += stride)
  {
    const double x = mesh.nodes[i];
    for (double s : {-3.0, -1.0, -0.25, 0.25, 1.0, 3.0})
    {
      double integral = 0.0;
      for (std::size_t k = 0; k < g.size(); k++)
      {
        integral += g.w[k] * s * spec.f(x, s * g.x[k]);
      }
      const double value = spec.F(x, s);
      Check(std::abs(value - integral) <= 1e-8 * (1.0 + std::abs(value)),
            "F is not the primitive of f", i);
    }
    Check(spec.F(x, 0.0) == 0.0, "F(x, 0) must vanish", i);
  }
}

double PsiAndGradient(const NonlinearitySpec &spec, const FormMatrices &forms, const Mesh &mesh,
                      const Vector &u, Vector &gradient)
{
  Require(static_cast<std::size_t>(u.size()) == mesh.n, ErrorCode::Argument,
          "vector size does not match the mesh");
  const Vector au = forms.A * u;
  gradient = au;
  double integral = 0.0;
  const Rule &g = GaussLegendre(16);
  for (std::size_t cell = 0; cell < mesh.cells(); cell++)
  {
    const double u0 = VertexValue(mesh, u, cell), u1 = VertexValue(mesh, u, cell + 1);
    const long d0 = mesh.dof(cell), d1 = mesh.dof(cell + 1);
    const double x0 = mesh.vertices[cell], len = mesh.vertices[cell + 1] - x0;
    double bounds[3] = {0.0, 1.0, 1.0};
    int pieces = 1;
    if ((u0 > 0.0 && u1 < 0.0) || (u0 < 0.0 && u1 > 0.0))
    {
      bounds[1] = u0 / (u0 - u1);
      pieces = 2;
    }
    for (int p = 0; p < pieces; p++)
    {
      const double t0 = bounds[p], t1 = bounds[p + 1];
      for (std::size_t k = 0; k < g.size(); k++)
      {
        const double t = t0 + (t1 - t0) * g.x[k];
        const double x = x0 + len * t;
        const double s = (1.0 - t) * u0 + t * u1;
        const double wt = g.w[k] * (t1 - t0) * len * mesh.density(x);
        const double fv = spec.f(x, s);
        const double Fv = spec.F(x, s);
        Require(std::isfinite(fv) && std::isfinite(Fv), ErrorCode::Numeric,
                "non-finite nonlinearity value");
        integral += wt * Fv;
        if (d0 >= 0)
        {
          gradient[d0] -= wt * fv * (1.0 - t);
        }
        if (d1 >= 0)
        {
          gradient[d1] -= wt * fv * t;
        }
      }
    }
  }
  return 0.5 * u.dot(au) - integral;
}

double Psi(const NonlinearitySpec &spec, const FormMatrices &forms, const Mesh &mesh,
           const Vector &u)
{
  Vector g;
  return PsiAndGradient(spec, forms, mesh, u, g);
}

Vector PsiGradient(const NonlinearitySpec &spec, const FormMatrices &forms, const Mesh &mesh,
                   const Vector &u)
{
  Vector g;
  PsiAndGradient(spec, forms, mesh, u, g);
  return g;
}

double EndpointScale(const NonlinearitySpec &spec, const FormMatrices &forms, const Mesh &mesh,
                     const Vector &phi1, double margin, int max_doublings)
{
  Require(margin > 0.0, ErrorCode::Argument, "endpoint margin must be positive");
  double R = 1.0;
  for (int k = 0; k <= max_doublings; k++, R *= 2.0)
  {
    const double worst = std::max(Psi(spec, forms, mesh, R * phi1), Psi(spec, forms, mesh, -R * phi1));
    if (worst <= -margin)
    {
      return R;
    }
  }
  Fail(ErrorCode::NotConverged,
       "endpoint schedule exhausted: Psi(+-R phi1) stays above -margin");
}

NonresonanceResult SolveNonresonance(const NonlinearitySpec &spec, const FormMatrices &forms,
                                     const Mesh &mesh, const Vector &phi1, const Vector &phi2,
                                     const NonresonanceOptions &options)
{
  ValidateSpec(spec, mesh);
  NonresonanceResult out;
  out.R = EndpointScale(spec, forms, mesh, phi1, options.margin);
  out.norm_a = PencilNorm(forms);

  const Metric metric(forms, options.metric);
  PathEnsemble path = InitialPath(metric, phi1, phi2, options.nodes);
  for (Vector &v : path)
  {
    v *= out.R;
  }
  StringOptions so;
  so.on_sphere = false;
  so.grad_tol = options.rel_grad_tol * out.norm_a;
  so.max_sweeps = options.max_sweeps;
  so.warmup_sweeps = options.warmup_sweeps;
  so.step = options.step_fraction / MetricSpectralRadius(forms, metric);
  const Objective objective = [&](const Vector &u, Vector &g)
  { return PsiAndGradient(spec, forms, mesh, u, g); };
  const StringResult sr = RunString(objective, metric, std::move(path), so);

  out.u = sr.u;
  out.psi_value = sr.c;
  out.grad_norm = sr.grad_norm;
  out.sweeps = sr.sweeps;
  out.norm_u = std::sqrt(out.u.dot(forms.M * out.u));
  out.converged = sr.converged && out.norm_u >= options.nontrivial_fraction * out.R;
  return out;
}

MountainPassResult JLevel(const NonlinearitySpec &spec, const FormMatrices &forms,
                          const Mesh &mesh, const Vector &phi1, const Vector &phi2,
                          const MountainPassOptions &options)
{
  FucikFunctional j;
  j.forms = &forms;
  j.mesh = &mesh;
  j.r_plus = 1.0;
  j.r_minus = 1.0;
  j.w_plus = spec.Delta_plus;
  j.w_minus = spec.Delta_minus;
  const Metric metric(forms, options.metric);
  return MountainPass(j, InitialPath(metric, phi1, phi2, options.nodes), options);
}

}  // namespace logfucik
