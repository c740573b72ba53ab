// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include "string_method.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <Eigen/Eigenvalues>
#include "errors.hpp"

namespace logfucik
{

Metric::Metric(const FormMatrices &forms, MetricKind kind)
    : kind_(kind), mass_(&forms.M), lumped_(forms.lumped)
{
  if (kind_ == MetricKind::Consistent)
  {
    llt_.compute(forms.M);
    Require(llt_.info() == Eigen::Success, ErrorCode::Numeric,
            "mass matrix is not positive definite");
  }
  else
  {
    Require(lumped_.minCoeff() > 0.0, ErrorCode::Numeric, "lumped mass must be positive");
  }
}

Vector Metric::Solve(const Vector &g) const
{
  if (kind_ == MetricKind::Lumped)
  {
    return g.cwiseQuotient(lumped_);
  }
  return llt_.solve(g);
}

double Metric::Dot(const Vector &a, const Vector &b) const
{
  if (kind_ == MetricKind::Lumped)
  {
    return a.dot(lumped_.cwiseProduct(b));
  }
  return a.dot(*mass_ * b);
}

double Metric::Norm(const Vector &a) const
{
  return std::sqrt(std::max(Dot(a, a), 0.0));
}

double MetricSpectralRadius(const FormMatrices &forms, const Metric &metric)
{
  if (metric.kind() == MetricKind::Lumped)
  {
    const Vector s = forms.lumped.cwiseSqrt().cwiseInverse();
    const Matrix B = s.asDiagonal() * forms.A * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Matrix> es(B, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(forms.A, forms.M, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Vector ProjectedGradient(const Metric &metric, const Vector &u, const Vector &gradient,
                         bool on_sphere)
{
  Vector z = metric.Solve(gradient);
  if (!on_sphere)
  {
    return z;
  }
  const Vector mu_vec = metric.mass() * u;
  const Vector y = metric.Solve(mu_vec);
  const double mu = mu_vec.dot(z) / mu_vec.dot(y);
  return z - mu * y;
}

Vector Retract(const Matrix &M, const Vector &u)
{
  const double norm = std::sqrt(u.dot(M * u));
  Require(norm > 0.0 && std::isfinite(norm), ErrorCode::Numeric,
          "path node collapsed to zero or diverged");
  return u / norm;
}

void Reparametrize(std::vector<Vector> &path, const Metric &metric, std::size_t lo,
                   std::size_t hi, bool on_sphere)
{
  if (hi <= lo + 1)
  {
    return;
  }
  std::vector<double> s(hi - lo + 1, 0.0);
  for (std::size_t i = lo + 1; i <= hi; i++)
  {
    s[i - lo] = s[i - lo - 1] + metric.Norm(path[i] - path[i - 1]);
  }
  const double total = s.back();
  if (!(total > 0.0))
  {
    return;
  }
  const std::vector<Vector> old(path.begin() + lo, path.begin() + hi + 1);
  std::size_t seg = 0;
  for (std::size_t j = lo + 1; j < hi; j++)
  {
    const double target = total * static_cast<double>(j - lo) / static_cast<double>(hi - lo);
    while (seg + 2 < s.size() && s[seg + 1] < target)
    {
      seg++;
    }
    const double len = s[seg + 1] - s[seg];
    const double t = len > 0.0 ? std::clamp((target - s[seg]) / len, 0.0, 1.0) : 0.0;
    Vector v = (1.0 - t) * old[seg] + t * old[seg + 1];
    path[j] = on_sphere ? Retract(metric.mass(), v) : v;
  }
}

StringResult RunString(const Objective &objective, const Metric &metric,
                       std::vector<Vector> path, const StringOptions &options)
{
  const std::size_t m = path.size();
  Require(m >= 3, ErrorCode::Argument, "string needs at least 3 nodes");
  Require(options.step > 0.0 && std::isfinite(options.step), ErrorCode::Argument,
          "string step must be positive");
  Require(options.max_sweeps >= 1, ErrorCode::Argument, "sweep cap must be >= 1");

  StringResult result;
  result.min_path_max = std::numeric_limits<double>::infinity();
  std::vector<double> energy(m);
  std::vector<Vector> grad(m);
  std::size_t apex = 0;
  double c_prev = std::numeric_limits<double>::quiet_NaN();

  for (int sweep = 1; sweep <= options.max_sweeps; sweep++)
  {
    for (std::size_t k = 0; k < m; k++)
    {
      energy[k] = objective(path[k], grad[k]);
      Require(std::isfinite(energy[k]), ErrorCode::Numeric, "non-finite energy on the path");
    }
    result.min_path_max =
        std::min(result.min_path_max, *std::max_element(energy.begin(), energy.end()));

    const bool climbing = sweep > options.warmup_sweeps;
    if (!climbing || apex == 0)
    {
      apex = static_cast<std::size_t>(
          std::max_element(energy.begin() + 1, energy.end() - 1) - energy.begin());
    }

    std::vector<Vector> step_dir(m);
    double apex_norm = 0.0;
    for (std::size_t k = 1; k + 1 < m; k++)
    {
      step_dir[k] = ProjectedGradient(metric, path[k], grad[k], options.on_sphere);
      if (k == apex)
      {
        apex_norm = metric.Norm(step_dir[k]);
      }
    }

    result.sweeps = sweep;
    result.apex = static_cast<int>(apex);
    result.c = energy[apex];
    result.grad_norm = apex_norm;
    result.u = path[apex];
    if (climbing && apex_norm <= options.grad_tol && std::abs(energy[apex] - c_prev) <= options.grad_tol)
    {
      result.converged = true;
      break;
    }
    c_prev = energy[apex];

    for (std::size_t k = 1; k + 1 < m; k++)
    {
      Vector dir = step_dir[k];
      if (climbing && k == apex)
      {
        Vector tau = path[k + 1] - path[k - 1];
        if (options.on_sphere)
        {
          const Vector mu_vec = metric.mass() * path[k];
          const Vector y = metric.Solve(mu_vec);
          tau -= (mu_vec.dot(tau) / mu_vec.dot(y)) * y;
        }
        const double tn = metric.Norm(tau);
        if (tn > 0.0)
        {
          tau /= tn;
          dir -= 2.0 * metric.Dot(dir, tau) * tau;
        }
      }
      Vector next = path[k] - options.step * dir;
      path[k] = options.on_sphere ? Retract(metric.mass(), next) : next;
    }

    if (climbing)
    {
      Reparametrize(path, metric, 0, apex, options.on_sphere);
      Reparametrize(path, metric, apex, m - 1, options.on_sphere);
    }
    else
    {
      Reparametrize(path, metric, 0, m - 1, options.on_sphere);
    }
  }
  result.path = std::move(path);
  return result;
}

}  // namespace logfucik
