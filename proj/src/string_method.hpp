// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOGFUCIK_STRING_METHOD_HPP
#define LOGFUCIK_STRING_METHOD_HPP

#include <functional>
#include <vector>
#include <Eigen/Cholesky>
#include "discretization.hpp"

namespace logfucik
{

enum class MetricKind
{
  Lumped,
  Consistent
};

// Inner product used for Riesz representatives and path arclength: the lumped (diagonal)
// or the consistent mass matrix.
class Metric
{
public:
  Metric(const FormMatrices &forms, MetricKind kind);

  MetricKind kind() const { return kind_; }
  Vector Solve(const Vector &g) const;  // G^{-1} g
  double Dot(const Vector &a, const Vector &b) const;
  double Norm(const Vector &a) const;
  const Matrix &mass() const { return *mass_; }

private:
  MetricKind kind_;
  const Matrix *mass_;
  Vector lumped_;
  Eigen::LLT<Matrix> llt_;
};

// Largest eigenvalue of (A, G); the explicit descent step is a fraction of its inverse.
double MetricSpectralRadius(const FormMatrices &forms, const Metric &metric);

// Objective for the string engine. Returns the energy and writes the Euclidean gradient.
using Objective = std::function<double(const Vector &u, Vector &gradient)>;

struct StringOptions
{
  double step = 0.0;          // explicit descent step (required)
  double grad_tol = 1e-6;     // absolute, on the G-norm of the apex gradient
  int max_sweeps = 20000;
  int warmup_sweeps = 100;    // plain string sweeps before the apex starts climbing
  bool on_sphere = true;      // retract onto {u^T M u = 1}
};

struct StringResult
{
  double c = 0.0;             // apex energy
  Vector u;                   // apex
  int apex = 0;
  int sweeps = 0;
  bool converged = false;
  double grad_norm = 0.0;     // G-norm of the projected gradient at the apex
  double min_path_max = 0.0;  // smallest max-node energy seen over all evaluated paths
  std::vector<Vector> path;   // relaxed path
};

// Riesz representative of the gradient in G, projected onto the tangent space of the
// M-sphere at u when on_sphere is set.
Vector ProjectedGradient(const Metric &metric, const Vector &u, const Vector &gradient,
                         bool on_sphere);

// Rescale to unit M-norm.
Vector Retract(const Matrix &M, const Vector &u);

// Redistribute nodes lo..hi (inclusive, both held fixed) at equal G-arclength.
void Reparametrize(std::vector<Vector> &path, const Metric &metric, std::size_t lo,
                   std::size_t hi, bool on_sphere);

// Climbing string method: relaxes the interior nodes of the path by explicit gradient
// descent; after the warm-up the highest node climbs along the path tangent to the saddle.
StringResult RunString(const Objective &objective, const Metric &metric,
                       std::vector<Vector> path, const StringOptions &options);

}  // namespace logfucik

#endif  // LOGFUCIK_STRING_METHOD_HPP
