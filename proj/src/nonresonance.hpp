// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOGFUCIK_NONRESONANCE_HPP
#define LOGFUCIK_NONRESONANCE_HPP

#include <functional>
#include "discretization.hpp"
#include "fucik.hpp"
#include "string_method.hpp"

namespace logfucik
{

// Nonlinearity f(x, s) with primitive F(x, s) = int_0^s f(x, t) dt and nodal bounds on its
// asymptotic slopes:
//   gamma+- <= f(x, s)/s <= Gamma+-      as s -> +-infinity
//   delta+- <= 2 F(x, s)/s^2 <= Delta+-  as s -> +-infinity
struct NonlinearitySpec
{
  std::function<double(double x, double s)> f;
  std::function<double(double x, double s)> F;
  Vector gamma_plus, gamma_minus, Gamma_plus, Gamma_minus;
  Vector delta_plus, delta_minus, Delta_plus, Delta_minus;
  double lambda1 = 0.0;
  double alpha = 0.0;  // target point on the first nontrivial curve
  double beta = 0.0;
};

// f(x, s) = q+ s+ - q- s- + epsilon arctan(s) with q+- = lambda1 + fraction (alpha or beta -
// lambda1). Slope bounds are q+- -+ a quarter of the smallest available room.
NonlinearitySpec DefaultNonlinearity(const Mesh &mesh, double lambda1, double alpha, double beta,
                                     double fraction, double epsilon);

struct ValidationOptions
{
  double tol = 1e-9;
  double probe = 1e8;  // |s| used to sample the asymptotic slopes
};

// Enforces every slope inequality pointwise on the nodes, samples the asymptotic ratios and
// checks F against a quadrature of f. Throws ErrorCode::Argument on the first violation.
void ValidateSpec(const NonlinearitySpec &spec, const Mesh &mesh,
                  const ValidationOptions &options = {});

double Psi(const NonlinearitySpec &spec, const FormMatrices &forms, const Mesh &mesh,
           const Vector &u);

// Euclidean gradient A u - (int f(x, u~) phi_i)_i; its Riesz representative is G^{-1} of it.
Vector PsiGradient(const NonlinearitySpec &spec, const FormMatrices &forms, const Mesh &mesh,
                   const Vector &u);

double PsiAndGradient(const NonlinearitySpec &spec, const FormMatrices &forms, const Mesh &mesh,
                      const Vector &u, Vector &gradient);

// Smallest R = 2^k, k = 0..max_doublings, with max Psi(+-R phi1) <= -margin.
double EndpointScale(const NonlinearitySpec &spec, const FormMatrices &forms, const Mesh &mesh,
                     const Vector &phi1, double margin = 1.0, int max_doublings = 40);

struct NonresonanceOptions
{
  std::size_t nodes = 41;
  double rel_grad_tol = 1e-6;
  int max_sweeps = 20000;
  int warmup_sweeps = 100;
  double step_fraction = 0.5;
  double margin = 1.0;
  double nontrivial_fraction = 1e-3;
  MetricKind metric = MetricKind::Lumped;
};

struct NonresonanceResult
{
  Vector u;
  double psi_value = 0.0;
  double grad_norm = 0.0;  // G-norm of the Riesz representative at u
  double R = 0.0;
  double norm_u = 0.0;     // L2 norm of u~
  double norm_a = 0.0;     // lambda_max(A, M)
  bool converged = false;  // gradient below tolerance and u nontrivial
  int sweeps = 0;
};

// Unconstrained mountain pass between -R phi1 and R phi1.
NonresonanceResult SolveNonresonance(const NonlinearitySpec &spec, const FormMatrices &forms,
                                     const Mesh &mesh, const Vector &phi1, const Vector &phi2,
                                     const NonresonanceOptions &options = {});

// Minimax level d of J(u) = u^T A u - int Delta+ (u~+)^2 - int Delta- (u~-)^2 over paths on the
// sphere joining -phi1 and phi1.
MountainPassResult JLevel(const NonlinearitySpec &spec, const FormMatrices &forms,
                          const Mesh &mesh, const Vector &phi1, const Vector &phi2,
                          const MountainPassOptions &options = {});

}  // namespace logfucik

#endif  // LOGFUCIK_NONRESONANCE_HPP
