// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOGFUCIK_FUCIK_HPP
#define LOGFUCIK_FUCIK_HPP

#include <cstdint>
#include <vector>
#include "discretization.hpp"
#include "string_method.hpp"

namespace logfucik
{

// Split quadratic functional
//   E(u) = u^T A u - r_plus int w_plus (u~+)^2 - r_minus int w_minus (u~-)^2
// with u~ the P1 function of u and optional nodal weights (empty = 1). The Fucik functional
// is r_plus = r, r_minus = 0.
struct FucikFunctional
{
  const FormMatrices *forms = nullptr;
  const Mesh *mesh = nullptr;
  double r_plus = 0.0;
  double r_minus = 0.0;
  Vector w_plus;
  Vector w_minus;

  static FucikFunctional Fucik(const FormMatrices &forms, const Mesh &mesh, double r);
};

double Energy(const FucikFunctional &f, const Vector &u);

// Euclidean gradient of E; also returns E.
double EnergyAndGradient(const FucikFunctional &f, const Vector &u, Vector &gradient);

// Riesz representative (metric G) of E'(u) restricted to the tangent space of the sphere.
Vector ConstrainedGradient(const FucikFunctional &f, const Metric &metric, const Vector &u);

// Lagrange multiplier t = E(u) of a critical point; (r + t, t) is the candidate pair.
double LagrangeMultiplier(const FucikFunctional &f, const Vector &u);

using PathEnsemble = std::vector<Vector>;

// Two-segment normalized path -phi1 -> seed -> phi1, resampled at m nodes of equal arclength.
PathEnsemble InitialPath(const Metric &metric, const Vector &phi1, const Vector &seed,
                         std::size_t m);

struct MountainPassOptions
{
  std::size_t nodes = 41;
  double grad_tol = 0.0;       // absolute; 0 selects rel_grad_tol * ||A||
  double rel_grad_tol = 1e-6;
  int max_sweeps = 20000;
  int warmup_sweeps = 100;
  double step_fraction = 0.5;  // step = fraction / lambda_max(A, G)
  MetricKind metric = MetricKind::Lumped;
};

struct MountainPassResult
{
  double c = 0.0;
  Vector u;
  StringResult string;
  double norm_a = 0.0;  // lambda_max(A, M)
};

// Constrained minimax over paths joining -phi1 and phi1 on the M-sphere.
MountainPassResult MountainPass(const FucikFunctional &f, const PathEnsemble &path,
                                const MountainPassOptions &options);

struct VerifyOptions
{
  double tol = 1e-6;
  int max_iter = 60;
  double damping = 0.5;
  int max_backtracks = 40;
};

struct VerifyResult
{
  double residual = 0.0;  // ||A u - alpha b+ + beta b-|| / ||A u||
  Vector u;
  double shift = 0.0;     // t with (alpha + t, beta + t) solved exactly
  int iterations = 0;
  bool converged = false; // Newton system solved to round-off
};

// Damped Newton on A u = (alpha + t) b+(u) - (beta + t) b-(u), u^T M u = 1, with b+- the
// exact sign-part loads. The reported residual uses the unshifted pair, so it vanishes
// exactly when (alpha, beta) is in the discrete spectrum.
VerifyResult VerifyPair(const FormMatrices &forms, const Mesh &mesh, double alpha, double beta,
                        const Vector &u0, const VerifyOptions &options = {});

struct FucikPoint
{
  double r = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double c = 0.0;
  double residual = 0.0;
  int iters = 0;
  bool converged = false;
  bool mirrored = false;
  int apex = 0;
  Vector eigenfunction;
};

struct CurveResult
{
  std::vector<FucikPoint> points;  // grid points in order, then their mirror images
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

struct CurveOptions
{
  MountainPassOptions mountain_pass;
  VerifyOptions verify;
};

CurveResult TraceCurve(const FormMatrices &forms, const Mesh &mesh,
                       const std::vector<double> &r_grid, const CurveOptions &options);

// Splitting diagnostics at a critical point u with value theta:
//   E(u+, u+) + h(u+, u-) - (r + theta) ||u+||^2   and   E(u-, u-) + h - theta ||u-||^2
// with u+- the exact sign parts of the P1 function, so both vanish at a discrete solution.
struct SplitDiagnostics
{
  double plus_defect = 0.0;
  double minus_defect = 0.0;
  double cross = 0.0;
};

SplitDiagnostics SplittingDefects(const FormMatrices &forms, const Mesh &mesh, double r,
                                  double theta, const Vector &u);

}  // namespace logfucik

#endif  // LOGFUCIK_FUCIK_HPP
