// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOGFUCIK_SPECTRAL_HPP
#define LOGFUCIK_SPECTRAL_HPP

#include <string>
#include <vector>
#include "discretization.hpp"

namespace logfucik
{

enum class SignClass
{
  Positive,
  Negative,
  SignChanging
};

const char *SignClassName(SignClass c);

struct SignReport
{
  double pos_measure = 0.0;  // fraction of nodes with u_i > theta ||u||_inf
  double neg_measure = 0.0;  // fraction of nodes with u_i < -theta ||u||_inf
  double dead_zone = 0.0;
  SignClass sign_class = SignClass::Positive;
};

SignReport ClassifySign(const Vector &u, double theta = 1e-6);

struct EigenPair
{
  int index = 0;  // 1-based
  double lambda = 0.0;
  Vector vector;  // M-normalized
  SignClass sign_class = SignClass::Positive;
  double residual = 0.0;  // ||A u - lambda M u||_2 / ||A||_F
};

// First k pairs of A u = lambda M u in ascending order, with the global sign fixed so that
// the M-weighted mean is nonnegative.
std::vector<EigenPair> SolveEig(const FormMatrices &forms, std::size_t k, double dead_zone = 1e-6);

// Largest eigenvalue of the pencil (A, M); used as the scale ||A|| for tolerances.
double PencilNorm(const FormMatrices &forms);

struct WeightedPair
{
  double mu = 0.0;
  Vector vector;  // normalized in the a-weighted mass
  SignClass sign_class = SignClass::Positive;
};

// A u = mu M_a u with M_a the mass matrix weighted by the P1 interpolant of a > 0.
std::vector<WeightedPair> WeightedSolve(const FormMatrices &forms, const Mesh &mesh,
                                        const Vector &a, std::size_t k, double dead_zone = 1e-6);

// Global sign convention shared by all solvers: 1^T M u >= 0, ties broken by the largest
// component.
void FixSign(const Vector &lumped, Vector &u);

}  // namespace logfucik

#endif  // LOGFUCIK_SPECTRAL_HPP
