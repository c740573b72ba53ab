// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOGFUCIK_FRACTIONAL_HPP
#define LOGFUCIK_FRACTIONAL_HPP

#include <vector>
#include "discretization.hpp"

namespace logfucik
{

// Galerkin form of the fractional Laplacian of order s on an interval with the Dirichlet
// exterior condition: interior double integral with kernel |x - y|^{-1-2s} plus the
// exterior potential kappa_s(x) = c(1,s)/(2s) [(x - a)^{-2s} + (b - x)^{-2s}].
struct FractionalForm
{
  double s = 0.0;
  Matrix A_s;
  Vector kappa;  // nodal values of kappa_s
};

double KappaS(double x, const Domain &domain, double s);

FractionalForm AssembleFractional(const Mesh &mesh, double s, const QuadratureSpec &quad);

struct ExpansionRow
{
  double s = 0.0;
  double e_form = 0.0;  // ||(A_s - M)/s - A||_F / ||A||_F
  double e_eig = 0.0;   // |(lambda_1(A_s, M) - 1)/s - lambda_1(A, M)|
};

std::vector<ExpansionRow> ExpansionError(const FormMatrices &forms, const Mesh &mesh,
                                         const std::vector<double> &s_list,
                                         const QuadratureSpec &quad);

}  // namespace logfucik

#endif  // LOGFUCIK_FRACTIONAL_HPP
