// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOGFUCIK_SPECIAL_CONSTANTS_HPP
#define LOGFUCIK_SPECIAL_CONSTANTS_HPP

#include <span>

namespace logfucik
{

// Dimension-dependent constants of the logarithmic Laplacian on R^N.
//
//   c_N   = pi^(-N/2) Gamma(N/2)              kernel normalization
//   rho_N = 2 ln 2 + psi(N/2) - gamma          zero-order coefficient
//   d_N   = 2 omega_{N-1} / (N^2 (2 pi)^N)     lower-bound constant, d_N <= c_N
struct DimensionalConstants
{
  int dim;
  double c_n;
  double rho_n;
  double gamma;
  double d_n;
};

double EulerGamma();

// Digamma psi(x) for x > 0, ~1e-14 relative accuracy.
double Digamma(double x);

double CofN(int dim);
double RhoOfN(int dim);
double DofN(int dim);

// Surface measure of the unit sphere S^{N-1}; omega_0 = 2.
double UnitSphereMeasure(int dim);

DimensionalConstants ConstantsFor(int dim);

struct KernelValues
{
  double k;
  double j;
};

// Split of |z|^{-N} into the near (|z| <= 1) and far (|z| > 1) kernels. The unit sphere
// itself belongs to the near kernel.
KernelValues KernelSplit(std::span<const double> z);

// Fractional Laplacian normalization c(N,s) = 2^{2s} pi^{-N/2} s Gamma((N+2s)/2) / Gamma(1-s).
double FractionalConstant(int dim, double s);

}  // namespace logfucik

#endif  // LOGFUCIK_SPECIAL_CONSTANTS_HPP
