// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include "special_constants.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include "errors.hpp"

namespace logfucik
{

namespace
{

void CheckDim(int dim)
{
  Require(dim >= 1, ErrorCode::Domain,
          "spatial dimension must be >= 1, got " + std::to_string(dim));
}

}  // namespace

double EulerGamma()
{
  return std::numbers::egamma;
}

double Digamma(double x)
{
  Require(x > 0.0 && std::isfinite(x), ErrorCode::Domain,
          "digamma: argument must be positive and finite");
  // Recurrence psi(x) = psi(x + 1) - 1/x until x >= 6, then the asymptotic series
  //   psi(x) ~ ln x - 1/(2x) - sum_k B_{2k} / (2k x^{2k}).
  double shift = 0.0;
  while (x < 6.0)
  {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  // Coefficients B_{2k}/(2k) for k = 1..7.
  constexpr double b[] = {1.0 / 12.0,   -1.0 / 120.0,        1.0 / 252.0, -1.0 / 240.0,
                          1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
  double series = 0.0;
  double p = inv2;
  for (double coeff : b)
  {
    series += coeff * p;
    p *= inv2;
  }
  return shift + std::log(x) - 0.5 / x - series;
}

double CofN(int dim)
{
  CheckDim(dim);
  const double half = 0.5 * dim;
  return std::pow(std::numbers::pi, -half) * std::tgamma(half);
}

double RhoOfN(int dim)
{
  CheckDim(dim);
  return 2.0 * std::numbers::ln2 + Digamma(0.5 * dim) - EulerGamma();
}

double UnitSphereMeasure(int dim)
{
  CheckDim(dim);
  const double half = 0.5 * dim;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double DofN(int dim)
{
  CheckDim(dim);
  const double n = dim;
  return 2.0 * UnitSphereMeasure(dim) / (n * n * std::pow(2.0 * std::numbers::pi, n));
}

DimensionalConstants ConstantsFor(int dim)
{
  return {dim, CofN(dim), RhoOfN(dim), EulerGamma(), DofN(dim)};
}

KernelValues KernelSplit(std::span<const double> z)
{
  Require(!z.empty(), ErrorCode::Domain, "kernel: empty point");
  double r2 = 0.0;
  for (double zi : z)
  {
    r2 += zi * zi;
  }
  Require(r2 > 0.0, ErrorCode::Domain, "kernel: undefined at z = 0");
  const double r = std::sqrt(r2);
  const double value = std::pow(r, -static_cast<double>(z.size()));
  if (r <= 1.0)
  {
    return {value, 0.0};
  }
  return {0.0, value};
}

double FractionalConstant(int dim, double s)
{
  CheckDim(dim);
  Require(s > 0.0 && s < 1.0, ErrorCode::Domain, "fractional order must lie in (0, 1)");
  const double n = dim;
  return std::pow(2.0, 2.0 * s) * std::pow(std::numbers::pi, -0.5 * n) * s *
         std::tgamma(0.5 * (n + 2.0 * s)) / std::tgamma(1.0 - s);
}

}  // namespace logfucik
