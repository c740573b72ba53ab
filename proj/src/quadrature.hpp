// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOGFUCIK_QUADRATURE_HPP
#define LOGFUCIK_QUADRATURE_HPP

#include <vector>

namespace logfucik
{

struct Rule
{
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

// Gauss-Legendre rule with q points on [0, 1]. Exact for polynomials of degree 2q - 1.
const Rule &GaussLegendre(int q);

// Composite Gauss rule on [0, 1] whose panels are graded toward 0 with breakpoints
// (k / levels)^grading, k = 0..levels. Integrates f(t) = t^a log(t) and t^{-b}, b < 1,
// to high accuracy without special weights.
Rule GradedRule(int q, int levels, double grading);

// Same rule mirrored so that the grading clusters toward 1.
Rule Mirrored(const Rule &rule);

}  // namespace logfucik

#endif  // LOGFUCIK_QUADRATURE_HPP
