// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>
#include "errors.hpp"

namespace logfucik
{

namespace
{

// Legendre P_q(z) and its derivative by the three-term recurrence.
std::pair<double, double> Legendre(int q, double z)
{
  double p0 = 1.0, p1 = z;
  for (int k = 2; k <= q; k++)
  {
    const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  return {p1, q * (z * p1 - p0) / (z * z - 1.0)};
}

Rule ComputeGaussLegendre(int q)
{
  Rule rule;
  if (q == 1)
  {
    rule.x = {0.5};
    rule.w = {1.0};
    return rule;
  }
  rule.x.resize(q);
  rule.w.resize(q);
  for (int i = 0; i < q; i++)
  {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    for (int it = 0; it < 100; it++)
    {
      const auto [p, dp] = Legendre(q, z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16)
      {
        break;
      }
    }
    const double dp = Legendre(q, z).second;
    // Map [-1, 1] -> [0, 1], ascending.
    rule.x[i] = 0.5 * (1.0 - z);
    rule.w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

}  // namespace

const Rule &GaussLegendre(int q)
{
  Require(q >= 1 && q <= 200, ErrorCode::Argument, "Gauss order must be in [1, 200]");
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(q);
  if (it == cache.end())
  {
    it = cache.emplace(q, ComputeGaussLegendre(q)).first;
  }
  return it->second;
}

Rule GradedRule(int q, int levels, double grading)
{
  Require(levels >= 1, ErrorCode::Argument, "graded rule needs at least one level");
  Require(grading >= 1.0, ErrorCode::Argument, "grading exponent must be >= 1");
  const Rule &base = GaussLegendre(q);
  Rule rule;
  rule.x.reserve(base.size() * levels);
  rule.w.reserve(base.size() * levels);
  double left = 0.0;
  for (int k = 1; k <= levels; k++)
  {
    const double right = std::pow(static_cast<double>(k) / levels, grading);
    const double len = right - left;
    for (std::size_t i = 0; i < base.size(); i++)
    {
      rule.x.push_back(left + len * base.x[i]);
      rule.w.push_back(len * base.w[i]);
    }
    left = right;
  }
  return rule;
}

Rule Mirrored(const Rule &rule)
{
  Rule out;
  out.x.resize(rule.size());
  out.w.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); i++)
  {
    out.x[rule.size() - 1 - i] = 1.0 - rule.x[i];
    out.w[rule.size() - 1 - i] = rule.w[i];
  }
  return out;
}

}  // namespace logfucik
