// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

// Shared fixtures and independent oracles for the unit tests.

#ifndef LOGFUCIK_TESTS_SUPPORT_HPP
#define LOGFUCIK_TESTS_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include "discretization.hpp"

namespace logfucik::testing
{

struct Problem
{
  Mesh mesh;
  FormMatrices forms;
};

// Assembled default interval problems, cached per size.
inline const Problem &IntervalProblem(std::size_t n)
{
  static std::map<std::size_t, std::unique_ptr<Problem>> cache;
  auto &slot = cache[n];
  if (!slot)
  {
    slot = std::make_unique<Problem>();
    slot->mesh = BuildMesh(Domain::Interval(-0.5, 0.5), n);
    slot->forms = Assemble(slot->mesh, QuadratureSpec{});
  }
  return *slot;
}

inline Vector RandomVector(std::mt19937_64 &rng, std::size_t n)
{
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Eigen::Index i = 0; i < v.size(); i++)
  {
    v[i] = normal(rng);
  }
  return v;
}

// P1 hat of interval dof i, evaluated directly from the vertex list.
inline double Hat(const Mesh &mesh, std::size_t dof, double x)
{
  const double c = mesh.vertices[dof + 1];
  const double d = std::abs(x - c) / mesh.h;
  return d < 1.0 ? 1.0 - d : 0.0;
}

// Piecewise linear function with nodal values u on an interval mesh.
inline double P1(const Mesh &mesh, const Vector &u, double x)
{
  double s = 0.0;
  for (std::size_t i = 0; i < mesh.n; i++)
  {
    s += u[i] * Hat(mesh, i, x);
  }
  return s;
}

// Tensor 20-point Gauss over [x0, x1] x [y0, y1] split into k x k panels.
inline double Double(const std::function<double(double, double)> &f, double x0, double x1,
                     double y0, double y1, int k = 4)
{
  using G = boost::math::quadrature::gauss<double, 20>;
  double sum = 0.0;
  const double hx = (x1 - x0) / k, hy = (y1 - y0) / k;
  for (int i = 0; i < k; i++)
  {
    for (int j = 0; j < k; j++)
    {
      const double ax = x0 + i * hx, ay = y0 + j * hy;
      sum += G::integrate(
          [&](double x) { return G::integrate([&](double y) { return f(x, y); }, ay, ay + hy); },
          ax, ax + hx);
    }
  }
  return sum;
}

// Adaptive 1D integral.
inline double Integral(const std::function<double(double)> &f, double a, double b)
{
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-13);
}

}  // namespace logfucik::testing

#endif  // LOGFUCIK_TESTS_SUPPORT_HPP
