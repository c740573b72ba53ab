// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <doctest.h>
#include "errors.hpp"
#include "fractional.hpp"
#include "special_constants.hpp"
#include "spectral.hpp"
#include "support.hpp"

using namespace logfucik;
using namespace logfucik::testing;

namespace
{

// kappa_s(x) = c(1,s) int_{R \ Omega} |x - y|^{-1-2s} dy by quadrature on both half-lines.
double KappaOracle(double x, double a, double b, double s)
{
  boost::math::quadrature::exp_sinh<double> integrator;
  // y = d e^v turns the algebraic tail into an exponential one.
  auto tail = [&](double d)
  { return integrator.integrate([&](double v) { return std::pow(d, -2.0 * s) * std::exp(-2.0 * s * v); }); };
  return FractionalConstant(1, s) * (tail(x - a) + tail(b - x));
}

}  // namespace

TEST_CASE("kappa_s closed form")
{
  const Domain d = Domain::Interval(-0.5, 0.5);
  for (double s : {0.025, 0.1, 0.25, 0.5})
  {
    for (double x : {-0.45, -0.1, 0.0, 0.3})
    {
      CHECK(KappaS(x, d, s) == doctest::Approx(KappaOracle(x, -0.5, 0.5, s)).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(KappaS(0.0, Domain::Disc(0.5), 0.1), Error);
}

TEST_CASE("fractional matrix")
{
  const Problem &p = IntervalProblem(64);
  for (double s : {0.05, 0.5})
  {
    const FractionalForm F = AssembleFractional(p.mesh, s, QuadratureSpec{});
    CHECK((F.A_s - F.A_s.transpose()).norm() <= 1e-12 * F.A_s.norm());
    Eigen::SelfAdjointEigenSolver<Matrix> es(F.A_s);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    CHECK(F.s == s);
    CHECK(F.kappa.size() == static_cast<Eigen::Index>(p.mesh.n));
  }
  CHECK_THROWS_AS(AssembleFractional(p.mesh, 0.0, QuadratureSpec{}), Error);
  CHECK_THROWS_AS(AssembleFractional(p.mesh, 0.75, QuadratureSpec{}), Error);
  const Mesh disc = BuildMesh(Domain::Disc(0.5), 8);
  CHECK_THROWS_AS(AssembleFractional(disc, 0.1, QuadratureSpec{}), Error);
}

TEST_CASE("form of order s tends to the L2 product")
{
  const Problem &p = IntervalProblem(64);
  const Vector u = Interpolate(p.mesh, [](double x) { return std::cos(M_PI * x) * (1.0 + 0.3 * x); });
  const double l2 = u.dot(p.forms.M * u);
  double previous = INFINITY;
  for (double s : {0.1, 0.05, 0.025, 0.0125})
  {
    const FractionalForm F = AssembleFractional(p.mesh, s, QuadratureSpec{});
    const double gap = std::abs(u.dot(F.A_s * u) - l2);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 0.05 * l2);
}

TEST_CASE("first-order expansion errors decrease with s")
{
  const Problem &p = IntervalProblem(128);
  const auto rows = ExpansionError(p.forms, p.mesh, {0.1, 0.05, 0.025}, QuadratureSpec{});
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < rows.size(); i++)
  {
    CHECK(rows[i].e_form < rows[i - 1].e_form);
    CHECK(rows[i].e_eig < rows[i - 1].e_eig);
  }
  CHECK(rows[0].s == 0.1);
  CHECK_THROWS_AS(ExpansionError(p.forms, p.mesh, {0.05, 0.1}, QuadratureSpec{}), Error);
  CHECK_THROWS_AS(ExpansionError(p.forms, p.mesh, {}, QuadratureSpec{}), Error);
}
