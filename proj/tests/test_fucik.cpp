// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <doctest.h>
#include "errors.hpp"
#include "fucik.hpp"
#include "spectral.hpp"
#include "support.hpp"

using namespace logfucik;
using namespace logfucik::testing;

namespace
{

struct Setup
{
  const Problem &p = IntervalProblem(64);
  std::vector<EigenPair> eig = SolveEig(p.forms, 4);
  Metric metric{p.forms, MetricKind::Lumped};
};

// Random unit vector in the M-tangent space at u.
Vector Tangent(std::mt19937_64 &rng, const Matrix &M, const Vector &u)
{
  Vector v = RandomVector(rng, u.size());
  v -= (v.dot(M * u) / u.dot(M * u)) * u;
  return v / std::sqrt(v.dot(M * v));
}

}  // namespace

TEST_CASE("energy at the eigenfunctions")
{
  Setup s;
  const Vector &phi1 = s.eig[0].vector;
  for (double r : {0.0, 1.0, 7.5})
  {
    const auto f = FucikFunctional::Fucik(s.p.forms, s.p.mesh, r);
    CHECK(Energy(f, phi1) == doctest::Approx(s.eig[0].lambda - r).epsilon(1e-10));
    CHECK(Energy(f, -phi1) == doctest::Approx(s.eig[0].lambda).epsilon(1e-10));
    CHECK(LagrangeMultiplier(f, phi1) == doctest::Approx(s.eig[0].lambda - r).epsilon(1e-10));
    CHECK(LagrangeMultiplier(f, -phi1) == doctest::Approx(s.eig[0].lambda).epsilon(1e-10));
    // phi_1 and -phi_1 are critical points of the constrained functional.
    CHECK(s.metric.Norm(ConstrainedGradient(f, s.metric, phi1)) <= 1e-8 * PencilNorm(s.p.forms));
    CHECK(s.metric.Norm(ConstrainedGradient(f, s.metric, -phi1)) <= 1e-8 * PencilNorm(s.p.forms));
  }
  const auto f0 = FucikFunctional::Fucik(s.p.forms, s.p.mesh, 0.0);
  std::mt19937_64 rng(2);
  const Vector u = RandomVector(rng, s.p.mesh.n);
  CHECK(Energy(f0, u) == doctest::Approx(u.dot(s.p.forms.A * u)).epsilon(1e-13));
  CHECK(LagrangeMultiplier(f0, s.eig[1].vector) == doctest::Approx(s.eig[1].lambda).epsilon(1e-10));
}

TEST_CASE("constrained gradient against central differences")
{
  Setup s;
  std::mt19937_64 rng(17);
  const auto f = FucikFunctional::Fucik(s.p.forms, s.p.mesh, 3.0);
  const double eps = 1e-6;
  for (int t = 0; t < 20; t++)
  {
    const Vector u = Retract(s.p.forms.M, RandomVector(rng, s.p.mesh.n));
    const Vector v = Tangent(rng, s.p.forms.M, u);
    const Vector R = ConstrainedGradient(f, s.metric, u);
    CHECK(std::abs(R.dot(s.p.forms.M * u)) <= 1e-10 * s.metric.Norm(R));
    const double fd = (Energy(f, u + eps * v) - Energy(f, u - eps * v)) / (2.0 * eps);
    CHECK(s.metric.Dot(R, v) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("initial path")
{
  Setup s;
  const PathEnsemble three = InitialPath(s.metric, s.eig[0].vector, s.eig[1].vector, 3);
  REQUIRE(three.size() == 3);
  CHECK((three[0] + s.eig[0].vector).norm() <= 1e-12);
  CHECK((three[1] - s.eig[1].vector).norm() <= 1e-10);
  CHECK((three[2] - s.eig[0].vector).norm() <= 1e-12);

  const std::size_t m = 41;
  const PathEnsemble path = InitialPath(s.metric, s.eig[0].vector, s.eig[2].vector + s.eig[1].vector, m);
  REQUIRE(path.size() == m);
  double length = 0.0;
  std::vector<double> gaps;
  for (std::size_t i = 0; i < m; i++)
  {
    CHECK(std::abs(path[i].dot(s.p.forms.M * path[i]) - 1.0) <= 1e-10);
    if (i > 0)
    {
      gaps.push_back(s.metric.Norm(path[i] - path[i - 1]));
      length += gaps.back();
    }
  }
  for (double g : gaps)
  {
    CHECK(g <= 2.0 / (m - 1) * length);
  }
  CHECK_THROWS_AS(InitialPath(s.metric, s.eig[0].vector, 2.0 * s.eig[0].vector, 5), Error);
}

TEST_CASE("mountain pass at r = 0 recovers lambda_2")
{
  Setup s;
  const auto f = FucikFunctional::Fucik(s.p.forms, s.p.mesh, 0.0);
  MountainPassOptions opts;
  const auto mp = MountainPass(f, InitialPath(s.metric, s.eig[0].vector, s.eig[1].vector, opts.nodes), opts);
  CHECK(mp.string.converged);
  CHECK(mp.c == doctest::Approx(s.eig[1].lambda).epsilon(0.02));
  CHECK(mp.c > s.eig[0].lambda);
  CHECK(ClassifySign(mp.u).sign_class == SignClass::SignChanging);
}

TEST_CASE("mountain pass above the diagonal")
{
  Setup s;
  const double r = 2.0;
  const auto f = FucikFunctional::Fucik(s.p.forms, s.p.mesh, r);
  MountainPassOptions opts;
  // A generic seed: the minimax level does not depend on the starting path.
  const Vector seed = s.eig[1].vector + 0.3 * s.eig[2].vector;
  const auto mp = MountainPass(f, InitialPath(s.metric, s.eig[0].vector, seed, opts.nodes), opts);
  CHECK(mp.string.converged);
  CHECK(mp.c > s.eig[0].lambda);
  CHECK(mp.c < s.eig[1].lambda);
  CHECK(ClassifySign(mp.u).sign_class == SignClass::SignChanging);
  CHECK(std::abs(mp.u.dot(s.p.forms.M * mp.u) - 1.0) <= 1e-10);
  const VerifyResult vr = VerifyPair(s.p.forms, s.p.mesh, r + mp.c, mp.c, mp.u);
  CHECK(vr.residual <= 1e-6);
  const SplitDiagnostics d = SplittingDefects(s.p.forms, s.p.mesh, r, mp.c, mp.u);
  CHECK(std::abs(d.plus_defect) <= 1e-5 * PencilNorm(s.p.forms));
  CHECK(std::abs(d.minus_defect) <= 1e-5 * PencilNorm(s.p.forms));
}

TEST_CASE("verify pair on the diagonal and its mirror symmetry")
{
  Setup s;
  for (const EigenPair &e : s.eig)
  {
    const VerifyResult r = VerifyPair(s.p.forms, s.p.mesh, e.lambda, e.lambda, e.vector);
    CHECK(r.residual <= 1e-8);
    const VerifyResult m = VerifyPair(s.p.forms, s.p.mesh, e.lambda, e.lambda, -e.vector);
    CHECK(std::abs(r.residual - m.residual) <= 1e-10);
  }
  std::mt19937_64 rng(4);
  const Vector u = RandomVector(rng, s.p.mesh.n);
  const VerifyResult a = VerifyPair(s.p.forms, s.p.mesh, 3.0, 1.5, u);
  const VerifyResult b = VerifyPair(s.p.forms, s.p.mesh, 1.5, 3.0, -u);
  CHECK(a.residual == b.residual);
  CHECK((a.u + b.u).norm() == 0.0);
  // A pair well away from the spectrum keeps a visible residual.
  CHECK(VerifyPair(s.p.forms, s.p.mesh, 2.0, 1.5, s.eig[1].vector).residual > 1e-3);
}

TEST_CASE("curve tracing")
{
  Setup s;
  const double gap = s.eig[1].lambda - s.eig[0].lambda;
  const std::vector<double> grid = {0.0, 0.5 * gap, gap, 2.0 * gap};
  const CurveResult curve = TraceCurve(s.p.forms, s.p.mesh, grid, CurveOptions{});
  REQUIRE(curve.points.size() == 2 * grid.size());
  CHECK(curve.lambda1 == doctest::Approx(s.eig[0].lambda));
  for (std::size_t i = 0; i < grid.size(); i++)
  {
    const FucikPoint &pt = curve.points[i];
    const FucikPoint &mirror = curve.points[grid.size() + i];
    CHECK(pt.converged);
    CHECK(pt.residual <= 1e-6);
    CHECK(pt.alpha == doctest::Approx(pt.r + pt.c));
    CHECK(pt.beta == pt.c);
    CHECK(pt.beta > curve.lambda1);
    CHECK(!pt.mirrored);
    CHECK(mirror.mirrored);
    CHECK(mirror.alpha == pt.beta);
    CHECK(mirror.beta == pt.alpha);
    CHECK(std::abs(mirror.residual - pt.residual) <= 1e-10);
    for (std::size_t j = i + 1; j < grid.size(); j++)
    {
      const FucikPoint &q = curve.points[j];
      CHECK(q.c < pt.c);
      CHECK(q.r + q.c > pt.r + pt.c);
      CHECK(pt.c - q.c <= (q.r - pt.r) * (1.0 + 1e-2));
    }
  }
  CHECK_THROWS_AS(TraceCurve(s.p.forms, s.p.mesh, {1.0, 0.5}, CurveOptions{}), Error);
}
