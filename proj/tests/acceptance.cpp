// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <unistd.h>
#include "config.hpp"
#include "discretization.hpp"
#include "fractional.hpp"
#include "fucik.hpp"
#include "io.hpp"
#include "nonresonance.hpp"
#include "runner.hpp"
#include "special_constants.hpp"
#include "spectral.hpp"

using namespace logfucik;
namespace fs = std::filesystem;

namespace
{

struct Outcome
{
  bool pass = true;
  std::string detail;

  void Require(bool cond, const std::string &what)
  {
    if (!cond)
    {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void Note(const std::string &what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string Num(double x) { return FormatNumber(x); }

int g_failures = 0;

void Criterion(int id, const std::string &name, double limit_seconds,
               const std::function<void(Outcome &)> &body)
{
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try
  {
    body(out);
  }
  catch (const std::exception &e)
  {
    out.pass = false;
    out.Note(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0.0 && secs > limit_seconds)
  {
    out.pass = false;
    out.Note("runtime " + Num(secs) + " s exceeds " + Num(limit_seconds) + " s");
  }
  if (!out.pass) g_failures++;
  std::printf("[%s] C%d %s (%.2f s)%s%s\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), secs,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

Vector Normal(std::mt19937_64 &rng, std::size_t n)
{
  std::normal_distribution<double> d;
  Vector v(n);
  for (Eigen::Index i = 0; i < v.size(); i++) v[i] = d(rng);
  return v;
}

}  // namespace

int main()
{
  const std::uint64_t seed = 20240601;
  std::mt19937_64 rng(seed);

  // Shared default problem: interval (-1/2, 1/2), n = 256.
  const Mesh mesh = BuildMesh(Domain::Interval(-0.5, 0.5), 256);
  const FormMatrices forms = Assemble(mesh, QuadratureSpec{});
  const std::vector<EigenPair> eig = SolveEig(forms, 6);
  const double l1 = eig[0].lambda, l2 = eig[1].lambda, gap = l2 - l1;
  const double norm_a = PencilNorm(forms);
  const Metric metric(forms, MetricKind::Lumped);
  const MountainPassOptions mp_opts;

  Criterion(1, "constants", 1.0, [&](Outcome &o)
  {
    o.Require(std::abs(RhoOfN(1) + 2.0 * EulerGamma()) <= 1e-10, "rho_1 != -2 gamma");
    o.Require(std::abs(CofN(1) - 1.0) <= 1e-12, "c_1 != 1");
    for (int n = 1; n <= 10; n++) o.Require(CofN(n) >= DofN(n), "c_N < d_N at N=" + std::to_string(n));
    o.Note("rho_1=" + Num(RhoOfN(1)));
  });

  Criterion(2, "spectrum structure", 30.0, [&](Outcome &o)
  {
    const auto fresh = SolveEig(Assemble(mesh, QuadratureSpec{}), 6);
    o.Require((fresh[1].lambda - fresh[0].lambda) / std::abs(fresh[1].lambda) > 1e-3, "lambda_1 not simple");
    o.Require(ClassifySign(fresh[0].vector).sign_class == SignClass::Positive, "phi_1 not one-signed");
    for (std::size_t k = 1; k < 6; k++)
      o.Require(ClassifySign(fresh[k].vector).sign_class == SignClass::SignChanging,
                "phi_" + std::to_string(k + 1) + " not sign-changing");
    o.Require(fresh[0].lambda + CofN(1) * mesh.domain.measure() >= -1e-8, "lambda_1 + c_1|Omega| < 0");
    o.Note("lambda_1=" + Num(fresh[0].lambda) + " lambda_2=" + Num(fresh[1].lambda));
  });

  Criterion(3, "variational lambda_2", 60.0, [&](Outcome &o)
  {
    const auto mp = MountainPass(FucikFunctional::Fucik(forms, mesh, 0.0),
                                 InitialPath(metric, eig[0].vector, eig[1].vector, mp_opts.nodes), mp_opts);
    o.Require(mp.string.converged, "mountain pass not converged");
    o.Require(std::abs(mp.c - l2) <= 0.02 * std::abs(l2), "c(0) differs from lambda_2 by more than 2%");
    o.Note("c(0)=" + Num(mp.c) + " lambda_2=" + Num(l2));
  });

  Criterion(4, "diagonal membership", 10.0, [&](Outcome &o)
  {
    double worst = 0.0;
    for (std::size_t k = 0; k < 4; k++)
    {
      const auto r = VerifyPair(forms, mesh, eig[k].lambda, eig[k].lambda, eig[k].vector);
      worst = std::max(worst, r.residual);
    }
    o.Require(worst <= 1e-8, "residual above 1e-8");
    o.Note("max residual=" + Num(worst));
  });

  // Curve over 11 grid points on [0, 10 gap], shared by criteria 5, 6, 7 and 9.
  std::vector<double> grid;
  for (int i = 0; i <= 10; i++) grid.push_back(gap * i);
  CurveResult curve;
  double curve_secs = 0.0;
  {
    const auto start = std::chrono::steady_clock::now();
    curve = TraceCurve(forms, mesh, grid, CurveOptions{});
    curve_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  const std::size_t m = grid.size();

  Criterion(5, "curve monotonicity and Lipschitz bound", 600.0 - curve_secs, [&](Outcome &o)
  {
    for (std::size_t i = 0; i < m; i++)
    {
      o.Require(curve.points[i].converged, "point " + std::to_string(i) + " not converged");
      for (std::size_t j = i + 1; j < m; j++)
      {
        const FucikPoint &p = curve.points[i], &q = curve.points[j];
        if (j == i + 1)
        {
          o.Require(q.c < p.c, "c not strictly decreasing at " + std::to_string(j));
          o.Require(q.r + q.c > p.r + p.c, "r + c not strictly increasing at " + std::to_string(j));
        }
        const double drop = p.c - q.c;
        o.Require(drop >= 0.0 && drop <= (q.r - p.r) * (1.0 + 1e-2),
                  "Lipschitz bound fails for (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
    o.Note("curve time " + Num(curve_secs) + " s; c(0)=" + Num(curve.points[0].c) +
           " c(r_max)=" + Num(curve.points[m - 1].c));
  });

  Criterion(6, "asymptote", 0.0, [&](Outcome &o)
  {
    const double tail = curve.points[m - 1].c - l1;
    o.Require(tail <= 0.1 * gap, "c(r_max) - lambda_1 above 0.1 gap");
    for (std::size_t i = 1; i < m; i++)
      o.Require(curve.points[i].c - l1 < curve.points[i - 1].c - l1, "c - lambda_1 not strictly decreasing");
    o.Note("(c(r_max) - lambda_1)/gap=" + Num(tail / gap));
  });

  Criterion(7, "strict gap above lambda_1", 0.0, [&](Outcome &o)
  {
    double lowest = INFINITY;
    for (std::size_t i = 0; i < m; i++) lowest = std::min(lowest, curve.points[i].c - l1);
    o.Require(lowest >= 0.01 * gap, "min c(r) - lambda_1 below 0.01 gap");
    o.Note("min (c - lambda_1)/gap=" + Num(lowest / gap));
  });

  Criterion(8, "first nontrivial curve", 900.0, [&](Outcome &o)
  {
    const double r = gap;
    const double c = curve.points[1].c;  // grid point 1 is r = gap
    const double margin = 0.01 * gap;
    const double lo = l1 + margin, hi = c - margin;
    double best = INFINITY;
    for (int i = 0; i < 15; i++)
    {
      const double theta = lo + (hi - lo) * (i + 0.5) / 15.0;
      for (int s = 0; s < 20; s++)
      {
        const auto res = VerifyPair(forms, mesh, r + theta, theta, Normal(rng, mesh.n));
        best = std::min(best, res.residual);
      }
    }
    o.Require(best > 1e-6, "a scan pair reached residual <= 1e-6");
    double spread = 0.0;
    for (int k = 0; k < 10; k++)
    {
      const Vector seed_vec = Normal(rng, mesh.n);
      const auto mp = MountainPass(FucikFunctional::Fucik(forms, mesh, r),
                                   InitialPath(metric, eig[0].vector, seed_vec, mp_opts.nodes), mp_opts);
      spread = std::max(spread, std::abs(mp.c - c) / std::abs(c));
    }
    o.Require(spread <= 0.01, "restarts disagree by more than 1%");
    o.Note("scan min residual=" + Num(best) + " restart spread=" + Num(spread));
  });

  Criterion(9, "mirror symmetry", 0.0, [&](Outcome &o)
  {
    double worst = 0.0;
    for (std::size_t i = 0; i < m; i++)
      worst = std::max(worst, std::abs(curve.points[m + i].residual - curve.points[i].residual));
    o.Require(worst <= 1e-10, "mirrored residual differs");
    o.Note("max difference=" + Num(worst));
  });

  Criterion(10, "fractional expansion", 120.0, [&](Outcome &o)
  {
    const auto rows = ExpansionError(forms, mesh, {0.1, 0.05, 0.025}, QuadratureSpec{});
    for (std::size_t i = 1; i < rows.size(); i++)
    {
      o.Require(rows[i].e_form < rows[i - 1].e_form, "e_form not decreasing");
      o.Require(rows[i].e_eig < rows[i - 1].e_eig, "e_eig not decreasing");
    }
    o.Note("e_form=" + Num(rows[0].e_form) + "," + Num(rows[1].e_form) + "," + Num(rows[2].e_form) +
           " e_eig=" + Num(rows[0].e_eig) + "," + Num(rows[1].e_eig) + "," + Num(rows[2].e_eig));
  });

  Criterion(11, "form identities", 0.0, [&](Outcome &o)
  {
    // Pointwise split of (a - b)^2 on dyadic values, where every operation is exact.
    std::uniform_int_distribution<int> ints(-(1 << 20), 1 << 20);
    for (int i = 0; i < 10000; i++)
    {
      const double a = ints(rng) / 1024.0, b = ints(rng) / 1024.0;
      const double ap = std::max(a, 0.0), am = std::max(-a, 0.0);
      const double bp = std::max(b, 0.0), bm = std::max(-b, 0.0);
      const double lhs = (a - b) * (a - b);
      const double rhs = (ap - bp) * (ap - bp) + (am - bm) * (am - bm) + 2.0 * ap * bm + 2.0 * am * bp;
      if (lhs != rhs)
      {
        o.Require(false, "split identity inexact");
        break;
      }
    }
    // E(u, u) >= E(u+, u+) + E(u-, u-) on vectors whose signs are separated by zero nodes.
    std::uniform_int_distribution<std::size_t> cut(8, mesh.n - 9);
    for (int i = 0; i < 100; i++)
    {
      Vector u = Normal(rng, mesh.n).cwiseAbs();
      const std::size_t k = cut(rng);
      u[k] = 0.0;
      for (std::size_t j = k + 1; j < mesh.n; j++) u[j] = -u[j];
      if (i % 2) u = -u;
      const Vector up = PositivePart(u), um = NegativePart(u);
      const double split = EvaluateForm(forms, up, up) + EvaluateForm(forms, um, um);
      if (EvaluateForm(forms, u, u) < split - 1e-8 * std::abs(split))
      {
        o.Require(false, "split inequality fails");
        break;
      }
    }
    // Convexity along sigma_t = sqrt(t u^2 + (1 - t) v^2) for smooth positive bumps.
    const Domain d = mesh.domain;
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    int convex_checks = 0;
    for (int i = 0; i < 20; i++)
    {
      const double a1 = coef(rng), a2 = coef(rng), b1 = coef(rng), b2 = coef(rng);
      auto u = [=](double x) { return (x + 0.5) * (0.5 - x) * std::exp(a1 * x + a2 * std::cos(3.0 * x)); };
      auto v = [=](double x) { return std::pow((x + 0.5) * (0.5 - x), 1.5) * std::exp(b1 * x + b2 * std::sin(5.0 * x)); };
      const DirectValue wu = EvaluateFormDirect(u, u, d, QuadratureSpec{});
      const DirectValue wv = EvaluateFormDirect(v, v, d, QuadratureSpec{});
      for (double t : {0.25, 0.5, 0.75})
      {
        auto s = [=](double x) { return std::sqrt(t * u(x) * u(x) + (1.0 - t) * v(x) * v(x)); };
        const DirectValue ws = EvaluateFormDirect(s, s, d, QuadratureSpec{});
        const double slack = ws.error + t * wu.error + (1.0 - t) * wv.error;
        if (ws.value > t * wu.value + (1.0 - t) * wv.value + slack)
        {
          o.Require(false, "convexity fails at t=" + Num(t));
        }
        convex_checks++;
      }
    }
    o.Note(std::to_string(convex_checks) + " convexity checks");
  });

  Criterion(12, "gradient checks", 0.0, [&](Outcome &o)
  {
    const double eps = 1e-6;
    const auto f = FucikFunctional::Fucik(forms, mesh, gap);
    const NonlinearitySpec spec =
        DefaultNonlinearity(mesh, l1, curve.points[1].alpha, curve.points[1].beta, 0.5, -2.0);
    double worst_c = 0.0, worst_p = 0.0;
    for (int i = 0; i < 50; i++)
    {
      const Vector u = Retract(forms.M, Normal(rng, mesh.n));
      Vector v = Normal(rng, mesh.n);
      v -= v.dot(forms.M * u) * u;
      v /= std::sqrt(v.dot(forms.M * v));
      const Vector R = ConstrainedGradient(f, metric, u);
      const double fd = (Energy(f, u + eps * v) - Energy(f, u - eps * v)) / (2.0 * eps);
      worst_c = std::max(worst_c, std::abs(metric.Dot(R, v) - fd) / std::abs(fd));

      const Vector g = PsiGradient(spec, forms, mesh, u);
      const double fdp = (Psi(spec, forms, mesh, u + eps * v) - Psi(spec, forms, mesh, u - eps * v)) / (2.0 * eps);
      worst_p = std::max(worst_p, std::abs(g.dot(v) - fdp) / std::abs(fdp));
    }
    o.Require(worst_c <= 1e-5, "constrained gradient mismatch");
    o.Require(worst_p <= 1e-5, "psi gradient mismatch");
    o.Note("max rel error constrained=" + Num(worst_c) + " psi=" + Num(worst_p));
  });

  Criterion(13, "nonresonance", 300.0, [&](Outcome &o)
  {
    const FucikPoint &target = curve.points[1];
    const NonlinearitySpec spec = DefaultNonlinearity(mesh, l1, target.alpha, target.beta, 0.5, -2.0);
    ValidateSpec(spec, mesh);
    const NonresonanceResult res = SolveNonresonance(spec, forms, mesh, eig[0].vector, eig[1].vector);
    o.Require(res.converged, "not converged");
    o.Require(res.grad_norm <= 1e-6 * norm_a, "gradient above 1e-6 ||A||");
    o.Require(res.norm_u >= 1e-3 * res.R, "solution is trivial");
    o.Note("grad=" + Num(res.grad_norm) + " ||A||=" + Num(norm_a) + " ||u||=" + Num(res.norm_u) +
           " R=" + Num(res.R));
  });

  Criterion(14, "determinism", 0.0, [&](Outcome &o)
  {
    const fs::path dir = fs::temp_directory_path() / ("logfucik_accept_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    const RunConfig config = ParseConfig("mesh.n = 64\nrun.deterministic = true\nrun.output_dir = " + dir.string());
    auto snapshot = [&]
    {
      std::map<std::string, std::string> files;
      for (const auto &e : fs::directory_iterator(dir)) files[e.path().filename().string()] = ReadFile(e.path());
      return files;
    };
    for (const std::string &command : Commands())
    {
      o.Require(Run(command, config) == 0, command + " failed");
      const auto first = snapshot();
      o.Require(Run(command, config) == 0, command + " rerun failed");
      const auto second = snapshot();
      o.Require(first == second, command + " outputs differ between runs");
    }
    fs::remove_all(dir);
    o.Note("all subcommands at n=64");
  });

  std::printf("%d of 14 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
