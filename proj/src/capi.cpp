// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include "logfucik/logfucik.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include "config.hpp"
#include "errors.hpp"
#include "fucik.hpp"
#include "runner.hpp"
#include "special_constants.hpp"
#include "spectral.hpp"
#include "version.hpp"

struct lfk_problem
{
  logfucik::RunConfig config;
  logfucik::Mesh mesh;
  logfucik::FormMatrices forms;
};

namespace
{

thread_local std::string g_last_error;

template <class F>
lfk_status Guard(F &&fn)
{
  try
  {
    g_last_error.clear();
    return fn();
  }
  catch (const logfucik::Error &e)
  {
    g_last_error = e.what();
    return static_cast<lfk_status>(e.code());
  }
  catch (const std::bad_alloc &)
  {
    g_last_error = "out of memory";
    return LFK_ERR_INTERNAL;
  }
  catch (const std::exception &e)
  {
    g_last_error = e.what();
    return LFK_ERR_INTERNAL;
  }
}

void NotNull(const void *p, const char *name)
{
  logfucik::Require(p != nullptr, logfucik::ErrorCode::Argument, std::string(name) + " is NULL");
}

logfucik::RunConfig ParseBoth(const char *text, const char *overrides, const char *source)
{
  using logfucik::ParseConfig;
  const logfucik::RunConfig base =
      ParseConfig(text ? text : "", {}, source ? source : "config");
  return ParseConfig(overrides ? overrides : "", base, "override");
}

logfucik::Vector Wrap(const lfk_problem *p, const double *data, std::size_t len)
{
  NotNull(data, "vector");
  logfucik::Require(len == p->mesh.n, logfucik::ErrorCode::Argument,
                    "vector length " + std::to_string(len) + " does not match n = " +
                        std::to_string(p->mesh.n));
  return Eigen::Map<const logfucik::Vector>(data, static_cast<Eigen::Index>(len));
}

}  // namespace

extern "C" {

const char *lfk_version(void) { return logfucik::kVersion; }

const char *lfk_status_name(lfk_status status)
{
  switch (status)
  {
    case LFK_OK: return "ok";
    case LFK_ERR_ARGUMENT: return "argument";
    case LFK_ERR_DOMAIN: return "domain";
    case LFK_ERR_CONFIG: return "config";
    case LFK_ERR_NOT_CONVERGED: return "not_converged";
    case LFK_ERR_NUMERIC: return "numeric";
    case LFK_ERR_IO: return "io";
    case LFK_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char *lfk_last_error(void) { return g_last_error.c_str(); }

void lfk_string_free(char *s) { std::free(s); }

lfk_status lfk_constants(int dim, double *c_n, double *rho_n, double *d_n)
{
  return Guard([&]
  {
    const auto k = logfucik::ConstantsFor(dim);
    if (c_n) *c_n = k.c_n;
    if (rho_n) *rho_n = k.rho_n;
    if (d_n) *d_n = k.d_n;
    return LFK_OK;
  });
}

lfk_status lfk_config_normalize(const char *text, const char *overrides, const char *source,
                                char **canonical)
{
  return Guard([&]
  {
    NotNull(canonical, "canonical");
    const std::string out = logfucik::EmitConfig(ParseBoth(text, overrides, source));
    char *buf = static_cast<char *>(std::malloc(out.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, out.c_str(), out.size() + 1);
    *canonical = buf;
    return LFK_OK;
  });
}

lfk_status lfk_run(const char *command, const char *text, const char *overrides,
                   const char *source)
{
  return Guard([&]
  {
    NotNull(command, "command");
    const int code = logfucik::Run(command, ParseBoth(text, overrides, source));
    if (code != 0)
    {
      g_last_error = "run finished with status " +
                     std::string(lfk_status_name(static_cast<lfk_status>(code))) +
                     "; see status.json in the output directory";
    }
    return static_cast<lfk_status>(code);
  });
}

lfk_status lfk_problem_create(const char *config_text, lfk_problem **out)
{
  return Guard([&]
  {
    NotNull(out, "out");
    auto p = std::make_unique<lfk_problem>();
    p->config = logfucik::ParseConfig(config_text ? config_text : "");
    p->mesh = logfucik::BuildMesh(p->config.domain(), p->config.mesh_n);
    p->forms = logfucik::Assemble(p->mesh, p->config.quad);
    *out = p.release();
    return LFK_OK;
  });
}

void lfk_problem_destroy(lfk_problem *problem) { delete problem; }

lfk_status lfk_problem_size(const lfk_problem *problem, size_t *n)
{
  return Guard([&]
  {
    NotNull(problem, "problem");
    NotNull(n, "n");
    *n = problem->mesh.n;
    return LFK_OK;
  });
}

lfk_status lfk_problem_nodes(const lfk_problem *problem, double *out, size_t len)
{
  return Guard([&]
  {
    NotNull(problem, "problem");
    NotNull(out, "out");
    logfucik::Require(len == problem->mesh.n, logfucik::ErrorCode::Argument,
                      "output length does not match n");
    std::copy(problem->mesh.nodes.begin(), problem->mesh.nodes.end(), out);
    return LFK_OK;
  });
}

lfk_status lfk_evaluate_form(const lfk_problem *problem, const double *u, const double *v,
                             size_t len, double *out)
{
  return Guard([&]
  {
    NotNull(problem, "problem");
    NotNull(out, "out");
    *out = logfucik::EvaluateForm(problem->forms, Wrap(problem, u, len), Wrap(problem, v, len));
    return LFK_OK;
  });
}

lfk_status lfk_eigenpairs(const lfk_problem *problem, size_t k, double *lambdas, double *vectors)
{
  return Guard([&]
  {
    NotNull(problem, "problem");
    NotNull(lambdas, "lambdas");
    logfucik::Require(k >= 1 && k <= problem->mesh.n, logfucik::ErrorCode::Argument,
                      "k must lie in [1, n]");
    const auto pairs = logfucik::SolveEig(problem->forms, k, problem->config.eig_dead_zone);
    for (std::size_t i = 0; i < k; i++)
    {
      lambdas[i] = pairs[i].lambda;
      if (vectors)
      {
        std::copy(pairs[i].vector.data(), pairs[i].vector.data() + problem->mesh.n,
                  vectors + i * problem->mesh.n);
      }
    }
    return LFK_OK;
  });
}

lfk_status lfk_mountain_pass(const lfk_problem *problem, double r, double *c, double *u)
{
  return Guard([&]
  {
    NotNull(problem, "problem");
    NotNull(c, "c");
    const logfucik::RunConfig &cfg = problem->config;
    const auto eig = logfucik::SolveEig(problem->forms, 2, cfg.eig_dead_zone);
    logfucik::MountainPassOptions opts;
    opts.nodes = static_cast<std::size_t>(cfg.path_nodes);
    opts.rel_grad_tol = cfg.path_grad_tol;
    opts.max_sweeps = cfg.path_max_sweeps;
    opts.metric = cfg.metric();
    const logfucik::Metric metric(problem->forms, opts.metric);
    const auto f = logfucik::FucikFunctional::Fucik(problem->forms, problem->mesh, r);
    const auto mp = logfucik::MountainPass(
        f, logfucik::InitialPath(metric, eig[0].vector, eig[1].vector, opts.nodes), opts);
    *c = mp.c;
    if (u)
    {
      std::copy(mp.u.data(), mp.u.data() + mp.u.size(), u);
    }
    if (!mp.string.converged)
    {
      g_last_error = "mountain pass did not reach the gradient tolerance";
      return LFK_ERR_NOT_CONVERGED;
    }
    return LFK_OK;
  });
}

lfk_status lfk_verify_pair(const lfk_problem *problem, double alpha, double beta,
                           const double *seed, size_t len, double *residual, double *u)
{
  return Guard([&]
  {
    NotNull(problem, "problem");
    NotNull(residual, "residual");
    logfucik::VerifyOptions opts;
    opts.tol = problem->config.verify_tol;
    opts.max_iter = problem->config.verify_max_iter;
    const auto res = logfucik::VerifyPair(problem->forms, problem->mesh, alpha, beta,
                                          Wrap(problem, seed, len), opts);
    *residual = res.residual;
    if (u)
    {
      std::copy(res.u.data(), res.u.data() + res.u.size(), u);
    }
    if (res.residual > opts.tol)
    {
      g_last_error = "pair residual above verify.tol";
      return LFK_ERR_NOT_CONVERGED;
    }
    return LFK_OK;
  });
}

}  // extern "C"
