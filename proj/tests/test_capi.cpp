// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its C interface only.

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>
#include <doctest.h>
#include "logfucik/logfucik.h"

TEST_CASE("version, status names and constants")
{
  CHECK(std::string(lfk_version()).size() > 0);
  CHECK(std::string(lfk_status_name(LFK_ERR_CONFIG)) == "config");
  double c = 0, rho = 0, d = 0;
  CHECK(lfk_constants(1, &c, &rho, &d) == LFK_OK);
  CHECK(std::abs(c - 1.0) < 1e-12);
  CHECK(std::abs(rho + 2.0 * 0.5772156649015329) < 1e-10);
  CHECK(d <= c);
  CHECK(lfk_constants(0, &c, nullptr, nullptr) == LFK_ERR_DOMAIN);
  CHECK(std::strlen(lfk_last_error()) > 0);
}

TEST_CASE("config normalization")
{
  char *text = nullptr;
  CHECK(lfk_config_normalize("mesh.n = 064", "eig.k = 3", "doc", &text) == LFK_OK);
  REQUIRE(text != nullptr);
  CHECK(std::string(text).find("mesh.n = 64\n") != std::string::npos);
  CHECK(std::string(text).find("eig.k = 3\n") != std::string::npos);
  lfk_string_free(text);
  text = nullptr;
  CHECK(lfk_config_normalize("mesh.n = 1", nullptr, "doc", &text) == LFK_ERR_CONFIG);
  CHECK(text == nullptr);
  CHECK(std::string(lfk_last_error()).rfind("doc:1: ", 0) == 0);
  CHECK(lfk_config_normalize(nullptr, nullptr, nullptr, nullptr) == LFK_ERR_ARGUMENT);
}

TEST_CASE("problem handle")
{
  lfk_problem *p = nullptr;
  REQUIRE(lfk_problem_create("mesh.n = 32\npath.nodes = 21", &p) == LFK_OK);
  size_t n = 0;
  CHECK(lfk_problem_size(p, &n) == LFK_OK);
  REQUIRE(n == 32);
  std::vector<double> nodes(n);
  CHECK(lfk_problem_nodes(p, nodes.data(), n) == LFK_OK);
  CHECK(nodes.front() > -0.5);
  CHECK(lfk_problem_nodes(p, nodes.data(), n + 1) == LFK_ERR_ARGUMENT);

  std::vector<double> lambdas(3), vectors(3 * n);
  CHECK(lfk_eigenpairs(p, 3, lambdas.data(), vectors.data()) == LFK_OK);
  CHECK(lambdas[0] < lambdas[1]);
  double form = 0.0;
  CHECK(lfk_evaluate_form(p, vectors.data(), vectors.data(), n, &form) == LFK_OK);
  CHECK(std::abs(form - lambdas[0]) < 1e-10);

  double residual = 1.0;
  std::vector<double> u(n);
  CHECK(lfk_verify_pair(p, lambdas[1], lambdas[1], vectors.data() + n, n, &residual, u.data()) == LFK_OK);
  CHECK(residual <= 1e-8);

  double c0 = 0.0;
  CHECK(lfk_mountain_pass(p, 0.0, &c0, u.data()) == LFK_OK);
  CHECK(std::abs(c0 - lambdas[1]) <= 0.02 * lambdas[1]);

  CHECK(lfk_verify_pair(p, 2.0, 1.5, vectors.data() + n, n, &residual, nullptr) == LFK_ERR_NOT_CONVERGED);
  CHECK(lfk_eigenpairs(p, 0, lambdas.data(), nullptr) == LFK_ERR_ARGUMENT);
  CHECK(lfk_evaluate_form(p, vectors.data(), nullptr, n, &form) == LFK_ERR_ARGUMENT);
  lfk_problem_destroy(p);

  CHECK(lfk_problem_create("bad.key = 1", &p) == LFK_ERR_CONFIG);
  CHECK(lfk_problem_size(nullptr, &n) == LFK_ERR_ARGUMENT);
  lfk_problem_destroy(nullptr);
}

TEST_CASE("run")
{
  const std::string dir = "logfucik_capi_run_" + std::to_string(std::rand());
  const std::string overrides = "run.output_dir = " + dir;
  CHECK(lfk_run("constants", "", overrides.c_str(), "cfg") == LFK_OK);
  CHECK(lfk_run("nonsense", "", overrides.c_str(), "cfg") == LFK_ERR_ARGUMENT);
  CHECK(lfk_run("eig", "mesh.n = 1", overrides.c_str(), "cfg") == LFK_ERR_CONFIG);
  CHECK(std::system(("rm -rf " + dir).c_str()) == 0);
}
