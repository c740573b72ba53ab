// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOGFUCIK_CONFIG_HPP
#define LOGFUCIK_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include "discretization.hpp"
#include "string_method.hpp"

namespace logfucik
{

// All run settings. Text form: one `dotted.key = value` per line, `#` starts a comment.
struct RunConfig
{
  std::string domain_kind = "interval";
  double domain_a = -0.5;
  double domain_b = 0.5;
  double domain_radius = 0.5;

  std::size_t mesh_n = 256;
  QuadratureSpec quad;

  int constants_dim = 10;  // constants table covers N = 1..constants_dim

  std::size_t eig_k = 6;
  double eig_dead_zone = 1e-6;

  std::string curve_r_units = "gap";  // gap: r values are multiples of lambda2 - lambda1
  double curve_r_min = 0.0;
  double curve_r_max = 10.0;
  int curve_steps = 11;

  int path_nodes = 41;
  double path_grad_tol = 1e-6;  // relative to lambda_max(A, M)
  int path_max_sweeps = 20000;
  std::string path_mass = "lumped";

  std::optional<double> verify_alpha;
  std::optional<double> verify_beta;
  std::string verify_seed_file;
  double verify_tol = 1e-6;
  int verify_max_iter = 60;

  std::vector<double> fracexp_s_list = {0.1, 0.05, 0.025};

  double nonres_fraction = 0.5;
  double nonres_epsilon = -2.0;
  double nonres_r = 1.0;  // same units as curve.r_units
  double nonres_margin = 1.0;

  std::uint64_t run_seed = 20240601;
  std::string run_output_dir = "logfucik_out";
  int run_threads = 1;
  // Drops wall-clock timings from the manifest so reruns are byte-identical.
  bool run_deterministic = false;

  Domain domain() const;
  MetricKind metric() const;
};

// Parses `text` on top of `base`. Unknown keys, malformed values, duplicate keys and range
// violations throw ErrorCode::Config with a `<source>:<line>:` prefix.
RunConfig ParseConfig(const std::string &text, const RunConfig &base = {},
                      const std::string &source = "config");

// Canonical text: every key in a fixed order, shortest round-trip number formatting.
std::string EmitConfig(const RunConfig &config);

// First 16 hex digits of the SHA-256 of the canonical text.
std::string ConfigHash(const RunConfig &config);

// (key, value) pairs in canonical order.
std::vector<std::pair<std::string, std::string>> ConfigEntries(const RunConfig &config);

}  // namespace logfucik

#endif  // LOGFUCIK_CONFIG_HPP
