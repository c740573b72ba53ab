// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOGFUCIK_RUNNER_HPP
#define LOGFUCIK_RUNNER_HPP

#include <string>
#include <vector>
#include "config.hpp"

namespace logfucik
{

const std::vector<std::string> &Commands();

// Runs one subcommand and writes its artifacts, manifest.json and status.json into the
// configured output directory. Returns 0 when every status converged, otherwise the
// numeric ErrorCode of the failure. Errors raised before the output directory is locked
// propagate as exceptions.
int Run(const std::string &command, const RunConfig &config);

// r grid of the curve command in absolute units.
std::vector<double> CurveGrid(const RunConfig &config, double lambda1, double lambda2);

}  // namespace logfucik

#endif  // LOGFUCIK_RUNNER_HPP
