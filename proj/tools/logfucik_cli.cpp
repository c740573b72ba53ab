// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Everything goes through the C API of the shared library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>
#include <CLI11.hpp>
#include "logfucik/logfucik.h"

namespace
{

bool ReadText(const std::string &path, std::string &out)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"logfucik: logarithmic Laplacian spectra and Fucik curves"};
  app.set_version_flag("--version", std::string(lfk_version()));
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path;
  std::string output_dir;
  std::vector<std::string> sets;
  bool print_config = false;
  app.add_option("-c,--config", config_path, "configuration file (dotted key = value lines)")
      ->check(CLI::ExistingFile);
  app.add_option("-o,--output", output_dir, "output directory (overrides run.output_dir)");
  app.add_option("-s,--set", sets, "override one key, e.g. --set mesh.n=128");
  app.add_flag("--print-config", print_config, "print the canonical configuration and exit");

  const char *commands[][2] = {
      {"constants", "table of c_N, rho_N and d_N"},
      {"assemble", "export mesh nodes and Galerkin matrices"},
      {"eig", "Dirichlet eigenpairs and sign classes"},
      {"curve", "first nontrivial Fucik curve and its mirror"},
      {"verify", "Newton verification of Fucik pairs"},
      {"fracexp", "first-order fractional expansion errors"},
      {"nonres", "nonresonance problem between the diagonal and the curve"},
  };
  for (const auto &c : commands)
  {
    app.add_subcommand(c[0], c[1]);
  }
  CLI11_PARSE(app, argc, argv);

  std::string text;
  if (!config_path.empty() && !ReadText(config_path, text))
  {
    std::fprintf(stderr, "logfucik: cannot read %s\n", config_path.c_str());
    return LFK_ERR_IO;
  }
  std::string overrides;
  for (const std::string &s : sets)
  {
    overrides += s + "\n";
  }
  if (!output_dir.empty())
  {
    overrides += "run.output_dir = " + output_dir + "\n";
  }
  const std::string source = config_path.empty() ? "config" : config_path;

  if (print_config)
  {
    char *canonical = nullptr;
    const lfk_status st = lfk_config_normalize(text.c_str(), overrides.c_str(), source.c_str(),
                                               &canonical);
    if (st != LFK_OK)
    {
      std::fprintf(stderr, "logfucik: %s\n", lfk_last_error());
      return st;
    }
    std::fputs(canonical, stdout);
    lfk_string_free(canonical);
    return 0;
  }

  if (app.get_subcommands().empty())
  {
    std::fprintf(stderr, "logfucik: a subcommand is required (see --help)\n");
    return LFK_ERR_ARGUMENT;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  const lfk_status st = lfk_run(command.c_str(), text.c_str(), overrides.c_str(), source.c_str());
  if (st != LFK_OK)
  {
    std::fprintf(stderr, "logfucik %s: %s (%s)\n", command.c_str(), lfk_status_name(st),
                 lfk_last_error());
  }
  return st;
}
