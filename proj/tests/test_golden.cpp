// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

// Regression against the committed default `eig` and `curve` outputs.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>
#include <doctest.h>
#include "config.hpp"
#include "io.hpp"
#include "runner.hpp"

using namespace logfucik;
namespace fs = std::filesystem;

namespace
{

using Table = std::pair<std::vector<std::string>, std::vector<std::vector<std::string>>>;

Table ReadCsv(const std::string &text)
{
  Table t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
  {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (t.first.empty())
      t.first = cells;
    else
      t.second.push_back(cells);
  }
  return t;
}

std::map<std::string, std::string> Tolerances(const std::string &file)
{
  std::map<std::string, std::string> tol;
  std::istringstream in(ReadFile(fs::path(LOGFUCIK_GOLDEN_DIR) / "tolerances.txt"));
  std::string line;
  while (std::getline(in, line))
  {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string f, column, spec;
    ls >> f >> column >> spec;
    if (f == file) tol[column] = spec;
  }
  return tol;
}

void Compare(const std::string &file, const fs::path &produced)
{
  const Table golden = ReadCsv(ReadFile(fs::path(LOGFUCIK_GOLDEN_DIR) / file));
  const Table fresh = ReadCsv(ReadFile(produced / file));
  const auto tol = Tolerances(file);
  REQUIRE(golden.first == fresh.first);
  REQUIRE(golden.second.size() == fresh.second.size());
  for (std::size_t r = 0; r < golden.second.size(); r++)
  {
    for (std::size_t c = 0; c < golden.first.size(); c++)
    {
      const std::string &column = golden.first[c];
      const std::string &want = golden.second[r][c], &got = fresh.second[r][c];
      const auto it = tol.find(column);
      const std::string spec = it == tol.end() ? "exact" : it->second;
      const std::string where = file + " row " + std::to_string(r) + " column " + column;
      if (spec == "ignore") continue;
      if (spec == "exact")
      {
        CHECK_MESSAGE(want == got, where);
        continue;
      }
      const double w = std::stod(want), g = std::stod(got);
      const double bound = std::stod(spec.substr(4)) * (spec.rfind("rel:", 0) == 0 ? std::abs(w) : 1.0);
      CHECK_MESSAGE(std::abs(w - g) <= bound, where << ": " << got << " vs " << want);
    }
  }
}

}  // namespace

TEST_CASE("default eig and curve outputs match the committed golden files")
{
  const auto dir = fs::temp_directory_path() / ("logfucik_golden_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  const RunConfig config = ParseConfig("run.output_dir = " + dir.string());
  CHECK(Run("eig", config) == 0);
  Compare("eig.csv", dir);
  CHECK(Run("curve", config) == 0);
  Compare("curve.csv", dir);
  fs::remove_all(dir);
}
