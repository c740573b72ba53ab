// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOGFUCIK_IO_HPP
#define LOGFUCIK_IO_HPP

#include <filesystem>
#include <string>
#include <vector>
#include "discretization.hpp"

namespace logfucik
{

std::string Sha256Hex(const std::string &data);
std::string Sha256File(const std::filesystem::path &path);

// 12 significant digits, locale independent.
std::string FormatNumber(double x);

// First line of every output file.
std::string FileHeader(const std::string &config_hash);

// Writes to a sibling temporary file, then renames over the target.
void WriteFileAtomic(const std::filesystem::path &path, const std::string &content);

std::string ReadFile(const std::filesystem::path &path);

// Plain-text triplets `row col value` (0-based) of the nonzero entries.
std::string TripletText(const Matrix &m, const std::string &header);

// 16-byte header: magic "LFKD", uint32 dtype tag (1 = float64), uint64 n; then the n x n
// entries row-major, all little-endian.
std::string DenseBinary(const Matrix &m);
Matrix ParseDenseBinary(const std::string &bytes);

// One coordinate per line.
std::string NodeListText(const Mesh &mesh, const std::string &header);

// Columns: x, then one column per vector.
std::string NodeTableText(const Mesh &mesh, const std::vector<Vector> &columns,
                          const std::vector<std::string> &names, const std::string &header);

// Reads the columns after the first of a node table written by NodeTableText (or any
// delimited table of the same shape); lines starting with '#' and a header line are skipped.
std::vector<Vector> ReadNodeTableColumns(const std::filesystem::path &path, std::size_t rows);

// Exclusive `.lock` file inside the output directory, removed on destruction.
class DirectoryLock
{
public:
  explicit DirectoryLock(const std::filesystem::path &dir);
  ~DirectoryLock();
  DirectoryLock(const DirectoryLock &) = delete;
  DirectoryLock &operator=(const DirectoryLock &) = delete;

private:
  std::filesystem::path lock_;
};

// Applies the LOGFUCIK_LOG_LEVEL environment variable (trace..off) to the library logger.
void ConfigureLogging();

}  // namespace logfucik

#endif  // LOGFUCIK_IO_HPP
