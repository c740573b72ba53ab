// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include "io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <fcntl.h>
#include <openssl/evp.h>
#include <spdlog/spdlog.h>
#include <unistd.h>
#include "errors.hpp"
#include "version.hpp"

namespace logfucik
{

std::string Sha256Hex(const std::string &data)
{
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  Require(EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) == 1,
          ErrorCode::Internal, "SHA-256 computation failed");
  static const char *hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; i++)
  {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string Sha256File(const std::filesystem::path &path)
{
  return Sha256Hex(ReadFile(path));
}

std::string FormatNumber(double x)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string FileHeader(const std::string &config_hash)
{
  return std::string("# logfucik ") + kVersion + " config=" + config_hash + "\n";
}

void WriteFileAtomic(const std::filesystem::path &path, const std::string &content)
{
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    Require(static_cast<bool>(out), ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    Require(static_cast<bool>(out), ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  Require(!ec, ErrorCode::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

std::string ReadFile(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  Require(static_cast<bool>(in), ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string TripletText(const Matrix &m, const std::string &header)
{
  std::string out = header + "# row col value\n";
  for (Eigen::Index i = 0; i < m.rows(); i++)
  {
    for (Eigen::Index j = 0; j < m.cols(); j++)
    {
      if (m(i, j) != 0.0)
      {
        out += std::to_string(i) + " " + std::to_string(j) + " " + FormatNumber(m(i, j)) + "\n";
      }
    }
  }
  return out;
}

namespace
{

static_assert(std::endian::native == std::endian::little,
              "binary export assumes a little-endian host");

template <class T>
void Append(std::string &out, T value)
{
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

}  // namespace

std::string DenseBinary(const Matrix &m)
{
  Require(m.rows() == m.cols(), ErrorCode::Argument, "dense export expects a square matrix");
  std::string out = "LFKD";
  Append<std::uint32_t>(out, 1);
  Append<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); i++)
  {
    for (Eigen::Index j = 0; j < m.cols(); j++)
    {
      Append<double>(out, m(i, j));
    }
  }
  return out;
}

Matrix ParseDenseBinary(const std::string &bytes)
{
  Require(bytes.size() >= 16 && bytes.compare(0, 4, "LFKD") == 0, ErrorCode::Io,
          "not a dense matrix file");
  std::uint32_t tag = 0;
  std::uint64_t n = 0;
  std::memcpy(&tag, bytes.data() + 4, 4);
  std::memcpy(&n, bytes.data() + 8, 8);
  Require(tag == 1, ErrorCode::Io, "unsupported dtype tag");
  Require(bytes.size() == 16 + n * n * 8, ErrorCode::Io, "dense matrix file has wrong size");
  Matrix m(n, n);
  const char *p = bytes.data() + 16;
  for (std::uint64_t i = 0; i < n; i++)
  {
    for (std::uint64_t j = 0; j < n; j++, p += 8)
    {
      std::memcpy(&m(i, j), p, 8);
    }
  }
  return m;
}

std::string NodeListText(const Mesh &mesh, const std::string &header)
{
  std::string out = header;
  for (double x : mesh.nodes)
  {
    out += FormatNumber(x) + "\n";
  }
  return out;
}

std::string NodeTableText(const Mesh &mesh, const std::vector<Vector> &columns,
                          const std::vector<std::string> &names, const std::string &header)
{
  std::string out = header + "x";
  for (const std::string &name : names)
  {
    out += "," + name;
  }
  out += "\n";
  for (std::size_t i = 0; i < mesh.n; i++)
  {
    out += FormatNumber(mesh.nodes[i]);
    for (const Vector &c : columns)
    {
      out += "," + FormatNumber(c[i]);
    }
    out += "\n";
  }
  return out;
}

std::vector<Vector> ReadNodeTableColumns(const std::filesystem::path &path, std::size_t rows)
{
  std::istringstream in(ReadFile(path));
  std::string line;
  std::vector<std::vector<double>> table;
  bool header_seen = false;
  while (std::getline(in, line))
  {
    if (line.empty() || line[0] == '#')
    {
      continue;
    }
    for (char &ch : line)
    {
      if (ch == ',' || ch == '\t' || ch == ';')
      {
        ch = ' ';
      }
    }
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    bool numeric = true;
    while (ls >> tok)
    {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
      {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric)
    {
      Require(!header_seen && table.empty(), ErrorCode::Io,
              path.string() + ": non-numeric row in node table");
      header_seen = true;
      continue;
    }
    Require(row.size() >= 2, ErrorCode::Io, path.string() + ": rows need x and a value");
    Require(table.empty() || row.size() == table.front().size(), ErrorCode::Io,
            path.string() + ": ragged node table");
    table.push_back(std::move(row));
  }
  Require(table.size() == rows, ErrorCode::Io,
          path.string() + ": expected " + std::to_string(rows) + " rows, got " +
              std::to_string(table.size()));
  const std::size_t cols = table.front().size() - 1;
  std::vector<Vector> out(cols, Vector(rows));
  for (std::size_t i = 0; i < rows; i++)
  {
    for (std::size_t c = 0; c < cols; c++)
    {
      out[c][i] = table[i][c + 1];
    }
  }
  return out;
}

DirectoryLock::DirectoryLock(const std::filesystem::path &dir)
{
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  Require(!ec, ErrorCode::Io, "cannot create output directory " + dir.string());
  lock_ = dir / ".lock";
  const int fd = ::open(lock_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  Require(fd >= 0, ErrorCode::Io, "output directory is locked by another run: " + lock_.string());
  const std::string pid = std::to_string(::getpid()) + "\n";
  [[maybe_unused]] const auto written = ::write(fd, pid.data(), pid.size());
  ::close(fd);
}

DirectoryLock::~DirectoryLock()
{
  std::error_code ec;
  std::filesystem::remove(lock_, ec);
}

void ConfigureLogging()
{
  spdlog::set_level(spdlog::level::warn);
  if (const char *env = std::getenv("LOGFUCIK_LOG_LEVEL"))
  {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only accept it when asked for explicitly.
    if (level != spdlog::level::off || std::string(env) == "off")
    {
      spdlog::set_level(level);
    }
  }
}

}  // namespace logfucik
