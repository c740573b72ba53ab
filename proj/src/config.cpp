// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include "errors.hpp"
#include "io.hpp"

namespace logfucik
{

Domain RunConfig::domain() const
{
  return domain_kind == "disc" ? Domain::Disc(domain_radius) : Domain::Interval(domain_a, domain_b);
}

MetricKind RunConfig::metric() const
{
  return path_mass == "consistent" ? MetricKind::Consistent : MetricKind::Lumped;
}

namespace
{

// Value errors carry only the message; the caller prefixes the location.
struct ValueError
{
  std::string message;
};

std::string Trim(const std::string &s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
  {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long long ParseInteger(const std::string &v, long long lo, long long hi)
{
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
  {
    throw ValueError{"expected an integer, got '" + v + "'"};
  }
  if (out < lo || out > hi)
  {
    throw ValueError{"value " + v + " out of range [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]"};
  }
  return out;
}

double ParseReal(const std::string &v)
{
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty() || !std::isfinite(out))
  {
    throw ValueError{"expected a finite number, got '" + v + "'"};
  }
  return out;
}

// Interval check with open or closed ends; `what` describes the admissible set.
double ParseRealIn(const std::string &v, double lo, double hi, bool lo_open, bool hi_open,
                   const std::string &what)
{
  const double x = ParseReal(v);
  const bool ok_lo = lo_open ? x > lo : x >= lo;
  const bool ok_hi = hi_open ? x < hi : x <= hi;
  if (!ok_lo || !ok_hi)
  {
    throw ValueError{"value " + v + " out of range " + what};
  }
  return x;
}

std::string ParseChoice(const std::string &v, std::initializer_list<const char *> choices)
{
  std::string all;
  for (const char *c : choices)
  {
    if (v == c)
    {
      return v;
    }
    all += all.empty() ? c : std::string("|") + c;
  }
  throw ValueError{"expected one of " + all + ", got '" + v + "'"};
}

std::string Num(double x)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KeySpec
{
  const char *key;
  std::function<void(RunConfig &, const std::string &)> set;
  std::function<std::string(const RunConfig &)> get;
};

const std::vector<KeySpec> &Keys()
{
  static const std::vector<KeySpec> keys = {
      {"domain.kind", [](RunConfig &c, const std::string &v)
       { c.domain_kind = ParseChoice(v, {"interval", "disc"}); },
       [](const RunConfig &c) { return c.domain_kind; }},
      {"domain.a", [](RunConfig &c, const std::string &v) { c.domain_a = ParseReal(v); },
       [](const RunConfig &c) { return Num(c.domain_a); }},
      {"domain.b", [](RunConfig &c, const std::string &v) { c.domain_b = ParseReal(v); },
       [](const RunConfig &c) { return Num(c.domain_b); }},
      {"domain.radius", [](RunConfig &c, const std::string &v)
       { c.domain_radius = ParseRealIn(v, 0.0, kInf, true, true, "(0, inf)"); },
       [](const RunConfig &c) { return Num(c.domain_radius); }},
      {"mesh.n", [](RunConfig &c, const std::string &v) { c.mesh_n = ParseInteger(v, 2, 4096); },
       [](const RunConfig &c) { return std::to_string(c.mesh_n); }},
      {"quad.gauss_order", [](RunConfig &c, const std::string &v)
       { c.quad.gauss_order = static_cast<int>(ParseInteger(v, 1, 36)); },
       [](const RunConfig &c) { return std::to_string(c.quad.gauss_order); }},
      {"quad.singular_subdivisions", [](RunConfig &c, const std::string &v)
       { c.quad.singular_subdivisions = static_cast<int>(ParseInteger(v, 1, 256)); },
       [](const RunConfig &c) { return std::to_string(c.quad.singular_subdivisions); }},
      {"quad.boundary_grading", [](RunConfig &c, const std::string &v)
       { c.quad.boundary_grading = ParseRealIn(v, 1.0, 10.0, false, false, "[1, 10]"); },
       [](const RunConfig &c) { return Num(c.quad.boundary_grading); }},
      {"quad.direct_panels", [](RunConfig &c, const std::string &v)
       { c.quad.direct_panels = static_cast<int>(ParseInteger(v, 1, 4096)); },
       [](const RunConfig &c) { return std::to_string(c.quad.direct_panels); }},
      {"quad.consistency_tol", [](RunConfig &c, const std::string &v)
       { c.quad.consistency_tol = ParseRealIn(v, 0.0, 1.0, true, true, "(0, 1)"); },
       [](const RunConfig &c) { return Num(c.quad.consistency_tol); }},
      {"constants.dim", [](RunConfig &c, const std::string &v)
       { c.constants_dim = static_cast<int>(ParseInteger(v, 1, 64)); },
       [](const RunConfig &c) { return std::to_string(c.constants_dim); }},
      {"eig.k", [](RunConfig &c, const std::string &v) { c.eig_k = ParseInteger(v, 1, 4096); },
       [](const RunConfig &c) { return std::to_string(c.eig_k); }},
      {"eig.dead_zone", [](RunConfig &c, const std::string &v)
       { c.eig_dead_zone = ParseRealIn(v, 0.0, 1.0, false, true, "[0, 1)"); },
       [](const RunConfig &c) { return Num(c.eig_dead_zone); }},
      {"curve.r_units", [](RunConfig &c, const std::string &v)
       { c.curve_r_units = ParseChoice(v, {"gap", "absolute"}); },
       [](const RunConfig &c) { return c.curve_r_units; }},
      {"curve.r_min", [](RunConfig &c, const std::string &v)
       { c.curve_r_min = ParseRealIn(v, 0.0, kInf, false, true, "[0, inf)"); },
       [](const RunConfig &c) { return Num(c.curve_r_min); }},
      {"curve.r_max", [](RunConfig &c, const std::string &v)
       { c.curve_r_max = ParseRealIn(v, 0.0, kInf, false, true, "[0, inf)"); },
       [](const RunConfig &c) { return Num(c.curve_r_max); }},
      {"curve.steps", [](RunConfig &c, const std::string &v)
       { c.curve_steps = static_cast<int>(ParseInteger(v, 1, 1000)); },
       [](const RunConfig &c) { return std::to_string(c.curve_steps); }},
      {"path.nodes", [](RunConfig &c, const std::string &v)
       { c.path_nodes = static_cast<int>(ParseInteger(v, 3, 1001)); },
       [](const RunConfig &c) { return std::to_string(c.path_nodes); }},
      {"path.grad_tol", [](RunConfig &c, const std::string &v)
       { c.path_grad_tol = ParseRealIn(v, 0.0, 1.0, true, true, "(0, 1)"); },
       [](const RunConfig &c) { return Num(c.path_grad_tol); }},
      {"path.max_sweeps", [](RunConfig &c, const std::string &v)
       { c.path_max_sweeps = static_cast<int>(ParseInteger(v, 1, 10000000)); },
       [](const RunConfig &c) { return std::to_string(c.path_max_sweeps); }},
      {"path.mass", [](RunConfig &c, const std::string &v)
       { c.path_mass = ParseChoice(v, {"lumped", "consistent"}); },
       [](const RunConfig &c) { return c.path_mass; }},
      {"verify.alpha", [](RunConfig &c, const std::string &v)
       { c.verify_alpha = v == "none" ? std::nullopt : std::optional<double>(ParseReal(v)); },
       [](const RunConfig &c) { return c.verify_alpha ? Num(*c.verify_alpha) : "none"; }},
      {"verify.beta", [](RunConfig &c, const std::string &v)
       { c.verify_beta = v == "none" ? std::nullopt : std::optional<double>(ParseReal(v)); },
       [](const RunConfig &c) { return c.verify_beta ? Num(*c.verify_beta) : "none"; }},
      {"verify.seed_file", [](RunConfig &c, const std::string &v) { c.verify_seed_file = v; },
       [](const RunConfig &c) { return c.verify_seed_file; }},
      {"verify.tol", [](RunConfig &c, const std::string &v)
       { c.verify_tol = ParseRealIn(v, 0.0, 1.0, true, true, "(0, 1)"); },
       [](const RunConfig &c) { return Num(c.verify_tol); }},
      {"verify.max_iter", [](RunConfig &c, const std::string &v)
       { c.verify_max_iter = static_cast<int>(ParseInteger(v, 1, 10000)); },
       [](const RunConfig &c) { return std::to_string(c.verify_max_iter); }},
      {"fracexp.s_list", [](RunConfig &c, const std::string &v)
       {
         std::vector<double> out;
         std::stringstream ss(v);
         std::string item;
         while (std::getline(ss, item, ','))
         {
           out.push_back(ParseRealIn(Trim(item), 0.0, 0.5, true, false, "(0, 0.5]"));
         }
         if (out.empty())
         {
           throw ValueError{"expected a comma-separated list of orders"};
         }
         for (std::size_t i = 1; i < out.size(); i++)
         {
           if (!(out[i] < out[i - 1]))
           {
             throw ValueError{"orders must be strictly descending"};
           }
         }
         c.fracexp_s_list = out;
       },
       [](const RunConfig &c)
       {
         std::string s;
         for (double x : c.fracexp_s_list)
         {
           s += (s.empty() ? "" : ",") + Num(x);
         }
         return s;
       }},
      {"nonres.fraction", [](RunConfig &c, const std::string &v)
       { c.nonres_fraction = ParseRealIn(v, 0.0, 1.0, true, true, "(0, 1)"); },
       [](const RunConfig &c) { return Num(c.nonres_fraction); }},
      {"nonres.epsilon", [](RunConfig &c, const std::string &v) { c.nonres_epsilon = ParseReal(v); },
       [](const RunConfig &c) { return Num(c.nonres_epsilon); }},
      {"nonres.r", [](RunConfig &c, const std::string &v)
       { c.nonres_r = ParseRealIn(v, 0.0, kInf, false, true, "[0, inf)"); },
       [](const RunConfig &c) { return Num(c.nonres_r); }},
      {"nonres.margin", [](RunConfig &c, const std::string &v)
       { c.nonres_margin = ParseRealIn(v, 0.0, kInf, true, true, "(0, inf)"); },
       [](const RunConfig &c) { return Num(c.nonres_margin); }},
      {"run.seed", [](RunConfig &c, const std::string &v)
       {
         std::uint64_t out = 0;
         const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
         if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
         {
           throw ValueError{"expected an unsigned integer, got '" + v + "'"};
         }
         c.run_seed = out;
       },
       [](const RunConfig &c) { return std::to_string(c.run_seed); }},
      {"run.output_dir", [](RunConfig &c, const std::string &v)
       {
         if (v.empty())
         {
           throw ValueError{"output directory must not be empty"};
         }
         c.run_output_dir = v;
       },
       [](const RunConfig &c) { return c.run_output_dir; }},
      {"run.threads", [](RunConfig &c, const std::string &v)
       { c.run_threads = static_cast<int>(ParseInteger(v, 1, 1)); },
       [](const RunConfig &c) { return std::to_string(c.run_threads); }},
      {"run.deterministic", [](RunConfig &c, const std::string &v)
       { c.run_deterministic = ParseChoice(v, {"true", "false"}) == "true"; },
       [](const RunConfig &c) { return std::string(c.run_deterministic ? "true" : "false"); }},
  };
  return keys;
}

void CrossCheck(const RunConfig &c, const std::string &source)
{
  auto fail = [&](const std::string &msg) { Fail(ErrorCode::Config, source + ": " + msg); };
  if (!(c.domain_a < c.domain_b))
  {
    fail("domain.b must exceed domain.a");
  }
  if (c.curve_r_max < c.curve_r_min)
  {
    fail("curve.r_max must be >= curve.r_min");
  }
  if (c.eig_k > c.mesh_n)
  {
    fail("eig.k must not exceed mesh.n");
  }
}

}  // namespace

RunConfig ParseConfig(const std::string &text, const RunConfig &base, const std::string &source)
{
  RunConfig config = base;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line))
  {
    lineno++;
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    // A '#' at the start or after whitespace opens a comment.
    for (std::size_t i = 0; i < line.size(); i++)
    {
      if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t'))
      {
        line.resize(i);
        break;
      }
    }
    const std::string body = Trim(line);
    if (body.empty())
    {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos)
    {
      Fail(ErrorCode::Config, where + "expected 'key = value', got '" + body + "'");
    }
    const std::string key = Trim(body.substr(0, eq));
    const std::string value = Trim(body.substr(eq + 1));
    const auto &keys = Keys();
    const auto it = std::find_if(keys.begin(), keys.end(),
                                 [&](const KeySpec &k) { return key == k.key; });
    if (it == keys.end())
    {
      Fail(ErrorCode::Config, where + "unknown key '" + key + "'");
    }
    if (!seen.insert(key).second)
    {
      Fail(ErrorCode::Config, where + "duplicate key '" + key + "'");
    }
    try
    {
      it->set(config, value);
    }
    catch (const ValueError &e)
    {
      Fail(ErrorCode::Config, where + key + ": " + e.message);
    }
  }
  CrossCheck(config, source);
  return config;
}

std::vector<std::pair<std::string, std::string>> ConfigEntries(const RunConfig &config)
{
  std::vector<std::pair<std::string, std::string>> out;
  for (const KeySpec &k : Keys())
  {
    out.emplace_back(k.key, k.get(config));
  }
  return out;
}

std::string EmitConfig(const RunConfig &config)
{
  std::string out;
  for (const auto &[key, value] : ConfigEntries(config))
  {
    out += key + " = " + value + "\n";
  }
  return out;
}

std::string ConfigHash(const RunConfig &config)
{
  return Sha256Hex(EmitConfig(config)).substr(0, 16);
}

}  // namespace logfucik
