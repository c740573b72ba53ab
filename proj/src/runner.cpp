// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <random>
#include <json.hpp>
#include <spdlog/spdlog.h>
#include "errors.hpp"
#include "fractional.hpp"
#include "fucik.hpp"
#include "io.hpp"
#include "nonresonance.hpp"
#include "special_constants.hpp"
#include "spectral.hpp"
#include "version.hpp"

namespace logfucik
{

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

const std::vector<std::string> &Commands()
{
  static const std::vector<std::string> commands = {"constants", "assemble", "eig",   "curve",
                                                    "verify",    "fracexp",  "nonres"};
  return commands;
}

std::vector<double> CurveGrid(const RunConfig &config, double lambda1, double lambda2)
{
  const double unit = config.curve_r_units == "gap" ? lambda2 - lambda1 : 1.0;
  std::vector<double> grid;
  const int n = config.curve_steps;
  for (int i = 0; i < n; i++)
  {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    grid.push_back(unit * (config.curve_r_min + t * (config.curve_r_max - config.curve_r_min)));
  }
  return grid;
}

namespace
{

std::string Csv(std::initializer_list<std::string> fields)
{
  std::string out;
  for (const std::string &f : fields)
  {
    out += out.empty() ? f : "," + f;
  }
  return out + "\n";
}

std::string Bool(bool b) { return b ? "true" : "false"; }

// Collects artifacts and statuses of one run.
class Session
{
public:
  explicit Session(const RunConfig &config)
      : config_(config), dir_(config.run_output_dir), header_(FileHeader(ConfigHash(config)))
  {
  }

  const std::string &header() const { return header_; }

  void Write(const std::string &name, const std::string &content)
  {
    WriteFileAtomic(dir_ / name, content);
    outputs_.push_back({{"file", name}, {"sha256", Sha256Hex(content)}, {"bytes", content.size()}});
  }

  void Status(const std::string &task, bool converged)
  {
    statuses_[task] = converged ? "converged" : "not_converged";
    all_converged_ = all_converged_ && converged;
  }

  bool converged() const { return all_converged_; }

  template <class F>
  auto Timed(const std::string &task, F &&fn)
  {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    timings_[task] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

  void Finish(const std::string &command, int code, const std::string &message)
  {
    Json status;
    status["command"] = command;
    status["exit_code"] = code;
    status["status"] = code == 0 ? "ok" : code == static_cast<int>(ErrorCode::NotConverged)
                                              ? "not_converged"
                                              : "error";
    status["message"] = message;
    WriteFileAtomic(dir_ / "status.json", status.dump(2) + "\n");

    Json manifest;
    manifest["library"] = "logfucik";
    manifest["version"] = kVersion;
    manifest["command"] = command;
    manifest["config_hash"] = ConfigHash(config_);
    Json echo = Json::object();
    for (const auto &[key, value] : ConfigEntries(config_))
    {
      echo[key] = value;
    }
    manifest["config"] = echo;
    manifest["outputs"] = outputs_;
    manifest["statuses"] = statuses_;
    manifest["exit_code"] = code;
    if (!config_.run_deterministic)
    {
      manifest["timings_seconds"] = timings_;
    }
    WriteFileAtomic(dir_ / "manifest.json", manifest.dump(2) + "\n");
  }

private:
  const RunConfig &config_;
  fs::path dir_;
  std::string header_;
  Json outputs_ = Json::array();
  Json statuses_ = Json::object();
  Json timings_ = Json::object();
  bool all_converged_ = true;
};

struct Problem
{
  Mesh mesh;
  FormMatrices forms;
};

Problem Build(Session &s, const RunConfig &config)
{
  return s.Timed("assemble", [&]
  {
    Problem p;
    p.mesh = BuildMesh(config.domain(), config.mesh_n);
    p.forms = Assemble(p.mesh, config.quad);
    return p;
  });
}

MountainPassOptions PathOptions(const RunConfig &config)
{
  MountainPassOptions o;
  o.nodes = static_cast<std::size_t>(config.path_nodes);
  o.rel_grad_tol = config.path_grad_tol;
  o.max_sweeps = config.path_max_sweeps;
  o.metric = config.metric();
  return o;
}

VerifyOptions VerifySettings(const RunConfig &config)
{
  VerifyOptions o;
  o.tol = config.verify_tol;
  o.max_iter = config.verify_max_iter;
  return o;
}

void RunConstants(Session &s, const RunConfig &config)
{
  std::string out = s.header() + Csv({"N", "c_N", "rho_N", "gamma", "d_N"});
  bool ok = true;
  for (int n = 1; n <= config.constants_dim; n++)
  {
    const DimensionalConstants k = ConstantsFor(n);
    ok = ok && k.c_n >= k.d_n;
    out += Csv({std::to_string(n), FormatNumber(k.c_n), FormatNumber(k.rho_n),
                FormatNumber(k.gamma), FormatNumber(k.d_n)});
  }
  s.Write("constants.csv", out);
  s.Status("constants", ok);
}

void RunAssemble(Session &s, const RunConfig &config)
{
  const Problem p = Build(s, config);
  s.Write("nodes.txt", NodeListText(p.mesh, s.header()));
  s.Write("A.triplets", TripletText(p.forms.A, s.header()));
  s.Write("M.triplets", TripletText(p.forms.M, s.header()));
  s.Write("S.triplets", TripletText(p.forms.S, s.header()));
  s.Write("V.triplets", TripletText(p.forms.V, s.header()));
  s.Write("A.lfkd", DenseBinary(p.forms.A));
  s.Write("M.lfkd", DenseBinary(p.forms.M));
  const double asym = (p.forms.A - p.forms.A.transpose()).norm() / p.forms.A.norm();
  s.Status("assemble", asym <= 1e-12);
}

std::vector<EigenPair> RunEigInto(Session &s, const Problem &p, const RunConfig &config)
{
  const auto pairs = s.Timed("eig", [&] { return SolveEig(p.forms, config.eig_k, config.eig_dead_zone); });
  std::string table = s.header() + Csv({"k", "lambda", "sign_class", "pos_measure", "neg_measure",
                                        "residual"});
  std::vector<Vector> vectors;
  std::vector<std::string> names;
  bool ok = true;
  for (const EigenPair &e : pairs)
  {
    const SignReport rep = ClassifySign(e.vector, config.eig_dead_zone);
    table += Csv({std::to_string(e.index), FormatNumber(e.lambda), SignClassName(e.sign_class),
                  FormatNumber(rep.pos_measure), FormatNumber(rep.neg_measure),
                  FormatNumber(e.residual)});
    vectors.push_back(e.vector);
    names.push_back("u" + std::to_string(e.index));
    ok = ok && e.residual <= 1e-8;
  }
  s.Write("eig.csv", table);
  s.Write("eigvecs.csv", NodeTableText(p.mesh, vectors, names, s.header()));
  s.Status("eig", ok);
  return pairs;
}

void RunCurve(Session &s, const RunConfig &config)
{
  const Problem p = Build(s, config);
  const auto eig = SolveEig(p.forms, 2, config.eig_dead_zone);
  const auto grid = CurveGrid(config, eig[0].lambda, eig[1].lambda);
  CurveOptions opts;
  opts.mountain_pass = PathOptions(config);
  opts.verify = VerifySettings(config);
  const CurveResult curve = s.Timed("curve", [&] { return TraceCurve(p.forms, p.mesh, grid, opts); });

  std::string table = s.header() + Csv({"r", "alpha", "beta", "c", "residual", "sweeps",
                                        "converged", "mirrored"});
  std::vector<Vector> vectors;
  std::vector<std::string> names;
  bool ok = true;
  for (std::size_t i = 0; i < curve.points.size(); i++)
  {
    const FucikPoint &pt = curve.points[i];
    table += Csv({FormatNumber(pt.r), FormatNumber(pt.alpha), FormatNumber(pt.beta),
                  FormatNumber(pt.c), FormatNumber(pt.residual), std::to_string(pt.iters),
                  Bool(pt.converged), Bool(pt.mirrored)});
    if (!pt.mirrored)
    {
      vectors.push_back(pt.eigenfunction);
      names.push_back("u" + std::to_string(i));
    }
    ok = ok && pt.converged;
    spdlog::info("curve r={} c={} residual={}", pt.r, pt.c, pt.residual);
  }
  s.Write("curve.csv", table);
  s.Write("curve_u.csv", NodeTableText(p.mesh, vectors, names, s.header()));
  s.Status("curve", ok);
}

void RunVerify(Session &s, const RunConfig &config)
{
  if (config.verify_alpha.has_value() != config.verify_beta.has_value())
  {
    Fail(ErrorCode::Config, "verify.alpha and verify.beta must be set together");
  }
  const Problem p = Build(s, config);
  const VerifyOptions vopts = VerifySettings(config);
  const std::size_t k = std::max<std::size_t>(config.eig_k, 2);
  const auto eig = SolveEig(p.forms, std::min(k, p.forms.size()), config.eig_dead_zone);

  std::string table = s.header() + Csv({"seed", "alpha", "beta", "residual", "shift",
                                        "iterations", "sign_class"});
  bool ok = true;
  s.Timed("verify", [&]
  {
    if (!config.verify_alpha)
    {
      // Diagonal points (lambda_k, lambda_k) seeded with their eigenfunctions.
      for (std::size_t i = 0; i < std::min<std::size_t>(config.eig_k, eig.size()); i++)
      {
        const double l = eig[i].lambda;
        const VerifyResult r = VerifyPair(p.forms, p.mesh, l, l, eig[i].vector, vopts);
        table += Csv({"phi" + std::to_string(i + 1), FormatNumber(l), FormatNumber(l),
                      FormatNumber(r.residual), FormatNumber(r.shift), std::to_string(r.iterations),
                      SignClassName(ClassifySign(r.u).sign_class)});
        ok = ok && r.residual <= vopts.tol;
      }
      return 0;
    }
    std::vector<std::pair<std::string, Vector>> seeds;
    if (!config.verify_seed_file.empty())
    {
      const auto cols = ReadNodeTableColumns(config.verify_seed_file, p.mesh.n);
      for (std::size_t c = 0; c < cols.size(); c++)
      {
        seeds.emplace_back("file" + std::to_string(c + 1), cols[c]);
      }
    }
    else
    {
      for (const EigenPair &e : eig)
      {
        seeds.emplace_back("phi" + std::to_string(e.index), e.vector);
      }
      seeds.emplace_back("phi1+phi2", eig[0].vector + eig[1].vector);
      seeds.emplace_back("phi1-phi2", eig[0].vector - eig[1].vector);
      std::mt19937_64 rng(config.run_seed);
      std::normal_distribution<double> normal;
      for (int i = 0; i < 4; i++)
      {
        Vector v(p.mesh.n);
        for (Eigen::Index j = 0; j < v.size(); j++)
        {
          v[j] = normal(rng);
        }
        seeds.emplace_back("random" + std::to_string(i + 1), v);
      }
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto &[name, seed] : seeds)
    {
      const VerifyResult r =
          VerifyPair(p.forms, p.mesh, *config.verify_alpha, *config.verify_beta, seed, vopts);
      table += Csv({name, FormatNumber(*config.verify_alpha), FormatNumber(*config.verify_beta),
                    FormatNumber(r.residual), FormatNumber(r.shift), std::to_string(r.iterations),
                    SignClassName(ClassifySign(r.u).sign_class)});
      best = std::min(best, r.residual);
    }
    ok = best <= vopts.tol;
    return 0;
  });
  s.Write("verify.csv", table);
  s.Status("verify", ok);
}

void RunFracexp(Session &s, const RunConfig &config)
{
  const Problem p = Build(s, config);
  const auto rows = s.Timed("fracexp", [&]
                            { return ExpansionError(p.forms, p.mesh, config.fracexp_s_list, config.quad); });
  std::string table = s.header() + Csv({"s", "e_form", "e_eig"});
  for (const ExpansionRow &r : rows)
  {
    table += Csv({FormatNumber(r.s), FormatNumber(r.e_form), FormatNumber(r.e_eig)});
  }
  s.Write("fracexp.csv", table);
  s.Status("fracexp", true);
}

void RunNonres(Session &s, const RunConfig &config)
{
  const Problem p = Build(s, config);
  const auto eig = SolveEig(p.forms, 2, config.eig_dead_zone);
  const double l1 = eig[0].lambda, l2 = eig[1].lambda;
  const double r = config.nonres_r * (config.curve_r_units == "gap" ? l2 - l1 : 1.0);
  const MountainPassOptions mopts = PathOptions(config);
  const Metric metric(p.forms, mopts.metric);

  const MountainPassResult mp = s.Timed("curve_point", [&]
  {
    const FucikFunctional f = FucikFunctional::Fucik(p.forms, p.mesh, r);
    return MountainPass(f, InitialPath(metric, eig[0].vector, eig[1].vector, mopts.nodes), mopts);
  });
  const double alpha = r + mp.c, beta = mp.c;
  const NonlinearitySpec spec =
      DefaultNonlinearity(p.mesh, l1, alpha, beta, config.nonres_fraction, config.nonres_epsilon);
  ValidateSpec(spec, p.mesh);

  NonresonanceOptions nopts;
  nopts.nodes = mopts.nodes;
  nopts.rel_grad_tol = config.path_grad_tol;
  nopts.max_sweeps = config.path_max_sweeps;
  nopts.margin = config.nonres_margin;
  nopts.metric = mopts.metric;
  const NonresonanceResult res = s.Timed("nonres", [&]
  { return SolveNonresonance(spec, p.forms, p.mesh, eig[0].vector, eig[1].vector, nopts); });

  std::string table = s.header() + Csv({"r", "alpha", "beta", "q_plus", "q_minus", "epsilon", "R",
                                        "psi", "grad_norm", "norm_a", "norm_u", "sweeps",
                                        "curve_converged", "converged"});
  table += Csv({FormatNumber(r), FormatNumber(alpha), FormatNumber(beta),
                FormatNumber(l1 + config.nonres_fraction * (alpha - l1)),
                FormatNumber(l1 + config.nonres_fraction * (beta - l1)),
                FormatNumber(config.nonres_epsilon), FormatNumber(res.R),
                FormatNumber(res.psi_value), FormatNumber(res.grad_norm), FormatNumber(res.norm_a),
                FormatNumber(res.norm_u), std::to_string(res.sweeps), Bool(mp.string.converged),
                Bool(res.converged)});
  s.Write("nonres.csv", table);
  s.Write("nonres_u.csv", NodeTableText(p.mesh, {res.u}, {"u"}, s.header()));
  s.Status("curve_point", mp.string.converged);
  s.Status("nonres", res.converged);
}

}  // namespace

int Run(const std::string &command, const RunConfig &config)
{
  Require(std::find(Commands().begin(), Commands().end(), command) != Commands().end(),
          ErrorCode::Argument, "unknown command '" + command + "'");
  ConfigureLogging();
  DirectoryLock lock(config.run_output_dir);
  Session session(config);
  int code = 0;
  std::string message;
  try
  {
    if (command == "constants")
    {
      RunConstants(session, config);
    }
    else if (command == "assemble")
    {
      RunAssemble(session, config);
    }
    else if (command == "eig")
    {
      const Problem p = Build(session, config);
      RunEigInto(session, p, config);
    }
    else if (command == "curve")
    {
      RunCurve(session, config);
    }
    else if (command == "verify")
    {
      RunVerify(session, config);
    }
    else if (command == "fracexp")
    {
      RunFracexp(session, config);
    }
    else
    {
      RunNonres(session, config);
    }
    if (!session.converged())
    {
      code = static_cast<int>(ErrorCode::NotConverged);
      message = "at least one task did not converge";
    }
  }
  catch (const Error &e)
  {
    code = static_cast<int>(e.code());
    message = e.what();
  }
  catch (const std::exception &e)
  {
    code = static_cast<int>(ErrorCode::Internal);
    message = e.what();
  }
  if (code != 0)
  {
    spdlog::error("{}: {}", command, message);
  }
  session.Finish(command, code, message);
  return code;
}

}  // namespace logfucik
