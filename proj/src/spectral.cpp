// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include "spectral.hpp"

#include <cmath>
#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include "errors.hpp"

namespace logfucik
{

const char *SignClassName(SignClass c)
{
  switch (c)
  {
    case SignClass::Positive:
      return "positive";
    case SignClass::Negative:
      return "negative";
    case SignClass::SignChanging:
      return "sign_changing";
  }
  return "unknown";
}

SignReport ClassifySign(const Vector &u, double theta)
{
  Require(u.size() > 0, ErrorCode::Argument, "classify_sign: empty vector");
  Require(theta >= 0.0 && theta < 1.0, ErrorCode::Argument, "dead zone must lie in [0, 1)");
  const double inf = u.cwiseAbs().maxCoeff();
  Require(inf > 0.0, ErrorCode::Argument, "classify_sign: zero vector");
  const double cut = theta * inf;
  std::size_t pos = 0, neg = 0;
  for (Eigen::Index i = 0; i < u.size(); i++)
  {
    pos += u[i] > cut;
    neg += u[i] < -cut;
  }
  SignReport rep;
  rep.dead_zone = theta;
  rep.pos_measure = static_cast<double>(pos) / u.size();
  rep.neg_measure = static_cast<double>(neg) / u.size();
  if (pos > 0 && neg > 0)
  {
    rep.sign_class = SignClass::SignChanging;
  }
  else
  {
    rep.sign_class = pos > 0 ? SignClass::Positive : SignClass::Negative;
  }
  return rep;
}

void FixSign(const Vector &lumped, Vector &u)
{
  const double mean = lumped.dot(u);
  const double scale = lumped.cwiseAbs().sum() * u.cwiseAbs().maxCoeff();
  double s = mean;
  if (std::abs(mean) <= 1e-10 * scale)
  {
    Eigen::Index imax = 0;
    u.cwiseAbs().maxCoeff(&imax);
    s = u[imax];
  }
  if (s < 0.0)
  {
    u = -u;
  }
}

namespace
{

Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> Solve(const Matrix &A, const Matrix &B)
{
  Eigen::LLT<Matrix> llt(B);
  Require(llt.info() == Eigen::Success, ErrorCode::Numeric,
          "mass matrix is not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(A, B);
  Require(es.info() == Eigen::Success, ErrorCode::Numeric, "generalized eigensolve failed");
  return es;
}

}  // namespace

std::vector<EigenPair> SolveEig(const FormMatrices &forms, std::size_t k, double dead_zone)
{
  const std::size_t n = forms.size();
  Require(k >= 1 && k <= n, ErrorCode::Argument, "eigenpair count must be in [1, n]");
  const auto es = Solve(forms.A, forms.M);
  const double norm_a = forms.A.norm();
  std::vector<EigenPair> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; i++)
  {
    EigenPair p;
    p.index = static_cast<int>(i + 1);
    p.lambda = es.eigenvalues()[i];
    p.vector = es.eigenvectors().col(i);
    p.vector /= std::sqrt(p.vector.dot(forms.M * p.vector));
    FixSign(forms.lumped, p.vector);
    p.residual = (forms.A * p.vector - p.lambda * (forms.M * p.vector)).norm() / norm_a;
    p.sign_class = ClassifySign(p.vector, dead_zone).sign_class;
    out.push_back(std::move(p));
  }
  return out;
}

double PencilNorm(const FormMatrices &forms)
{
  const auto es = Solve(forms.A, forms.M);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<WeightedPair> WeightedSolve(const FormMatrices &forms, const Mesh &mesh,
                                        const Vector &a, std::size_t k, double dead_zone)
{
  const std::size_t n = forms.size();
  Require(static_cast<std::size_t>(a.size()) == n, ErrorCode::Argument,
          "weight size does not match the form");
  Require(k >= 1 && k <= n, ErrorCode::Argument, "eigenpair count must be in [1, n]");
  Require(a.minCoeff() > 0.0, ErrorCode::Argument, "weight must be positive at every node");
  const Matrix Ma = WeightedMass(mesh, a);
  const auto es = Solve(forms.A, Ma);
  std::vector<WeightedPair> out;
  for (std::size_t i = 0; i < k; i++)
  {
    WeightedPair p;
    p.mu = es.eigenvalues()[i];
    p.vector = es.eigenvectors().col(i);
    p.vector /= std::sqrt(p.vector.dot(Ma * p.vector));
    FixSign(forms.lumped, p.vector);
    p.sign_class = ClassifySign(p.vector, dead_zone).sign_class;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace logfucik
