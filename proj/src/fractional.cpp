// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include "fractional.hpp"

#include <cmath>
#include <Eigen/Eigenvalues>
#include "errors.hpp"
#include "special_constants.hpp"

namespace logfucik
{

double KappaS(double x, const Domain &domain, double s)
{
  Require(domain.kind == DomainKind::Interval, ErrorCode::Domain,
          "fractional form supports intervals only");
  Require(x > domain.a && x < domain.b, ErrorCode::Domain, "kappa_s: point outside domain");
  const double c = FractionalConstant(1, s);
  return c / (2.0 * s) * (std::pow(x - domain.a, -2.0 * s) + std::pow(domain.b - x, -2.0 * s));
}

FractionalForm AssembleFractional(const Mesh &mesh, double s, const QuadratureSpec &quad)
{
  Require(s > 0.0 && s <= 0.5, ErrorCode::Domain, "fractional order must lie in (0, 1/2]");
  Require(mesh.domain.kind == DomainKind::Interval, ErrorCode::Domain,
          "fractional form supports intervals only");
  FractionalForm out;
  out.s = s;
  const Domain domain = mesh.domain;
  const double c = FractionalConstant(1, s);
  // The stronger boundary singularity of kappa_s is met with a steeper grading.
  out.A_s = AssembleInteriorPower(mesh, 1.0 + 2.0 * s, c, quad) +
            AssemblePotential(
                mesh, [&](double x) { return KappaS(x, domain, s); }, quad, 1.0 + 2.0 * s);
  out.kappa = Interpolate(mesh, [&](double x) { return KappaS(x, domain, s); });
  return out;
}

std::vector<ExpansionRow> ExpansionError(const FormMatrices &forms, const Mesh &mesh,
                                         const std::vector<double> &s_list,
                                         const QuadratureSpec &quad)
{
  Require(!s_list.empty(), ErrorCode::Argument, "s list is empty");
  for (std::size_t i = 0; i < s_list.size(); i++)
  {
    Require(s_list[i] > 0.0, ErrorCode::Argument, "s values must be positive");
    Require(i == 0 || s_list[i] < s_list[i - 1], ErrorCode::Argument,
            "s list must be strictly descending");
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> base(forms.A, forms.M, Eigen::EigenvaluesOnly);
  const double lambda1 = base.eigenvalues()[0];
  const double norm_a = forms.A.norm();

  std::vector<ExpansionRow> rows;
  for (double s : s_list)
  {
    const FractionalForm frac = AssembleFractional(mesh, s, quad);
    ExpansionRow row;
    row.s = s;
    row.e_form = ((frac.A_s - forms.M) / s - forms.A).norm() / norm_a;
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(frac.A_s, forms.M, Eigen::EigenvaluesOnly);
    Require(es.info() == Eigen::Success, ErrorCode::Numeric, "fractional eigensolve failed");
    row.e_eig = std::abs((es.eigenvalues()[0] - 1.0) / s - lambda1);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace logfucik
