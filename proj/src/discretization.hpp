// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOGFUCIK_DISCRETIZATION_HPP
#define LOGFUCIK_DISCRETIZATION_HPP

#include <cstddef>
#include <functional>
#include <vector>
#include <Eigen/Dense>

namespace logfucik
{

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class DomainKind
{
  Interval,
  Disc
};

// Bounded domain: an interval (a, b) in R^1 or the disc of radius R centered at the
// origin in R^2. Disc problems are reduced to radial functions.
struct Domain
{
  DomainKind kind = DomainKind::Interval;
  double a = -0.5;
  double b = 0.5;
  double radius = 0.5;

  static Domain Interval(double a, double b);
  static Domain Disc(double radius);

  int dim() const { return kind == DomainKind::Interval ? 1 : 2; }
  double measure() const;
  double diameter() const;
};

// Uniform P1 mesh with homogeneous Dirichlet exterior condition.
//
// Interval: vertices a = x_0 < ... < x_{n+1} = b, dof k lives on vertex k + 1.
// Disc: radial vertices 0 = r_0 < ... < r_n = R, dof k lives on vertex k (the center
// carries a dof, the outer circle does not).
struct Mesh
{
  Domain domain;
  std::vector<double> vertices;
  std::vector<double> nodes;
  double h = 0.0;
  std::size_t n = 0;

  std::size_t cells() const { return vertices.size() - 1; }
  // Dof index of a vertex, or -1 for a vertex on the Dirichlet boundary.
  long dof(std::size_t vertex) const;
  // Density of the integration measure in the mesh coordinate: 1, or 2 pi r for the disc.
  double density(double x) const;
};

Mesh BuildMesh(const Domain &domain, std::size_t n);

struct QuadratureSpec
{
  int gauss_order = 10;            // points per direction on regular cell pairs
  int singular_subdivisions = 8;   // graded levels on cells touching the boundary
  double boundary_grading = 3.0;   // grading exponent toward the boundary
  int direct_panels = 64;          // panels of the mesh-free evaluator
  double consistency_tol = 1e-8;   // relative agreement required between refinements
  int max_gauss_order = 40;        // budget for the adaptive order increase
  int max_subdivisions = 512;      // budget for the graded levels
};

// Galerkin matrices on the nodal basis. A = S + V represents the quadratic form of the
// logarithmic Laplacian, M the L2 product.
struct FormMatrices
{
  Matrix S;
  Matrix V;
  Matrix A;
  Matrix M;
  Vector lumped;  // row sums of M

  std::size_t size() const { return static_cast<std::size_t>(A.rows()); }
};

// Boundary potential h_Omega + (nothing else); for the disc x is the radial coordinate.
// Closed form h_Omega(x) = -(c_N omega_{N-1} / 2) ln P(x) with P the power of x with respect
// to the boundary: (x - a)(b - x) on an interval, R^2 - |x|^2 on a disc.
double HOmega(double x, const Domain &domain);

FormMatrices Assemble(const Mesh &mesh, const QuadratureSpec &quad);

// (coeff / 2) * iint_{Omega x Omega} (phi_p(x) - phi_p(y)) (phi_q(x) - phi_q(y)) |x - y|^{-power}
// on an interval mesh, 1 <= power <= 2.
Matrix AssembleInteriorPower(const Mesh &mesh, double power, double coeff,
                             const QuadratureSpec &quad);

// int_Omega potential(x) phi_p phi_q dx. The potential may blow up at the Dirichlet
// boundary like a log or an integrable power; `grading_boost` scales the grading exponent.
Matrix AssemblePotential(const Mesh &mesh, const std::function<double(double)> &potential,
                         const QuadratureSpec &quad, double grading_boost = 1.0);

// int_Omega w phi_p phi_q with w the P1 interpolant of a nodal weight.
Matrix WeightedMass(const Mesh &mesh, const Vector &weight);

double EvaluateForm(const FormMatrices &forms, const Vector &u, const Vector &v);

struct DirectValue
{
  double value;
  double error;  // difference between the panel count and its doubling
};

// Mesh-free quadrature of the form for smooth f, g vanishing on the boundary of an interval.
DirectValue EvaluateFormDirect(const std::function<double(double)> &f,
                               const std::function<double(double)> &g, const Domain &domain,
                               const QuadratureSpec &quad);

// Nodal clamps u+ = max(u, 0), u- = max(-u, 0).
Vector PositivePart(const Vector &u);
Vector NegativePart(const Vector &u);

// h(u+, u-) = -(u+)^T A (u-) with nodal parts.
double CrossTerm(const FormMatrices &forms, const Vector &u);

// Integrals of the exact positive and negative parts of the P1 function u~:
//   load_plus_i  = int w_plus  u~+ phi_i      mass_plus  = int w_plus  (u~+)^2
//   load_minus_i = int w_minus u~- phi_i      mass_minus = int w_minus (u~-)^2
// with P1-interpolated nodal weights (empty weight = 1).
struct SignIntegrals
{
  Vector load_plus;
  Vector load_minus;
  double mass_plus = 0.0;
  double mass_minus = 0.0;
};

SignIntegrals IntegrateBySign(const Mesh &mesh, const Vector &u, const Vector &w_plus = {},
                              const Vector &w_minus = {});

// Mass matrices restricted to {u~ > 0} and {u~ < 0}; their sum is M.
struct SignMasses
{
  Matrix plus;
  Matrix minus;
};

SignMasses SignRestrictedMass(const Mesh &mesh, const Vector &u, const Vector &w_plus = {},
                              const Vector &w_minus = {});

// Nodal interpolation and pointwise evaluation of P1 functions.
Vector Interpolate(const Mesh &mesh, const std::function<double(double)> &f);
double EvaluateP1(const Mesh &mesh, const Vector &u, double x);

// Value of a nodal vector at a vertex (0 on the Dirichlet boundary).
double VertexValue(const Mesh &mesh, const Vector &u, std::size_t vertex);

// Weight value at a vertex; boundary vertices take the adjacent dof value.
double VertexWeight(const Mesh &mesh, const Vector &w, std::size_t vertex);

}  // namespace logfucik

#endif  // LOGFUCIK_DISCRETIZATION_HPP
