// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#include "discretization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include "errors.hpp"
#include "quadrature.hpp"
#include "special_constants.hpp"

namespace logfucik
{

Domain Domain::Interval(double a, double b)
{
  Require(std::isfinite(a) && std::isfinite(b) && a < b, ErrorCode::Domain,
          "interval endpoints must satisfy a < b");
  Domain d;
  d.kind = DomainKind::Interval;
  d.a = a;
  d.b = b;
  return d;
}

Domain Domain::Disc(double radius)
{
  Require(std::isfinite(radius) && radius > 0.0, ErrorCode::Domain,
          "disc radius must be positive");
  Domain d;
  d.kind = DomainKind::Disc;
  d.radius = radius;
  return d;
}

double Domain::measure() const
{
  return kind == DomainKind::Interval ? b - a : std::numbers::pi * radius * radius;
}

double Domain::diameter() const
{
  return kind == DomainKind::Interval ? b - a : 2.0 * radius;
}

long Mesh::dof(std::size_t vertex) const
{
  if (domain.kind == DomainKind::Interval)
  {
    return (vertex == 0 || vertex > n) ? -1 : static_cast<long>(vertex) - 1;
  }
  return vertex < n ? static_cast<long>(vertex) : -1;
}

double Mesh::density(double x) const
{
  return domain.kind == DomainKind::Interval ? 1.0 : 2.0 * std::numbers::pi * x;
}

Mesh BuildMesh(const Domain &domain, std::size_t n)
{
  Require(n >= 2, ErrorCode::Argument, "mesh needs at least 2 degrees of freedom");
  Mesh mesh;
  mesh.domain = domain;
  mesh.n = n;
  if (domain.kind == DomainKind::Interval)
  {
    mesh.h = (domain.b - domain.a) / static_cast<double>(n + 1);
    mesh.vertices.resize(n + 2);
    for (std::size_t k = 0; k <= n + 1; k++)
    {
      mesh.vertices[k] = domain.a + mesh.h * static_cast<double>(k);
    }
    mesh.vertices.back() = domain.b;
    mesh.nodes.assign(mesh.vertices.begin() + 1, mesh.vertices.end() - 1);
  }
  else
  {
    mesh.h = domain.radius / static_cast<double>(n);
    mesh.vertices.resize(n + 1);
    for (std::size_t k = 0; k <= n; k++)
    {
      mesh.vertices[k] = mesh.h * static_cast<double>(k);
    }
    mesh.vertices.back() = domain.radius;
    mesh.nodes.assign(mesh.vertices.begin(), mesh.vertices.end() - 1);
  }
  return mesh;
}

double HOmega(double x, const Domain &domain)
{
  const int dim = domain.dim();
  // The near and far kernel contributions combine into a single logarithm of the power of
  // x with respect to the boundary, for any domain size.
  const double scale = 0.5 * CofN(dim) * UnitSphereMeasure(dim);
  double power;
  if (domain.kind == DomainKind::Interval)
  {
    Require(x > domain.a && x < domain.b, ErrorCode::Domain, "h_Omega: point outside domain");
    power = (x - domain.a) * (domain.b - x);
  }
  else
  {
    Require(x >= 0.0 && x < domain.radius, ErrorCode::Domain,
            "h_Omega: radius outside disc");
    power = (domain.radius - x) * (domain.radius + x);
  }
  return -scale * std::log(power);
}

double VertexValue(const Mesh &mesh, const Vector &u, std::size_t vertex)
{
  const long k = mesh.dof(vertex);
  return k < 0 ? 0.0 : u[k];
}

double VertexWeight(const Mesh &mesh, const Vector &w, std::size_t vertex)
{
  const long k = mesh.dof(vertex);
  if (k >= 0)
  {
    return w[k];
  }
  return vertex == 0 ? w[0] : w[w.size() - 1];
}

namespace
{

using Local3 = std::array<std::array<double, 3>, 3>;
using Local4 = std::array<std::array<double, 4>, 4>;

// Kernel local matrices on the unit cell, power kernel |x - y|^{-p}.
struct PowerLocals
{
  double identical = 0.0;  // coefficient of [[1, -1], [-1, 1]]
  Local3 adjacent{};       // vertices (i, i + 1, i + 2)
  std::vector<Local4> far; // far[d], vertices (i, i + 1, i + d, i + d + 1), d >= 2
};

Local3 AdjacentPower(double p, int q)
{
  const Rule &g = GaussLegendre(q);
  Local3 out{};
  // Corner coordinates: x = v_{i+1} - h a, y = v_{i+1} + h b; dof differences (a, b - a, -b).
  // Near triangle a + b <= 1: a = rho w, b = rho (1 - w); the radial factor is 1/(4 - p).
  {
    const Rule &g2 = GaussLegendre(2);
    for (std::size_t k = 0; k < g2.size(); k++)
    {
      const double w = g2.x[k];
      const std::array<double, 3> dd = {w, 1.0 - 2.0 * w, -(1.0 - w)};
      for (int r = 0; r < 3; r++)
      {
        for (int c = 0; c < 3; c++)
        {
          out[r][c] += g2.w[k] * dd[r] * dd[c] / (4.0 - p);
        }
      }
    }
  }
  // Far triangle a + b >= 1, collapsed at (1, 1): a = 1 - sigma v, b = 1 - sigma (1 - v).
  for (std::size_t i = 0; i < g.size(); i++)
  {
    const double sigma = g.x[i];
    const double kernel = std::pow(2.0 - sigma, -p) * sigma;
    for (std::size_t j = 0; j < g.size(); j++)
    {
      const double v = g.x[j];
      const double a = 1.0 - sigma * v;
      const double b = 1.0 - sigma * (1.0 - v);
      const std::array<double, 3> dd = {a, b - a, -b};
      const double wt = g.w[i] * g.w[j] * kernel;
      for (int r = 0; r < 3; r++)
      {
        for (int c = 0; c < 3; c++)
        {
          out[r][c] += wt * dd[r] * dd[c];
        }
      }
    }
  }
  return out;
}

Local4 FarPower(double p, int q, int d)
{
  const Rule &g = GaussLegendre(q);
  Local4 out{};
  for (std::size_t i = 0; i < g.size(); i++)
  {
    const double xi = g.x[i];
    for (std::size_t j = 0; j < g.size(); j++)
    {
      const double eta = g.x[j];
      const std::array<double, 4> dd = {1.0 - xi, xi, -(1.0 - eta), -eta};
      const double wt = g.w[i] * g.w[j] * std::pow(d + eta - xi, -p);
      for (int r = 0; r < 4; r++)
      {
        for (int c = 0; c < 4; c++)
        {
          out[r][c] += wt * dd[r] * dd[c];
        }
      }
    }
  }
  return out;
}

template <class T>
double MaxAbsDiff(const T &x, const T &y)
{
  double m = 0.0;
  for (std::size_t r = 0; r < x.size(); r++)
  {
    for (std::size_t c = 0; c < x[r].size(); c++)
    {
      m = std::max(m, std::abs(x[r][c] - y[r][c]));
    }
  }
  return m;
}

template <class T>
double MaxAbs(const T &x)
{
  double m = 0.0;
  for (const auto &row : x)
  {
    for (double v : row)
    {
      m = std::max(m, std::abs(v));
    }
  }
  return m;
}

[[noreturn]] void BudgetExhausted(const std::string &what)
{
  Fail(ErrorCode::Numeric, "quadrature budget exhausted: " + what);
}

PowerLocals ComputePowerLocals(double p, std::size_t cells, const QuadratureSpec &quad)
{
  PowerLocals loc;
  loc.identical = 2.0 / ((3.0 - p) * (4.0 - p));
  int q = quad.gauss_order;
  for (;; q += 4)
  {
    if (q + 4 > quad.max_gauss_order)
    {
      BudgetExhausted("regular cell pairs did not reach the consistency tolerance");
    }
    const Local3 a1 = AdjacentPower(p, q), a2 = AdjacentPower(p, q + 4);
    const Local4 f1 = FarPower(p, q, 2), f2 = FarPower(p, q + 4, 2);
    if (MaxAbsDiff(a1, a2) <= quad.consistency_tol * MaxAbs(a2) &&
        MaxAbsDiff(f1, f2) <= quad.consistency_tol * MaxAbs(f2))
    {
      loc.adjacent = a2;
      q += 4;
      break;
    }
  }
  loc.far.resize(cells);
  for (std::size_t d = 2; d < cells; d++)
  {
    loc.far[d] = FarPower(p, q, static_cast<int>(d));
  }
  return loc;
}

// Scatter a local matrix given on vertices into the dof matrix.
template <std::size_t K>
void Scatter(const Mesh &mesh, Matrix &S, const std::array<std::size_t, K> &verts,
             const std::array<std::array<double, K>, K> &local, double scale)
{
  for (std::size_t r = 0; r < K; r++)
  {
    const long dr = mesh.dof(verts[r]);
    if (dr < 0)
    {
      continue;
    }
    for (std::size_t c = 0; c < K; c++)
    {
      const long dc = mesh.dof(verts[c]);
      if (dc >= 0)
      {
        S(dr, dc) += scale * local[r][c];
      }
    }
  }
}

// ---- radial reduction on the disc --------------------------------------------------------
//
// For radial u, iint_{D x D} (u(x) - u(y))^2 / |x - y|^2 = iint (U(r) - U(s))^2 W(r, s) / |r - s|
// with W(r, s) = 4 pi^2 r s / (r + s) after the angular integrations.

double RadialWeight(double r, double s)
{
  const double sum = r + s;
  return sum > 0.0 ? 4.0 * std::numbers::pi * std::numbers::pi * r * s / sum : 0.0;
}

// Identical cell pair: returns J with local = J [[1, -1], [-1, 1]].
double RadialIdentical(double h, std::size_t cell, int q)
{
  const Rule &g = GaussLegendre(q);
  const double x0 = h * static_cast<double>(cell);
  double sum = 0.0;
  if (cell == 0)
  {
    // eta = xi v removes the kink of W at the origin.
    for (std::size_t i = 0; i < g.size(); i++)
    {
      const double xi = g.x[i];
      for (std::size_t j = 0; j < g.size(); j++)
      {
        const double v = g.x[j];
        sum += g.w[i] * g.w[j] * xi * (xi * (1.0 - v)) * RadialWeight(h * xi, h * xi * v);
      }
    }
  }
  else
  {
    for (std::size_t i = 0; i < g.size(); i++)
    {
      const double t = g.x[i];
      for (std::size_t j = 0; j < g.size(); j++)
      {
        const double eta = (1.0 - t) * g.x[j];
        sum += g.w[i] * g.w[j] * (1.0 - t) * t *
               RadialWeight(x0 + h * (eta + t), x0 + h * eta);
      }
    }
  }
  // Two symmetric triangles, integrand h |xi - eta| W.
  return 2.0 * h * sum;
}

Local3 RadialAdjacent(double h, std::size_t cell, int q)
{
  const Rule &g = GaussLegendre(q);
  const double mid = h * static_cast<double>(cell + 1);
  Local3 out{};
  auto add = [&](double a, double b, double wt)
  {
    const std::array<double, 3> dd = {a, b - a, -b};
    const double w = wt * RadialWeight(mid - h * a, mid + h * b);
    for (int r = 0; r < 3; r++)
    {
      for (int c = 0; c < 3; c++)
      {
        out[r][c] += w * dd[r] * dd[c];
      }
    }
  };
  for (std::size_t i = 0; i < g.size(); i++)
  {
    for (std::size_t j = 0; j < g.size(); j++)
    {
      // Near triangle: a = rho w, b = rho (1 - w). The distance h rho cancels the Jacobian.
      const double rho = g.x[i], w = g.x[j];
      add(rho * w, rho * (1.0 - w), g.w[i] * g.w[j] * h);
      // Far triangle: a = 1 - sigma v, b = 1 - sigma (1 - v), distance h (2 - sigma).
      const double sigma = g.x[i], v = g.x[j];
      add(1.0 - sigma * v, 1.0 - sigma * (1.0 - v), g.w[i] * g.w[j] * h * sigma / (2.0 - sigma));
    }
  }
  return out;
}

Local4 RadialFar(double h, std::size_t ci, std::size_t cj, int q)
{
  const Rule &g = GaussLegendre(q);
  const double xi0 = h * static_cast<double>(ci), eta0 = h * static_cast<double>(cj);
  Local4 out{};
  for (std::size_t i = 0; i < g.size(); i++)
  {
    const double xi = g.x[i];
    for (std::size_t j = 0; j < g.size(); j++)
    {
      const double eta = g.x[j];
      const double x = xi0 + h * xi, y = eta0 + h * eta;
      const std::array<double, 4> dd = {1.0 - xi, xi, -(1.0 - eta), -eta};
      const double wt = g.w[i] * g.w[j] * h * h * RadialWeight(x, y) / (y - x);
      for (int r = 0; r < 4; r++)
      {
        for (int c = 0; c < 4; c++)
        {
          out[r][c] += wt * dd[r] * dd[c];
        }
      }
    }
  }
  return out;
}

Matrix AssembleInteriorRadial(const Mesh &mesh, double coeff, const QuadratureSpec &quad)
{
  const std::size_t cells = mesh.cells();
  const double h = mesh.h;
  int q = quad.gauss_order;
  for (;; q += 4)
  {
    if (q + 4 > quad.max_gauss_order)
    {
      BudgetExhausted("radial cell pairs did not reach the consistency tolerance");
    }
    bool ok = true;
    for (std::size_t c : {std::size_t{0}, std::size_t{1}})
    {
      const double j1 = RadialIdentical(h, c, q), j2 = RadialIdentical(h, c, q + 4);
      ok = ok && std::abs(j1 - j2) <= quad.consistency_tol * std::abs(j2);
      const Local3 a1 = RadialAdjacent(h, c, q), a2 = RadialAdjacent(h, c, q + 4);
      ok = ok && MaxAbsDiff(a1, a2) <= quad.consistency_tol * MaxAbs(a2);
      const Local4 f1 = RadialFar(h, c, c + 2, q), f2 = RadialFar(h, c, c + 2, q + 4);
      ok = ok && MaxAbsDiff(f1, f2) <= quad.consistency_tol * MaxAbs(f2);
    }
    if (ok)
    {
      q += 4;
      break;
    }
  }

  Matrix S = Matrix::Zero(mesh.n, mesh.n);
  for (std::size_t i = 0; i < cells; i++)
  {
    const double j0 = RadialIdentical(h, i, q);
    const std::array<std::array<double, 2>, 2> id = {{{j0, -j0}, {-j0, j0}}};
    Scatter<2>(mesh, S, {i, i + 1}, id, 0.5 * coeff);
    if (i + 1 < cells)
    {
      Scatter<3>(mesh, S, {i, i + 1, i + 2}, RadialAdjacent(h, i, q), coeff);
    }
    for (std::size_t j = i + 2; j < cells; j++)
    {
      Scatter<4>(mesh, S, {i, i + 1, j, j + 1}, RadialFar(h, i, j, q), coeff);
    }
  }
  return 0.5 * (S + S.transpose());
}

// Integral over one cell of f(x) phi_a phi_b density with a given rule on [0, 1].
void AddCellProduct(const Mesh &mesh, std::size_t cell, const Rule &rule,
                    const std::function<double(double)> &f, std::array<double, 3> &acc)
{
  const double x0 = mesh.vertices[cell], x1 = mesh.vertices[cell + 1];
  const double len = x1 - x0;
  for (std::size_t k = 0; k < rule.size(); k++)
  {
    const double t = rule.x[k];
    const double x = x0 + len * t;
    const double w = rule.w[k] * len * f(x) * mesh.density(x);
    acc[0] += w * (1.0 - t) * (1.0 - t);
    acc[1] += w * (1.0 - t) * t;
    acc[2] += w * t * t;
  }
}

void ScatterCell(const Mesh &mesh, Matrix &out, std::size_t cell,
                 const std::array<double, 3> &acc)
{
  const std::array<std::array<double, 2>, 2> local = {{{acc[0], acc[1]}, {acc[1], acc[2]}}};
  Scatter<2>(mesh, out, {cell, cell + 1}, local, 1.0);
}

bool IsBoundaryLeft(const Mesh &mesh, std::size_t cell)
{
  return mesh.domain.kind == DomainKind::Interval && cell == 0;
}

bool IsBoundaryRight(const Mesh &mesh, std::size_t cell)
{
  return cell + 1 == mesh.cells();
}

}  // namespace

Matrix AssembleInteriorPower(const Mesh &mesh, double power, double coeff,
                             const QuadratureSpec &quad)
{
  Require(mesh.domain.kind == DomainKind::Interval, ErrorCode::Domain,
          "power-kernel assembly requires an interval");
  Require(power >= 1.0 && power <= 2.0, ErrorCode::Argument, "kernel power must be in [1, 2]");
  const std::size_t cells = mesh.cells();
  const PowerLocals loc = ComputePowerLocals(power, cells, quad);
  const double scale = coeff * std::pow(mesh.h, 2.0 - power);

  Matrix S = Matrix::Zero(mesh.n, mesh.n);
  const std::array<std::array<double, 2>, 2> id = {
      {{loc.identical, -loc.identical}, {-loc.identical, loc.identical}}};
  for (std::size_t i = 0; i < cells; i++)
  {
    Scatter<2>(mesh, S, {i, i + 1}, id, 0.5 * scale);
    if (i + 1 < cells)
    {
      Scatter<3>(mesh, S, {i, i + 1, i + 2}, loc.adjacent, scale);
    }
    for (std::size_t j = i + 2; j < cells; j++)
    {
      Scatter<4>(mesh, S, {i, i + 1, j, j + 1}, loc.far[j - i], scale);
    }
  }
  return 0.5 * (S + S.transpose());
}

Matrix AssemblePotential(const Mesh &mesh, const std::function<double(double)> &potential,
                         const QuadratureSpec &quad, double grading_boost)
{
  const std::size_t cells = mesh.cells();
  Matrix V = Matrix::Zero(mesh.n, mesh.n);
  const Rule &regular = GaussLegendre(quad.gauss_order);
  const double grading = quad.boundary_grading * grading_boost;

  auto boundary_cell = [&](std::size_t cell, bool left, int levels)
  {
    const Rule graded = GradedRule(quad.gauss_order, levels, grading);
    const Rule rule = left ? graded : Mirrored(graded);
    std::array<double, 3> acc{};
    AddCellProduct(mesh, cell, rule, potential, acc);
    return acc;
  };

  for (std::size_t cell = 0; cell < cells; cell++)
  {
    const bool left = IsBoundaryLeft(mesh, cell);
    const bool right = IsBoundaryRight(mesh, cell);
    std::array<double, 3> acc{};
    if (!left && !right)
    {
      AddCellProduct(mesh, cell, regular, potential, acc);
    }
    else
    {
      int levels = quad.singular_subdivisions;
      for (;;)
      {
        if (2 * levels > quad.max_subdivisions)
        {
          BudgetExhausted("boundary cells of the potential term");
        }
        const auto a1 = boundary_cell(cell, left, levels);
        const auto a2 = boundary_cell(cell, left, 2 * levels);
        // Only entries that touch a dof matter; the boundary vertex has none.
        const bool dof0 = mesh.dof(cell) >= 0, dof1 = mesh.dof(cell + 1) >= 0;
        double diff = 0.0, ref = 0.0;
        for (int k = 0; k < 3; k++)
        {
          const bool used = (k == 0 && dof0) || (k == 1 && dof0 && dof1) || (k == 2 && dof1);
          if (used)
          {
            diff = std::max(diff, std::abs(a1[k] - a2[k]));
            ref = std::max(ref, std::abs(a2[k]));
          }
        }
        if (diff <= quad.consistency_tol * ref)
        {
          acc = a2;
          break;
        }
        levels *= 2;
      }
    }
    ScatterCell(mesh, V, cell, acc);
  }
  return V;
}

Matrix WeightedMass(const Mesh &mesh, const Vector &weight)
{
  Require(static_cast<std::size_t>(weight.size()) == mesh.n, ErrorCode::Argument,
          "weight size does not match the mesh");
  const Rule &g = GaussLegendre(3);
  Matrix out = Matrix::Zero(mesh.n, mesh.n);
  for (std::size_t cell = 0; cell < mesh.cells(); cell++)
  {
    const double w0 = VertexWeight(mesh, weight, cell);
    const double w1 = VertexWeight(mesh, weight, cell + 1);
    const double x0 = mesh.vertices[cell];
    const double len = mesh.vertices[cell + 1] - x0;
    std::array<double, 3> acc{};
    for (std::size_t k = 0; k < g.size(); k++)
    {
      const double t = g.x[k];
      const double wt = g.w[k] * len * ((1.0 - t) * w0 + t * w1) * mesh.density(x0 + len * t);
      acc[0] += wt * (1.0 - t) * (1.0 - t);
      acc[1] += wt * (1.0 - t) * t;
      acc[2] += wt * t * t;
    }
    ScatterCell(mesh, out, cell, acc);
  }
  return out;
}

FormMatrices Assemble(const Mesh &mesh, const QuadratureSpec &quad)
{
  Require(quad.gauss_order >= 1 && quad.singular_subdivisions >= 1 &&
              quad.boundary_grading >= 1.0 && quad.direct_panels >= 1,
          ErrorCode::Argument, "quadrature counts must be >= 1");
  const int dim = mesh.domain.dim();
  const double c_n = CofN(dim);
  const double rho = RhoOfN(dim);
  FormMatrices forms;
  forms.S = mesh.domain.kind == DomainKind::Interval
                ? AssembleInteriorPower(mesh, 1.0, c_n, quad)
                : AssembleInteriorRadial(mesh, c_n, quad);
  const Domain domain = mesh.domain;
  forms.V = AssemblePotential(
      mesh, [&](double x) { return HOmega(x, domain) + rho; }, quad);
  forms.A = forms.S + forms.V;
  forms.M = WeightedMass(mesh, Vector::Ones(mesh.n));
  forms.lumped = forms.M.rowwise().sum();
  return forms;
}

double EvaluateForm(const FormMatrices &forms, const Vector &u, const Vector &v)
{
  Require(u.size() == forms.A.rows() && v.size() == forms.A.rows(), ErrorCode::Argument,
          "vector size does not match the form");
  return u.dot(forms.A * v);
}

namespace
{

double DirectAtPanels(const std::function<double(double)> &f,
                      const std::function<double(double)> &g, const Domain &domain,
                      const QuadratureSpec &quad, int panels)
{
  const Rule &rule = GaussLegendre(quad.gauss_order);
  const std::size_t q = rule.size();
  const double H = (domain.b - domain.a) / panels;
  auto checked = [](double v)
  {
    Require(std::isfinite(v), ErrorCode::Numeric, "direct evaluator: non-finite function value");
    return v;
  };

  std::vector<double> xs(panels * q), fv(panels * q), gv(panels * q);
  for (int p = 0; p < panels; p++)
  {
    for (std::size_t k = 0; k < q; k++)
    {
      const double x = domain.a + H * (p + rule.x[k]);
      xs[p * q + k] = x;
      fv[p * q + k] = checked(f(x));
      gv[p * q + k] = checked(g(x));
    }
  }

  double off = 0.0;
  for (int i = 0; i < panels; i++)
  {
    for (int j = i + 1; j < panels; j++)
    {
      for (std::size_t a = 0; a < q; a++)
      {
        const std::size_t ia = i * q + a;
        for (std::size_t b = 0; b < q; b++)
        {
          const std::size_t jb = j * q + b;
          off += rule.w[a] * rule.w[b] * (fv[ia] - fv[jb]) * (gv[ia] - gv[jb]) /
                 (xs[jb] - xs[ia]);
        }
      }
    }
  }
  off *= H * H;

  // Identical panels: t = xi - eta on the lower triangle; the integrand is smooth in (t, eta).
  double diag = 0.0;
  for (int p = 0; p < panels; p++)
  {
    const double x0 = domain.a + H * p;
    for (std::size_t i = 0; i < q; i++)
    {
      const double t = rule.x[i];
      for (std::size_t j = 0; j < q; j++)
      {
        const double eta = (1.0 - t) * rule.x[j];
        const double y = x0 + H * eta, x = y + H * t;
        diag += rule.w[i] * rule.w[j] * (1.0 - t) * (checked(f(x)) - checked(f(y))) *
                (checked(g(x)) - checked(g(y))) / (H * t);
      }
    }
  }
  diag *= 2.0 * H * H;

  const double c_n = CofN(1);
  const double rho = RhoOfN(1);
  double pot = 0.0;
  const Rule graded = GradedRule(quad.gauss_order, quad.singular_subdivisions, quad.boundary_grading);
  const Rule graded_right = Mirrored(graded);
  for (int p = 0; p < panels; p++)
  {
    const Rule &r = p == 0 ? graded : (p == panels - 1 ? graded_right : rule);
    for (std::size_t k = 0; k < r.size(); k++)
    {
      const double x = domain.a + H * (p + r.x[k]);
      pot += r.w[k] * H * (HOmega(x, domain) + rho) * checked(f(x)) * checked(g(x));
    }
  }
  return 0.5 * c_n * (2.0 * off + diag) + pot;
}

}  // namespace

DirectValue EvaluateFormDirect(const std::function<double(double)> &f,
                               const std::function<double(double)> &g, const Domain &domain,
                               const QuadratureSpec &quad)
{
  Require(domain.kind == DomainKind::Interval, ErrorCode::Domain,
          "direct evaluator supports intervals only");
  const double coarse = DirectAtPanels(f, g, domain, quad, quad.direct_panels);
  const double fine = DirectAtPanels(f, g, domain, quad, 2 * quad.direct_panels);
  return {fine, std::abs(fine - coarse)};
}

Vector PositivePart(const Vector &u)
{
  return u.cwiseMax(0.0);
}

Vector NegativePart(const Vector &u)
{
  return (-u).cwiseMax(0.0);
}

double CrossTerm(const FormMatrices &forms, const Vector &u)
{
  return -PositivePart(u).dot(forms.A * NegativePart(u));
}

namespace
{

// Visit the sign-constant pieces of the P1 function on each cell. The callback receives the
// cell, piece bounds [t0, t1] in local coordinates, and the sign of the piece.
template <class F>
void ForEachSignPiece(const Mesh &mesh, const Vector &u, F &&visit)
{
  for (std::size_t cell = 0; cell < mesh.cells(); cell++)
  {
    const double u0 = VertexValue(mesh, u, cell);
    const double u1 = VertexValue(mesh, u, cell + 1);
    if ((u0 > 0.0 && u1 < 0.0) || (u0 < 0.0 && u1 > 0.0))
    {
      const double root = u0 / (u0 - u1);
      visit(cell, u0, u1, 0.0, root, u0 > 0.0 ? 1 : -1);
      visit(cell, u0, u1, root, 1.0, u1 > 0.0 ? 1 : -1);
    }
    else if (u0 > 0.0 || u1 > 0.0)
    {
      visit(cell, u0, u1, 0.0, 1.0, 1);
    }
    else if (u0 < 0.0 || u1 < 0.0)
    {
      visit(cell, u0, u1, 0.0, 1.0, -1);
    }
  }
}

}  // namespace

SignIntegrals IntegrateBySign(const Mesh &mesh, const Vector &u, const Vector &w_plus,
                              const Vector &w_minus)
{
  const std::size_t n = mesh.n;
  Require(static_cast<std::size_t>(u.size()) == n, ErrorCode::Argument,
          "vector size does not match the mesh");
  SignIntegrals out;
  out.load_plus = Vector::Zero(n);
  out.load_minus = Vector::Zero(n);
  const Rule &g = GaussLegendre(3);
  ForEachSignPiece(mesh, u,
                   [&](std::size_t cell, double u0, double u1, double t0, double t1, int sign)
                   {
                     const Vector &wv = sign > 0 ? w_plus : w_minus;
                     const bool weighted = wv.size() > 0;
                     const double w0 = weighted ? VertexWeight(mesh, wv, cell) : 1.0;
                     const double w1 = weighted ? VertexWeight(mesh, wv, cell + 1) : 1.0;
                     const double x0 = mesh.vertices[cell];
                     const double len = mesh.vertices[cell + 1] - x0;
                     const long d0 = mesh.dof(cell), d1 = mesh.dof(cell + 1);
                     Vector &load = sign > 0 ? out.load_plus : out.load_minus;
                     double &mass = sign > 0 ? out.mass_plus : out.mass_minus;
                     for (std::size_t k = 0; k < g.size(); k++)
                     {
                       const double t = t0 + (t1 - t0) * g.x[k];
                       // Magnitude of the part: u~ on positive pieces, -u~ on negative ones.
                       const double part = sign * ((1.0 - t) * u0 + t * u1);
                       const double wt = g.w[k] * (t1 - t0) * len * ((1.0 - t) * w0 + t * w1) *
                                         mesh.density(x0 + len * t);
                       mass += wt * part * part;
                       if (d0 >= 0)
                       {
                         load[d0] += wt * part * (1.0 - t);
                       }
                       if (d1 >= 0)
                       {
                         load[d1] += wt * part * t;
                       }
                     }
                   });
  return out;
}

SignMasses SignRestrictedMass(const Mesh &mesh, const Vector &u, const Vector &w_plus,
                              const Vector &w_minus)
{
  const std::size_t n = mesh.n;
  Require(static_cast<std::size_t>(u.size()) == n, ErrorCode::Argument,
          "vector size does not match the mesh");
  SignMasses out{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  const Rule &g = GaussLegendre(3);
  ForEachSignPiece(mesh, u,
                   [&](std::size_t cell, double, double, double t0, double t1, int sign)
                   {
                     const Vector &wv = sign > 0 ? w_plus : w_minus;
                     const bool weighted = wv.size() > 0;
                     const double w0 = weighted ? VertexWeight(mesh, wv, cell) : 1.0;
                     const double w1 = weighted ? VertexWeight(mesh, wv, cell + 1) : 1.0;
                     const double x0 = mesh.vertices[cell];
                     const double len = mesh.vertices[cell + 1] - x0;
                     std::array<double, 3> acc{};
                     for (std::size_t k = 0; k < g.size(); k++)
                     {
                       const double t = t0 + (t1 - t0) * g.x[k];
                       const double wt = g.w[k] * (t1 - t0) * len * ((1.0 - t) * w0 + t * w1) *
                                         mesh.density(x0 + len * t);
                       acc[0] += wt * (1.0 - t) * (1.0 - t);
                       acc[1] += wt * (1.0 - t) * t;
                       acc[2] += wt * t * t;
                     }
                     ScatterCell(mesh, sign > 0 ? out.plus : out.minus, cell, acc);
                   });
  return out;
}

Vector Interpolate(const Mesh &mesh, const std::function<double(double)> &f)
{
  Vector u(mesh.n);
  for (std::size_t k = 0; k < mesh.n; k++)
  {
    u[k] = f(mesh.nodes[k]);
  }
  return u;
}

double EvaluateP1(const Mesh &mesh, const Vector &u, double x)
{
  const double lo = mesh.vertices.front(), hi = mesh.vertices.back();
  if (x < lo || x >= hi)
  {
    return 0.0;
  }
  std::size_t cell = static_cast<std::size_t>((x - lo) / mesh.h);
  cell = std::min(cell, mesh.cells() - 1);
  const double t = (x - mesh.vertices[cell]) / (mesh.vertices[cell + 1] - mesh.vertices[cell]);
  return (1.0 - t) * VertexValue(mesh, u, cell) + t * VertexValue(mesh, u, cell + 1);
}

}  // namespace logfucik
