// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include "edlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace edlab
{

const char *to_string(Regime r)
{
  return r == Regime::AsymptoticED ? "asymptotic-ED" : "bounded";
}

namespace
{

constexpr double marginal_tol = 1e-12;

void check_params(const ExactChainParams &p)
{
  if (p.L < 2)
  {
    throw PreconditionError("exact chain length L must be at least 2");
  }
  if (!(p.r > 0.0))
  {
    throw PreconditionError("exact chain ratio r must be positive");
  }
}

struct Column
{
  ComplexVector u;
  ComplexVector closed;
  ComplexVector series;
};

Column column_for(const ExactChainParams &p, double q, double kappa)
{
  const int L = p.L;
  const double eps = 2.0 * p.t * std::cos(q);
  const Complex d = eps - p.V;
  const Complex x = p.J / d;
  const Complex y = p.r * x;
  const Complex denom = 1.0 - 2.0 * y * std::cos(q) + y * y;
  Column c;
  c.u.resize(L);
  c.closed.resize(L);
  c.series.resize(L);
  Complex xn = x;
  for (int n = 1; n <= L; ++n)
  {
    c.u(n - 1) = std::pow(p.r, -n) * std::sin(n * q);
    xn *= x;
    c.closed(n - 1) = kappa / d *
                      (std::pow(p.r, -n) * (std::sin(n * q) - y * std::sin((n + 1) * q)) +
                       p.r * xn * std::sin(q)) /
                      denom;
  }
  // psi = kappa / (eps - V) * sum_k x^k S^k u, S the lower shift.
  for (int n = 0; n < L; ++n)
  {
    Complex acc = 0.0;
    Complex power = 1.0;
    for (int m = n; m >= 0; --m)
    {
      acc += power * c.u(m);
      power *= x;
    }
    c.series(n) = kappa / d * acc;
  }
  return c;
}

}  // namespace

RegimeVerdict asymptotic_regime(const ExactChainParams &p, double q)
{
  check_params(p);
  const double eps = 2.0 * p.t * std::cos(q);
  const double ax = std::abs(p.J / (eps - p.V));
  const double ay = p.r * ax;
  const bool r_is_one = std::abs(p.r - 1.0) == 0.0;
  RegimeVerdict v;
  v.marginal = std::abs(ax - 1.0) <= marginal_tol || std::abs(ay - 1.0) <= marginal_tol ||
               (!r_is_one && std::abs(p.r - 1.0) <= marginal_tol);
  bool ed = false;
  if (p.r < 1.0)
  {
    ed = ay >= 1.0;
  }
  else if (r_is_one)
  {
    ed = ax > 1.0;
  }
  else
  {
    ed = ax >= 1.0;
  }
  v.regime = ed ? Regime::AsymptoticED : Regime::Bounded;
  return v;
}

ExactSolution exact_eigensystem(const ExactChainParams &p, double kappa)
{
  check_params(p);
  if (p.V.imag() == 0.0 && std::abs(p.V.real()) <= 2.0 * std::abs(p.t))
  {
    throw PreconditionError("V lies on [-2t, 2t]: the block spectra overlap");
  }
  const int L = p.L;
  ExactSolution s;
  s.u.resize(L, L);
  s.psi.resize(L, L);
  s.eigenvectors.resize(2 * L, L);
  for (int j = 1; j <= L; ++j)
  {
    const double q = j * std::numbers::pi / (L + 1);
    const Column c = column_for(p, q, kappa);
    const double scale = c.series.norm();
    const double gap = (c.closed - c.series).norm();
    s.route_difference = std::max(s.route_difference, scale > 0.0 ? gap / scale : gap);
    s.q_values.push_back(q);
    s.eigenvalues.push_back(2.0 * p.t * std::cos(q));
    s.u.col(j - 1) = c.u;
    s.psi.col(j - 1) = c.closed;
    ComplexVector v(2 * L);
    v << c.closed, c.u;
    s.eigenvectors.col(j - 1) = v / v.norm();
    s.ratio.push_back(c.closed.squaredNorm() / c.u.squaredNorm());
    s.regime.push_back(asymptotic_regime(p, q));
  }
  if (!(s.route_difference <= 1e-10))
  {
    throw Error("closed-form and series components disagree");
  }
  return s;
}

ComplexMatrix exact_resolvent(const ExactChainParams &p, Complex E)
{
  check_params(p);
  const Complex d = E - p.V;
  if (d == 0.0)
  {
    throw PreconditionError("resolvent evaluated at the onsite energy");
  }
  const Complex x = p.J / d;
  ComplexMatrix g = ComplexMatrix::Zero(p.L, p.L);
  for (int m = 0; m < p.L; ++m)
  {
    Complex power = -1.0 / d;
    for (int n = m; n < p.L; ++n)
    {
      g(n, m) = power;
      power *= x;
    }
  }
  return g;
}

std::vector<RatioRow> ratio_scan(const ExactChainParams &params, const std::vector<int> &L_values,
                                 double q_fraction, double kappa)
{
  std::vector<RatioRow> rows;
  for (int L : L_values)
  {
    ExactChainParams p = params;
    p.L = L;
    check_params(p);
    const long j = std::clamp(std::lround(q_fraction * (L + 1)), 1L, static_cast<long>(L));
    const double q = j * std::numbers::pi / (L + 1);
    const Column c = column_for(p, q, kappa);
    rows.push_back({L, q, c.closed.squaredNorm() / c.u.squaredNorm(), asymptotic_regime(p, q)});
  }
  return rows;
}

ModelSpec exact_model(const ExactChainParams &params, double kappa)
{
  ModelSpec spec;
  spec.chainA = params;
  spec.chainB = params;
  spec.coupling = kappa;
  spec.direction = CouplingDirection::BToA;
  spec.cells = params.L;
  spec.boundary = Boundary::OBC;
  return spec;
}

}  // namespace edlab
