// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include "edlab/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace edlab
{

LaurentPolynomial::LaurentPolynomial(Complex constant) : lowest(0), coeffs{constant} {}

LaurentPolynomial::LaurentPolynomial(int lowest_power, std::vector<Complex> coefficients)
  : lowest(lowest_power), coeffs(std::move(coefficients))
{
}

LaurentPolynomial LaurentPolynomial::monomial(int power, Complex value)
{
  return LaurentPolynomial(power, {value});
}

Complex LaurentPolynomial::coefficient(int power) const
{
  const int k = power - lowest;
  if (k < 0 || k >= static_cast<int>(coeffs.size()))
  {
    return 0.0;
  }
  return coeffs[k];
}

Complex LaurentPolynomial::operator()(Complex beta) const
{
  // Horner on the non-negative shift, then rescale.
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
  {
    acc = acc * beta + *it;
  }
  return acc * std::pow(beta, lowest);
}

LaurentPolynomial &LaurentPolynomial::operator+=(const LaurentPolynomial &rhs)
{
  if (rhs.empty())
  {
    return *this;
  }
  if (empty())
  {
    return *this = rhs;
  }
  const int lo = std::min(lowest, rhs.lowest);
  const int hi = std::max(highest_power(), rhs.highest_power());
  std::vector<Complex> out(hi - lo + 1, 0.0);
  for (int p = lo; p <= hi; ++p)
  {
    out[p - lo] = coefficient(p) + rhs.coefficient(p);
  }
  lowest = lo;
  coeffs = std::move(out);
  return *this;
}

LaurentPolynomial &LaurentPolynomial::operator-=(const LaurentPolynomial &rhs)
{
  LaurentPolynomial neg = rhs;
  for (auto &c : neg.coeffs)
  {
    c = -c;
  }
  return *this += neg;
}

LaurentPolynomial operator*(const LaurentPolynomial &lhs, const LaurentPolynomial &rhs)
{
  if (lhs.empty() || rhs.empty())
  {
    return {};
  }
  std::vector<Complex> out(lhs.coeffs.size() + rhs.coeffs.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.coeffs.size(); ++i)
  {
    if (lhs.coeffs[i] == 0.0)
    {
      continue;
    }
    for (std::size_t j = 0; j < rhs.coeffs.size(); ++j)
    {
      out[i + j] += lhs.coeffs[i] * rhs.coeffs[j];
    }
  }
  return LaurentPolynomial(lhs.lowest + rhs.lowest, std::move(out));
}

namespace
{

bool is_zero(const LaurentPolynomial &p)
{
  return std::all_of(p.coefficients().begin(), p.coefficients().end(),
                     [](Complex c) { return c == 0.0; });
}

}  // namespace

LaurentPolynomial determinant(const PolynomialMatrix &m)
{
  const std::size_t n = m.size();
  if (n == 0)
  {
    return LaurentPolynomial(1.0);
  }
  if (n == 1)
  {
    return m[0][0];
  }
  LaurentPolynomial det;
  for (std::size_t col = 0; col < n; ++col)
  {
    if (is_zero(m[0][col]))
    {
      continue;
    }
    PolynomialMatrix minor(n - 1);
    for (std::size_t r = 1; r < n; ++r)
    {
      for (std::size_t c = 0; c < n; ++c)
      {
        if (c != col)
        {
          minor[r - 1].push_back(m[r][c]);
        }
      }
    }
    const LaurentPolynomial term = m[0][col] * determinant(minor);
    if (col % 2 == 0)
    {
      det += term;
    }
    else
    {
      det -= term;
    }
  }
  return det;
}

PolynomialRoots find_roots(const LaurentPolynomial &p, double rel_tol)
{
  PolynomialRoots out;
  const auto &c = p.coefficients();
  out.nominal_degree = c.empty() ? 0 : static_cast<int>(c.size()) - 1;
  double scale = 0.0;
  for (const auto &x : c)
  {
    scale = std::max(scale, std::abs(x));
  }
  if (scale == 0.0)
  {
    out.reduced = out.nominal_degree > 0;
    return out;
  }
  const double tol = rel_tol * scale;
  int lo = 0;
  int hi = static_cast<int>(c.size()) - 1;
  while (hi > lo && std::abs(c[hi]) <= tol)
  {
    --hi;
    ++out.dropped_leading;
  }
  while (lo < hi && std::abs(c[lo]) <= tol)
  {
    ++lo;
    ++out.dropped_trailing;
  }
  out.reduced = out.dropped_leading + out.dropped_trailing > 0;
  const int degree = hi - lo;
  if (degree <= 0)
  {
    return out;
  }
  // Companion matrix of the monic polynomial sum_k c[lo+k] x^k.
  ComplexMatrix companion = ComplexMatrix::Zero(degree, degree);
  for (int k = 0; k < degree; ++k)
  {
    companion(0, k) = -c[hi - 1 - k] / c[hi];
  }
  for (int k = 1; k < degree; ++k)
  {
    companion(k, k - 1) = 1.0;
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success)
  {
    throw Error("companion-matrix eigenvalue iteration did not converge");
  }
  out.roots.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
  return out;
}

}  // namespace edlab
