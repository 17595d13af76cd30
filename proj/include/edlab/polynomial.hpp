// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "edlab/common.hpp"

namespace edlab
{

/// Polynomial in beta and 1/beta: sum_k coeff[k] * beta^(lowest + k).
class LaurentPolynomial
{
public:
  LaurentPolynomial() = default;
  LaurentPolynomial(Complex constant);
  LaurentPolynomial(int lowest_power, std::vector<Complex> coefficients);

  /// Single term value * beta^power.
  static LaurentPolynomial monomial(int power, Complex value);

  int lowest_power() const { return lowest; }
  int highest_power() const { return lowest + static_cast<int>(coeffs.size()) - 1; }
  const std::vector<Complex> &coefficients() const { return coeffs; }
  bool empty() const { return coeffs.empty(); }

  /// Coefficient of beta^power (zero outside the stored range).
  Complex coefficient(int power) const;

  Complex operator()(Complex beta) const;

  LaurentPolynomial &operator+=(const LaurentPolynomial &rhs);
  LaurentPolynomial &operator-=(const LaurentPolynomial &rhs);
  friend LaurentPolynomial operator+(LaurentPolynomial lhs, const LaurentPolynomial &rhs)
  {
    return lhs += rhs;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial lhs, const LaurentPolynomial &rhs)
  {
    return lhs -= rhs;
  }
  friend LaurentPolynomial operator*(const LaurentPolynomial &lhs,
                                     const LaurentPolynomial &rhs);

private:
  int lowest = 0;
  std::vector<Complex> coeffs;
};

/// Square matrix whose entries are Laurent polynomials in beta.
using PolynomialMatrix = std::vector<std::vector<LaurentPolynomial>>;

/// Determinant by cofactor expansion along the first row. Exact zero entries
/// contribute nothing, so block-triangular inputs never touch the coupling.
LaurentPolynomial determinant(const PolynomialMatrix &m);

/// Result of root-finding on a Laurent polynomial.
struct PolynomialRoots
{
  std::vector<Complex> roots;
  /// Number of roots a full-degree polynomial of the same Laurent span has.
  int nominal_degree = 0;
  /// True when leading or trailing coefficients fell under tolerance and were
  /// dropped before solving.
  bool reduced = false;
  /// Leading/trailing coefficients dropped (trailing drops are roots at 0).
  int dropped_leading = 0;
  int dropped_trailing = 0;
};

/// Roots of p(beta) = 0 from the eigenvalues of the companion matrix of
/// beta^(-lowest) * p. Coefficients below rel_tol * max|coeff| at either end
/// are treated as zero.
PolynomialRoots find_roots(const LaurentPolynomial &p, double rel_tol = 1e-14);

}  // namespace edlab
