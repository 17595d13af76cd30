// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "edlab/common.hpp"
#include "edlab/lattice.hpp"

namespace edlab
{

enum class Regime
{
  AsymptoticED,
  Bounded
};

const char *to_string(Regime r);

struct RegimeVerdict
{
  Regime regime = Regime::Bounded;
  /// A compared quantity sits within 1e-12 of 1; the verdict is not reliable.
  bool marginal = false;
};

/// Closed-form eigensystem of the exact chains coupled B-to-A. Column j of the
/// matrices belongs to q_j = j pi / (L + 1), j = 1..L.
struct ExactSolution
{
  std::vector<double> q_values;
  std::vector<double> eigenvalues;
  /// Chain-b eigenvectors r^-n sin(n q).
  ComplexMatrix u;
  /// Chain-a components from the closed-form sum.
  ComplexMatrix psi;
  /// (psi; u) normalized, chain-major.
  ComplexMatrix eigenvectors;
  std::vector<double> ratio;
  std::vector<RegimeVerdict> regime;
  /// Largest relative difference between the two routes to psi.
  double route_difference = 0.0;
};

/// Throws PreconditionError when V lies on the real segment [-2t, 2t].
ExactSolution exact_eigensystem(const ExactChainParams &params, double kappa);

/// (h_a - E)^-1 for the Jordan-block chain, from the geometric series.
ComplexMatrix exact_resolvent(const ExactChainParams &params, Complex E);

/// Large-L behaviour of ||psi_q||^2 / ||u_q||^2 at momentum q.
RegimeVerdict asymptotic_regime(const ExactChainParams &params, double q);

struct RatioRow
{
  int L;
  double q;
  double ratio;
  RegimeVerdict regime;
};

/// Ratio at the admissible q nearest to q_fraction * pi, for each L.
std::vector<RatioRow> ratio_scan(const ExactChainParams &params, const std::vector<int> &L_values,
                                 double q_fraction, double kappa = 1.0);

/// Model whose real-space operator is the exact coupled system of length L.
ModelSpec exact_model(const ExactChainParams &params, double kappa);

}  // namespace edlab
