// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "edlab/common.hpp"
#include "edlab/lattice.hpp"

namespace edlab
{

/// The eigenvalue iteration failed to converge.
class EigenSolveError : public Error
{
public:
  EigenSolveError(const std::string &what, int iterations)
    : Error(what), iteration_count(iterations)
  {
  }
  int iterations() const { return iteration_count; }

private:
  int iteration_count;
};

struct EigenDecomposition
{
  ComplexVector values;
  /// Unit 2-norm right eigenvectors, one per column.
  ComplexMatrix vectors;
  /// ||op v - E v||_2 per pair.
  std::vector<double> residuals;
  /// Reciprocal condition of each eigenvalue, shared by the members of a
  /// degenerate cluster (minimum over the cluster).
  std::vector<double> rcond;
  /// Cluster id per eigenvalue (values within the degeneracy tolerance share it).
  std::vector<int> cluster;
};

/// Dense non-symmetric eigen-solve. Throws EigenSolveError on non-convergence
/// and Error if any residual exceeds residual_tol * ||op||_F.
EigenDecomposition eig(const ComplexMatrix &op, double residual_tol = 1e-10,
                       double degeneracy_tol = 1e-8);

enum class BlockLabel
{
  A,
  B,
  Mixed
};

const char *to_string(BlockLabel label);

struct SpectrumSet
{
  std::vector<Complex> eigenvalues;
  std::vector<BlockLabel> block_label;
  Boundary boundary = Boundary::OBC;
  std::vector<double> conditioning;
};

/// Spectrum of build_bloch at k = 2 pi j / num_k, labelled per diagonal block.
SpectrumSet pbc_spectrum(const ModelSpec &spec, int num_k = 512);

/// Block-wise OBC spectrum. With reverse coupling present the full operator is
/// solved instead and every label is Mixed.
SpectrumSet obc_spectrum(const ModelSpec &spec);

/// Eigenvalues of the chain-X diagonal block of the OBC operator.
EigenDecomposition block_eig(const ModelSpec &spec, Chain chain);

/// Winding of det[H(k) - E0] around zero over one Brillouin-zone loop,
/// counter-clockwise positive.
int winding_number(const ModelSpec &spec, Complex E0, int num_k = 512);

struct GBZEntry
{
  Complex energy;
  Complex beta;
  Chain factor;
};

struct RadiusCluster
{
  double radius;
  Chain factor;
  int count;
};

struct GBZFailure
{
  Complex energy;
  std::string reason;
};

struct GBZPortrait
{
  std::vector<GBZEntry> entries;
  std::vector<RadiusCluster> radius_clusters;
  std::vector<GBZFailure> failures;
};

/// For every non-edge OBC eigenvalue of block X, the two roots of f_X(beta, E)
/// in the middle of the modulus ordering (those fixing the skin depth).
GBZPortrait gbz_portrait(const ModelSpec &spec, double cluster_tol = 1e-2);

struct ResolventNorm
{
  double value;
  /// Set when the shifted operator is numerically singular (value is +inf).
  bool singular;
};

/// ||(op - E)^-1||_2 as the reciprocal of the smallest singular value of op - E.
ResolventNorm resolvent_norm(const ComplexMatrix &op, Complex E);

/// Flags in-gap states of one block spectrum: sorted by real part, the
/// spectrum splits at spacings much larger than typical, and interior groups
/// much smaller than both neighbouring groups are in the gap.
std::vector<bool> in_gap_flags(const std::vector<Complex> &spectrum);

}  // namespace edlab
