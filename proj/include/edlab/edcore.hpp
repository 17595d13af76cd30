// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edlab/common.hpp"
#include "edlab/lattice.hpp"
#include "edlab/spectral.hpp"

namespace edlab
{

/// One eigenstate of the full operator with the block eigenvalue it was
/// matched to.
struct StateRecord
{
  int column = 0;
  Complex eigenvalue;
  Complex block_value;
  Chain block = Chain::A;
  bool edge = false;
  /// Eigenvalue equally close to both block spectra; block chosen by support.
  bool ambiguous = false;
  double gauge = 0.0;
};

struct EigenspacePair
{
  int chain_length = 0;
  /// Bulk eigenvectors of each block in pairing order, one per column.
  ComplexMatrix vecs_A;
  ComplexMatrix vecs_B;
  std::vector<Complex> values_A;
  std::vector<Complex> values_B;
  /// vecs_A column i is paired with vecs_B column pairing[i].
  std::vector<int> pairing;
  /// Full-operator columns of the excluded in-gap states.
  std::vector<int> excluded;
  std::vector<StateRecord> states;
  /// Full eigenvector matrix (unit columns) for defectiveness metrics.
  ComplexMatrix eigenbasis;
  int ambiguous = 0;
  std::string pairing_rule = "ascending real part, ties by imaginary part";
};

/// Splits the eigenvectors of a chain-major operator by matching every full
/// eigenvalue to a diagonal-block eigenvalue (minimum total distance).
EigenspacePair extract_eigenspaces(const ComplexMatrix &op, int chain_length,
                                   double match_tol = 1e-6);

EigenspacePair extract_eigenspaces(const ModelSpec &spec,
                                   const std::optional<DisorderSpec> &disorder = std::nullopt);

/// Sum of paired overlaps |<A_m|B_m>| over sqrt(M_A) sqrt(M_B), clamped to [0, 1].
double cosine_similarity(const EigenspacePair &pair);

/// Mean physical site index weighted by |phi_n|, divided by the site count.
double localization_gauge(const ComplexVector &state, int chain_length);

/// Gauge of every eigenstate of op, skipping in-gap states of the full spectrum.
std::vector<double> bulk_gauges(const ComplexMatrix &op, int chain_length);

/// Eigenvector of the coupled operator built from a source-block eigenvector:
/// the target component is -(h_T - E)^-1 K u_S, with K the coupling block.
ComplexVector structured_eigenvector(const ComplexMatrix &op, int chain_length,
                                     CouplingDirection direction, Complex E,
                                     const ComplexVector &u_source, double spectral_tol = 1e-6);

ComplexVector structured_eigenvector(const ModelSpec &spec, Complex E,
                                     const ComplexVector &u_source);

struct EDThresholds
{
  /// Matrix elements above element * ||K||_2 count as nonzero.
  double element = 1e-8;
  /// Eigenvalues closer than this are a matched degenerate pair.
  double spectral_match = 1e-6;
  /// Similarity above which a non-degenerate case is near-ED.
  double near_similarity = 0.9;
};

enum class Verdict
{
  ED,
  NearED,
  NoED
};

const char *to_string(Verdict v);

struct MatrixElement
{
  Complex energy_target;
  Complex energy_source;
  int target_index;
  int source_index;
  double magnitude;
};

struct EDReport
{
  double similarity = 0.0;
  double mean_G_A = 0.0;
  double mean_G_B = 0.0;
  double min_singular_of_eigenbasis = 0.0;
  std::vector<MatrixElement> matrix_elements;
  /// Target-source eigenvalue pairs within the match tolerance.
  int degenerate_pairs = 0;
  /// Same, restricted to bulk states of both blocks.
  int bulk_degenerate_pairs = 0;
  /// Target eigenvalues whose left vector could not be normalized.
  int biorthogonal_failures = 0;
  int ambiguous_states = 0;
  Verdict verdict = Verdict::NoED;
  EDThresholds thresholds;
  double element_threshold = 0.0;
};

EDReport ed_condition_check(const ComplexMatrix &op, int chain_length,
                            CouplingDirection direction, const EDThresholds &thresholds = {});

EDReport ed_condition_check(const ModelSpec &spec, const EDThresholds &thresholds = {},
                            const std::optional<DisorderSpec> &disorder = std::nullopt);

}  // namespace edlab
