// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "edlab/common.hpp"
#include "edlab/lattice.hpp"

namespace edlab
{

/// Steady-state amplitude per site (chain-major storage order).
struct ResponseField
{
  std::vector<double> site_response;
  double f1 = 0.0;
  /// Equal to f1 for a single-frequency response.
  double f2 = 0.0;
  int num_f = 1;
  SiteRef source;
  /// Mean loss read off the diagonal, -Im h_nn averaged over sites.
  double loss = 0.0;
  int chain_length = 0;
  /// Frequencies at which the linear system was singular.
  std::vector<double> skipped;
};

/// Column of the Green's function (f - h)^-1 at the source, solved as a
/// linear system (block substitution when h is block-triangular).
ComplexVector greens_column(const ComplexMatrix &op, int chain_length, double f, SiteRef source);

/// |G_{n,source}(f)| for every site.
ResponseField greens_response(const ComplexMatrix &op, int chain_length, double f, SiteRef source);
ResponseField greens_response(const ModelSpec &spec, double f, SiteRef source);

/// Trapezoidal integral of |G_{n,source}(f)|^2 over a uniform grid on [f1, f2].
ResponseField integrated_response(const ComplexMatrix &op, int chain_length, double f1, double f2,
                                  int num_f, SiteRef source);
ResponseField integrated_response(const ModelSpec &spec, double f1, double f2, int num_f,
                                  SiteRef source);

/// Share of the response power carried by the given chain. Power is |G|^2 for
/// a single frequency and the integrated value for a band.
double chain_share(const ResponseField &r, Chain chain);
/// Share of the response power at positions j < L/4 along the chain.
double left_quarter_share(const ResponseField &r);

}  // namespace edlab
