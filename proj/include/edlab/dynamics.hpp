// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edlab/common.hpp"
#include "edlab/lattice.hpp"

namespace edlab
{

/// Gaussian injection on one chain. The centre is the first site of
/// center_cell; width is the standard deviation in sites.
struct WavepacketSpec
{
  Chain chain = Chain::A;
  int center_cell = 0;
  double width = 1.0;
  double carrier_k = 0.0;
};

enum class Method
{
  ExactPropagator,
  RK4
};

const char *to_string(Method m);

struct TrajectoryField
{
  std::vector<double> times;
  std::vector<ComplexVector> amplitudes;
  std::optional<WavepacketSpec> injection;
  double dt = 0.0;
  Method method = Method::ExactPropagator;
  /// Every store_every-th step is kept (the final step always is).
  int store_every = 1;
  int chain_length = 0;
};

/// Unit-norm Gaussian wavepacket, zero on the other chain.
ComplexVector prepare_wavepacket(const ModelSpec &spec, const WavepacketSpec &wp);

/// exp(A) by Pade-13 scaling and squaring; valid for defective A.
ComplexMatrix expm(const ComplexMatrix &a);

/// Integrates i dpsi/dt = h psi. Throws Error if the norm exceeds 1e15.
TrajectoryField evolve(const ComplexMatrix &op, int chain_length, const ComplexVector &psi0,
                       double t_max, double dt, Method method, int store_every = 10);

TrajectoryField evolve(const ModelSpec &spec, const ComplexVector &psi0, double t_max, double dt,
                       Method method, int store_every = 10);

/// Skin-effect amplified propagation signatures. The left quarter holds the
/// sites whose position along the chain is below L/4.
struct SEAPMetrics
{
  double peak_amplification = 1.0;
  double peak_time = 0.0;
  int peak_site = 0;
  /// First time the left quarter holds more than half of |psi|^2 (negative if never).
  double left_arrival_time = -1.0;
  /// Centre of mass moved back by at least L/8 after the left arrival.
  bool reversal = false;
};

SEAPMetrics seap_metrics(const TrajectoryField &traj);

/// Propagation-enhanced skin effect signatures.
struct PESEMetrics
{
  double final_left_fraction = 0.0;
  /// Time at which the right quarter holds its largest share of |psi|^2.
  double reflection_time = 0.0;
  /// Peak amplitude after the reflection over the peak up to it.
  double reflected_amplification = 0.0;
};

PESEMetrics pese_metrics(const TrajectoryField &traj);

/// Share of |psi|^2 at positions j < L/4 along the chain.
double left_quarter_fraction(const ComplexVector &psi, int chain_length);
double right_quarter_fraction(const ComplexVector &psi, int chain_length);

}  // namespace edlab
