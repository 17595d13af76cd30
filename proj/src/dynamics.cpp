// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include "edlab/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace edlab
{

const char *to_string(Method m)
{
  return m == Method::ExactPropagator ? "exact-propagator" : "RK4";
}

ComplexVector prepare_wavepacket(const ModelSpec &spec, const WavepacketSpec &wp)
{
  validate(spec);
  if (spec.boundary != Boundary::OBC)
  {
    throw PreconditionError("prepare_wavepacket requires open boundaries");
  }
  if (!(wp.width > 0.0))
  {
    throw PreconditionError("wavepacket width must be positive");
  }
  if (wp.center_cell < 0 || wp.center_cell >= spec.cells)
  {
    throw PreconditionError("wavepacket centre lies outside the lattice");
  }
  const int L = chain_length(spec);
  const int center = wp.center_cell * sites_per_cell(spec);
  ComplexVector psi = ComplexVector::Zero(2 * L);
  for (int j = 0; j < L; ++j)
  {
    const double x = j - center;
    const double envelope = std::exp(-x * x / (2.0 * wp.width * wp.width));
    psi(storage_index(L, {wp.chain, j})) = std::polar(envelope, wp.carrier_k * x);
  }
  return psi / psi.norm();
}

TrajectoryField evolve(const ComplexMatrix &op, int L, const ComplexVector &psi0, double t_max,
                       double dt, Method method, int store_every)
{
  if (!(dt > 0.0))
  {
    throw PreconditionError("time step must be positive");
  }
  if (!(t_max >= dt))
  {
    throw PreconditionError("t_max must be at least one time step");
  }
  if (store_every < 1)
  {
    throw PreconditionError("store_every must be at least 1");
  }
  if (psi0.size() != op.rows())
  {
    throw PreconditionError("initial state does not match the operator size");
  }
  const long steps = std::lround(t_max / dt);
  TrajectoryField traj;
  traj.dt = dt;
  traj.method = method;
  traj.store_every = store_every;
  traj.chain_length = L;
  traj.times.push_back(0.0);
  traj.amplitudes.push_back(psi0);

  const Complex minus_i(0.0, -1.0);
  const ComplexMatrix generator = minus_i * op;
  ComplexMatrix propagator;
  if (method == Method::ExactPropagator)
  {
    propagator = expm(generator * dt);
  }
  ComplexVector psi = psi0;
  for (long step = 1; step <= steps; ++step)
  {
    if (method == Method::ExactPropagator)
    {
      psi = propagator * psi;
    }
    else
    {
      const ComplexVector k1 = generator * psi;
      const ComplexVector k2 = generator * (psi + 0.5 * dt * k1);
      const ComplexVector k3 = generator * (psi + 0.5 * dt * k2);
      const ComplexVector k4 = generator * (psi + dt * k3);
      psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const double norm = psi.norm();
    if (!(norm <= 1e15))
    {
      std::ostringstream msg;
      msg << "state norm " << norm << " exceeded 1e15 at t = " << step * dt << " ("
          << to_string(method) << ", dt = " << dt << ")";
      throw Error(msg.str());
    }
    if (step % store_every == 0 || step == steps)
    {
      traj.times.push_back(step * dt);
      traj.amplitudes.push_back(psi);
    }
  }
  return traj;
}

TrajectoryField evolve(const ModelSpec &spec, const ComplexVector &psi0, double t_max, double dt,
                       Method method, int store_every)
{
  return evolve(build_realspace(spec), chain_length(spec), psi0, t_max, dt, method, store_every);
}

namespace
{

double quarter_fraction(const ComplexVector &psi, int L, bool left)
{
  double part = 0.0;
  double total = 0.0;
  for (int s = 0; s < psi.size(); ++s)
  {
    const int j = site_of(L, s).index;
    const double w = std::norm(psi(s));
    total += w;
    if (left ? 4 * j < L : 4 * j >= 3 * L)
    {
      part += w;
    }
  }
  return total > 0.0 ? part / total : 0.0;
}

double center_of_mass(const ComplexVector &psi, int L)
{
  double moment = 0.0;
  double total = 0.0;
  for (int s = 0; s < psi.size(); ++s)
  {
    const double w = std::norm(psi(s));
    moment += site_of(L, s).index * w;
    total += w;
  }
  return total > 0.0 ? moment / total : 0.0;
}

}  // namespace

double left_quarter_fraction(const ComplexVector &psi, int L) { return quarter_fraction(psi, L, true); }

double right_quarter_fraction(const ComplexVector &psi, int L)
{
  return quarter_fraction(psi, L, false);
}

SEAPMetrics seap_metrics(const TrajectoryField &traj)
{
  SEAPMetrics m;
  if (traj.amplitudes.empty())
  {
    return m;
  }
  const int L = traj.chain_length;
  const double initial = traj.amplitudes.front().cwiseAbs().maxCoeff();
  double peak = initial;
  Eigen::Index site = 0;
  traj.amplitudes.front().cwiseAbs().maxCoeff(&site);
  m.peak_site = physical_site(site_of(L, static_cast<int>(site)));
  for (std::size_t t = 0; t < traj.amplitudes.size(); ++t)
  {
    Eigen::Index idx = 0;
    const double value = traj.amplitudes[t].cwiseAbs().maxCoeff(&idx);
    if (value > peak)
    {
      peak = value;
      m.peak_time = traj.times[t];
      m.peak_site = physical_site(site_of(L, static_cast<int>(idx)));
    }
  }
  m.peak_amplification = initial > 0.0 ? peak / initial : 0.0;
  for (std::size_t t = 0; t < traj.amplitudes.size(); ++t)
  {
    if (left_quarter_fraction(traj.amplitudes[t], L) > 0.5)
    {
      m.left_arrival_time = traj.times[t];
      const double arrival_com = center_of_mass(traj.amplitudes[t], L);
      for (std::size_t u = t; u < traj.amplitudes.size(); ++u)
      {
        if (center_of_mass(traj.amplitudes[u], L) - arrival_com >= L / 8.0)
        {
          m.reversal = true;
          break;
        }
      }
      break;
    }
  }
  return m;
}

PESEMetrics pese_metrics(const TrajectoryField &traj)
{
  PESEMetrics m;
  if (traj.amplitudes.empty())
  {
    return m;
  }
  const int L = traj.chain_length;
  m.final_left_fraction = left_quarter_fraction(traj.amplitudes.back(), L);
  std::size_t reflection = 0;
  double best = -1.0;
  for (std::size_t t = 0; t < traj.amplitudes.size(); ++t)
  {
    const double f = right_quarter_fraction(traj.amplitudes[t], L);
    if (f > best)
    {
      best = f;
      reflection = t;
    }
  }
  m.reflection_time = traj.times[reflection];
  double before = 0.0;
  double after = 0.0;
  for (std::size_t t = 0; t < traj.amplitudes.size(); ++t)
  {
    const double peak = traj.amplitudes[t].cwiseAbs().maxCoeff();
    (t <= reflection ? before : after) = std::max(t <= reflection ? before : after, peak);
  }
  m.reflected_amplification = before > 0.0 ? after / before : 0.0;
  return m;
}

}  // namespace edlab
