// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include "edlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SVD>

namespace edlab
{

const char *to_string(BlockLabel label)
{
  switch (label)
  {
    case BlockLabel::A:
      return "A";
    case BlockLabel::B:
      return "B";
    default:
      return "mixed";
  }
}

namespace
{

void append(SpectrumSet &set, const EigenDecomposition &d, BlockLabel label)
{
  for (Eigen::Index i = 0; i < d.values.size(); ++i)
  {
    set.eigenvalues.push_back(d.values(i));
    set.block_label.push_back(label);
    set.conditioning.push_back(d.rcond[i]);
  }
}

double momentum(int j, int num_k) { return 2.0 * std::numbers::pi * j / num_k; }

}  // namespace

SpectrumSet pbc_spectrum(const ModelSpec &spec, int num_k)
{
  if (num_k < 16)
  {
    throw PreconditionError("pbc_spectrum needs at least 16 momenta");
  }
  ModelSpec periodic = spec;
  periodic.boundary = Boundary::PBC;
  SpectrumSet set;
  set.boundary = Boundary::PBC;
  for (int j = 0; j < num_k; ++j)
  {
    const double k = momentum(j, num_k);
    if (spec.reverse_coupling != 0.0)
    {
      append(set, eig(build_bloch(periodic, k)), BlockLabel::Mixed);
    }
    else
    {
      append(set, eig(build_bloch_block(periodic, Chain::A, k)), BlockLabel::A);
      append(set, eig(build_bloch_block(periodic, Chain::B, k)), BlockLabel::B);
    }
  }
  return set;
}

EigenDecomposition block_eig(const ModelSpec &spec, Chain chain)
{
  const ComplexMatrix h = build_realspace(spec);
  return eig(block_of(h, chain_length(spec), chain, chain));
}

SpectrumSet obc_spectrum(const ModelSpec &spec)
{
  if (spec.boundary != Boundary::OBC)
  {
    throw PreconditionError("obc_spectrum requires open boundaries");
  }
  SpectrumSet set;
  set.boundary = Boundary::OBC;
  if (spec.reverse_coupling != 0.0)
  {
    append(set, eig(build_realspace(spec)), BlockLabel::Mixed);
    return set;
  }
  const ComplexMatrix h = build_realspace(spec);
  const int L = chain_length(spec);
  append(set, eig(block_of(h, L, Chain::A, Chain::A)), BlockLabel::A);
  append(set, eig(block_of(h, L, Chain::B, Chain::B)), BlockLabel::B);
  return set;
}

int winding_number(const ModelSpec &spec, Complex E0, int num_k)
{
  if (num_k < 16)
  {
    throw PreconditionError("winding_number needs at least 16 momenta");
  }
  ModelSpec periodic = spec;
  periodic.boundary = Boundary::PBC;
  const SpectrumSet pbc = pbc_spectrum(periodic, num_k);
  double distance = std::numeric_limits<double>::infinity();
  for (const Complex &e : pbc.eigenvalues)
  {
    distance = std::min(distance, std::abs(e - E0));
  }
  if (distance < 1e-6)
  {
    throw PreconditionError("reference energy lies on the periodic spectrum");
  }
  std::vector<Complex> det(num_k);
  for (int j = 0; j < num_k; ++j)
  {
    ComplexMatrix h = build_bloch(periodic, momentum(j, num_k));
    h.diagonal().array() -= E0;
    det[j] = h.determinant();
    if (det[j] == 0.0)
    {
      throw Error("determinant vanished on the momentum grid");
    }
  }
  double phase = 0.0;
  for (int j = 0; j < num_k; ++j)
  {
    phase += std::arg(det[(j + 1) % num_k] / det[j]);
  }
  const double w = phase / (2.0 * std::numbers::pi);
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > 0.1)
  {
    throw Error("winding phase drifted from an integer; refine the momentum grid");
  }
  return static_cast<int>(rounded);
}

std::vector<bool> in_gap_flags(const std::vector<Complex> &spectrum)
{
  const std::size_t n = spectrum.size();
  std::vector<bool> flags(n, false);
  if (n < 3)
  {
    return flags;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spectrum[a].real() < spectrum[b].real();
  });
  std::vector<double> spacing(n - 1);
  double largest = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
  {
    spacing[i] = spectrum[order[i + 1]].real() - spectrum[order[i]].real();
  }
  for (const Complex &e : spectrum)
  {
    largest = std::max(largest, std::abs(e));
  }
  // Near-degenerate copies (coalesced pairs) would drag the median to zero.
  const double range = spectrum[order.back()].real() - spectrum[order.front()].real();
  std::vector<double> sorted;
  for (double s : spacing)
  {
    if (s > 1e-2 * range)
    {
      sorted.push_back(s);
    }
  }
  if (sorted.empty())
  {
    sorted = spacing;
  }
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double cut = std::max(3.0 * median, 1e-6 * largest);

  std::vector<std::vector<std::size_t>> groups(1);
  for (std::size_t i = 0; i < n; ++i)
  {
    groups.back().push_back(order[i]);
    if (i + 1 < n && spacing[i] > cut)
    {
      groups.emplace_back();
    }
  }
  for (std::size_t g = 1; g + 1 < groups.size(); ++g)
  {
    const std::size_t neighbours = std::min(groups[g - 1].size(), groups[g + 1].size());
    if (2 * groups[g].size() < neighbours)
    {
      for (std::size_t i : groups[g])
      {
        flags[i] = true;
      }
    }
  }
  return flags;
}

GBZPortrait gbz_portrait(const ModelSpec &spec, double cluster_tol)
{
  GBZPortrait portrait;
  for (Chain chain : {Chain::A, Chain::B})
  {
    const EigenDecomposition d = block_eig(spec, chain);
    const std::vector<Complex> energies(d.values.begin(), d.values.end());
    const std::vector<bool> edge = in_gap_flags(energies);
    for (std::size_t i = 0; i < energies.size(); ++i)
    {
      if (edge[i])
      {
        continue;
      }
      const Complex E = energies[i];
      try
      {
        const LaurentPolynomial f = factor_polynomial(spec, chain, E);
        const PolynomialRoots r = find_roots(f);
        const int m = -f.lowest_power() - r.dropped_trailing;
        std::vector<Complex> roots = r.roots;
        if (m < 1 || m >= static_cast<int>(roots.size()))
        {
          portrait.failures.push_back({E, "degenerate characteristic polynomial"});
          continue;
        }
        std::sort(roots.begin(), roots.end(),
                  [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
        double scale = 0.0;
        for (const Complex &c : f.coefficients())
        {
          scale = std::max(scale, std::abs(c));
        }
        bool ok = true;
        for (int idx : {m - 1, m})
        {
          if (std::abs(f(roots[idx])) > 1e-8 * std::max(1.0, scale))
          {
            ok = false;
          }
        }
        if (!ok)
        {
          portrait.failures.push_back({E, "root residual above tolerance"});
          continue;
        }
        portrait.entries.push_back({E, roots[m - 1], chain});
        portrait.entries.push_back({E, roots[m], chain});
      }
      catch (const Error &e)
      {
        portrait.failures.push_back({E, e.what()});
      }
    }
    std::vector<double> radii;
    for (const auto &e : portrait.entries)
    {
      if (e.factor == chain)
      {
        radii.push_back(std::abs(e.beta));
      }
    }
    std::sort(radii.begin(), radii.end());
    std::size_t start = 0;
    for (std::size_t i = 1; i <= radii.size(); ++i)
    {
      if (i == radii.size() || radii[i] - radii[i - 1] > cluster_tol)
      {
        double sum = 0.0;
        for (std::size_t j = start; j < i; ++j)
        {
          sum += radii[j];
        }
        portrait.radius_clusters.push_back(
          {sum / static_cast<double>(i - start), chain, static_cast<int>(i - start)});
        start = i;
      }
    }
  }
  return portrait;
}

ResolventNorm resolvent_norm(const ComplexMatrix &op, Complex E)
{
  ComplexMatrix shifted = op;
  shifted.diagonal().array() -= E;
  Eigen::BDCSVD<ComplexMatrix> svd(shifted);
  const auto &s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  const double floor =
    static_cast<double>(op.rows()) * std::numeric_limits<double>::epsilon() * smax;
  if (!(smin > floor) || smin == 0.0)
  {
    return {std::numeric_limits<double>::infinity(), true};
  }
  return {1.0 / smin, false};
}

}  // namespace edlab
