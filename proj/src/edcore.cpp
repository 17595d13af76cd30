// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include "edlab/edcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "edlab/assignment.hpp"

namespace edlab
{

namespace
{

bool value_less(Complex a, Complex b)
{
  if (a.real() != b.real())
  {
    return a.real() < b.real();
  }
  return a.imag() < b.imag();
}

double chain_weight(const ComplexVector &v, int L, Chain c)
{
  return v.segment(c == Chain::A ? 0 : L, L).squaredNorm();
}

void require_open_triangular(const ModelSpec &spec, const char *what)
{
  if (spec.boundary != Boundary::OBC)
  {
    throw PreconditionError(std::string(what) + " requires open boundaries");
  }
  if (spec.reverse_coupling != 0.0)
  {
    throw PreconditionError(std::string(what) + " requires a block-triangular operator");
  }
}

double smallest_singular_value(const ComplexMatrix &m)
{
  if (m.size() == 0)
  {
    return 0.0;
  }
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace

EigenspacePair extract_eigenspaces(const ComplexMatrix &op, int L, double match_tol)
{
  if (op.rows() != 2 * L || op.cols() != 2 * L)
  {
    throw PreconditionError("operator size does not match twice the chain length");
  }
  const int n = 2 * L;
  const EigenDecomposition full = eig(op);
  const EigenDecomposition da = eig(block_of(op, L, Chain::A, Chain::A));
  const EigenDecomposition db = eig(block_of(op, L, Chain::B, Chain::B));

  std::vector<Complex> labels(da.values.begin(), da.values.end());
  labels.insert(labels.end(), db.values.begin(), db.values.end());
  auto block_of_label = [L](int j) { return j < L ? Chain::A : Chain::B; };

  Eigen::MatrixXd cost(n, n);
  for (int i = 0; i < n; ++i)
  {
    for (int j = 0; j < n; ++j)
    {
      cost(i, j) = std::abs(full.values(i) - labels[j]);
    }
  }
  std::vector<int> assigned = min_cost_assignment(cost);

  // States close to both block spectra: reassign inside each coincident
  // cluster so that the states carrying most chain-B weight take B labels.
  std::vector<bool> ambiguous(n, false);
  for (int i = 0; i < n; ++i)
  {
    double dA = std::numeric_limits<double>::infinity();
    double dB = dA;
    for (int j = 0; j < n; ++j)
    {
      double &d = block_of_label(j) == Chain::A ? dA : dB;
      d = std::min(d, cost(i, j));
    }
    ambiguous[i] = dA < match_tol && dB < match_tol;
  }
  std::vector<bool> visited(n, false);
  int ambiguous_count = 0;
  for (int i = 0; i < n; ++i)
  {
    if (!ambiguous[i] || visited[i])
    {
      continue;
    }
    std::vector<int> group{i};
    visited[i] = true;
    for (std::size_t g = 0; g < group.size(); ++g)
    {
      for (int j = 0; j < n; ++j)
      {
        if (ambiguous[j] && !visited[j] &&
            std::abs(full.values(group[g]) - full.values(j)) < match_tol)
        {
          visited[j] = true;
          group.push_back(j);
        }
      }
    }
    ambiguous_count += static_cast<int>(group.size());
    std::vector<int> group_labels;
    for (int s : group)
    {
      group_labels.push_back(assigned[s]);
    }
    std::sort(group_labels.begin(), group_labels.end());
    std::stable_sort(group.begin(), group.end(), [&](int a, int b) {
      return chain_weight(full.vectors.col(a), L, Chain::B) <
             chain_weight(full.vectors.col(b), L, Chain::B);
    });
    for (std::size_t g = 0; g < group.size(); ++g)
    {
      assigned[group[g]] = group_labels[g];
    }
  }

  const std::vector<bool> edge_a =
    in_gap_flags(std::vector<Complex>(da.values.begin(), da.values.end()));
  const std::vector<bool> edge_b =
    in_gap_flags(std::vector<Complex>(db.values.begin(), db.values.end()));

  EigenspacePair pair;
  pair.chain_length = L;
  pair.eigenbasis = full.vectors;
  pair.ambiguous = ambiguous_count;
  std::vector<int> bulk_a;
  std::vector<int> bulk_b;
  for (int i = 0; i < n; ++i)
  {
    StateRecord r;
    r.column = i;
    r.eigenvalue = full.values(i);
    r.block_value = labels[assigned[i]];
    r.block = block_of_label(assigned[i]);
    r.edge = r.block == Chain::A ? edge_a[assigned[i]] : edge_b[assigned[i] - L];
    r.ambiguous = ambiguous[i];
    r.gauge = localization_gauge(full.vectors.col(i), L);
    pair.states.push_back(r);
    if (r.edge)
    {
      pair.excluded.push_back(i);
    }
    else
    {
      (r.block == Chain::A ? bulk_a : bulk_b).push_back(i);
    }
  }
  auto by_value = [&](int a, int b) {
    return value_less(pair.states[a].block_value, pair.states[b].block_value);
  };
  std::stable_sort(bulk_a.begin(), bulk_a.end(), by_value);
  std::stable_sort(bulk_b.begin(), bulk_b.end(), by_value);
  pair.vecs_A.resize(n, static_cast<Eigen::Index>(bulk_a.size()));
  pair.vecs_B.resize(n, static_cast<Eigen::Index>(bulk_b.size()));
  for (std::size_t m = 0; m < bulk_a.size(); ++m)
  {
    pair.vecs_A.col(m) = full.vectors.col(bulk_a[m]);
    pair.values_A.push_back(pair.states[bulk_a[m]].block_value);
  }
  for (std::size_t m = 0; m < bulk_b.size(); ++m)
  {
    pair.vecs_B.col(m) = full.vectors.col(bulk_b[m]);
    pair.values_B.push_back(pair.states[bulk_b[m]].block_value);
  }
  pair.pairing.resize(std::min(bulk_a.size(), bulk_b.size()));
  std::iota(pair.pairing.begin(), pair.pairing.end(), 0);
  return pair;
}

EigenspacePair extract_eigenspaces(const ModelSpec &spec, const std::optional<DisorderSpec> &disorder)
{
  require_open_triangular(spec, "extract_eigenspaces");
  return extract_eigenspaces(build_realspace(spec, disorder), chain_length(spec));
}

double cosine_similarity(const EigenspacePair &pair)
{
  const Eigen::Index ma = pair.vecs_A.cols();
  const Eigen::Index mb = pair.vecs_B.cols();
  if (ma == 0 || mb == 0)
  {
    throw PreconditionError("cosine_similarity of an empty eigenspace");
  }
  double sum = 0.0;
  for (std::size_t m = 0; m < pair.pairing.size(); ++m)
  {
    sum += std::abs(pair.vecs_A.col(static_cast<Eigen::Index>(m)).dot(pair.vecs_B.col(pair.pairing[m])));
  }
  const double c = sum / (std::sqrt(static_cast<double>(ma)) * std::sqrt(static_cast<double>(mb)));
  return std::clamp(c, 0.0, 1.0);
}

double localization_gauge(const ComplexVector &state, int L)
{
  if (state.size() != 2 * L)
  {
    throw PreconditionError("state length does not match twice the chain length");
  }
  double weighted = 0.0;
  double total = 0.0;
  for (int s = 0; s < 2 * L; ++s)
  {
    const double a = std::abs(state(s));
    weighted += physical_site(site_of(L, s)) * a;
    total += a;
  }
  if (total == 0.0)
  {
    throw PreconditionError("localization_gauge of a zero vector");
  }
  return weighted / total / (2.0 * L);
}

std::vector<double> bulk_gauges(const ComplexMatrix &op, int L)
{
  const EigenDecomposition d = eig(op);
  const std::vector<bool> edge = in_gap_flags(std::vector<Complex>(d.values.begin(), d.values.end()));
  std::vector<double> out;
  for (Eigen::Index i = 0; i < d.values.size(); ++i)
  {
    if (!edge[i])
    {
      out.push_back(localization_gauge(d.vectors.col(i), L));
    }
  }
  return out;
}

ComplexVector structured_eigenvector(const ComplexMatrix &op, int L, CouplingDirection direction,
                                     Complex E, const ComplexVector &u_source, double spectral_tol)
{
  const Chain target = target_chain(direction);
  const Chain source = other(target);
  if (u_source.size() != L || u_source.norm() == 0.0)
  {
    throw PreconditionError("source vector must be a nonzero chain-length vector");
  }
  if (block_of(op, L, source, target).cwiseAbs().maxCoeff() != 0.0)
  {
    throw PreconditionError("structured_eigenvector requires a block-triangular operator");
  }
  const ComplexMatrix hs = block_of(op, L, source, source);
  const ComplexMatrix ht = block_of(op, L, target, target);
  const ComplexMatrix k = block_of(op, L, target, source);
  const double source_residual = (hs * u_source - E * u_source).norm() / u_source.norm();
  if (source_residual > 1e-8 * std::max(1.0, hs.norm()))
  {
    throw PreconditionError("source vector is not an eigenvector for the given energy");
  }
  const EigenDecomposition dt = eig(ht);
  for (Eigen::Index i = 0; i < dt.values.size(); ++i)
  {
    if (std::abs(dt.values(i) - E) < spectral_tol)
    {
      throw Error("resolvent singular: ED regime; use defectiveness analysis instead");
    }
  }
  ComplexMatrix shifted = ht;
  shifted.diagonal().array() -= E;
  const ComplexVector ut = -Eigen::PartialPivLU<ComplexMatrix>(shifted).solve(k * u_source);
  ComplexVector phi(2 * L);
  phi.segment(target == Chain::A ? 0 : L, L) = ut;
  phi.segment(source == Chain::A ? 0 : L, L) = u_source;
  phi /= phi.norm();
  const double residual = (op * phi - E * phi).norm();
  if (!(residual < 1e-8))
  {
    throw Error("structured eigenvector residual " + std::to_string(residual) +
                " above tolerance");
  }
  return phi;
}

ComplexVector structured_eigenvector(const ModelSpec &spec, Complex E, const ComplexVector &u_source)
{
  require_open_triangular(spec, "structured_eigenvector");
  return structured_eigenvector(build_realspace(spec), chain_length(spec), spec.direction, E,
                                u_source);
}

const char *to_string(Verdict v)
{
  switch (v)
  {
    case Verdict::ED:
      return "ED";
    case Verdict::NearED:
      return "near-ED";
    default:
      return "no-ED";
  }
}

EDReport ed_condition_check(const ComplexMatrix &op, int L, CouplingDirection direction,
                            const EDThresholds &thresholds)
{
  EDReport report;
  report.thresholds = thresholds;
  const EigenspacePair pair = extract_eigenspaces(op, L, thresholds.spectral_match);
  report.ambiguous_states = pair.ambiguous;
  report.similarity = cosine_similarity(pair);
  double ga = 0.0;
  for (Eigen::Index m = 0; m < pair.vecs_A.cols(); ++m)
  {
    ga += localization_gauge(pair.vecs_A.col(m), L);
  }
  double gb = 0.0;
  for (Eigen::Index m = 0; m < pair.vecs_B.cols(); ++m)
  {
    gb += localization_gauge(pair.vecs_B.col(m), L);
  }
  report.mean_G_A = ga / static_cast<double>(pair.vecs_A.cols());
  report.mean_G_B = gb / static_cast<double>(pair.vecs_B.cols());
  report.min_singular_of_eigenbasis = smallest_singular_value(pair.eigenbasis);

  const Chain target = target_chain(direction);
  const Chain source = other(target);
  const ComplexMatrix ht = block_of(op, L, target, target);
  const ComplexMatrix hs = block_of(op, L, source, source);
  const ComplexMatrix k = block_of(op, L, target, source);
  const EigenDecomposition dt = eig(ht);
  const EigenDecomposition ds = eig(hs);
  const EigenDecomposition dl = eig(ht.adjoint());
  const std::vector<bool> edge_t =
    in_gap_flags(std::vector<Complex>(dt.values.begin(), dt.values.end()));
  const std::vector<bool> edge_s =
    in_gap_flags(std::vector<Complex>(ds.values.begin(), ds.values.end()));

  Eigen::MatrixXd cost(L, L);
  for (int i = 0; i < L; ++i)
  {
    for (int j = 0; j < L; ++j)
    {
      cost(i, j) = std::abs(dt.values(i) - std::conj(dl.values(j)));
    }
  }
  const std::vector<int> left_of = min_cost_assignment(cost);

  const double knorm = k.size() == 0 ? 0.0 : Eigen::BDCSVD<ComplexMatrix>(k).singularValues()(0);
  report.element_threshold = thresholds.element * knorm;
  bool nonzero = false;
  for (int a = 0; a < L; ++a)
  {
    std::vector<int> partners;
    for (int b = 0; b < L; ++b)
    {
      if (std::abs(dt.values(a) - ds.values(b)) < thresholds.spectral_match)
      {
        partners.push_back(b);
      }
    }
    if (partners.empty())
    {
      continue;
    }
    ComplexVector v = dl.vectors.col(left_of[a]);
    const Complex overlap = v.dot(dt.vectors.col(a));
    if (std::abs(overlap) < 1e-12)
    {
      ++report.biorthogonal_failures;
      continue;
    }
    v /= std::conj(overlap);
    for (int b : partners)
    {
      const double magnitude = std::abs(v.dot(k * ds.vectors.col(b)));
      report.matrix_elements.push_back({dt.values(a), ds.values(b), a, b, magnitude});
      ++report.degenerate_pairs;
      if (!edge_t[a] && !edge_s[b])
      {
        ++report.bulk_degenerate_pairs;
      }
      if (magnitude > report.element_threshold)
      {
        nonzero = true;
      }
    }
  }
  if (report.degenerate_pairs > 0 && nonzero)
  {
    report.verdict = Verdict::ED;
  }
  else if (report.similarity > thresholds.near_similarity)
  {
    report.verdict = Verdict::NearED;
  }
  else
  {
    report.verdict = Verdict::NoED;
  }
  return report;
}

EDReport ed_condition_check(const ModelSpec &spec, const EDThresholds &thresholds,
                            const std::optional<DisorderSpec> &disorder)
{
  require_open_triangular(spec, "ed_condition_check");
  return ed_condition_check(build_realspace(spec, disorder), chain_length(spec), spec.direction,
                            thresholds);
}

}  // namespace edlab
