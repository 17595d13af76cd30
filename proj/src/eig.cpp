// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "edlab/spectral.hpp"

namespace edlab
{

namespace
{

int find_root(std::vector<int> &parent, int i)
{
  while (parent[i] != i)
  {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

EigenDecomposition eig(const ComplexMatrix &op, double residual_tol, double degeneracy_tol)
{
  if (op.rows() != op.cols())
  {
    throw PreconditionError("eig requires a square operator");
  }
  const int n = static_cast<int>(op.rows());
  EigenDecomposition out;
  if (n == 0)
  {
    return out;
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(op, true);
  if (solver.info() != Eigen::Success)
  {
    throw EigenSolveError("eigenvalue iteration did not converge within " +
                            std::to_string(solver.getMaxIterations() * n) + " sweeps",
                          solver.getMaxIterations() * n);
  }
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  for (int i = 0; i < n; ++i)
  {
    const double norm = out.vectors.col(i).norm();
    if (norm > 0.0)
    {
      out.vectors.col(i) /= norm;
    }
  }

  const double scale = op.norm();
  out.residuals.resize(n);
  for (int i = 0; i < n; ++i)
  {
    out.residuals[i] = (op * out.vectors.col(i) - out.values(i) * out.vectors.col(i)).norm();
    if (out.residuals[i] > residual_tol * scale)
    {
      throw Error("eigenpair residual " + std::to_string(out.residuals[i]) +
                  " exceeds tolerance");
    }
  }

  // Eigenvalue condition numbers from the rows of V^-1 (left vectors).
  const ComplexMatrix inverse = Eigen::PartialPivLU<ComplexMatrix>(out.vectors).inverse();
  out.rcond.resize(n);
  for (int i = 0; i < n; ++i)
  {
    const double c = 1.0 / (inverse.row(i).norm() * out.vectors.col(i).norm());
    out.rcond[i] = std::isfinite(c) ? std::min(c, 1.0) : 0.0;
  }

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < n; ++i)
  {
    for (int j = i + 1; j < n; ++j)
    {
      if (std::abs(out.values(i) - out.values(j)) < degeneracy_tol)
      {
        parent[find_root(parent, i)] = find_root(parent, j);
      }
    }
  }
  out.cluster.resize(n);
  std::vector<int> id(n, -1);
  std::vector<double> shared(n, 1.0);
  int next = 0;
  for (int i = 0; i < n; ++i)
  {
    const int r = find_root(parent, i);
    if (id[r] < 0)
    {
      id[r] = next++;
    }
    out.cluster[i] = id[r];
    shared[id[r]] = std::min(shared[id[r]], out.rcond[i]);
  }
  for (int i = 0; i < n; ++i)
  {
    out.rcond[i] = shared[out.cluster[i]];
  }
  return out;
}

}  // namespace edlab
