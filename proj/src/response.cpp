// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include "edlab/response.hpp"

#include <cmath>

#include <Eigen/LU>

namespace edlab
{

namespace
{

ComplexVector solve_checked(const ComplexMatrix &m, const ComplexVector &rhs)
{
  Eigen::PartialPivLU<ComplexMatrix> lu(m);
  if (!(lu.rcond() >= 1e-14))
  {
    throw Error("frequency lies on the spectrum: (f - h) is singular");
  }
  return lu.solve(rhs);
}

double mean_loss(const ComplexMatrix &op)
{
  return -op.diagonal().imag().mean();
}

ResponseField make_field(const ComplexMatrix &op, int L, SiteRef source, double f1, double f2,
                         int num_f)
{
  ResponseField r;
  r.f1 = f1;
  r.f2 = f2;
  r.num_f = num_f;
  r.source = source;
  r.loss = mean_loss(op);
  r.chain_length = L;
  return r;
}

double power(const ResponseField &r, int s)
{
  const double a = r.site_response[s];
  return r.num_f == 1 ? a * a : a;
}

}  // namespace

ComplexVector greens_column(const ComplexMatrix &op, int L, double f, SiteRef source)
{
  if (op.rows() != 2 * L || op.cols() != 2 * L)
  {
    throw PreconditionError("operator size does not match twice the chain length");
  }
  if (source.index < 0 || source.index >= L)
  {
    throw PreconditionError("source site outside the lattice");
  }
  ComplexMatrix m = -op;
  m.diagonal().array() += f;
  ComplexVector e = ComplexVector::Zero(2 * L);
  e(storage_index(L, source)) = 1.0;

  const bool upper = block_of(op, L, Chain::B, Chain::A).cwiseAbs().maxCoeff() == 0.0;
  const bool lower = block_of(op, L, Chain::A, Chain::B).cwiseAbs().maxCoeff() == 0.0;
  ComplexVector x(2 * L);
  if (upper || lower)
  {
    // Solve the block that does not see the other chain first.
    const Chain first = upper ? Chain::B : Chain::A;
    const Chain second = other(first);
    const int o1 = first == Chain::A ? 0 : L;
    const int o2 = second == Chain::A ? 0 : L;
    const ComplexVector x1 = solve_checked(block_of(m, L, first, first), e.segment(o1, L));
    const ComplexVector rhs2 = e.segment(o2, L) - block_of(m, L, second, first) * x1;
    x.segment(o1, L) = x1;
    x.segment(o2, L) = solve_checked(block_of(m, L, second, second), rhs2);
  }
  else
  {
    x = solve_checked(m, e);
  }
  const double residual = (m * x - e).norm();
  if (!(residual <= 1e-10 * std::max(1.0, m.norm() * x.norm())))
  {
    throw Error("Green's function residual above tolerance");
  }
  return x;
}

ResponseField greens_response(const ComplexMatrix &op, int L, double f, SiteRef source)
{
  ResponseField r = make_field(op, L, source, f, f, 1);
  const ComplexVector x = greens_column(op, L, f, source);
  r.site_response.resize(2 * L);
  for (int s = 0; s < 2 * L; ++s)
  {
    r.site_response[s] = std::abs(x(s));
  }
  return r;
}

ResponseField greens_response(const ModelSpec &spec, double f, SiteRef source)
{
  return greens_response(build_realspace(spec), chain_length(spec), f, source);
}

ResponseField integrated_response(const ComplexMatrix &op, int L, double f1, double f2, int num_f,
                                  SiteRef source)
{
  if (!(f1 < f2))
  {
    throw PreconditionError("integration band needs f1 < f2");
  }
  if (num_f < 16)
  {
    throw PreconditionError("integration needs at least 16 frequencies");
  }
  ResponseField r = make_field(op, L, source, f1, f2, num_f);
  r.site_response.assign(2 * L, 0.0);
  std::vector<double> freqs;
  std::vector<Eigen::VectorXd> power;
  for (int i = 0; i < num_f; ++i)
  {
    const double f = f1 + (f2 - f1) * i / (num_f - 1);
    try
    {
      power.push_back(greens_column(op, L, f, source).cwiseAbs2());
      freqs.push_back(f);
    }
    catch (const Error &)
    {
      r.skipped.push_back(f);
    }
  }
  for (std::size_t i = 1; i < freqs.size(); ++i)
  {
    const double h = freqs[i] - freqs[i - 1];
    for (int s = 0; s < 2 * L; ++s)
    {
      r.site_response[s] += 0.5 * h * (power[i - 1](s) + power[i](s));
    }
  }
  return r;
}

ResponseField integrated_response(const ModelSpec &spec, double f1, double f2, int num_f,
                                  SiteRef source)
{
  return integrated_response(build_realspace(spec), chain_length(spec), f1, f2, num_f, source);
}

double chain_share(const ResponseField &r, Chain chain)
{
  const int L = r.chain_length;
  double part = 0.0;
  double total = 0.0;
  for (int s = 0; s < 2 * L; ++s)
  {
    total += power(r, s);
    if (site_of(L, s).chain == chain)
    {
      part += power(r, s);
    }
  }
  return total > 0.0 ? part / total : 0.0;
}

double left_quarter_share(const ResponseField &r)
{
  const int L = r.chain_length;
  double part = 0.0;
  double total = 0.0;
  for (int s = 0; s < 2 * L; ++s)
  {
    total += power(r, s);
    if (4 * site_of(L, s).index < L)
    {
      part += power(r, s);
    }
  }
  return total > 0.0 ? part / total : 0.0;
}

}  // namespace edlab
