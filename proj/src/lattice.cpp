// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include "edlab/lattice.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "edlab/rng.hpp"

namespace edlab
{

namespace
{

/// Matrix element H[cell n, row] <- H[cell n + dcell, col] of a translation
/// invariant chain.
struct Hopping
{
  int row;
  int col;
  int dcell;
  Complex value;
};

struct ChainDescription
{
  std::vector<Complex> onsite;
  std::vector<Hopping> hoppings;
};

bool is_exact(const ChainParams &p) { return std::holds_alternative<ExactChainParams>(p); }
bool is_ssh(const ChainParams &p) { return std::holds_alternative<SSHChainParams>(p); }

const ChainParams &params_of(const ModelSpec &spec, Chain c)
{
  return c == Chain::A ? spec.chainA : spec.chainB;
}

ChainDescription describe(const ChainParams &params, Chain role, int spc)
{
  ChainDescription d;
  if (const auto *p = std::get_if<SSHChainParams>(&params))
  {
    d.onsite.assign(2, p->onsite);
    d.hoppings = {{0, 1, 0, p->v + p->delta},
                  {1, 0, 0, p->v - p->delta},
                  {1, 0, 1, p->w},
                  {0, 1, -1, p->w}};
  }
  else if (const auto *p = std::get_if<HNChainParams>(&params))
  {
    d.onsite.assign(spc, p->onsite);
    const Complex right = p->t + p->delta;
    const Complex left = p->t - p->delta;
    if (spc == 1)
    {
      d.hoppings = {{0, 0, 1, right}, {0, 0, -1, left}};
    }
    else
    {
      d.hoppings = {{0, 1, 0, right}, {1, 0, 0, left}, {1, 0, 1, right}, {0, 1, -1, left}};
    }
  }
  else
  {
    const auto &e = std::get<ExactChainParams>(params);
    if (role == Chain::A)
    {
      d.onsite.assign(1, e.V);
      d.hoppings = {{0, 0, -1, e.J}};
    }
    else
    {
      d.onsite.assign(1, 0.0);
      d.hoppings = {{0, 0, 1, e.t * e.r}, {0, 0, -1, e.t / e.r}};
    }
  }
  return d;
}

ChainDescription describe(const ModelSpec &spec, Chain c)
{
  ChainDescription d = describe(params_of(spec, c), c, sites_per_cell(spec));
  if (c == Chain::B)
  {
    for (auto &x : d.onsite)
    {
      x += spec.offsetB;
    }
  }
  return d;
}

ComplexMatrix chain_realspace(const ChainDescription &d, int cells, int spc, Boundary boundary)
{
  const int L = cells * spc;
  ComplexMatrix h = ComplexMatrix::Zero(L, L);
  for (int n = 0; n < cells; ++n)
  {
    for (int s = 0; s < spc; ++s)
    {
      h(n * spc + s, n * spc + s) += d.onsite[s];
    }
    for (const auto &hop : d.hoppings)
    {
      int m = n + hop.dcell;
      if (m < 0 || m >= cells)
      {
        if (boundary == Boundary::OBC)
        {
          continue;
        }
        m = ((m % cells) + cells) % cells;
      }
      h(n * spc + hop.row, m * spc + hop.col) += hop.value;
    }
  }
  return h;
}

PolynomialMatrix chain_polynomial_matrix(const ChainDescription &d, int spc, Complex energy)
{
  PolynomialMatrix m(spc, std::vector<LaurentPolynomial>(spc));
  for (int s = 0; s < spc; ++s)
  {
    m[s][s] += LaurentPolynomial(d.onsite[s] - energy);
  }
  for (const auto &hop : d.hoppings)
  {
    m[hop.row][hop.col] += LaurentPolynomial::monomial(hop.dcell, hop.value);
  }
  return m;
}

void require_bloch_capable(const ModelSpec &spec, const char *what)
{
  if (is_exact(spec.chainA) || is_exact(spec.chainB))
  {
    throw PreconditionError(std::string(what) +
                            ": exact chains are defined in real space only");
  }
}

}  // namespace

void validate(const ModelSpec &spec)
{
  if (spec.cells < 2)
  {
    throw PreconditionError("cells must be at least 2, got " + std::to_string(spec.cells));
  }
  for (Chain c : {Chain::A, Chain::B})
  {
    const ChainParams &p = params_of(spec, c);
    if (const auto *e = std::get_if<ExactChainParams>(&p))
    {
      if (e->L < 2)
      {
        throw PreconditionError("exact chain length L must be at least 2");
      }
      if (!(e->r > 0.0))
      {
        throw PreconditionError("exact chain ratio r must be positive");
      }
      if (e->L != spec.cells)
      {
        throw PreconditionError("exact chain length L must equal cells");
      }
      if (is_ssh(params_of(spec, other(c))))
      {
        throw PreconditionError("an exact chain cannot be paired with an SSH chain");
      }
    }
  }
}

int sites_per_cell(const ModelSpec &spec)
{
  return is_ssh(spec.chainA) || is_ssh(spec.chainB) ? 2 : 1;
}

int chain_length(const ModelSpec &spec) { return spec.cells * sites_per_cell(spec); }

int storage_index(int chain_length, SiteRef site)
{
  return (site.chain == Chain::A ? 0 : chain_length) + site.index;
}

SiteRef site_of(int chain_length, int storage)
{
  if (storage < chain_length)
  {
    return {Chain::A, storage};
  }
  return {Chain::B, storage - chain_length};
}

int physical_site(SiteRef site)
{
  return 2 * site.index + 1 + (site.chain == Chain::A ? 0 : 1);
}

SiteRef site_from_physical(int physical)
{
  const int zero_based = physical - 1;
  return {zero_based % 2 == 0 ? Chain::A : Chain::B, zero_based / 2};
}

double coincidence_hopping(const SSHChainParams &chain_b)
{
  return -std::sqrt((chain_b.v - chain_b.delta) * (chain_b.v + chain_b.delta));
}

ComplexMatrix build_bloch_block(const ModelSpec &spec, Chain chain, double k)
{
  require_bloch_capable(spec, "build_bloch");
  if (!(k >= 0.0 && k < 2.0 * std::numbers::pi))
  {
    throw PreconditionError("momentum k must lie in [0, 2 pi)");
  }
  const int spc = sites_per_cell(spec);
  const ChainDescription d = describe(spec, chain);
  ComplexMatrix h = ComplexMatrix::Zero(spc, spc);
  for (int s = 0; s < spc; ++s)
  {
    h(s, s) += d.onsite[s];
  }
  for (const auto &hop : d.hoppings)
  {
    h(hop.row, hop.col) += hop.value * std::polar(1.0, k * hop.dcell);
  }
  return h;
}

ComplexMatrix build_bloch(const ModelSpec &spec, double k)
{
  validate(spec);
  if (spec.boundary != Boundary::PBC)
  {
    throw PreconditionError("build_bloch requires periodic boundaries");
  }
  const int spc = sites_per_cell(spec);
  ComplexMatrix h = ComplexMatrix::Zero(2 * spc, 2 * spc);
  h.topLeftCorner(spc, spc) = build_bloch_block(spec, Chain::A, k);
  h.bottomRightCorner(spc, spc) = build_bloch_block(spec, Chain::B, k);
  const ComplexMatrix forward = spec.coupling * ComplexMatrix::Identity(spc, spc);
  const ComplexMatrix backward = spec.reverse_coupling * ComplexMatrix::Identity(spc, spc);
  if (spec.direction == CouplingDirection::BToA)
  {
    h.topRightCorner(spc, spc) = forward;
    h.bottomLeftCorner(spc, spc) = backward;
  }
  else
  {
    h.bottomLeftCorner(spc, spc) = forward;
    h.topRightCorner(spc, spc) = backward;
  }
  return h;
}

ComplexMatrix build_realspace(const ModelSpec &spec, const std::optional<DisorderSpec> &disorder)
{
  validate(spec);
  const int spc = sites_per_cell(spec);
  const int L = spec.cells * spc;
  ComplexMatrix h = ComplexMatrix::Zero(2 * L, 2 * L);
  h.topLeftCorner(L, L) = chain_realspace(describe(spec, Chain::A), spec.cells, spc, spec.boundary);
  h.bottomRightCorner(L, L) =
    chain_realspace(describe(spec, Chain::B), spec.cells, spc, spec.boundary);
  for (int i = 0; i < L; ++i)
  {
    const int a = i;
    const int b = L + i;
    if (spec.direction == CouplingDirection::BToA)
    {
      h(a, b) = spec.coupling;
      h(b, a) = spec.reverse_coupling;
    }
    else
    {
      h(b, a) = spec.coupling;
      h(a, b) = spec.reverse_coupling;
    }
  }
  if (!disorder)
  {
    return h;
  }
  const DisorderSpec &dis = *disorder;
  if (!(dis.fraction >= 0.0 && dis.fraction <= 1.0))
  {
    throw PreconditionError("disorder fraction must lie in [0, 1]");
  }
  if (!(dis.amplitude >= 0.0))
  {
    throw PreconditionError("disorder amplitude must be non-negative");
  }
  const int total = 2 * L;
  const int count = static_cast<int>(std::lround(dis.fraction * total));
  Rng rng(dis.seed);
  const std::vector<int> sites = rng.sample_without_replacement(total, count);
  for (int s : sites)
  {
    const double u = rng.uniform(-dis.amplitude, dis.amplitude);
    if (dis.target == DisorderTarget::Onsite)
    {
      h(s, s) += u;
      continue;
    }
    const SiteRef site = site_of(L, s);
    int next = site.index + 1;
    if (next == L)
    {
      if (spec.boundary == Boundary::OBC)
      {
        continue;
      }
      next = 0;
    }
    const int j = storage_index(L, {site.chain, next});
    h(s, j) += u;
    h(j, s) += u;
  }
  return h;
}

ComplexMatrix block_of(const ComplexMatrix &op, int chain_length, Chain row, Chain col)
{
  const int r0 = row == Chain::A ? 0 : chain_length;
  const int c0 = col == Chain::A ? 0 : chain_length;
  return op.block(r0, c0, chain_length, chain_length);
}

LaurentPolynomial factor_polynomial(const ModelSpec &spec, Chain chain, Complex energy)
{
  validate(spec);
  require_bloch_capable(spec, "factor_polynomial");
  const int spc = sites_per_cell(spec);
  return determinant(chain_polynomial_matrix(describe(spec, chain), spc, energy));
}

LaurentPolynomial characteristic_polynomial(const ModelSpec &spec, Complex energy)
{
  validate(spec);
  require_bloch_capable(spec, "characteristic_polynomial");
  const int spc = sites_per_cell(spec);
  const PolynomialMatrix a = chain_polynomial_matrix(describe(spec, Chain::A), spc, energy);
  const PolynomialMatrix b = chain_polynomial_matrix(describe(spec, Chain::B), spc, energy);
  PolynomialMatrix m(2 * spc, std::vector<LaurentPolynomial>(2 * spc, LaurentPolynomial(0.0)));
  for (int r = 0; r < spc; ++r)
  {
    for (int c = 0; c < spc; ++c)
    {
      m[r][c] = a[r][c];
      m[spc + r][spc + c] = b[r][c];
    }
    const Complex forward = spec.coupling;
    const Complex backward = spec.reverse_coupling;
    if (spec.direction == CouplingDirection::BToA)
    {
      m[r][spc + r] = LaurentPolynomial(forward);
      m[spc + r][r] = LaurentPolynomial(backward);
    }
    else
    {
      m[spc + r][r] = LaurentPolynomial(forward);
      m[r][spc + r] = LaurentPolynomial(backward);
    }
  }
  return determinant(m);
}

CharacteristicRoots characteristic_roots(const ModelSpec &spec, Complex energy)
{
  if (spec.reverse_coupling != 0.0)
  {
    throw PreconditionError("characteristic_roots: the determinant only factorizes without "
                            "reverse coupling");
  }
  CharacteristicRoots out;
  for (Chain c : {Chain::A, Chain::B})
  {
    const PolynomialRoots r = find_roots(factor_polynomial(spec, c, energy));
    for (const Complex &beta : r.roots)
    {
      out.roots.push_back({beta, c});
    }
    (c == Chain::A ? out.reduced_A : out.reduced_B) = r.reduced;
  }
  return out;
}

}  // namespace edlab
