// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "edlab/common.hpp"
#include "edlab/polynomial.hpp"

namespace edlab
{

/// Two-site SSH chain. Intra-cell hopping is asymmetric: the a<-b element is
/// v + delta and the b<-a element is v - delta. Inter-cell hopping w.
struct SSHChainParams
{
  double v = 0.0;
  double w = 0.0;
  double delta = 0.0;
  Complex onsite = 0.0;
};

/// Hatano-Nelson chain. H[j, j+1] = t + delta, H[j+1, j] = t - delta.
struct HNChainParams
{
  double t = 0.0;
  double delta = 0.0;
  Complex onsite = 0.0;
};

/// Exactly solvable chains. As chain A: onsite V with sub-diagonal J (a single
/// Jordan block). As chain B: H[j, j+1] = t*r, H[j+1, j] = t/r, zero onsite.
struct ExactChainParams
{
  Complex V = 0.0;
  double J = 0.0;
  double t = 1.0;
  double r = 1.0;
  int L = 2;
};

using ChainParams = std::variant<SSHChainParams, HNChainParams, ExactChainParams>;

/// B-to-A is system-I (coupling in the upper-right block), A-to-B is
/// system-II (lower-left block).
enum class CouplingDirection
{
  BToA,
  AToB
};

enum class Boundary
{
  PBC,
  OBC
};

struct ModelSpec
{
  ChainParams chainA = SSHChainParams{};
  ChainParams chainB = SSHChainParams{};
  double coupling = 0.0;
  CouplingDirection direction = CouplingDirection::BToA;
  /// Hopping placed in the otherwise forbidden block; zero keeps the operator
  /// block-triangular.
  double reverse_coupling = 0.0;
  /// Added to every chain-B onsite term.
  Complex offsetB = 0.0;
  int cells = 8;
  Boundary boundary = Boundary::OBC;
};

enum class DisorderTarget
{
  Onsite,
  InChainHopping
};

/// Uniform disorder on [-amplitude, amplitude] at round(fraction * sites)
/// sites drawn without replacement over both chains.
struct DisorderSpec
{
  double amplitude = 0.0;
  double fraction = 0.0;
  std::uint64_t seed = 0;
  DisorderTarget target = DisorderTarget::Onsite;
};

/// Position of a site: which chain and its index along that chain.
struct SiteRef
{
  Chain chain = Chain::A;
  int index = 0;
};

/// Block that receives the one-way coupling (A for system-I, B for system-II).
inline Chain target_chain(CouplingDirection d)
{
  return d == CouplingDirection::BToA ? Chain::A : Chain::B;
}

/// Throws PreconditionError describing the first violated invariant.
void validate(const ModelSpec &spec);

/// Sites per unit cell shared by both chains (2 if any chain is SSH, else 1).
int sites_per_cell(const ModelSpec &spec);

/// Number of sites in each chain.
int chain_length(const ModelSpec &spec);

/// Storage index (chain-major) of a site.
int storage_index(int chain_length, SiteRef site);
SiteRef site_of(int chain_length, int storage);

/// Physical left-to-right position, 1-based: sites of the two chains at the
/// same position along the chain are interleaved A then B.
int physical_site(SiteRef site);
SiteRef site_from_physical(int physical);

/// Intra-cell SSH hopping of chain A at which the OBC spectra of two SSH chains
/// coincide: -sqrt((v2 - delta)(v2 + delta)) for chain-B parameters.
double coincidence_hopping(const SSHChainParams &chain_b);

/// Bloch Hamiltonian: blocks H_A(k), H_B(k) on the diagonal, coupling * I in
/// the block given by the direction. PBC, SSH/HN chains only, k in [0, 2 pi).
ComplexMatrix build_bloch(const ModelSpec &spec, double k);

/// Bloch block of one chain alone.
ComplexMatrix build_bloch_block(const ModelSpec &spec, Chain chain, double k);

/// Real-space operator of size 2L x 2L in chain-major order.
ComplexMatrix build_realspace(const ModelSpec &spec,
                              const std::optional<DisorderSpec> &disorder = std::nullopt);

/// Sub-block (row chain, column chain) of a chain-major operator.
ComplexMatrix block_of(const ComplexMatrix &op, int chain_length, Chain row, Chain col);

/// det[H_X(beta) - E] for a single chain.
LaurentPolynomial factor_polynomial(const ModelSpec &spec, Chain chain, Complex energy);

/// det[H(beta) - E] of the full Bloch operator including the coupling.
LaurentPolynomial characteristic_polynomial(const ModelSpec &spec, Complex energy);

struct BetaRoot
{
  Complex beta;
  Chain factor;
};

struct CharacteristicRoots
{
  std::vector<BetaRoot> roots;
  /// Set when a factor's polynomial lost degree (result still returned).
  bool reduced_A = false;
  bool reduced_B = false;
};

/// All beta with det[H(beta) - E] = 0, solved factor by factor.
CharacteristicRoots characteristic_roots(const ModelSpec &spec, Complex energy);

}  // namespace edlab
