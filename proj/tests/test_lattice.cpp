// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "edlab/assignment.hpp"
#include "edlab/lattice.hpp"
#include "edlab/polynomial.hpp"
#include "edlab/rng.hpp"
#include "support/oracles.hpp"

using namespace edlab;

namespace
{

const CouplingDirection sys1 = CouplingDirection::BToA;
const CouplingDirection sys2 = CouplingDirection::AToB;

ModelSpec hn_pair(double ta, double da, double tb, double db, int cells, Boundary b)
{
  ModelSpec s;
  s.chainA = HNChainParams{ta, da, 0.0};
  s.chainB = HNChainParams{tb, db, 0.0};
  s.coupling = 1.0;
  s.cells = cells;
  s.boundary = b;
  return s;
}

}  // namespace

TEST_CASE("real-space ladder matches a site-by-site assembly")
{
  const double v1 = oracle::coincidence_v1(oracle::exp_v2, oracle::exp_delta);
  for (auto dir : {sys1, sys2})
  {
    ModelSpec s = oracle::experiment_model(dir, v1);
    s.chainA = SSHChainParams{v1, oracle::exp_w, 0.0, Complex(13.09, -0.34)};
    s.chainB = SSHChainParams{oracle::exp_v2, oracle::exp_w, oracle::exp_delta,
                              Complex(13.09, -0.34)};
    s.offsetB = 1.03;
    const ComplexMatrix expected =
      oracle::ladder_by_hand(v1, oracle::exp_v2, oracle::exp_w, oracle::exp_delta,
                             oracle::exp_kappa, dir, 8, Complex(13.09, -0.34), 1.03);
    CHECK((build_realspace(s) - expected).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("forbidden block is exactly zero without reverse coupling")
{
  const ComplexMatrix h1 = build_realspace(oracle::experiment_model(sys1, -0.765));
  const ComplexMatrix h2 = build_realspace(oracle::experiment_model(sys2, -0.765));
  CHECK(block_of(h1, 16, Chain::B, Chain::A).cwiseAbs().maxCoeff() == 0.0);
  CHECK(block_of(h2, 16, Chain::A, Chain::B).cwiseAbs().maxCoeff() == 0.0);
  CHECK(block_of(h1, 16, Chain::A, Chain::B).cwiseAbs().maxCoeff() > 0.0);

  ModelSpec broken = oracle::experiment_model(sys1, -0.765);
  broken.reverse_coupling = 0.1;
  CHECK(block_of(build_realspace(broken), 16, Chain::B, Chain::A).cwiseAbs().maxCoeff() ==
        doctest::Approx(0.1));
}

TEST_CASE("Hermitian chain A gives a Hermitian block")
{
  const ComplexMatrix h = build_realspace(oracle::experiment_model(sys1, -0.765));
  const ComplexMatrix ha = block_of(h, 16, Chain::A, Chain::A);
  CHECK((ha - ha.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  const ComplexMatrix hb = block_of(h, 16, Chain::B, Chain::B);
  CHECK((hb - hb.adjoint()).cwiseAbs().maxCoeff() > 0.5);
}

TEST_CASE("HN chain with zero asymmetry is Hermitian")
{
  const ComplexMatrix h = build_realspace(hn_pair(1.0, 0.0, 0.7, 0.0, 6, Boundary::PBC));
  const ComplexMatrix ha = block_of(h, 6, Chain::A, Chain::A);
  CHECK((ha - ha.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Bloch blocks at k = 0")
{
  ModelSpec s = oracle::experiment_model(sys1, -0.765);
  s.boundary = Boundary::PBC;
  const ComplexMatrix hk = build_bloch(s, 0.0);
  REQUIRE(hk.rows() == 4);
  CHECK(hk(0, 1).real() == doctest::Approx(-2.33));
  CHECK(hk(1, 0).real() == doctest::Approx(-2.33));
  CHECK(hk(2, 3).real() == doctest::Approx(oracle::exp_v2 + oracle::exp_w + oracle::exp_delta));
  CHECK(hk(3, 2).real() == doctest::Approx(oracle::exp_v2 + oracle::exp_w - oracle::exp_delta));
  CHECK(hk(0, 2) == Complex(oracle::exp_kappa));
  CHECK(hk(1, 3) == Complex(oracle::exp_kappa));
  CHECK(hk.block(2, 0, 2, 2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Bloch coupling position follows the direction")
{
  ModelSpec s1 = oracle::experiment_model(sys1, -0.765);
  s1.boundary = Boundary::PBC;
  ModelSpec s2 = s1;
  s2.direction = sys2;
  for (double k : {0.0, 0.7, 3.0, 6.2})
  {
    const ComplexMatrix a = build_bloch(s1, k);
    const ComplexMatrix b = build_bloch(s2, k);
    CHECK((a.block(0, 0, 2, 2) - b.block(0, 0, 2, 2)).norm() == 0.0);
    CHECK((a.block(2, 2, 2, 2) - b.block(2, 2, 2, 2)).norm() == 0.0);
    CHECK((a.block(0, 2, 2, 2) - b.block(2, 0, 2, 2)).norm() == 0.0);
  }
  ModelSpec zero = s1;
  zero.coupling = 0.0;
  const ComplexMatrix z = build_bloch(zero, 1.3);
  CHECK(z.block(0, 2, 2, 2).norm() == 0.0);
  CHECK(z.block(2, 0, 2, 2).norm() == 0.0);
}

TEST_CASE("Bloch preconditions")
{
  ModelSpec s = oracle::experiment_model(sys1, -0.765);
  CHECK_THROWS_AS(build_bloch(s, 0.0), PreconditionError);
  s.boundary = Boundary::PBC;
  CHECK_THROWS_AS(build_bloch(s, -0.1), PreconditionError);
  CHECK_THROWS_AS(build_bloch(s, 2.0 * 3.14159265358979323846), PreconditionError);
  ModelSpec e;
  e.chainA = ExactChainParams{0.0, 1.0, 1.0, 1.0, 4};
  e.chainB = ExactChainParams{0.0, 1.0, 1.0, 1.0, 4};
  e.cells = 4;
  e.boundary = Boundary::PBC;
  CHECK_THROWS_AS(build_bloch(e, 0.5), PreconditionError);
}

TEST_CASE("exact chain a is sub-diagonal only")
{
  ModelSpec s;
  s.chainA = ExactChainParams{0.0, 1.0, 1.0, 1.0, 3};
  s.chainB = ExactChainParams{0.0, 1.0, 1.0, 1.0, 3};
  s.cells = 3;
  s.coupling = 1.0;
  const ComplexMatrix ha = block_of(build_realspace(s), 3, Chain::A, Chain::A);
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(1, 0) = 1.0;
  expected(2, 1) = 1.0;
  CHECK((ha - expected).norm() == 0.0);
}

TEST_CASE("model validation")
{
  ModelSpec s = oracle::experiment_model(sys1, -0.765);
  s.cells = 1;
  CHECK_THROWS_AS(validate(s), PreconditionError);
  ModelSpec e;
  e.chainA = ExactChainParams{0.0, 1.0, 1.0, 1.0, 1};
  e.chainB = ExactChainParams{0.0, 1.0, 1.0, 1.0, 1};
  e.cells = 1;
  CHECK_THROWS_AS(validate(e), PreconditionError);
  e.chainA = ExactChainParams{0.0, 1.0, 1.0, 1.0, 4};
  e.chainB = ExactChainParams{0.0, 1.0, 1.0, -1.0, 4};
  e.cells = 4;
  CHECK_THROWS_AS(validate(e), PreconditionError);
}

TEST_CASE("PBC wraps the chain ends")
{
  const ComplexMatrix h = build_realspace(hn_pair(1.0, 0.5, 1.0, -0.5, 5, Boundary::PBC));
  const ComplexMatrix ha = block_of(h, 5, Chain::A, Chain::A);
  CHECK(ha(4, 0) == Complex(1.5));
  CHECK(ha(0, 4) == Complex(0.5));
  const ComplexMatrix open = build_realspace(hn_pair(1.0, 0.5, 1.0, -0.5, 5, Boundary::OBC));
  CHECK(block_of(open, 5, Chain::A, Chain::A)(4, 0) == Complex(0.0));
}

TEST_CASE("site numbering round trip")
{
  for (int k = 0; k < 32; ++k)
  {
    const SiteRef s = site_of(16, k);
    CHECK(storage_index(16, s) == k);
    const SiteRef back = site_from_physical(physical_site(s));
    CHECK(back.chain == s.chain);
    CHECK(back.index == s.index);
  }
  CHECK(physical_site({Chain::A, 0}) == 1);
  CHECK(physical_site({Chain::B, 0}) == 2);
  CHECK(physical_site({Chain::A, 8}) == 17);
  CHECK(physical_site({Chain::B, 7}) == 16);
}

TEST_CASE("coincidence hopping matches the closed form")
{
  const double v = coincidence_hopping({oracle::exp_v2, oracle::exp_w, oracle::exp_delta, 0.0});
  CHECK(v == doctest::Approx(oracle::coincidence_v1(oracle::exp_v2, oracle::exp_delta)).epsilon(1e-15));
  CHECK(v == doctest::Approx(-0.7602736349499435).epsilon(1e-14));
}

TEST_CASE("characteristic polynomial is independent of the coupling")
{
  const Complex E(0.3, 0.2);
  ModelSpec s = oracle::experiment_model(sys1, -0.765);
  s.coupling = 0.0;
  const LaurentPolynomial ref = characteristic_polynomial(s, E);
  for (double kappa : {-1.081, 10.0})
  {
    for (auto dir : {sys1, sys2})
    {
      ModelSpec t = s;
      t.coupling = kappa;
      t.direction = dir;
      const LaurentPolynomial p = characteristic_polynomial(t, E);
      CHECK(p.lowest_power() == ref.lowest_power());
      CHECK(p.coefficients() == ref.coefficients());
    }
  }
  const LaurentPolynomial product =
    factor_polynomial(s, Chain::A, E) * factor_polynomial(s, Chain::B, E);
  for (int k = ref.lowest_power(); k <= ref.highest_power(); ++k)
  {
    CHECK(std::abs(product.coefficient(k) - ref.coefficient(k)) < 1e-12);
  }
}

TEST_CASE("characteristic roots on the block spectra")
{
  ModelSpec s = oracle::experiment_model(sys1, oracle::v1_experiment);
  const ComplexMatrix h = build_realspace(s);
  Eigen::ComplexEigenSolver<ComplexMatrix> ea(block_of(h, 16, Chain::A, Chain::A));
  Eigen::ComplexEigenSolver<ComplexMatrix> eb(block_of(h, 16, Chain::B, Chain::B));
  const double radius = oracle::ssh_gbz_radius(oracle::exp_v2, oracle::exp_delta);
  CHECK(radius == doctest::Approx(0.568216).epsilon(1e-6));
  const Complex Ea = ea.eigenvalues()(5);
  bool unit = false;
  for (const auto &r : characteristic_roots(s, Ea).roots)
  {
    unit = unit || (r.factor == Chain::A && std::abs(std::abs(r.beta) - 1.0) < 1e-8);
  }
  CHECK(unit);
  const Complex Eb = eb.eigenvalues()(5);
  int on_radius = 0;
  std::vector<Complex> reference;
  for (const auto &r : characteristic_roots(s, Eb).roots)
  {
    on_radius += r.factor == Chain::B && std::abs(std::abs(r.beta) - radius) < 1e-8;
    reference.push_back(r.beta);
  }
  CHECK(on_radius == 2);
  ModelSpec t = s;
  t.coupling = 10.0;
  const auto other = characteristic_roots(t, Eb).roots;
  REQUIRE(other.size() == reference.size());
  for (std::size_t i = 0; i < other.size(); ++i)
  {
    CHECK(other[i].beta == reference[i]);
  }
  ModelSpec rev = s;
  rev.reverse_coupling = 0.1;
  CHECK_THROWS_AS(characteristic_roots(rev, Eb), PreconditionError);
}

TEST_CASE("disorder is seeded, bounded and sized by the fraction")
{
  const ModelSpec s = oracle::experiment_model(sys1, -0.765);
  const DisorderSpec d{0.1, 0.25, 7, DisorderTarget::Onsite};
  const ComplexMatrix clean = build_realspace(s);
  const ComplexMatrix a = build_realspace(s, d);
  const ComplexMatrix b = build_realspace(s, d);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  const ComplexMatrix diff = a - clean;
  int changed = 0;
  for (int i = 0; i < 32; ++i)
  {
    CHECK(std::abs(diff(i, i)) <= 0.1);
    changed += diff(i, i) != Complex(0.0);
  }
  CHECK(changed == 8);
  CHECK((diff - ComplexMatrix(diff.diagonal().asDiagonal())).norm() == 0.0);
  DisorderSpec other = d;
  other.seed = 8;
  CHECK((build_realspace(s, other) - a).norm() > 0.0);
  DisorderSpec none = d;
  none.amplitude = 0.0;
  CHECK((build_realspace(s, none) - clean).norm() == 0.0);

  DisorderSpec hop{0.1, 0.5, 3, DisorderTarget::InChainHopping};
  const ComplexMatrix hd = build_realspace(s, hop) - clean;
  CHECK(hd.diagonal().norm() == 0.0);
  CHECK(block_of(hd, 16, Chain::A, Chain::B).norm() == 0.0);
  CHECK(block_of(hd, 16, Chain::B, Chain::A).norm() == 0.0);
  CHECK(hd.norm() > 0.0);
  const ComplexMatrix hda = block_of(hd, 16, Chain::A, Chain::A);
  CHECK((hda - hda.transpose()).norm() == 0.0);
}

TEST_CASE("Laurent polynomial arithmetic and roots")
{
  // (beta - 1)(beta - 2) / beta
  const LaurentPolynomial p(-1, {2.0, -3.0, 1.0});
  CHECK(p(Complex(1.0)) == Complex(0.0));
  CHECK(std::abs(p(Complex(2.0))) < 1e-15);
  const PolynomialRoots r = find_roots(p);
  REQUIRE(r.roots.size() == 2);
  std::vector<double> mods = {std::abs(r.roots[0]), std::abs(r.roots[1])};
  std::sort(mods.begin(), mods.end());
  CHECK(mods[0] == doctest::Approx(1.0));
  CHECK(mods[1] == doctest::Approx(2.0));

  const LaurentPolynomial q = LaurentPolynomial::monomial(1, 2.0) + LaurentPolynomial(3.0);
  const LaurentPolynomial pq = p * q;
  CHECK(pq.lowest_power() == -1);
  CHECK(pq.highest_power() == 2);
  CHECK(std::abs(pq(Complex(0.4, 0.3)) - p(Complex(0.4, 0.3)) * q(Complex(0.4, 0.3))) < 1e-14);

  PolynomialMatrix m = {{LaurentPolynomial(1.0), LaurentPolynomial::monomial(1, 2.0)},
                        {LaurentPolynomial::monomial(-1, 3.0), LaurentPolynomial(4.0)}};
  const LaurentPolynomial det = determinant(m);
  CHECK(det.coefficient(0) == Complex(-2.0));

  // Leading coefficient below tolerance: reported as reduced degree.
  const LaurentPolynomial lead(0, {1.0, -1.0, 1e-300});
  const PolynomialRoots red = find_roots(lead);
  CHECK(red.reduced);
  CHECK(red.nominal_degree == 2);
  REQUIRE(red.roots.size() == 1);
  CHECK(std::abs(red.roots[0] - 1.0) < 1e-14);
}

TEST_CASE("random streams are reproducible")
{
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i)
  {
    const double x = a.uniform(-0.1, 0.1);
    CHECK(x == b.uniform(-0.1, 0.1));
    CHECK(x >= -0.1);
    CHECK(x < 0.1);
  }
  Rng c(1);
  const std::vector<int> s = c.sample_without_replacement(32, 8);
  CHECK(s.size() == 8);
  CHECK(std::set<int>(s.begin(), s.end()).size() == 8);
  for (int x : s)
  {
    CHECK(x >= 0);
    CHECK(x < 32);
  }
  CHECK(splitmix64(0) != splitmix64(1));
}

TEST_CASE("assignment finds the minimum-cost permutation")
{
  Eigen::MatrixXd cost(3, 3);
  cost << 4, 1, 3, 2, 0, 5, 3, 2, 2;
  const std::vector<int> col = min_cost_assignment(cost);
  CHECK(col == std::vector<int>{1, 0, 2});
}
