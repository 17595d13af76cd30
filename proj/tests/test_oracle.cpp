// Copyright the edlab authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "edlab/oracle.hpp"
#include "edlab/spectral.hpp"
#include "support/oracles.hpp"

using namespace edlab;

namespace
{

ComplexMatrix chain_a_by_hand(Complex V, double J, int L)
{
  ComplexMatrix h = ComplexMatrix::Zero(L, L);
  for (int n = 0; n < L; ++n)
  {
    h(n, n) = V;
    if (n + 1 < L)
    {
      h(n + 1, n) = J;
    }
  }
  return h;
}

const std::vector<ExactChainParams> branch_sets = {
  {Complex(0.3, 0.5), 1.0, 1.0, 0.8, 2},
  {Complex(0.0, 0.5), 1.0, 1.0, 1.0, 2},
  {Complex(0.0, 0.5), 1.0, 1.0, 1.25, 2},
};
const ExactChainParams bounded_set{Complex(0.0, 0.5), 0.3, 1.0, 0.8, 2};

}  // namespace

TEST_CASE("exact eigenvalues for L = 3")
{
  const ExactSolution s = exact_eigensystem({Complex(0.0, 0.5), 1.0, 1.0, 1.0, 3}, 1.0);
  REQUIRE(s.eigenvalues.size() == 3);
  CHECK(s.eigenvalues[0] == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(s.eigenvalues[1]) < 1e-15);
  CHECK(s.eigenvalues[2] == doctest::Approx(-std::sqrt(2.0)));
  for (std::size_t j = 0; j < 3; ++j)
  {
    CHECK(s.q_values[j] == doctest::Approx((j + 1) * std::numbers::pi / 4.0));
  }
}

TEST_CASE("exact eigenpairs satisfy the assembled operator")
{
  for (ExactChainParams p : branch_sets)
  {
    for (int L : {2, 5, 9, 12})
    {
      p.L = L;
      const double kappa = -1.3;
      const ExactSolution s = exact_eigensystem(p, kappa);
      const ComplexMatrix h = build_realspace(exact_model(p, kappa));
      for (int q = 0; q < L; ++q)
      {
        const ComplexVector v = s.eigenvectors.col(q);
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((h * v - s.eigenvalues[q] * v).norm() < 1e-10);
      }
      CHECK(s.route_difference < 1e-10);
    }
  }
}

TEST_CASE("closed-form chain-a components match a direct solve")
{
  for (ExactChainParams p : branch_sets)
  {
    p.L = 10;
    const double kappa = 0.7;
    const ExactSolution s = exact_eigensystem(p, kappa);
    const ComplexMatrix ha = chain_a_by_hand(p.V, p.J, p.L);
    for (int q = 0; q < p.L; ++q)
    {
      ComplexMatrix m = ha;
      m.diagonal().array() -= s.eigenvalues[q];
      const ComplexVector direct = -kappa * oracle::gauss_solve(m, s.u.col(q));
      CHECK((direct - s.psi.col(q)).norm() <= 1e-10 * direct.norm());
    }
  }
}

TEST_CASE("analytic resolvent matches numerical solves")
{
  for (ExactChainParams p : branch_sets)
  {
    for (int L = 2; L <= 12; ++L)
    {
      p.L = L;
      const ExactSolution s = exact_eigensystem(p, 1.0);
      for (double E : s.eigenvalues)
      {
        const ComplexMatrix closed = exact_resolvent(p, E);
        ComplexMatrix m = chain_a_by_hand(p.V, p.J, L);
        m.diagonal().array() -= E;
        for (int j = 0; j < L; ++j)
        {
          ComplexVector e = ComplexVector::Zero(L);
          e(j) = 1.0;
          const ComplexVector col = oracle::gauss_solve(m, e);
          CHECK((col - closed.col(j)).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, col.cwiseAbs().maxCoeff()));
        }
      }
    }
  }
}

TEST_CASE("numerical eig reproduces the exact eigenpairs")
{
  for (ExactChainParams p : branch_sets)
  {
    p.L = 12;
    const ExactSolution s = exact_eigensystem(p, 1.0);
    const EigenDecomposition d = eig(build_realspace(exact_model(p, 1.0)));
    for (int q = 0; q < p.L; ++q)
    {
      Eigen::Index best = 0;
      (d.values.array() - s.eigenvalues[q]).abs().minCoeff(&best);
      CHECK(std::abs(d.values(best) - s.eigenvalues[q]) < 1e-9);
      const Complex overlap = s.eigenvectors.col(q).dot(d.vectors.col(best));
      const ComplexVector aligned = d.vectors.col(best) * std::conj(overlap / std::abs(overlap));
      CHECK((aligned - s.eigenvectors.col(q)).norm() < 1e-8);
    }
  }
}

TEST_CASE("vanishing J leaves a single localization term")
{
  const ExactChainParams p{Complex(3.0, 0.0), 0.0, 1.0, 1.0, 8};
  const double kappa = 0.9;
  const ExactSolution s = exact_eigensystem(p, kappa);
  for (int q = 0; q < p.L; ++q)
  {
    const ComplexVector expected = kappa / (s.eigenvalues[q] - p.V) * s.u.col(q);
    CHECK((s.psi.col(q) - expected).norm() < 1e-12 * expected.norm());
  }
}

TEST_CASE("overlapping spectra are rejected")
{
  CHECK_THROWS_AS(exact_eigensystem({Complex(1.0, 0.0), 1.0, 1.0, 1.0, 4}, 1.0), PreconditionError);
  CHECK_NOTHROW(exact_eigensystem({Complex(2.5, 0.0), 1.0, 1.0, 1.0, 4}, 1.0));
}

TEST_CASE("asymptotic regime branches")
{
  auto regime = [](ExactChainParams p, double eps) {
    // q chosen so that 2t cos q = eps with t = 1.
    return asymptotic_regime(p, std::acos(eps / 2.0));
  };
  // r > 1, |J/(eps - V)| >= 1
  CHECK(regime({Complex(0.0, 0.5), 1.0, 1.0, 1.25, 10}, 0.0).regime == Regime::AsymptoticED);
  // r < 1, |rJ/(eps - V)| >= 1
  CHECK(regime({Complex(0.0, 0.5), 1.0, 1.0, 0.6, 10}, 0.0).regime == Regime::AsymptoticED);
  // r == 1, |J/(eps - V)| > 1
  CHECK(regime({Complex(0.0, 0.5), 1.0, 1.0, 1.0, 10}, 0.0).regime == Regime::AsymptoticED);
  // all below one
  CHECK(regime({Complex(0.0, 0.5), 0.3, 1.0, 0.8, 10}, 0.0).regime == Regime::Bounded);
  // r < 1 with |J/(eps - V)| = 2 but |rJ/(eps - V)| < 1
  CHECK(regime({Complex(0.0, 0.5), 1.0, 1.0, 0.4, 10}, 0.0).regime == Regime::Bounded);
  CHECK(regime({Complex(0.0, 0.5), 1.0, 1.0, 0.3, 10}, 0.0).regime == Regime::Bounded);
  // |J/(eps - V)| exactly one
  const RegimeVerdict edge = regime({Complex(0.0, 1.0), 1.0, 1.0, 1.0, 10}, 0.0);
  CHECK(edge.marginal);
  CHECK_FALSE(regime({Complex(0.0, 0.5), 1.0, 1.0, 1.0, 10}, 0.0).marginal);
}

TEST_CASE("asymptotic ED requires encirclement by the chain-a loop")
{
  const std::vector<ExactChainParams> sets = {branch_sets[0], branch_sets[1], branch_sets[2],
                                              bounded_set,
                                              {Complex(0.2, 0.9), 1.0, 1.0, 1.0, 2},
                                              {Complex(0.0, 0.5), 1.0, 1.0, 0.4, 2}};
  for (const auto &p : sets)
  {
    for (int j = 1; j <= 15; ++j)
    {
      const double q = j * std::numbers::pi / 16.0;
      const double eps = 2.0 * p.t * std::cos(q);
      const RegimeVerdict v = asymptotic_regime(p, q);
      if (v.marginal || v.regime != Regime::AsymptoticED)
      {
        continue;
      }
      CHECK(std::abs(eps - p.V) <= p.J + 1e-12);
      CHECK(oracle::hn_winding_by_hand(0.0, p.J, p.V, eps, 1024) != 0);
      ModelSpec loop;
      loop.chainA = HNChainParams{p.J / 2.0, -p.J / 2.0, p.V};
      loop.chainB = HNChainParams{0.0, 0.0, 100.0};
      loop.cells = 4;
      loop.boundary = Boundary::PBC;
      CHECK(winding_number(loop, eps) != 0);
    }
  }
}

TEST_CASE("ratio scan trends")
{
  for (const auto &p : branch_sets)
  {
    const std::vector<RatioRow> rows = ratio_scan(p, {20, 40, 80}, 0.5);
    CHECK(rows[0].regime.regime == Regime::AsymptoticED);
    CHECK(rows[1].ratio > rows[0].ratio);
    CHECK(rows[2].ratio > rows[1].ratio);
    CHECK(rows[2].ratio / rows[0].ratio > 10.0);
  }
  const std::vector<RatioRow> b = ratio_scan(bounded_set, {20, 40, 80}, 0.5);
  CHECK(b[0].regime.regime == Regime::Bounded);
  CHECK(std::abs(b[2].ratio - b[1].ratio) / b[1].ratio < 0.1);

  const std::vector<RatioRow> flat = ratio_scan({Complex(30.0, 0.0), 0.0, 1.0, 1.0, 2}, {20, 40, 80}, 0.5);
  CHECK(std::abs(flat[2].ratio - flat[0].ratio) / flat[0].ratio < 0.01);
  for (const auto &row : flat)
  {
    const double eps = 2.0 * std::cos(row.q);
    CHECK(row.ratio == doctest::Approx(1.0 / ((eps - 30.0) * (eps - 30.0))).epsilon(1e-12));
  }
}

TEST_CASE("exact model layout")
{
  const ExactChainParams p{Complex(0.0, 0.5), 1.0, 1.0, 0.8, 6};
  const ModelSpec s = exact_model(p, 2.0);
  CHECK(s.cells == 6);
  CHECK(s.direction == CouplingDirection::BToA);
  CHECK(s.boundary == Boundary::OBC);
  const ComplexMatrix h = build_realspace(s);
  CHECK((block_of(h, 6, Chain::A, Chain::A) - chain_a_by_hand(p.V, p.J, 6)).norm() == 0.0);
  CHECK((block_of(h, 6, Chain::A, Chain::B) - 2.0 * ComplexMatrix::Identity(6, 6)).norm() == 0.0);
  const ComplexMatrix hb = block_of(h, 6, Chain::B, Chain::B);
  CHECK(hb(0, 1) == Complex(0.8));
  CHECK(hb(1, 0) == Complex(1.0 / 0.8));
}
