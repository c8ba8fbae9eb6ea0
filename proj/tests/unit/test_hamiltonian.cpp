#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "spinxfer/errors.hpp"
#include "spinxfer/hamiltonian.hpp"

using namespace spinxfer;

namespace {

OccupationState bits(const char* s) { return OccupationState::from_string(s); }

Eigen::Index at(const Basis& b, const char* s) {
  return static_cast<Eigen::Index>(b.require_index(bits(s)));
}

double commutator_with_number(const HamiltonianMatrix& h) {
  const Eigen::MatrixXcd n = oracle::number_operator(h.basis());
  return (h.entries() * n - n * h.entries()).cwiseAbs().maxCoeff();
}

} // namespace

TEST(PstCouplings, KnownValues) {
  EXPECT_EQ(pst_couplings(2, 1.0).couplings, std::vector<double>{1.0});

  const auto six = pst_couplings(6, 1.0);
  const std::vector<double> expected{std::sqrt(5.0), std::sqrt(8.0), 3.0, std::sqrt(8.0),
                                     std::sqrt(5.0)};
  ASSERT_EQ(six.couplings.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_DOUBLE_EQ(six.couplings[i], expected[i]);
  EXPECT_DOUBLE_EQ(six.j_max, 3.0);

  EXPECT_DOUBLE_EQ(pst_couplings(10, 1.0).j_max, 5.0);
}

TEST(PstCouplings, MirrorSymmetricAndScaled) {
  for (int n = 2; n <= 20; ++n) {
    const auto p = pst_couplings(n, 0.7);
    for (int i = 1; i < n; ++i) {
      EXPECT_DOUBLE_EQ(p.coupling(i), 0.7 * std::sqrt(double(i) * (n - i)));
      EXPECT_DOUBLE_EQ(p.coupling(i), p.coupling(n - i));
      EXPECT_GT(p.coupling(i), 0.0);
    }
  }
  EXPECT_THROW(pst_couplings(5, 0.0), ConfigError);
  EXPECT_THROW(pst_couplings(1, 1.0), ConfigError);
}

TEST(BuildBase, TwoSiteSingleExcitation) {
  const auto b = enumerate_basis(2, 1);
  const auto h = build_base(b, pst_couplings(2, 1.3));
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(3, 3);
  expected(at(*b, "10"), at(*b, "01")) = 1.3;
  expected(at(*b, "01"), at(*b, "10")) = 1.3;
  EXPECT_EQ(h.entries(), expected);
}

TEST(BuildBase, ThreeSiteBlock) {
  const auto b = enumerate_basis(3, 1);
  const auto p = pst_couplings(3, 1.0);
  const auto h = build_base(b, p);
  EXPECT_DOUBLE_EQ(h.entries()(at(*b, "100"), at(*b, "010")).real(), p.coupling(1));
  EXPECT_DOUBLE_EQ(h.entries()(at(*b, "010"), at(*b, "001")).real(), p.coupling(2));
  EXPECT_EQ(h.entries()(at(*b, "100"), at(*b, "001")), complex(0.0));
  EXPECT_EQ(h.entries().diagonal(), Eigen::VectorXcd::Zero(4));
}

TEST(BuildBase, DimensionMismatch) {
  EXPECT_THROW(build_base(enumerate_basis(5, 2), pst_couplings(6, 1.0)), ConfigError);
}

TEST(BuildBase, HermitianAndNumberConserving) {
  for (int n = 2; n <= 10; ++n) {
    for (int k : {1, 2, std::min(n, 8)}) {
      const auto h = build_base(enumerate_basis(n, k), pst_couplings(n, 1.0));
      EXPECT_LE(h.hermiticity_defect(), 1e-14);
      EXPECT_LE(commutator_with_number(h), 1e-13) << "N=" << n << " K=" << k;
    }
  }
}

// Equally spaced single-excitation ladder with spacing 2 j0, against a Sturm
// bisection of the characteristic polynomial of the extracted block.
TEST(BuildBase, SingleExcitationLadder) {
  for (int n = 2; n <= 12; ++n) {
    const double j0 = 1.0;
    const auto b = enumerate_basis(n, 1);
    const auto h = build_base(b, pst_couplings(n, j0));
    std::vector<double> off;
    for (int i = 1; i < n; ++i) {
      const auto bi = OccupationState(n, 1u << (i - 1));
      const auto bj = OccupationState(n, 1u << i);
      off.push_back(h.entries()(static_cast<Eigen::Index>(b->require_index(bi)),
                                static_cast<Eigen::Index>(b->require_index(bj))).real());
    }
    const auto e = oracle::tridiagonal_eigenvalues(off);
    for (int k = 0; k < n; ++k) {
      EXPECT_NEAR(e[static_cast<std::size_t>(k)], j0 * (2 * k - (n - 1)), 1e-10) << "N=" << n;
    }
  }
}

TEST(SiteEnergies, DiagonalShiftByOccupation) {
  const auto b = enumerate_basis(6, 2);
  const auto base = build_base(b, pst_couplings(6, 1.0));
  EXPECT_EQ(add_site_energies(base, std::vector<double>(6, 0.0)).entries(), base.entries());

  const std::vector<double> eps{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const auto h = add_site_energies(base, eps);
  EXPECT_DOUBLE_EQ(h.entries()(at(*b, "110000"), at(*b, "110000")).real(), 0.1 + 0.2);
  EXPECT_DOUBLE_EQ(h.entries()(at(*b, "000000"), at(*b, "000000")).real(), 0.0);
  EXPECT_DOUBLE_EQ(h.entries()(at(*b, "000001"), at(*b, "000001")).real(), 0.6);
  const Eigen::MatrixXcd off = h.entries() - base.entries();
  EXPECT_EQ(Eigen::MatrixXcd(off.diagonal().asDiagonal()), off);

  EXPECT_THROW(add_site_energies(base, std::vector<double>(5, 0.1)), ConfigError);
}

TEST(ExcitationInteraction, CountsNeighbouringPairs) {
  const auto b = enumerate_basis(6, 3);
  const auto base = build_base(b, pst_couplings(6, 1.0));
  const double gamma = 0.3, j0 = 2.0;
  const auto h = add_excitation_interaction(base, gamma, j0);
  const auto diag = [&](const char* s) { return h.entries()(at(*b, s), at(*b, s)).real(); };
  EXPECT_DOUBLE_EQ(diag("110000"), gamma * j0);
  EXPECT_DOUBLE_EQ(diag("101010"), 0.0);
  EXPECT_DOUBLE_EQ(diag("111000"), 2 * gamma * j0);
  for (std::size_t j = 0; j < b->size(); ++j) {
    if (b->state(j).weight() <= 1) {
      EXPECT_EQ(h.entries()(Eigen::Index(j), Eigen::Index(j)), complex(0.0));
    }
  }
  EXPECT_LE(commutator_with_number(h), 1e-13);
}

TEST(NextNearest, CouplingValuesAndStructure) {
  const auto b6 = enumerate_basis(6, 2);
  const auto p6 = pst_couplings(6, 1.0);
  const auto base = build_base(b6, p6);
  EXPECT_EQ(add_next_nearest(base, 0.0, p6).entries(), base.entries());

  const auto h = add_next_nearest(base, 0.05, p6);
  const double j13 = 0.05 * (std::sqrt(5.0) + std::sqrt(8.0)) / 2.0;
  EXPECT_NEAR(j13, 0.1266, 1e-4);
  EXPECT_DOUBLE_EQ(h.entries()(at(*b6, "100000"), at(*b6, "001000")).real(), j13);
  EXPECT_LE(h.hermiticity_defect(), 1e-14);
  EXPECT_LE(commutator_with_number(h), 1e-13);

  const auto b3 = enumerate_basis(3, 1);
  const auto p3 = pst_couplings(3, 1.0);
  const auto h3 = add_next_nearest(build_base(b3, p3), 0.2, p3);
  EXPECT_DOUBLE_EQ(h3.entries()(at(*b3, "100"), at(*b3, "001")).real(),
                   0.2 * (p3.coupling(1) + p3.coupling(2)) / 2.0);

  const auto b2 = enumerate_basis(2, 1);
  EXPECT_THROW(add_next_nearest(build_base(b2, pst_couplings(2, 1.0)), 0.1, pst_couplings(2, 1.0)),
               ConfigError);
}

TEST(DeterministicPerturbations, CommuteWithNumberOperator) {
  for (int n = 3; n <= 8; ++n) {
    for (int k : {2, n}) {
      PerturbationSpec spec;
      spec.epsilon.assign(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i < n; ++i) spec.epsilon[static_cast<std::size_t>(i)] = 0.01 * (i + 1);
      spec.gamma = 0.2;
      spec.delta = 0.05;
      const auto h = build_deterministic(enumerate_basis(n, k), pst_couplings(n, 1.0), spec);
      EXPECT_LE(h.hermiticity_defect(), 1e-14);
      EXPECT_LE(commutator_with_number(h), 1e-13) << "N=" << n << " K=" << k;
    }
  }
}

TEST(OffDiagonalNoise, PerturbsOnlyNonZeroEntries) {
  const auto b = enumerate_basis(6, 2);
  const auto p = pst_couplings(6, 1.0);
  const auto base = build_base(b, p);
  Rng unused(1);
  EXPECT_EQ(apply_offdiagonal_noise(base, 0.0, 1.0, unused).entries(), base.entries());

  Rng r1(99), r2(99);
  const double eta = 0.1, j0 = 1.0;
  const auto a = apply_offdiagonal_noise(base, eta, j0, r1);
  const auto c = apply_offdiagonal_noise(base, eta, j0, r2);
  EXPECT_EQ(a.entries(), c.entries());
  EXPECT_LE(a.hermiticity_defect(), 0.0);

  for (Eigen::Index l = 0; l < a.dimension(); ++l) {
    for (Eigen::Index m = 0; m < a.dimension(); ++m) {
      const complex before = base.entries()(l, m);
      const complex after = a.entries()(l, m);
      if (before == complex(0.0)) {
        EXPECT_EQ(after, complex(0.0));
      } else {
        EXPECT_GE(after.real(), before.real());
        EXPECT_LT(after.real(), before.real() + eta * j0);
      }
    }
  }
}

TEST(LongRange, FillsZerosOnly) {
  const auto b = enumerate_basis(5, 2);
  const auto p = pst_couplings(5, 1.0);
  const auto base = build_base(b, p);
  Rng unused(1);
  EXPECT_EQ(apply_long_range(base, 0.0, p.j_max, unused).entries(), base.entries());

  const double chi = 0.03;
  Rng r1(7), r2(7), r3(8);
  const auto h = apply_long_range(base, chi, p.j_max, r1);
  EXPECT_EQ(h.entries(), apply_long_range(base, chi, p.j_max, r2).entries());
  EXPECT_NE(h.entries(), apply_long_range(base, chi, p.j_max, r3).entries());
  EXPECT_LE(h.hermiticity_defect(), 0.0);

  for (Eigen::Index l = 0; l < h.dimension(); ++l) {
    EXPECT_EQ(h.entries()(l, l), complex(0.0)); // diagonal excluded by default
    for (Eigen::Index m = 0; m < h.dimension(); ++m) {
      if (l == m) continue;
      EXPECT_NE(h.entries()(l, m), complex(0.0));
      if (base.entries()(l, m) != complex(0.0)) {
        EXPECT_EQ(h.entries()(l, m), base.entries()(l, m));
      } else {
        EXPECT_GE(h.entries()(l, m).real(), 0.0);
        EXPECT_LT(h.entries()(l, m).real(), chi * p.j_max);
      }
    }
  }
}

TEST(LongRange, SectorAndDiagonalFlags) {
  const auto b = enumerate_basis(5, 2);
  const auto p = pst_couplings(5, 1.0);
  const auto base = build_base(b, p);

  Rng r1(3);
  const auto in_sector = apply_long_range(base, 0.1, p.j_max, r1, {false, false});
  for (std::size_t l = 0; l < b->size(); ++l) {
    for (std::size_t m = 0; m < b->size(); ++m) {
      const complex v = in_sector.entries()(Eigen::Index(l), Eigen::Index(m));
      if (b->state(l).weight() != b->state(m).weight()) {
        EXPECT_EQ(v, complex(0.0));
      } else if (l != m && b->state(l).weight() > 0) {
        EXPECT_NE(v, complex(0.0));
      }
    }
  }
  EXPECT_LE(commutator_with_number(in_sector), 1e-13);

  Rng r2(3);
  const auto with_diag = apply_long_range(base, 0.1, p.j_max, r2, {true, true});
  for (Eigen::Index l = 0; l < with_diag.dimension(); ++l) {
    EXPECT_GT(with_diag.entries()(l, l).real(), 0.0);
  }
}

// η sees the non-zero pattern after Δ; χ sees the zero pattern after η.
TEST(BuildPerturbed, FixedApplicationOrder) {
  const int n = 6;
  const auto b = enumerate_basis(n, 2);
  const auto p = pst_couplings(n, 1.0);
  PerturbationSpec spec;
  spec.delta = 0.05;
  spec.eta = 0.1;
  spec.chi = 0.0;
  spec.seed = 11;
  const auto h = build_perturbed(b, p, spec);
  const auto nnn = add_next_nearest(build_base(b, p), spec.delta, p);
  const Eigen::Index l = at(*b, "100000"), m = at(*b, "001000");
  EXPECT_GT(h.entries()(l, m).real(), nnn.entries()(l, m).real());
  EXPECT_LT(h.entries()(l, m).real(), nnn.entries()(l, m).real() + spec.eta * p.j0);

  spec.chi = 0.05;
  const auto full = build_perturbed(b, p, spec);
  // η draws come first, so the non-zero entries agree between the two builds
  for (Eigen::Index i = 0; i < h.dimension(); ++i) {
    for (Eigen::Index j = 0; j < h.dimension(); ++j) {
      if (h.entries()(i, j) != complex(0.0)) EXPECT_EQ(full.entries()(i, j), h.entries()(i, j));
    }
  }
  EXPECT_EQ(build_perturbed(b, p, spec).entries(), full.entries());
}
