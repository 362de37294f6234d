#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "majent/basis.hpp"
#include "majent/kernels.hpp"
#include "majent/pauli_rep.hpp"

using namespace majent;

namespace {

GnsVector element_state(int n, const CliffordElement& e, double scale) {
  GnsVector v(n);
  for (const auto& [mask, coeff] : e.terms()) v.add(mask, scale * coeff);
  return v;
}

double vec_distance(const GnsVector& a, const GnsVector& b) {
  GnsVector d = a;
  d *= Complex(-1, 0);
  d += b;
  return d.norm();
}

Eigen::MatrixXcd random_unitary(std::mt19937& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) m(r, c) = Complex(g(rng), g(rng));
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  return q;
}

}  // namespace

TEST_CASE("e-basis anchors") {
  const auto e2 = e_basis(2);
  CHECK(e2.block_count == 2);
  CHECK(e2.block_dim == 2);

  // |e_1^(1)> = (1+c1)(1+c2)|Omega>/2
  const auto& first = e2.at(0, 0);
  CHECK(first.amps.at(0b00) == Complex(0.5, 0));
  CHECK(first.amps.at(0b01) == Complex(0.5, 0));
  CHECK(first.amps.at(0b10) == Complex(0.5, 0));
  CHECK(first.amps.at(0b11) == Complex(0.5, 0));

  // the inner index flips the first factor, the block index the second
  const auto& inner_flipped = e2.at(0, 1);  // (1-c1)(1+c2)
  CHECK(inner_flipped.amps.at(0b01) == Complex(-0.5, 0));
  CHECK(inner_flipped.amps.at(0b10) == Complex(0.5, 0));
  const auto& block_flipped = e2.at(1, 0);  // (1+c1)(1-c2)
  CHECK(block_flipped.amps.at(0b01) == Complex(0.5, 0));
  CHECK(block_flipped.amps.at(0b10) == Complex(-0.5, 0));

  // N = 3 contains (1+c1)(1+c2)(1+c3)|Omega>/(2 sqrt2)
  const auto e3 = e_basis(3);
  CHECK(e3.block_count == 4);
  CHECK(e3.block_dim == 2);
  const double amp = 1.0 / (2.0 * std::sqrt(2.0));
  for (ModeMask mask = 0; mask < 8; ++mask) {
    CHECK(std::abs(e3.at(0, 0).amps.at(mask) - Complex(amp, 0)) < 1e-15);
  }
}

TEST_CASE("e/f bases are orthonormal and complete") {
  for (int n : {2, 3, 4, 6}) {
    const auto e = e_basis(n);
    CHECK(e.total() == (1 << n));
    CHECK(orthonormality_residual(e) < 1e-12);
  }
  for (int n : {2, 4, 6}) {
    const auto f = f_basis(n);
    CHECK(f.total() == (1 << n));
    CHECK(orthonormality_residual(f) < 1e-12);
  }
  CHECK(orthonormality_residual(g_basis_2()) < 1e-12);
  CHECK_THROWS_AS(f_basis(3), std::invalid_argument);
  CHECK_THROWS_AS(e_basis(13), std::invalid_argument);
}

TEST_CASE("f-basis blocks are invariant, e-basis blocks are not (N >= 4)") {
  for (int n : {2, 4, 6}) {
    const GnsRep rep(n);
    CHECK(block_invariance_residual(rep, f_basis(n)) <= 1e-10);
  }
  const GnsRep rep4(4);
  CHECK(block_invariance_residual(rep4, e_basis(4)) > 0.1);
  const GnsRep rep2(2);
  CHECK(block_invariance_residual(rep2, e_basis(2)) <= 1e-10);
  CHECK(block_invariance_residual(rep2, g_basis_2()) <= 1e-10);
}

TEST_CASE("f-basis N=2 matches the pair factors") {
  const auto f = f_basis(2);
  const double r = 1.0 / std::sqrt(2.0);
  // block 1: (c1 + i c2)|Omega>/sqrt2, (1 + i c1c2)|Omega>/sqrt2
  CHECK(std::abs(f.at(0, 0).amps.at(0b01) - Complex(r, 0)) < 1e-15);
  CHECK(std::abs(f.at(0, 0).amps.at(0b10) - Complex(0, r)) < 1e-15);
  CHECK(std::abs(f.at(0, 1).amps.at(0b00) - Complex(r, 0)) < 1e-15);
  CHECK(std::abs(f.at(0, 1).amps.at(0b11) - Complex(0, r)) < 1e-15);
  // block 2: (1 - i c1c2)|Omega>/sqrt2, (c1 - i c2)|Omega>/sqrt2
  CHECK(std::abs(f.at(1, 0).amps.at(0b00) - Complex(r, 0)) < 1e-15);
  CHECK(std::abs(f.at(1, 0).amps.at(0b11) - Complex(0, -r)) < 1e-15);
  CHECK(std::abs(f.at(1, 1).amps.at(0b01) - Complex(r, 0)) < 1e-15);
  CHECK(std::abs(f.at(1, 1).amps.at(0b10) - Complex(0, -r)) < 1e-15);

  // every f vector has a nonzero c1c2 expectation
  const GnsRep rep(2);
  const auto c1c2 = CliffordElement::monomial(2, 0b11);
  for (int r_idx = 0; r_idx < 2; ++r_idx) {
    for (int i = 0; i < 2; ++i) {
      CHECK(std::abs(expectation(rep, f.at(r_idx, i), c1c2)) >
            doctest::Approx(0.99));
    }
  }
}

TEST_CASE("block matrices are equal across blocks and reproduce the 2-dim relations") {
  for (int n : {2, 4, 6}) {
    const GnsRep rep(n);
    const auto f = f_basis(n);
    const auto dec = block_matrices(rep, f);
    CHECK(dec.cross_block_residual <= 1e-10);
    CHECK(dec.block_equality_residual <= 1e-12);

    // each block satisfies the anticommutation relations
    const auto& blocks = dec.generator_blocks[0];
    const Eigen::MatrixXcd id =
        Eigen::MatrixXcd::Identity(f.block_dim, f.block_dim);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Eigen::MatrixXcd anti =
            blocks[i] * blocks[j] + blocks[j] * blocks[i];
        const Eigen::MatrixXcd expected = (i == j) ? 2.0 * id : 0.0 * id;
        CHECK((anti - expected).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }

  // N = 2: the g-basis blocks carry exactly c1 -> s3, c2 -> s1,
  // c1c2 -> i s2
  const GnsRep rep2(2);
  const auto g = g_basis_2();
  const auto dec = block_matrices(rep2, g);
  CHECK(dec.block_equality_residual <= 1e-12);
  CHECK((dec.generator_blocks[0][0] - pauli(3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((dec.generator_blocks[0][1] - pauli(1)).cwiseAbs().maxCoeff() < 1e-12);
  const auto c1c2 =
      block_matrix_of(rep2, g, CliffordElement::monomial(2, 0b11), 0);
  CHECK((c1c2 - Complex(0, 1) * pauli(2)).cwiseAbs().maxCoeff() < 1e-12);

  // non-invariant blocks are rejected
  CHECK_THROWS_AS(block_matrices(GnsRep(4), e_basis(4)), std::invalid_argument);
}

TEST_CASE("g-basis reproduces the block recombination anchors") {
  const auto g = g_basis_2();
  const double r = 1.0 / std::sqrt(2.0);
  // |g_1^(1)> = (1+c1)|Omega>/sqrt2
  CHECK(std::abs(g.at(0, 0).amps.at(0b00) - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(g.at(0, 0).amps.at(0b01) - Complex(r, 0)) < 1e-12);
  // |g_2^(1)> = (1-c1)c2|Omega>/sqrt2 = (c2 - c1c2)|Omega>/sqrt2
  CHECK(std::abs(g.at(0, 1).amps.at(0b10) - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(g.at(0, 1).amps.at(0b11) - Complex(-r, 0)) < 1e-12);
  // |g_1^(2)> = (1+c1)c2|Omega>/sqrt2
  CHECK(std::abs(g.at(1, 0).amps.at(0b10) - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(g.at(1, 0).amps.at(0b11) - Complex(r, 0)) < 1e-12);
  // |g_2^(2)> = (1-c1)|Omega>/sqrt2
  CHECK(std::abs(g.at(1, 1).amps.at(0b00) - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(g.at(1, 1).amps.at(0b01) - Complex(-r, 0)) < 1e-12);
}

TEST_CASE("recombine basics") {
  const auto e2 = e_basis_block_aligned_2();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  const auto same = recombine(e2, id, id);
  for (int k = 0; k < 4; ++k) {
    CHECK(vec_distance(same.vectors[k], e2.vectors[k]) < 1e-14);
  }

  Eigen::MatrixXcd not_unitary(2, 2);
  not_unitary << 1, 1, 0, 1;
  CHECK_THROWS_AS(recombine(e2, not_unitary, id), std::invalid_argument);
}

TEST_CASE("the pair-factor recombination matrices map the aligned e-basis onto the f-basis") {
  // U = [[1-i, 1+i], [1+i, 1-i]]/2, V = [[1, i], [1, -i]]/sqrt2 carry
  // the aligned e-basis onto the f-basis with the two block labels
  // swapped.
  Eigen::MatrixXcd u(2, 2), v(2, 2);
  u << Complex(1, -1), Complex(1, 1), Complex(1, 1), Complex(1, -1);
  u /= 2.0;
  v << Complex(1, 0), Complex(0, 1), Complex(1, 0), Complex(0, -1);
  v /= std::sqrt(2.0);

  const auto rec = recombine(e_basis_block_aligned_2(), u, v);
  const auto f = f_basis(2);
  // rec block 1 = f block 2 and vice versa; inner order matches
  CHECK(vec_distance(rec.at(0, 0), f.at(1, 0)) < 1e-12);
  CHECK(vec_distance(rec.at(0, 1), f.at(1, 1)) < 1e-12);
  CHECK(vec_distance(rec.at(1, 0), f.at(0, 0)) < 1e-12);
  CHECK(vec_distance(rec.at(1, 1), f.at(0, 1)) < 1e-12);
}

TEST_CASE("recombine with a block unitary preserves matrix elements") {
  std::mt19937 rng(47);
  for (int n : {2, 4}) {
    const GnsRep rep(n);
    const auto f = f_basis(n);
    const auto ref = block_matrices(rep, f);
    for (int trial = 0; trial < 5; ++trial) {
      const auto u = random_unitary(rng, f.block_count);
      const auto g = recombine(
          f, u, Eigen::MatrixXcd::Identity(f.block_dim, f.block_dim));
      CHECK(orthonormality_residual(g) < 1e-12);
      const auto dec = block_matrices(rep, g);
      CHECK(dec.cross_block_residual <= 1e-10);
      for (int i = 0; i < n; ++i) {
        CHECK((dec.generator_blocks[0][i] - ref.generator_blocks[0][i])
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("commutant dimensions") {
  const auto r2 = commutant_dimension(GnsRep(2));
  CHECK(r2.dimension == 4);
  CHECK(r2.zero_gap >= 1e6);

  const auto r3 = commutant_dimension(GnsRep(3));
  CHECK(r3.dimension == 8);
  CHECK(r3.zero_gap >= 1e6);

  const auto r4 = commutant_dimension(GnsRep(4));
  CHECK(r4.dimension == 16);
  CHECK(r4.zero_gap >= 1e6);

  CHECK_THROWS_AS(commutant_dimension(GnsRep(7)), std::invalid_argument);
}

TEST_CASE("restriction of the cyclic vector in the g-basis is the half/half mixture") {
  const GnsRep rep(2);
  auto g = std::make_shared<IrrepBasis>(g_basis_2());
  const auto restricted = restrict_vector(rep, rep.cyclic_vector(), g);
  REQUIRE(restricted.blocks.size() == 1);
  const auto& rho = restricted.blocks[0].rho;
  CHECK(std::abs(rho(0, 0) - Complex(0.5, 0)) < 1e-12);
  CHECK(std::abs(rho(1, 1) - Complex(0.5, 0)) < 1e-12);
  CHECK(std::abs(rho(0, 1)) < 1e-12);
  CHECK_FALSE(purity(restricted));
}

TEST_CASE("e-basis restrictions: pure at N=2, mixed beyond") {
  {
    const GnsRep rep(2);
    auto f = std::make_shared<IrrepBasis>(f_basis(2));
    for (const auto& v : e_basis(2).vectors) {
      CHECK(purity(restrict_vector(rep, v, f)));
    }
  }
  // For N >= 4 the product vectors spread across blocks: the
  // interleaving sign wipes out every expectation beyond the first
  // pair, leaving Tr[rho^2] = 1/2.
  {
    const GnsRep rep(4);
    auto f = std::make_shared<IrrepBasis>(f_basis(4));
    for (const auto& v : e_basis(4).vectors) {
      const auto restricted = restrict_vector(rep, v, f);
      CHECK_FALSE(purity(restricted));
      const auto& rho = restricted.blocks[0].rho;
      CHECK((rho * rho).real().trace() == doctest::Approx(0.5).epsilon(1e-10));
    }
  }
}
