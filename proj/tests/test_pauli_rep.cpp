#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "majent/pauli_rep.hpp"
#include "test_util.hpp"

using namespace majent;
using majent::testing::random_element;

TEST_CASE("pauli matrices") {
  CHECK(pauli(0).isApprox(DenseMatrix::Identity(2, 2)));
  DenseMatrix s3(2, 2);
  s3 << 1, 0, 0, -1;
  CHECK(pauli(3).isApprox(s3));
  DenseMatrix s2(2, 2);
  s2 << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  CHECK(pauli(2).isApprox(s2));
  CHECK_THROWS_AS(pauli(4), std::invalid_argument);
}

TEST_CASE("kron") {
  CHECK(kron(pauli(0), pauli(0)).isApprox(DenseMatrix::Identity(4, 4)));

  const DenseMatrix zz = kron(pauli(3), pauli(3));
  CHECK(zz(0, 0) == Complex(1, 0));
  CHECK(zz(3, 3) == Complex(1, 0));
  CHECK(zz(1, 1) == Complex(-1, 0));

  // sigma1 (x) sigma3 is block anti-diagonal with sigma3 blocks
  const DenseMatrix xz = kron(pauli(1), pauli(3));
  DenseMatrix expected = DenseMatrix::Zero(4, 4);
  expected.block(0, 2, 2, 2) = pauli(3);
  expected.block(2, 0, 2, 2) = pauli(3);
  CHECK(xz.isApprox(expected));

  CHECK_THROWS_AS(kron(DenseMatrix::Identity(1 << 10, 1 << 10),
                       DenseMatrix::Identity(8, 8)),
                  std::invalid_argument);
}

TEST_CASE("irrep anchors") {
  // N = 2: c1 -> s3, c2 -> s1, c1c2 -> i s2
  const auto rep2 = build_irrep(2);
  CHECK(rep2.dim == 2);
  CHECK(rep2.generators[0].isApprox(pauli(3)));
  CHECK(rep2.generators[1].isApprox(pauli(1)));
  const auto c1c2 = represent(CliffordElement::monomial(2, 0b11), rep2);
  CHECK(c1c2.isApprox(DenseMatrix(Complex(0, 1) * pauli(2))));

  // N = 3: dim 4, unitarily equivalent to c1 -> s0 (x) s3,
  // c2 -> s0 (x) s1, c3 -> s2 (x) s2; here c3 = s3 (x) s2 which the
  // first-qubit rotation (s2+s3)/sqrt2 carries onto s2 (x) s2.
  const auto rep3 = build_irrep(3);
  CHECK(rep3.dim == 4);
  CHECK(rep3.generators[0].isApprox(kron(pauli(0), pauli(3))));
  CHECK(rep3.generators[1].isApprox(kron(pauli(0), pauli(1))));
  CHECK(rep3.generators[2].isApprox(kron(pauli(3), pauli(2))));
  DenseMatrix u = (pauli(2) + pauli(3)) / std::sqrt(2.0);
  const DenseMatrix w = kron(u, pauli(0));
  CHECK((w * rep3.generators[2] * w.adjoint())
            .isApprox(kron(pauli(2), pauli(2)), 1e-12));
  CHECK((w * rep3.generators[0] * w.adjoint())
            .isApprox(kron(pauli(0), pauli(3)), 1e-12));

  // N = 4: all pairwise anticommutators vanish exactly
  const auto check4 = verify_clifford(build_irrep(4));
  CHECK(check4.ok);
  CHECK(check4.max_residual == 0.0);
}

TEST_CASE("verify_clifford") {
  for (int n = 1; n <= 8; ++n) {
    const auto check = verify_clifford(build_irrep(n));
    CHECK(check.ok);
    CHECK(check.max_residual <= 1e-12);
  }

  // a deliberately broken assignment: both generators s3
  MatrixRepresentation bad;
  bad.modes = 2;
  bad.dim = 2;
  bad.generators = {pauli(3), pauli(3)};
  CHECK_FALSE(verify_clifford(bad).ok);

  CHECK(verify_clifford(build_irrep(7)).ok);
}

TEST_CASE("generators are self-adjoint and unitary") {
  for (int n : {2, 3, 5, 6}) {
    const auto rep = build_irrep(n);
    for (const auto& m : rep.generators) {
      CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
      CHECK((m * m - DenseMatrix::Identity(rep.dim, rep.dim))
                .cwiseAbs()
                .maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("algebra dimension matches the matrix-algebra isomorphisms") {
  CHECK(algebra_dimension(build_irrep(2)) == 4);
  CHECK(algebra_dimension(build_irrep(3)) == 8);
  CHECK(algebra_dimension(build_irrep(4)) == 16);
  CHECK(algebra_dimension(build_irrep(5)) == 32);
}

TEST_CASE("represent is an algebra homomorphism") {
  CHECK(represent(CliffordElement::identity(3), build_irrep(3))
            .isApprox(DenseMatrix::Identity(4, 4)));

  std::mt19937 rng(23);
  for (int n : {2, 3, 4, 6}) {
    const auto rep = build_irrep(n);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_element(rng, n, 5);
      const auto b = random_element(rng, n, 5);
      const DenseMatrix lhs = represent(mul(a, b), rep);
      const DenseMatrix rhs = represent(a, rep) * represent(b, rep);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
      // star goes to the conjugate transpose
      CHECK((represent(star(a), rep) - represent(a, rep).adjoint())
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("faithfulness on the monomial basis") {
  for (int n : {2, 3, 4, 5, 6}) {
    const auto rep = build_irrep(n);
    const int count = 1 << n;
    DenseMatrix stack(count, rep.dim * rep.dim);
    for (int mask = 0; mask < count; ++mask) {
      DenseMatrix img = represent(
          CliffordElement::monomial(n, ModeMask(mask)), rep);
      stack.row(mask) =
          Eigen::Map<Eigen::VectorXcd>(img.data(), rep.dim * rep.dim)
              .transpose();
    }
    CHECK(row_reduction_rank(std::move(stack)) == count);
  }
}

TEST_CASE("normalized trace realizes the state on even irreps") {
  std::mt19937 rng(29);
  for (int n : {2, 4, 6}) {
    const auto rep = build_irrep(n);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_element(rng, n, 6);
      const Complex tr = represent(a, rep).trace() / double(rep.dim);
      CHECK(std::abs(tr - omega(a)) < 1e-12);
    }
  }
}

TEST_CASE("matrix text round trip") {
  const auto rep = build_irrep(3);
  std::stringstream ss;
  write_matrix(ss, rep.generators[2]);
  const DenseMatrix back = read_matrix(ss);
  CHECK(back.isApprox(rep.generators[2]));
}
