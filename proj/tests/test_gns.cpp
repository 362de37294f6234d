#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "majent/basis.hpp"
#include "majent/gns.hpp"
#include "majent/kernels.hpp"
#include "test_util.hpp"

using namespace majent;
using majent::testing::random_element;
using majent::testing::random_state;

TEST_CASE("generator action on the cyclic vector") {
  const GnsRep rep(2);
  const auto omega_vec = rep.cyclic_vector();

  // pi(c1)|Omega> = |c1>
  auto v = apply(rep, CliffordElement::generator(2, 1), omega_vec);
  CHECK(v.amps.size() == 1);
  CHECK(v.amps.at(0b01) == Complex(1, 0));

  // pi(c2)|c1> = -|c1c2>
  v = apply(rep, CliffordElement::generator(2, 2), basis_vector(2, 0b01));
  CHECK(v.amps.at(0b11) == Complex(-1, 0));

  // <Omega| pi(c1c2) |Omega> = 0
  CHECK(expectation(rep, omega_vec, CliffordElement::monomial(2, 0b11)) ==
        Complex(0, 0));
}

TEST_CASE("apply matches the algebra product") {
  const GnsRep rep(2);
  // c1c2 applied to |c1>: c1c2 c1 = -c2
  const auto v = apply(rep, CliffordElement::monomial(2, 0b11),
                       basis_vector(2, 0b01));
  CHECK(v.amps.size() == 1);
  CHECK(v.amps.at(0b10) == Complex(-1, 0));

  std::mt19937 rng(31);
  for (int n : {2, 4, 6}) {
    const GnsRep r(n);
    for (int trial = 0; trial < 15; ++trial) {
      const auto a = random_element(rng, n, 5);
      const auto b = random_element(rng, n, 5);
      const auto psi = random_state(rng, n, 4);
      auto lhs = apply(r, a, apply(r, b, psi));
      const auto rhs = apply(r, mul(a, b), psi);
      lhs *= Complex(-1, 0);
      lhs += rhs;
      CHECK(lhs.norm() < 1e-12);
    }
  }
}

TEST_CASE("identity and cyclicity") {
  const GnsRep rep(3);
  const auto psi = basis_vector(3, 0b101);
  const auto same = apply(rep, CliffordElement::identity(3), psi);
  CHECK(inner(psi, same) == Complex(1, 0));

  // {pi(c_S)|Omega>} recovers every basis vector exactly
  for (ModeMask mask = 0; mask < 8; ++mask) {
    const auto v = apply(rep, CliffordElement::monomial(3, mask),
                         rep.cyclic_vector());
    CHECK(v.amps.size() == 1);
    CHECK(v.amps.at(mask) == Complex(1, 0));
  }
}

TEST_CASE("monomial basis is orthonormal") {
  // Gram of <c_S|c_T> = Omega(c_S* c_T) is the identity, exactly
  for (int n : {2, 3, 4}) {
    std::vector<GnsVector> basis;
    for (ModeMask mask = 0; mask < (ModeMask(1) << n); ++mask) {
      basis.push_back(basis_vector(n, mask));
    }
    const Eigen::MatrixXcd g = kernels::gram(basis);
    CHECK((g - Eigen::MatrixXcd::Identity(g.rows(), g.cols()))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    // same statement through the algebra route
    for (ModeMask s = 0; s < (ModeMask(1) << n); ++s) {
      for (ModeMask t = 0; t < (ModeMask(1) << n); ++t) {
        const Complex val =
            omega(mul(star(CliffordElement::monomial(n, s)),
                      CliffordElement::monomial(n, t)));
        CHECK(val == (s == t ? Complex(1, 0) : Complex(0, 0)));
      }
    }
  }
}

TEST_CASE("GNS identity: expectation on the cyclic vector is the state") {
  std::mt19937 rng(37);
  for (int n : {2, 3, 5}) {
    const GnsRep rep(n);
    const auto cyc = rep.cyclic_vector();
    for (ModeMask mask = 0; mask < (ModeMask(1) << n); ++mask) {
      const auto m = CliffordElement::monomial(n, mask);
      CHECK(expectation(rep, cyc, m) == omega(m));
    }
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_element(rng, n, 6);
      CHECK(std::abs(expectation(rep, cyc, a) - omega(a)) < 1e-12);
    }
  }
}

TEST_CASE("expectation requires a normalized state") {
  const GnsRep rep(2);
  GnsVector bad(2);
  bad.add(0, Complex(2, 0));
  CHECK_THROWS_AS(expectation(rep, bad, CliffordElement::identity(2)),
                  std::invalid_argument);
}

TEST_CASE("expectation of the entangled pair state") {
  // |phi> = (1 + i c1c3)|Omega>/sqrt2 on N = 4 has <gamma> = -i
  const GnsRep rep(4);
  GnsVector phi(4);
  phi.add(0, Complex(1, 0));
  phi.add(0b0101, Complex(0, 1));
  phi = phi.normalized();
  const Complex got =
      expectation(rep, phi, CliffordElement::monomial(4, 0b0101));
  CHECK(std::abs(got - Complex(0, -1)) < 1e-12);

  // dense-matrix oracle for the same number
  const auto m = kernels::dense_operator_serial(
      rep, CliffordElement::monomial(4, 0b0101));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
  v(0) = 1.0 / std::sqrt(2.0);
  v(0b0101) = Complex(0, 1) / std::sqrt(2.0);
  CHECK(std::abs(Complex(v.adjoint() * (m * v)) - Complex(0, -1)) < 1e-12);
}

TEST_CASE("restriction of basis vectors") {
  const GnsRep rep(2);
  auto f = std::make_shared<IrrepBasis>(f_basis(2));

  // block-basis vectors restrict to pure states
  const auto restricted = restrict_vector(rep, f->at(0, 0), f);
  REQUIRE(restricted.blocks.size() == 1);
  CHECK(restricted.blocks[0].weight == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(purity(restricted));

  // the cyclic vector restricts to the half/half mixture
  const auto mixed = restrict_vector(rep, rep.cyclic_vector(), f);
  CHECK_FALSE(purity(mixed));
  CHECK(mixed.blocks[0].weight == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((mixed.blocks[0].rho * mixed.blocks[0].rho).real().trace() ==
        doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("restriction consistency with vector expectations") {
  for (int n : {2, 4, 6}) {
    const GnsRep rep(n);
    auto f = std::make_shared<IrrepBasis>(f_basis(n));
    std::mt19937 rng(41 + n);
    const auto psi = random_state(rng, n, 5);
    const auto restricted = restrict_vector(rep, psi, f);
    for (int trial = 0; trial < 10; ++trial) {
      std::uniform_int_distribution<ModeMask> mask_dist(
          0, (ModeMask(1) << n) - 1);
      const auto m = CliffordElement::monomial(n, mask_dist(rng));
      const Complex via_vector = expectation(rep, psi, m);
      const Complex via_restriction = expectation(rep, restricted, m);
      CHECK(std::abs(via_vector - via_restriction) < 1e-10);
    }
  }
}

TEST_CASE("restriction rejects a non-adapted basis") {
  const GnsRep rep(4);
  auto e = std::make_shared<IrrepBasis>(e_basis(4));
  CHECK_THROWS_AS(restrict_vector(rep, rep.cyclic_vector(), e),
                  std::invalid_argument);
}

TEST_CASE("vector text round trip") {
  GnsVector v(3);
  v.add(0b101, Complex(0.25, -0.5));
  v.add(0, Complex(1, 0));
  std::stringstream ss;
  write_vector(ss, v);
  const auto back = read_vector(ss, 3);
  CHECK(back.amps.size() == 2);
  CHECK(std::abs(back.amps.at(0b101) - Complex(0.25, -0.5)) < 1e-15);
}
