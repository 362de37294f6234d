#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "majent/basis.hpp"
#include "majent/kernels.hpp"
#include "test_util.hpp"

using namespace majent;
using majent::testing::random_element;
using majent::testing::random_state;

// The parallel kernels must agree with their serial reference
// implementations bit-for-bit wherever the reduction order is fixed,
// and to round-off otherwise.

TEST_CASE("dense_operator serial vs parallel") {
  std::mt19937 rng(71);
  for (int n : {3, 6, 8}) {
    const GnsRep rep(n);
    const auto a = random_element(rng, n, 8);
    const auto s = kernels::dense_operator_serial(rep, a);
    const auto p = kernels::dense_operator_parallel(rep, a);
    CHECK((s - p).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("gram serial vs parallel") {
  const auto f = f_basis(6);
  const auto s = kernels::gram_serial(f.vectors);
  const auto p = kernels::gram_parallel(f.vectors);
  CHECK((s - p).cwiseAbs().maxCoeff() == 0.0);

  const auto cs = kernels::cross_gram_serial(f.vectors, f.vectors);
  const auto cp = kernels::cross_gram_parallel(f.vectors, f.vectors);
  CHECK((cs - cp).cwiseAbs().maxCoeff() == 0.0);
  CHECK((cs - s).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("monomial expectations serial vs parallel") {
  std::mt19937 rng(73);
  for (int n : {4, 8}) {
    const GnsRep rep(n);
    const auto psi = random_state(rng, n, 6);
    const auto s = kernels::monomial_expectations_serial(rep, psi);
    const auto p = kernels::monomial_expectations_parallel(rep, psi);
    REQUIRE(s.size() == p.size());
    for (size_t k = 0; k < s.size(); ++k) CHECK(s[k] == p[k]);
  }
}

TEST_CASE("factorization scan serial vs parallel") {
  std::mt19937 rng(79);
  for (int n : {4, 6, 8}) {
    const GnsRep rep(n);
    const auto psi = random_state(rng, n, 8);
    const auto mono = kernels::monomial_expectations(rep, psi);
    const ModeMask first = (ModeMask(1) << (n / 2)) - 1;
    const ModeMask second = ((ModeMask(1) << n) - 1) & ~first;
    const auto s = kernels::factorization_scan_serial(mono, first, second);
    const auto p = kernels::factorization_scan_parallel(mono, first, second);
    CHECK(s.max_abs == p.max_abs);
    CHECK(s.arg_first == p.arg_first);
    CHECK(s.arg_second == p.arg_second);
  }
}

TEST_CASE("commutant gram serial vs parallel") {
  for (int n : {2, 3, 4}) {
    const GnsRep rep(n);
    const auto s = kernels::commutant_gram_serial(rep);
    const auto p = kernels::commutant_gram_parallel(rep);
    CHECK((s - p).cwiseAbs().maxCoeff() == 0.0);
    // integer entries, symmetric
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("dense operator matches the sparse action") {
  std::mt19937 rng(83);
  const int n = 5;
  const GnsRep rep(n);
  const auto a = random_element(rng, n, 6);
  const auto m = kernels::dense_operator(rep, a);
  for (int trial = 0; trial < 5; ++trial) {
    const auto psi = random_state(rng, n, 5);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(rep.dim());
    for (const auto& [mask, amp] : psi.amps) v(mask) = amp;
    const Eigen::VectorXcd via_matrix = m * v;
    const auto via_sparse = apply(rep, a, psi);
    for (std::uint32_t k = 0; k < rep.dim(); ++k) {
      const auto it = via_sparse.amps.find(k);
      const Complex sparse_val =
          it == via_sparse.amps.end() ? Complex(0, 0) : it->second;
      CHECK(std::abs(via_matrix(k) - sparse_val) < 1e-13);
    }
  }
}

TEST_CASE("thread cap is respected") {
  CHECK(kernels::max_threads() >= 1);
}
