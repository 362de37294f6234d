#pragma once

#include <Eigen/Dense>
#include <vector>

#include "majent/clifford.hpp"
#include "majent/gns.hpp"

namespace majent::kernels {

/// Worker count used by the parallel variants. Respects the
/// MAJORANA_ENT_THREADS environment variable; 1 disables parallelism.
int max_threads();

/// Dense 2^N x 2^N matrix of pi(a) in the monomial basis. The parallel
/// variant splits over columns (each column touched by one thread).
Eigen::MatrixXcd dense_operator_serial(const GnsRep& rep,
                                       const CliffordElement& a);
Eigen::MatrixXcd dense_operator_parallel(const GnsRep& rep,
                                         const CliffordElement& a);
Eigen::MatrixXcd dense_operator(const GnsRep& rep, const CliffordElement& a);

/// Gram matrix <v_i|v_j> of a family of sparse vectors.
Eigen::MatrixXcd gram_serial(const std::vector<GnsVector>& vs);
Eigen::MatrixXcd gram_parallel(const std::vector<GnsVector>& vs);
Eigen::MatrixXcd gram(const std::vector<GnsVector>& vs);

/// Rectangular overlap matrix <v_i|w_j>.
Eigen::MatrixXcd cross_gram_serial(const std::vector<GnsVector>& vs,
                                   const std::vector<GnsVector>& ws);
Eigen::MatrixXcd cross_gram_parallel(const std::vector<GnsVector>& vs,
                                     const std::vector<GnsVector>& ws);
Eigen::MatrixXcd cross_gram(const std::vector<GnsVector>& vs,
                            const std::vector<GnsVector>& ws);

/// <psi| pi(c_S) |psi> for every mask S < 2^N. psi must be normalized.
std::vector<Complex> monomial_expectations_serial(const GnsRep& rep,
                                                  const GnsVector& psi);
std::vector<Complex> monomial_expectations_parallel(const GnsRep& rep,
                                                    const GnsVector& psi);
std::vector<Complex> monomial_expectations(const GnsRep& rep,
                                           const GnsVector& psi);

struct FactorizationScan {
  double max_abs = 0.0;   // max |Delta(S1,S2)|
  ModeMask arg_first = 0;
  ModeMask arg_second = 0;
  Complex delta{0, 0};    // Delta at the maximizer
};

/// Scans Delta(S1,S2) = <c_S1 c_S2> - <c_S1><c_S2> over all nonempty
/// S1 in `first`, S2 in `second`, given precomputed monomial
/// expectations. Deterministic maximizer: smallest (S1,S2) among ties.
FactorizationScan factorization_scan_serial(const std::vector<Complex>& mono,
                                            ModeMask first, ModeMask second);
FactorizationScan factorization_scan_parallel(const std::vector<Complex>& mono,
                                              ModeMask first, ModeMask second);
FactorizationScan factorization_scan(const std::vector<Complex>& mono,
                                     ModeMask first, ModeMask second);

/// Gram operator A = sum_i K_i^2 of the stacked commutator maps
/// K_i = M_i (x) I - I (x) M_i (real symmetric; the GNS generator
/// matrices are real signed permutations). Nullity of A equals the
/// commutant dimension.
Eigen::MatrixXd commutant_gram_serial(const GnsRep& rep);
Eigen::MatrixXd commutant_gram_parallel(const GnsRep& rep);
Eigen::MatrixXd commutant_gram(const GnsRep& rep);

}  // namespace majent::kernels
