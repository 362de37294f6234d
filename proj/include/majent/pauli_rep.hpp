#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "majent/clifford.hpp"

namespace majent {

using DenseMatrix = Eigen::MatrixXcd;

/// Standard 2x2 Pauli matrix; index 0 is the identity.
DenseMatrix pauli(int index);

/// Kronecker product, dim(a)*dim(b). Throws if the result dimension
/// would exceed `dim_cap`.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b,
                 Eigen::Index dim_cap = Eigen::Index(1) << 12);

/// Concrete matrix images of the N generators of C_N.
///
/// For N = 2n the generators are Pauli strings on n tensor slots
/// (slot k = 0..n-1 hosts the pair c_{2k+1}, c_{2k+2}):
///   c_{2k+1} -> I^(n-k-1) (x) s3 (x) s2^k
///   c_{2k+2} -> I^(n-k-1) (x) s1 (x) s2^k
/// which for N = 2 gives c1 -> s3, c2 -> s1. For N = 2n+1 the
/// representation is the direct sum m (+) m for the first 2n
/// generators and V (+) -V for the last, with V = s2^n.
struct MatrixRepresentation {
  int modes = 0;
  Eigen::Index dim = 0;
  std::vector<DenseMatrix> generators;  // image of c_1..c_N
};

MatrixRepresentation build_irrep(int n_modes);

/// Linear extension: sum over terms of coeff times the ordered product
/// of generator images.
DenseMatrix represent(const CliffordElement& a, const MatrixRepresentation& rep);

struct CliffordCheck {
  bool ok = false;
  double max_residual = 0.0;
};

/// Max-norm residual of {m_i, m_j} - 2 delta_ij I over all i <= j.
CliffordCheck verify_clifford(const MatrixRepresentation& rep,
                              double tol = 1e-12);

/// Rank of the set {represent(c_S)} viewed as vectors of length dim^2,
/// by row reduction with pivot tolerance 1e-10.
int algebra_dimension(const MatrixRepresentation& rep);

/// Rank of a stack of complex row vectors (Gaussian elimination with
/// partial pivoting; pivots below `tol` count as zero).
int row_reduction_rank(DenseMatrix m, double tol = 1e-10);

/// Text format: first line `dim`, then dim^2 lines `re im`, row-major.
void write_matrix(std::ostream& os, const DenseMatrix& m);
DenseMatrix read_matrix(std::istream& is);

}  // namespace majent
