#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "majent/clifford.hpp"
#include "majent/gns.hpp"

namespace majent {

enum class BasisFamily { Ebasis, Fbasis, Gbasis, Custom };

/// Orthonormal basis of the GNS space organized as (block r, inner i).
/// Multi-index block labels are flattened little-endian (r1 fastest).
/// F-family blocks are invariant under every generator action and all
/// carry identical matrices; the E-family blocks are the separable
/// product basis and are not block-adapted for N >= 4.
struct IrrepBasis {
  int modes = 0;
  BasisFamily family = BasisFamily::Custom;
  int block_count = 0;
  int block_dim = 0;
  std::vector<GnsVector> vectors;  // index = block * block_dim + inner

  const GnsVector& at(int block, int inner) const {
    return vectors[size_t(block) * block_dim + inner];
  }
  int total() const { return block_count * block_dim; }
};

/// Separable product basis built from (1 +/- c_a)(1 +/- c_b) pair
/// factors (plus a trailing (1 +/- c_N) for odd N). The sign of the
/// first factor in each pair varies with the inner index, the sign of
/// the second with the block index. N <= 12.
IrrepBasis e_basis(int n_modes);

/// The N = 2 e-basis with its second block sign-adjusted so that both
/// blocks carry identical generator matrices (c1 -> s3, c2 -> s1).
/// This is the form to which block-index recombinations apply.
IrrepBasis e_basis_block_aligned_2();

/// Block-adapted basis built from pair factors
/// { (c_a + i c_b), (1 + i c_a c_b) } (block 1) and
/// { (1 - i c_a c_b), (c_a - i c_b) } (block 2), with per-vector sign
/// corrections that make every block carry the same generator
/// matrices. N even, N <= 12.
IrrepBasis f_basis(int n_modes);

/// |out_i^(r)> = sum_{s,j} U_{rs} V_{ij} |in_j^(s)>. U mixes block
/// labels, V inner labels; both must be unitary to 1e-12.
IrrepBasis recombine(const IrrepBasis& basis, const Eigen::MatrixXcd& u,
                     const Eigen::MatrixXcd& v);

/// The N = 2 g-basis: recombine(e_basis_block_aligned_2, (s1+s3)/sqrt2, I).
IrrepBasis g_basis_2();

struct BlockDecomposition {
  const IrrepBasis* basis = nullptr;
  // generator_blocks[r][i-1] = matrix of c_i on block r
  std::vector<std::vector<Eigen::MatrixXcd>> generator_blocks;
  double cross_block_residual = 0.0;  // max |<b^(r)| pi(c_i) |b^(r')>|, r != r'
  double block_equality_residual = 0.0;
};

/// Per-block generator matrices [pi^(r)(c_i)]_{jk}; throws if any
/// cross-block matrix element exceeds 1e-10.
BlockDecomposition block_matrices(const GnsRep& rep, const IrrepBasis& basis);

/// Residual of block invariance: max over blocks and generators of the
/// component of pi(c_i)|b> outside the block span.
double block_invariance_residual(const GnsRep& rep, const IrrepBasis& basis);

/// Max |G - I| over the full basis Gram matrix.
double orthonormality_residual(const IrrepBasis& basis);

struct CommutantReport {
  int dimension = 0;
  double zero_gap = 0.0;  // smallest kept / largest dropped singular value
  double largest_singular = 0.0;
};

/// Dimension of {X : [X, pi(c_i)] = 0 for all i} via the nullity of the
/// stacked commutator operator; singular values below 1e-8 relative to
/// the largest count as zero. N <= 6.
CommutantReport commutant_dimension(const GnsRep& rep);

/// Block-wise density matrix of a GNS vector (or of a mixed state on
/// the GNS space) with the multiplicity index traced out, relative to a
/// block-adapted basis. Weights are the per-irrep-type totals; this
/// construction carries a single type.
struct RestrictedState {
  std::shared_ptr<const IrrepBasis> basis;
  struct Block {
    double weight = 0.0;
    Eigen::MatrixXcd rho;  // unit trace
  };
  std::vector<Block> blocks;
};

/// Requires a complete, orthonormal, block-adapted basis (invariance
/// residual <= 1e-10); throws otherwise.
RestrictedState restrict_vector(const GnsRep& rep, const GnsVector& psi,
                                std::shared_ptr<const IrrepBasis> basis);

/// True iff exactly one block has weight > 1e-10 and that block has
/// Tr[rho^2] >= 1 - 1e-10.
bool purity(const RestrictedState& s);

/// sum_mu weight_mu Tr[rho^(mu) pi^(mu)(a)], with pi^(mu)(a) the block
/// matrix of a in the first block of the basis.
Complex expectation(const GnsRep& rep, const RestrictedState& s,
                    const CliffordElement& a);

/// Matrix of an element on one block of a block-adapted basis.
Eigen::MatrixXcd block_matrix_of(const GnsRep& rep, const IrrepBasis& basis,
                                 const CliffordElement& a, int block = 0);

}  // namespace majent
