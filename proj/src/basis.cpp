#include "majent/basis.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "majent/kernels.hpp"

namespace majent {

namespace {

constexpr int kBasisMaxModes = 12;
constexpr int kCommutantMaxModes = 6;

void check_basis_modes(int n_modes) {
  if (n_modes < 1 || n_modes > kBasisMaxModes) {
    throw std::invalid_argument("basis construction capped at N = 12");
  }
}

// (1 + sign c_mode), mode 1-based.
CliffordElement projector_factor(int n_modes, int mode, int sign) {
  CliffordElement e = CliffordElement::identity(n_modes);
  e.add_term(ModeMask(1) << (mode - 1), Complex(double(sign), 0));
  return e;
}

GnsVector vector_of_element(const CliffordElement& e, double scale) {
  GnsVector v(e.modes());
  for (const auto& [mask, coeff] : e.terms()) v.add(mask, scale * coeff);
  return v;
}

// Pair factor of the block-adapted family. Inner and block labels are
// 1-based; the two modes are c_a = c_{2k-1}, c_b = c_{2k}.
//   block 1: (c_a + i c_b), (1 + i c_a c_b)
//   block 2: (1 - i c_a c_b), (c_a - i c_b)
CliffordElement f_factor(int n_modes, int mode_a, int block, int inner) {
  const ModeMask ma = ModeMask(1) << (mode_a - 1);
  const ModeMask mb = ModeMask(1) << mode_a;  // c_{a+1}
  CliffordElement e(n_modes);
  const bool odd_type = (block == 1) ? (inner == 1) : (inner == 2);
  const double s = (block == 1) ? 1.0 : -1.0;
  if (odd_type) {
    e.add_term(ma, Complex(1, 0));
    e.add_term(mb, Complex(0, s));
  } else {
    e.add_term(0, Complex(1, 0));
    e.add_term(ma | mb, Complex(0, s));
  }
  return e;
}

}  // namespace

IrrepBasis e_basis(int n_modes) {
  check_basis_modes(n_modes);
  const int n_pairs = n_modes / 2;
  const bool odd = (n_modes % 2) != 0;
  IrrepBasis basis;
  basis.modes = n_modes;
  basis.family = BasisFamily::Ebasis;
  basis.block_count = 1 << (n_pairs + (odd ? 1 : 0));
  basis.block_dim = 1 << n_pairs;
  basis.vectors.reserve(size_t(basis.block_count) * basis.block_dim);

  const double scale = std::pow(2.0, -0.5 * n_modes);
  for (int r = 0; r < basis.block_count; ++r) {
    for (int i = 0; i < basis.block_dim; ++i) {
      CliffordElement prod = CliffordElement::identity(n_modes);
      for (int k = 0; k < n_pairs; ++k) {
        // sign of the first factor follows the inner index, the second
        // the block index
        const int si = ((i >> k) & 1) ? -1 : 1;
        const int sr = ((r >> k) & 1) ? -1 : 1;
        prod = mul(prod, projector_factor(n_modes, 2 * k + 1, si));
        prod = mul(prod, projector_factor(n_modes, 2 * k + 2, sr));
      }
      if (odd) {
        const int sl = ((r >> n_pairs) & 1) ? -1 : 1;
        prod = mul(prod, projector_factor(n_modes, n_modes, sl));
      }
      basis.vectors.push_back(vector_of_element(prod, scale));
    }
  }
  return basis;
}

IrrepBasis e_basis_block_aligned_2() {
  IrrepBasis basis = e_basis(2);
  // Flip |e_2^(2)> so both blocks carry c1 -> s3, c2 -> s1.
  basis.vectors[size_t(1) * basis.block_dim + 1] *= Complex(-1, 0);
  basis.family = BasisFamily::Ebasis;
  return basis;
}

IrrepBasis f_basis(int n_modes) {
  check_basis_modes(n_modes);
  if (n_modes % 2 != 0) {
    throw std::invalid_argument("the block-adapted pair basis requires even N");
  }
  const int n_pairs = n_modes / 2;
  IrrepBasis basis;
  basis.modes = n_modes;
  basis.family = BasisFamily::Fbasis;
  basis.block_count = 1 << n_pairs;
  basis.block_dim = 1 << n_pairs;
  basis.vectors.reserve(size_t(basis.block_count) * basis.block_dim);

  const double scale = std::pow(2.0, -0.5 * n_pairs);
  for (int r = 0; r < basis.block_count; ++r) {
    // s_k = parity of the number of earlier pairs sitting in block 2;
    // flipping the corresponding inner signs makes the generator
    // matrices identical on every block.
    std::vector<int> flip(n_pairs, 0);
    int acc = 0;
    for (int k = 0; k < n_pairs; ++k) {
      flip[k] = acc & 1;
      acc += (r >> k) & 1;
    }
    for (int i = 0; i < basis.block_dim; ++i) {
      CliffordElement prod = CliffordElement::identity(n_modes);
      int sign = 0;
      for (int k = 0; k < n_pairs; ++k) {
        const int block_k = ((r >> k) & 1) + 1;
        const int inner_k = ((i >> k) & 1) + 1;
        if (flip[k] && inner_k == 2) sign ^= 1;
        prod = mul(prod, f_factor(n_modes, 2 * k + 1, block_k, inner_k));
      }
      basis.vectors.push_back(
          vector_of_element(prod, sign ? -scale : scale));
    }
  }
  return basis;
}

IrrepBasis recombine(const IrrepBasis& basis, const Eigen::MatrixXcd& u,
                     const Eigen::MatrixXcd& v) {
  const auto unitary_residual = [](const Eigen::MatrixXcd& m) {
    return (m * m.adjoint() -
            Eigen::MatrixXcd::Identity(m.rows(), m.cols()))
        .cwiseAbs()
        .maxCoeff();
  };
  if (u.rows() != basis.block_count || u.cols() != basis.block_count ||
      v.rows() != basis.block_dim || v.cols() != basis.block_dim) {
    throw std::invalid_argument("recombine: matrix dimensions do not match");
  }
  if (unitary_residual(u) > 1e-12 || unitary_residual(v) > 1e-12) {
    throw std::invalid_argument("recombine: U and V must be unitary");
  }
  IrrepBasis out;
  out.modes = basis.modes;
  out.family = BasisFamily::Custom;
  out.block_count = basis.block_count;
  out.block_dim = basis.block_dim;
  out.vectors.assign(basis.vectors.size(), GnsVector(basis.modes));
  for (int r = 0; r < out.block_count; ++r) {
    for (int i = 0; i < out.block_dim; ++i) {
      GnsVector acc(basis.modes);
      for (int s = 0; s < basis.block_count; ++s) {
        const Complex us = u(r, s);
        if (us == Complex(0, 0)) continue;
        for (int j = 0; j < basis.block_dim; ++j) {
          const Complex c = us * v(i, j);
          if (c == Complex(0, 0)) continue;
          GnsVector term = basis.at(s, j);
          term *= c;
          acc += term;
        }
      }
      out.vectors[size_t(r) * out.block_dim + i] = std::move(acc);
    }
  }
  return out;
}

IrrepBasis g_basis_2() {
  Eigen::MatrixXcd u(2, 2);
  u << 1, 1, 1, -1;
  u /= std::sqrt(2.0);
  IrrepBasis g = recombine(e_basis_block_aligned_2(), u,
                           Eigen::MatrixXcd::Identity(2, 2));
  g.family = BasisFamily::Gbasis;
  return g;
}

double orthonormality_residual(const IrrepBasis& basis) {
  const Eigen::MatrixXcd g = kernels::gram(basis.vectors);
  return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols()))
      .cwiseAbs()
      .maxCoeff();
}

double block_invariance_residual(const GnsRep& rep, const IrrepBasis& basis) {
  // The residual vector is formed explicitly; the norm-squared
  // difference would lose half the digits to cancellation.
  double worst = 0.0;
  for (int r = 0; r < basis.block_count; ++r) {
    for (int i = 1; i <= rep.modes(); ++i) {
      const CliffordElement ci = CliffordElement::generator(rep.modes(), i);
      for (int k = 0; k < basis.block_dim; ++k) {
        GnsVector residual = apply(rep, ci, basis.at(r, k));
        for (int j = 0; j < basis.block_dim; ++j) {
          const Complex proj = inner(basis.at(r, j), residual);
          if (proj == Complex(0, 0)) continue;
          GnsVector sub = basis.at(r, j);
          sub *= -proj;
          residual += sub;
        }
        worst = std::max(worst, residual.norm());
      }
    }
  }
  return worst;
}

BlockDecomposition block_matrices(const GnsRep& rep, const IrrepBasis& basis) {
  if (basis.modes != rep.modes()) {
    throw std::invalid_argument("mode-count mismatch in block_matrices");
  }
  BlockDecomposition out;
  out.basis = &basis;

  // The norm of the off-block component of pi(c_i)|b> bounds every
  // cross-block matrix element against that column.
  out.cross_block_residual = block_invariance_residual(rep, basis);
  if (out.cross_block_residual > 1e-10) {
    throw std::invalid_argument(
        "block_matrices: basis blocks are not invariant (cross residual " +
        std::to_string(out.cross_block_residual) + ")");
  }

  out.generator_blocks.assign(
      basis.block_count,
      std::vector<Eigen::MatrixXcd>(
          rep.modes(),
          Eigen::MatrixXcd::Zero(basis.block_dim, basis.block_dim)));
  for (int gen = 1; gen <= rep.modes(); ++gen) {
    const CliffordElement ci = CliffordElement::generator(rep.modes(), gen);
    for (int r = 0; r < basis.block_count; ++r) {
      out.generator_blocks[r][gen - 1] = block_matrix_of(rep, basis, ci, r);
    }
  }
  for (int r = 1; r < basis.block_count; ++r) {
    for (int gen = 0; gen < rep.modes(); ++gen) {
      out.block_equality_residual = std::max(
          out.block_equality_residual,
          (out.generator_blocks[r][gen] - out.generator_blocks[0][gen])
              .cwiseAbs()
              .maxCoeff());
    }
  }
  return out;
}

CommutantReport commutant_dimension(const GnsRep& rep) {
  if (rep.modes() > kCommutantMaxModes) {
    throw std::invalid_argument("commutant computation capped at N = 6");
  }
  const Eigen::MatrixXd a = kernels::commutant_gram(rep);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a,
                                                    Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();  // ascending
  CommutantReport report;
  Eigen::VectorXd s = ev.cwiseMax(0.0).cwiseSqrt();
  report.largest_singular = s(s.size() - 1);
  // Squared singular values come out of the eigensolver with absolute
  // noise ~ dim * eps * lambda_max; anything below its square root is
  // numerically zero regardless of the relative rule.
  const double noise_floor =
      std::sqrt(double(a.rows()) * 2.22e-16 * std::max(ev(ev.size() - 1), 0.0));
  const double threshold =
      std::max(1e-8 * report.largest_singular, noise_floor);
  double largest_zero = 0.0;
  double smallest_kept = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) < threshold) {
      report.dimension += 1;
      largest_zero = std::max(largest_zero, s(k));
    } else {
      smallest_kept = std::min(smallest_kept, s(k));
    }
  }
  report.zero_gap = largest_zero == 0.0
                        ? std::numeric_limits<double>::infinity()
                        : smallest_kept / largest_zero;
  return report;
}

Eigen::MatrixXcd block_matrix_of(const GnsRep& rep, const IrrepBasis& basis,
                                 const CliffordElement& a, int block) {
  const int d = basis.block_dim;
  Eigen::MatrixXcd m(d, d);
  for (int k = 0; k < d; ++k) {
    const GnsVector img = apply(rep, a, basis.at(block, k));
    for (int j = 0; j < d; ++j) m(j, k) = inner(basis.at(block, j), img);
  }
  return m;
}

RestrictedState restrict_vector(const GnsRep& rep, const GnsVector& psi,
                                std::shared_ptr<const IrrepBasis> basis) {
  if (!basis || basis->modes != rep.modes() || psi.modes != rep.modes()) {
    throw std::invalid_argument("restrict: mode-count mismatch");
  }
  if (std::uint32_t(basis->total()) != rep.dim()) {
    throw std::invalid_argument("restrict: basis does not span the GNS space");
  }
  if (orthonormality_residual(*basis) > 1e-10) {
    throw std::invalid_argument("restrict: basis is not orthonormal");
  }
  if (block_invariance_residual(rep, *basis) > 1e-10) {
    throw std::invalid_argument("restrict: basis blocks are not invariant");
  }

  const int d = basis->block_dim;
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(d, d);
  for (int r = 0; r < basis->block_count; ++r) {
    Eigen::VectorXcd a(d);
    for (int j = 0; j < d; ++j) a(j) = inner(basis->at(r, j), psi);
    q += a * a.adjoint();
  }
  RestrictedState out;
  out.basis = std::move(basis);
  RestrictedState::Block block;
  block.weight = q.real().trace();
  if (block.weight <= 0.0) {
    throw std::invalid_argument("restrict: state has no weight on the basis");
  }
  block.rho = q / block.weight;
  out.blocks.push_back(std::move(block));
  return out;
}

bool purity(const RestrictedState& s) {
  int heavy = 0;
  double purity_of_heavy = 0.0;
  for (const auto& block : s.blocks) {
    if (block.weight > 1e-10) {
      heavy += 1;
      purity_of_heavy = (block.rho * block.rho).real().trace();
    }
  }
  return heavy == 1 && purity_of_heavy >= 1.0 - 1e-10;
}

Complex expectation(const GnsRep& rep, const RestrictedState& s,
                    const CliffordElement& a) {
  Complex out(0, 0);
  for (const auto& block : s.blocks) {
    const Eigen::MatrixXcd m = block_matrix_of(rep, *s.basis, a, 0);
    out += block.weight * (block.rho * m).trace();
  }
  return out;
}

}  // namespace majent
