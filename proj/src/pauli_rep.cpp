#include "majent/pauli_rep.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace majent {

DenseMatrix pauli(int index) {
  DenseMatrix m(2, 2);
  const Complex i(0, 1);
  switch (index) {
    case 0:
      m << 1, 0, 0, 1;
      break;
    case 1:
      m << 0, 1, 1, 0;
      break;
    case 2:
      m << 0, -i, i, 0;
      break;
    case 3:
      m << 1, 0, 0, -1;
      break;
    default:
      throw std::invalid_argument("pauli index must be 0..3");
  }
  return m;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b,
                 Eigen::Index dim_cap) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  if (ra * rb > dim_cap || ca * cb > dim_cap) {
    throw std::invalid_argument("kron result exceeds dimension cap");
  }
  DenseMatrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

// Pauli string I^(n-k-1) (x) head (x) s2^k on n slots.
DenseMatrix pair_string(int n_slots, int slot_k, const DenseMatrix& head) {
  DenseMatrix m = head;
  for (int t = 0; t < slot_k; ++t) m = kron(m, pauli(2));
  for (int t = slot_k + 1; t < n_slots; ++t) m = kron(pauli(0), m);
  return m;
}

DenseMatrix direct_sum(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out = DenseMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace

MatrixRepresentation build_irrep(int n_modes) {
  if (n_modes < 1 || n_modes > kMaxModes) {
    throw std::invalid_argument("mode count out of range");
  }
  const int n = n_modes / 2;
  if ((Eigen::Index(1) << (n + 1)) > (Eigen::Index(1) << 12)) {
    throw std::invalid_argument("representation dimension exceeds 2^12 cap");
  }

  MatrixRepresentation rep;
  rep.modes = n_modes;

  std::vector<DenseMatrix> even_gens(2 * n);
  for (int k = 0; k < n; ++k) {
    even_gens[2 * k] = pair_string(n, k, pauli(3));
    even_gens[2 * k + 1] = pair_string(n, k, pauli(1));
  }

  if (n_modes % 2 == 0) {
    rep.dim = Eigen::Index(1) << n;
    rep.generators = std::move(even_gens);
    return rep;
  }

  // Odd N = 2n+1: m (+) m for c_1..c_2n, V (+) -V for c_N with V = s2^n.
  rep.dim = Eigen::Index(1) << (n + 1);
  DenseMatrix volume = DenseMatrix::Identity(1, 1);
  for (int t = 0; t < n; ++t) volume = kron(volume, pauli(2));
  rep.generators.reserve(n_modes);
  for (int a = 0; a < 2 * n; ++a) {
    rep.generators.push_back(direct_sum(even_gens[a], even_gens[a]));
  }
  rep.generators.push_back(direct_sum(volume, DenseMatrix(-volume)));
  return rep;
}

DenseMatrix represent(const CliffordElement& a,
                      const MatrixRepresentation& rep) {
  if (a.modes() != rep.modes) {
    throw std::invalid_argument("mode-count mismatch in represent");
  }
  DenseMatrix out = DenseMatrix::Zero(rep.dim, rep.dim);
  for (const auto& [mask, coeff] : a.terms()) {
    DenseMatrix term = DenseMatrix::Identity(rep.dim, rep.dim);
    ModeMask rest = mask;
    while (rest != 0) {
      const int bit = __builtin_ctz(rest);
      rest &= rest - 1;
      term = term * rep.generators[bit];
    }
    out += coeff * term;
  }
  return out;
}

CliffordCheck verify_clifford(const MatrixRepresentation& rep, double tol) {
  const Eigen::Index d = rep.dim;
  const DenseMatrix id2 = 2.0 * DenseMatrix::Identity(d, d);
  double worst = 0.0;
  for (size_t i = 0; i < rep.generators.size(); ++i) {
    for (size_t j = i; j < rep.generators.size(); ++j) {
      DenseMatrix anti =
          rep.generators[i] * rep.generators[j] + rep.generators[j] * rep.generators[i];
      if (i == j) anti -= id2;
      worst = std::max(worst, anti.cwiseAbs().maxCoeff());
    }
  }
  return {worst <= tol, worst};
}

int row_reduction_rank(DenseMatrix m, double tol) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  int rank = 0;
  Eigen::Index col = 0;
  for (Eigen::Index r = 0; r < rows && col < cols; ++col) {
    Eigen::Index pivot = r;
    double best = 0.0;
    for (Eigen::Index k = r; k < rows; ++k) {
      const double v = std::abs(m(k, col));
      if (v > best) {
        best = v;
        pivot = k;
      }
    }
    if (best <= tol) continue;
    m.row(r).swap(m.row(pivot));
    for (Eigen::Index k = r + 1; k < rows; ++k) {
      m.row(k) -= (m(k, col) / m(r, col)) * m.row(r);
    }
    ++rank;
    ++r;
  }
  return rank;
}

int algebra_dimension(const MatrixRepresentation& rep) {
  const Eigen::Index d = rep.dim;
  const ModeMask count = ModeMask(1) << rep.modes;
  DenseMatrix stack(Eigen::Index(count), d * d);
  for (ModeMask mask = 0; mask < count; ++mask) {
    DenseMatrix img =
        represent(CliffordElement::monomial(rep.modes, mask), rep);
    stack.row(Eigen::Index(mask)) =
        Eigen::Map<Eigen::VectorXcd>(img.data(), d * d).transpose();
  }
  return row_reduction_rank(std::move(stack));
}

void write_matrix(std::ostream& os, const DenseMatrix& m) {
  os << m.rows() << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      os << m(r, c).real() << " " << m(r, c).imag() << "\n";
    }
  }
}

DenseMatrix read_matrix(std::istream& is) {
  Eigen::Index dim = 0;
  if (!(is >> dim) || dim <= 0) {
    throw std::invalid_argument("bad matrix header");
  }
  DenseMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      double re = 0, im = 0;
      if (!(is >> re >> im)) throw std::invalid_argument("truncated matrix");
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace majent
