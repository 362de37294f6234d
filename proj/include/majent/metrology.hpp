#pragma once

#include <optional>
#include <string>
#include <vector>

#include "majent/basis.hpp"
#include "majent/clifford.hpp"
#include "majent/gns.hpp"

namespace majent {

/// Spectral weights of an interferometer generator: either w_k = k^p or
/// an explicit list, k 1-based over the generator's mode pairs.
class SpectralFunction {
 public:
  static SpectralFunction power_law(int exponent);
  static SpectralFunction explicit_list(std::vector<double> values);

  double omega(int k_1based) const;
  /// Throws unless an explicit list has exactly n_pairs entries.
  void check_pair_count(int n_pairs) const;
  std::string id() const;

 private:
  SpectralFunction() = default;
  bool power_law_ = true;
  int exponent_ = 0;
  std::vector<double> values_;
};

/// J = i sum_k w_k c_k c_{n+k}, k = 1..n, N = 2n. Self-adjoint;
/// nonlocal for the balanced prefix bipartition.
CliffordElement generator_balanced(int n_modes, const SpectralFunction& w);

/// J~ = i sum_k w_k c_{2k-1} c_{2k}, k = 1..n. Self-adjoint; local for
/// the balanced prefix bipartition when n is even.
CliffordElement generator_local(int n_modes, const SpectralFunction& w);

/// (1+ic_1c_2)...(1+ic_{n-1}c_n)(1-ic_{n+1}c_{n+2})...(1-ic_{2n-1}c_{2n})|Omega>,
/// normalized. Requires N = 2n with n even.
GnsVector probe_psi(int n_modes);

/// (1 + i g)|Omega>/sqrt2 with g = c_{gamma_first} c_{gamma_second},
/// both masks of equal odd size, the first inside the first half of the
/// modes and the second inside the second half. Verifies g^2 = -1.
GnsVector probe_phi(int n_modes, ModeMask gamma_first, ModeMask gamma_second);

/// exp(i theta pi(J)) psi via dense eigendecomposition of pi(J).
/// Requires star(J) = J and dim <= 2^10.
GnsVector evolve(const GnsRep& rep, const GnsVector& psi,
                 const CliffordElement& j, double theta);

struct QfiReport {
  int modes = 0;
  std::string generator_id;
  std::string state_id;
  double mean = 0.0;
  double variance = 0.0;
  double qfi_4var = 0.0;
  std::optional<double> closed_form;
  double shot_noise_ref = 0.0;   // N
  double heisenberg_ref = 0.0;   // N^2
};

/// Mean and variance of pi(J) on a normalized vector; J^2 is evaluated
/// exactly in the algebra, no dense matrices involved.
QfiReport qfi_pure(const GnsRep& rep, const GnsVector& psi,
                   const CliffordElement& j, const std::string& generator_id,
                   const std::string& state_id,
                   std::optional<double> closed_form = std::nullopt);

/// Mixed-state quantum Fisher information
///   F = 2 sum_{jk: p_j+p_k > eps} (p_j - p_k)^2 / (p_j + p_k) |<j|J|k>|^2
/// over the eigendecomposition of each block, summed with the block
/// weights. eps = 1e-12. Reduces to 4 Var for rank-1 blocks.
double qfi_mixed(const RestrictedState& s, const Eigen::MatrixXcd& j_block);

/// sum_{k=1}^{N/4} (w_{2k-1} + w_{2k})^2 : variance of the balanced
/// generator on probe_psi.
double closed_form_balanced_psi(int n_modes, const SpectralFunction& w);

/// sum_{k=1}^{N/2} w_k^2 : variance of the local generator on probe_phi.
double closed_form_local_phi(int n_modes, const SpectralFunction& w);

enum class GeneratorKind { Balanced, Local };
enum class ProbeKind { Psi, Phi };

struct SweepRow {
  int modes = 0;
  double variance = 0.0;
  double qfi4 = 0.0;
  double closed_form = 0.0;
  double shot_noise = 0.0;
  double heisenberg = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double exponent = 0.0;  // least-squares slope of log(qfi4) vs log N
  double r2 = 0.0;
};

/// Closed-form sweep over the given mode counts (sorted, deduplicated).
/// Rows are cross-checked against the algebra route for N <= 10. When
/// require_fit is set, throws if the log-log fit has R^2 < 0.999.
SweepResult sweep(std::vector<int> n_list, GeneratorKind generator,
                  const SpectralFunction& w, ProbeKind probe,
                  bool require_fit = true);

}  // namespace majent
