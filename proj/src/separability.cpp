#include "majent/separability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "majent/kernels.hpp"

namespace majent {

Bipartition::Bipartition(int n_modes, ModeMask first_mask) : modes(n_modes) {
  const ModeMask all =
      n_modes >= 32 ? ~ModeMask(0) : (ModeMask(1) << n_modes) - 1;
  if ((first_mask & ~all) != 0) {
    throw std::invalid_argument("bipartition mask exceeds mode count");
  }
  first = first_mask;
  second = all & ~first_mask;
  if (first == 0 || second == 0) {
    throw std::invalid_argument("both parts of a bipartition must be nonempty");
  }
}

Bipartition Bipartition::prefix(int n_modes, int p) {
  if (p <= 0 || p >= n_modes) {
    throw std::invalid_argument("prefix split requires 0 < p < N");
  }
  return Bipartition(n_modes, (ModeMask(1) << p) - 1);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Separable:
      return "separable";
    case Verdict::Entangled:
      return "entangled";
    default:
      return "unknown";
  }
}

LocalFactors local_factor(const CliffordElement& monomial,
                          const Bipartition& bp) {
  if (!monomial.is_monomial()) {
    throw std::invalid_argument("local_factor requires a single monomial");
  }
  const auto& [mask, coeff] = *monomial.terms().begin();
  const ModeMask s1 = mask & bp.first;
  const ModeMask s2 = mask & bp.second;
  // c_S = sign(S1,S2) c_{S1} c_{S2}; the interleaving sign is its own
  // inverse.
  const int sign = monomial_product_sign(s1, s2);
  LocalFactors out{CliffordElement::monomial(monomial.modes(), s1, coeff),
                   CliffordElement::monomial(monomial.modes(), s2),
                   sign};
  return out;
}

SeparabilityVerdict pure_factorization_test(const GnsRep& rep,
                                            const GnsVector& psi,
                                            const Bipartition& bp, double tol,
                                            PurityStatus purity) {
  if (std::abs(psi.norm_sq() - 1.0) > 1e-12) {
    throw std::invalid_argument("factorization test requires a normalized state");
  }
  const auto mono = kernels::monomial_expectations(rep, psi);
  const auto scan = kernels::factorization_scan(mono, bp.first, bp.second);

  SeparabilityVerdict v;
  v.tolerance = tol;
  v.residual = scan.max_abs;
  if (scan.max_abs <= tol) {
    v.tag = Verdict::Separable;
    v.certificate =
        "product state: expectations factorize on all local monomial pairs";
    return v;
  }
  if (purity == PurityStatus::NotEstablished) {
    v.tag = Verdict::Unknown;
    v.reason = "not pure";
    return v;
  }
  v.tag = Verdict::Entangled;
  v.witness = Witness{scan.arg_first, scan.arg_second, scan.delta};
  return v;
}

namespace {

std::vector<ModeMask> odd_submasks_ascending(ModeMask set) {
  std::vector<ModeMask> out;
  for (ModeMask s = set; s != 0; s = (s - 1) & set) {
    if (popcount(s) & 1) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <typename ExpectationFn>
std::optional<Witness> odd_odd_scan(const Bipartition& bp, double tol,
                                    ExpectationFn&& expect) {
  const auto firsts = odd_submasks_ascending(bp.first);
  const auto seconds = odd_submasks_ascending(bp.second);
  for (ModeMask s1 : firsts) {
    for (ModeMask s2 : seconds) {
      const Complex e = expect(s1, s2);
      if (std::abs(e) > tol) return Witness{s1, s2, e};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Witness> odd_odd_witness(const GnsRep& rep, const GnsVector& psi,
                                       const Bipartition& bp, double tol) {
  if (std::abs(psi.norm_sq() - 1.0) > 1e-12) {
    throw std::invalid_argument("witness scan requires a normalized state");
  }
  const auto mono = kernels::monomial_expectations(rep, psi);
  return odd_odd_scan(bp, tol, [&](ModeMask s1, ModeMask s2) {
    return double(monomial_product_sign(s1, s2)) * mono[s1 | s2];
  });
}

std::optional<Witness> odd_odd_witness(const GnsRep& rep,
                                       const RestrictedState& state,
                                       const Bipartition& bp, double tol) {
  return odd_odd_scan(bp, tol, [&](ModeMask s1, ModeMask s2) {
    const CliffordElement m = mul(
        CliffordElement::monomial(rep.modes(), s1),
        CliffordElement::monomial(rep.modes(), s2));
    return expectation(rep, state, m);
  });
}

C2State c2_state_from_restriction(const RestrictedState& s,
                                  C2BasisConvention convention) {
  if (s.blocks.size() != 1 || s.blocks[0].rho.rows() != 2) {
    throw std::invalid_argument("expected a single 2x2 restricted block");
  }
  const Eigen::MatrixXcd& rho = s.blocks[0].rho;
  C2State out;
  out.lambda11 = rho(0, 0).real();
  out.lambda22 = rho(1, 1).real();
  out.lambda12 = rho(0, 1);
  out.basis_convention = convention;
  return out;
}

namespace {

void check_c2_state(const C2State& s) {
  if (s.lambda11 < -1e-12 || s.lambda22 < -1e-12 ||
      std::abs(s.lambda11 + s.lambda22 - 1.0) > 1e-12) {
    throw std::invalid_argument("two-mode state is not normalized");
  }
  // PSD: det >= 0 for a unit-trace 2x2 hermitian matrix
  if (s.lambda11 * s.lambda22 - std::norm(s.lambda12) < -1e-12) {
    throw std::invalid_argument("two-mode state is not positive semi-definite");
  }
  if (s.basis_convention == C2BasisConvention::Custom) {
    throw std::invalid_argument(
        "classifier requires a separable block basis convention");
  }
}

}  // namespace

SeparabilityVerdict c2_classify(const C2State& s) {
  check_c2_state(s);
  SeparabilityVerdict v;
  v.tolerance = 1e-12;
  if (std::abs(s.lambda12.imag()) > 1e-12) {
    // Tr[rho c1c2] = 2i Im(l12) in the block convention: odd-odd witness
    v.tag = Verdict::Entangled;
    v.witness = Witness{ModeMask(1), ModeMask(2),
                        Complex(0, 2.0 * s.lambda12.imag())};
    v.residual = 2.0 * std::abs(s.lambda12.imag());
    return v;
  }
  const double l12 = std::abs(s.lambda12.real());
  v.residual = l12 - std::min(s.lambda11, s.lambda22);
  if (s.lambda11 >= l12 - 1e-12 && s.lambda22 >= l12 - 1e-12) {
    v.tag = Verdict::Separable;
    // Convex weights over the projectors onto |e1>, |e2>,
    // (|e1>+|e2>)/sqrt2, (|e1>-|e2>)/sqrt2.
    const double r = s.lambda12.real();
    const double lo = std::max(0.0, s.lambda11 - s.lambda22);
    const double hi = std::max(lo, s.lambda11 - l12);
    const double mu1 = 0.5 * (lo + hi);
    const double mu2 = s.lambda22 - s.lambda11 + mu1;
    const double mu3 = s.lambda11 + r - mu1;
    const double mu4 = s.lambda11 - r - mu1;
    v.convex_weights = {mu1, std::max(0.0, mu2), std::max(0.0, mu3),
                        std::max(0.0, mu4)};
    v.certificate = "convex combination of separable pure-state projectors";
    return v;
  }
  v.tag = Verdict::Entangled;
  // No single odd-odd witness exists for real l12; the violation is the
  // infeasibility of the convex decomposition.
  v.certificate = "";
  return v;
}

SeparabilityVerdict c2_convex_oracle(const C2State& s) {
  check_c2_state(s);
  if (std::abs(s.lambda12.imag()) > 1e-12) {
    throw std::invalid_argument("convex oracle requires a real l12");
  }
  const double r = s.lambda12.real();
  // mu3 = l11 + r - mu1, mu4 = l11 - r - mu1, mu2 = l22 - l11 + mu1;
  // the total automatically sums to 1.
  const double lo = std::max(0.0, s.lambda11 - s.lambda22);
  const double hi = std::min(s.lambda11 + r, s.lambda11 - r);
  SeparabilityVerdict v;
  v.tolerance = 1e-12;
  v.residual = lo - hi;
  if (lo <= hi + 1e-12) {
    const double mu1 = 0.5 * (lo + std::max(lo, hi));
    v.tag = Verdict::Separable;
    v.convex_weights = {mu1, s.lambda22 - s.lambda11 + mu1,
                        s.lambda11 + r - mu1, s.lambda11 - r - mu1};
    v.certificate = "feasible convex decomposition";
  } else {
    v.tag = Verdict::Entangled;
  }
  return v;
}

SeparabilityVerdict diagonal_form_check(const GnsRep& rep,
                                        const RestrictedState& s,
                                        const Bipartition& bp, double tol) {
  if (!s.basis || s.basis->family != BasisFamily::Fbasis) {
    throw std::invalid_argument(
        "diagonal-form check requires the block-adapted pair basis");
  }
  const Bipartition balanced = Bipartition::prefix(rep.modes(), rep.modes() / 2);
  if (bp.first != balanced.first || (rep.modes() / 2) % 2 != 0) {
    // The pair basis is a product basis only for splits that do not cut
    // a pair; the balanced prefix qualifies when N/2 is even.
    throw std::invalid_argument(
        "diagonal-form check applies to the balanced prefix bipartition "
        "with N divisible by 4");
  }
  double off = 0.0;
  for (const auto& block : s.blocks) {
    for (Eigen::Index j = 0; j < block.rho.rows(); ++j) {
      for (Eigen::Index k = 0; k < block.rho.cols(); ++k) {
        if (j != k) off = std::max(off, std::abs(block.rho(j, k)));
      }
    }
  }
  SeparabilityVerdict v;
  v.tolerance = tol;
  v.residual = off;
  if (off <= tol) {
    v.tag = Verdict::Separable;
    v.certificate = "diagonal mixture of block-basis projectors";
    return v;
  }
  if (auto w = odd_odd_witness(rep, s, bp, tol)) {
    v.tag = Verdict::Entangled;
    v.witness = w;
    return v;
  }
  v.tag = Verdict::Unknown;
  v.reason = "real off-diagonal terms - no complete criterion";
  return v;
}

SeparabilityVerdict separable_state_check_omega(int n_modes,
                                                const Bipartition& bp) {
  double worst = 0.0;
  // Omega(c_S1 c_S2) = Omega(c_S1) Omega(c_S2): both sides vanish
  // unless both masks are empty.
  for (ModeMask s1 = bp.first;; s1 = (s1 - 1) & bp.first) {
    for (ModeMask s2 = bp.second;; s2 = (s2 - 1) & bp.second) {
      const CliffordElement prod =
          mul(CliffordElement::monomial(n_modes, s1),
              CliffordElement::monomial(n_modes, s2));
      const Complex lhs = omega(prod);
      const Complex rhs =
          omega(CliffordElement::monomial(n_modes, s1)) *
          omega(CliffordElement::monomial(n_modes, s2));
      worst = std::max(worst, std::abs(lhs - rhs));
      if (s2 == 0) break;
    }
    if (s1 == 0) break;
  }
  SeparabilityVerdict v;
  v.tolerance = 0.0;
  v.residual = worst;
  v.tag = worst == 0.0 ? Verdict::Separable : Verdict::Unknown;
  v.certificate = "product state: the trace-like state factorizes exactly";
  return v;
}

double recheck_witness_dense(const GnsRep& rep, const GnsVector& psi,
                             const Bipartition& bp, const Witness& w,
                             bool factorization_witness) {
  // Dense route: build pi(c_S) as explicit matrices and sandwich; the
  // arithmetic is independent of the sparse scan that found the witness.
  const std::uint32_t d = rep.dim();
  Eigen::VectorXcd vec = Eigen::VectorXcd::Zero(d);
  for (const auto& [mask, a] : psi.amps) vec(mask) = a;

  const auto sandwich = [&](const CliffordElement& e) {
    const Eigen::MatrixXcd m = kernels::dense_operator_serial(rep, e);
    return Complex(vec.adjoint() * (m * vec));
  };
  const CliffordElement m1 = CliffordElement::monomial(rep.modes(), w.first_mask);
  const CliffordElement m2 =
      CliffordElement::monomial(rep.modes(), w.second_mask);
  const Complex joint = sandwich(mul(m1, m2));
  if (!factorization_witness) return std::abs(joint);
  return std::abs(joint - sandwich(m1) * sandwich(m2));
}

}  // namespace majent
