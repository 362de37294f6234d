#include "majent/metrology.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "majent/kernels.hpp"

namespace majent {

SpectralFunction SpectralFunction::power_law(int exponent) {
  if (exponent < 0) {
    throw std::invalid_argument("power-law exponent must be non-negative");
  }
  SpectralFunction f;
  f.power_law_ = true;
  f.exponent_ = exponent;
  return f;
}

SpectralFunction SpectralFunction::explicit_list(std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("spectral values must be finite");
    }
  }
  SpectralFunction f;
  f.power_law_ = false;
  f.values_ = std::move(values);
  return f;
}

double SpectralFunction::omega(int k_1based) const {
  if (k_1based < 1) throw std::invalid_argument("spectral index is 1-based");
  if (power_law_) return std::pow(double(k_1based), double(exponent_));
  if (size_t(k_1based) > values_.size()) {
    throw std::invalid_argument("spectral list too short");
  }
  return values_[k_1based - 1];
}

void SpectralFunction::check_pair_count(int n_pairs) const {
  if (!power_law_ && int(values_.size()) != n_pairs) {
    throw std::invalid_argument("spectral list length must match the pair count");
  }
}

std::string SpectralFunction::id() const {
  if (power_law_) return "k^" + std::to_string(exponent_);
  std::string s = "list[";
  for (size_t k = 0; k < values_.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(values_[k]);
  }
  return s + "]";
}

namespace {

void check_even(int n_modes) {
  if (n_modes < 2 || n_modes % 2 != 0) {
    throw std::invalid_argument("generator requires an even mode count");
  }
}

CliffordElement pair_generator(int n_modes, const SpectralFunction& w,
                               bool balanced) {
  check_even(n_modes);
  const int n = n_modes / 2;
  w.check_pair_count(n);
  CliffordElement j(n_modes);
  for (int k = 1; k <= n; ++k) {
    const int a = balanced ? k : 2 * k - 1;
    const int b = balanced ? n + k : 2 * k;
    const ModeMask mask =
        (ModeMask(1) << (a - 1)) | (ModeMask(1) << (b - 1));
    j.add_term(mask, Complex(0, w.omega(k)));
  }
  return j;
}

}  // namespace

CliffordElement generator_balanced(int n_modes, const SpectralFunction& w) {
  return pair_generator(n_modes, w, true);
}

CliffordElement generator_local(int n_modes, const SpectralFunction& w) {
  return pair_generator(n_modes, w, false);
}

GnsVector probe_psi(int n_modes) {
  if (n_modes % 4 != 0 || n_modes < 4) {
    throw std::invalid_argument("probe_psi requires N = 2n with n even");
  }
  const int n = n_modes / 2;
  CliffordElement prod = CliffordElement::identity(n_modes);
  for (int k = 1; k <= n; ++k) {
    const double s = (k <= n / 2) ? 1.0 : -1.0;
    CliffordElement factor = CliffordElement::identity(n_modes);
    factor.add_term((ModeMask(1) << (2 * k - 2)) | (ModeMask(1) << (2 * k - 1)),
                    Complex(0, s));
    prod = mul(prod, factor);
  }
  GnsVector v(n_modes);
  for (const auto& [mask, coeff] : prod.terms()) v.add(mask, coeff);
  return v.normalized();
}

GnsVector probe_phi(int n_modes, ModeMask gamma_first, ModeMask gamma_second) {
  check_even(n_modes);
  const int n = n_modes / 2;
  const ModeMask first_half = (ModeMask(1) << n) - 1;
  const ModeMask second_half = ((ModeMask(1) << n_modes) - 1) & ~first_half;
  const int p = popcount(gamma_first);
  if (p != popcount(gamma_second) || (p % 2) == 0) {
    throw std::invalid_argument(
        "probe_phi requires factors of equal odd size");
  }
  if ((gamma_first & ~first_half) != 0 || (gamma_second & ~second_half) != 0) {
    throw std::invalid_argument("probe_phi factors must sit in their halves");
  }
  const CliffordElement gamma =
      mul(CliffordElement::monomial(n_modes, gamma_first),
          CliffordElement::monomial(n_modes, gamma_second));
  // g^2 = -1 for odd p
  const CliffordElement sq = mul(gamma, gamma);
  if (std::abs(sq.coefficient(0) + 1.0) > 1e-12 || sq.terms().size() != 1) {
    throw std::invalid_argument("probe_phi factor does not square to -1");
  }
  CliffordElement e = CliffordElement::identity(n_modes);
  e += Complex(0, 1) * gamma;
  GnsVector v(n_modes);
  for (const auto& [mask, coeff] : e.terms()) v.add(mask, coeff);
  return v.normalized();
}

GnsVector evolve(const GnsRep& rep, const GnsVector& psi,
                 const CliffordElement& j, double theta) {
  if (rep.dim() > (std::uint32_t(1) << 10)) {
    throw std::invalid_argument("evolve dense path capped at dim 2^10");
  }
  if ((star(j) - j).max_abs_coeff() > 1e-12) {
    throw std::invalid_argument("evolve requires a self-adjoint generator");
  }
  const std::uint32_t d = rep.dim();
  const Eigen::MatrixXcd m = kernels::dense_operator(rep, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  Eigen::VectorXcd vec = Eigen::VectorXcd::Zero(d);
  for (const auto& [mask, a] : psi.amps) vec(mask) = a;
  Eigen::VectorXcd rotated = es.eigenvectors().adjoint() * vec;
  for (Eigen::Index k = 0; k < rotated.size(); ++k) {
    rotated(k) *= std::exp(Complex(0, theta * es.eigenvalues()(k)));
  }
  rotated = es.eigenvectors() * rotated;
  GnsVector out(rep.modes());
  for (std::uint32_t mask = 0; mask < d; ++mask) {
    if (std::abs(rotated(mask)) > 1e-14) out.add(mask, rotated(mask));
  }
  return out;
}

QfiReport qfi_pure(const GnsRep& rep, const GnsVector& psi,
                   const CliffordElement& j, const std::string& generator_id,
                   const std::string& state_id,
                   std::optional<double> closed_form) {
  const Complex mean = expectation(rep, psi, j);
  if (std::abs(mean.imag()) > 1e-10) {
    throw std::invalid_argument("generator mean is not real");
  }
  const Complex second = expectation(rep, psi, mul(j, j));
  const double variance = second.real() - mean.real() * mean.real();
  if (variance < -1e-10) {
    throw std::invalid_argument("negative variance");
  }
  QfiReport report;
  report.modes = rep.modes();
  report.generator_id = generator_id;
  report.state_id = state_id;
  report.mean = mean.real();
  report.variance = variance;
  report.qfi_4var = 4.0 * variance;
  report.closed_form = closed_form;
  report.shot_noise_ref = double(rep.modes());
  report.heisenberg_ref = double(rep.modes()) * double(rep.modes());
  return report;
}

double qfi_mixed(const RestrictedState& s, const Eigen::MatrixXcd& j_block) {
  constexpr double eps = 1e-12;
  if ((j_block - j_block.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("qfi_mixed requires a hermitian block");
  }
  double total = 0.0;
  for (const auto& block : s.blocks) {
    if (block.rho.rows() != j_block.rows()) {
      throw std::invalid_argument("block dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block.rho);
    const Eigen::VectorXd p = es.eigenvalues();
    if (p.minCoeff() < -1e-10) {
      throw std::invalid_argument("restricted block is not PSD");
    }
    const Eigen::MatrixXcd jj =
        es.eigenvectors().adjoint() * j_block * es.eigenvectors();
    double f = 0.0;
    for (Eigen::Index a = 0; a < p.size(); ++a) {
      for (Eigen::Index b = 0; b < p.size(); ++b) {
        const double sum = std::max(0.0, p(a)) + std::max(0.0, p(b));
        if (sum <= eps) continue;
        const double diff = p(a) - p(b);
        f += (diff * diff / sum) * std::norm(jj(a, b));
      }
    }
    total += block.weight * 2.0 * f;
  }
  return total;
}

double closed_form_balanced_psi(int n_modes, const SpectralFunction& w) {
  if (n_modes % 4 != 0) {
    throw std::invalid_argument("closed form requires N divisible by 4");
  }
  w.check_pair_count(n_modes / 2);
  double s = 0.0;
  for (int k = 1; k <= n_modes / 4; ++k) {
    const double t = w.omega(2 * k - 1) + w.omega(2 * k);
    s += t * t;
  }
  return s;
}

double closed_form_local_phi(int n_modes, const SpectralFunction& w) {
  check_even(n_modes);
  w.check_pair_count(n_modes / 2);
  double s = 0.0;
  for (int k = 1; k <= n_modes / 2; ++k) {
    const double t = w.omega(k);
    s += t * t;
  }
  return s;
}

namespace {

struct Fit {
  double slope = 0.0;
  double r2 = 0.0;
};

Fit loglog_fit(const std::vector<SweepRow>& rows) {
  const size_t n = rows.size();
  if (n < 2) throw std::invalid_argument("fit needs at least two rows");
  double sx = 0, sy = 0;
  std::vector<double> xs(n), ys(n);
  for (size_t k = 0; k < n; ++k) {
    if (rows[k].qfi4 <= 0.0) {
      throw std::invalid_argument("fit requires positive values");
    }
    xs[k] = std::log(double(rows[k].modes));
    ys[k] = std::log(rows[k].qfi4);
    sx += xs[k];
    sy += ys[k];
  }
  const double mx = sx / double(n), my = sy / double(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t k = 0; k < n; ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  Fit fit;
  fit.slope = sxy / sxx;
  double ss_res = 0;
  for (size_t k = 0; k < n; ++k) {
    const double pred = my + fit.slope * (xs[k] - mx);
    ss_res += (ys[k] - pred) * (ys[k] - pred);
  }
  fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

}  // namespace

SweepResult sweep(std::vector<int> n_list, GeneratorKind generator,
                  const SpectralFunction& w, ProbeKind probe,
                  bool require_fit) {
  if (n_list.empty()) throw std::invalid_argument("empty mode list");
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
  if (n_list.front() < 2 || n_list.back() > (1 << 16)) {
    throw std::invalid_argument("sweep mode counts must be in [2, 2^16]");
  }
  if (generator == GeneratorKind::Balanced && probe != ProbeKind::Psi) {
    throw std::invalid_argument("balanced generator sweeps use the psi probe");
  }
  if (generator == GeneratorKind::Local && probe != ProbeKind::Phi) {
    throw std::invalid_argument("local generator sweeps use the phi probe");
  }

  for (int n_modes : n_list) {
    if (probe == ProbeKind::Psi && n_modes % 4 != 0) {
      throw std::invalid_argument("psi probe requires N divisible by 4");
    }
    if (n_modes % 2 != 0) {
      throw std::invalid_argument("sweep mode counts must be even");
    }
    w.check_pair_count(n_modes / 2);
  }

  SweepResult out;
  out.rows.resize(n_list.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(kernels::max_threads())
#endif
  for (std::int64_t idx = 0; idx < std::int64_t(n_list.size()); ++idx) {
    const int n_modes = n_list[idx];
    const double cf = probe == ProbeKind::Psi
                          ? closed_form_balanced_psi(n_modes, w)
                          : closed_form_local_phi(n_modes, w);
    SweepRow row;
    row.modes = n_modes;
    row.variance = cf;
    row.qfi4 = 4.0 * cf;
    row.closed_form = cf;
    row.shot_noise = double(n_modes);
    row.heisenberg = double(n_modes) * double(n_modes);
    out.rows[idx] = row;
  }

  // Algebra-route cross-check at desk scale.
  for (auto& row : out.rows) {
    if (row.modes > 10) continue;
    const GnsRep rep(row.modes);
    const CliffordElement j = generator == GeneratorKind::Balanced
                                  ? generator_balanced(row.modes, w)
                                  : generator_local(row.modes, w);
    const GnsVector state =
        probe == ProbeKind::Psi
            ? probe_psi(row.modes)
            : probe_phi(row.modes, ModeMask(1),
                        ModeMask(1) << (row.modes / 2));
    const QfiReport r = qfi_pure(rep, state, j, "sweep", "sweep");
    if (std::abs(r.variance - row.closed_form) > 1e-8) {
      throw std::runtime_error("closed form disagrees with the algebra route");
    }
  }

  const Fit fit = loglog_fit(out.rows);
  out.exponent = fit.slope;
  out.r2 = fit.r2;
  if (require_fit && !(fit.r2 >= 0.999)) {
    throw std::runtime_error("log-log fit failed: R^2 = " +
                             std::to_string(fit.r2));
  }
  return out;
}

}  // namespace majent
