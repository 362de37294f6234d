#include "majent/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace majent::kernels {

int max_threads() {
  int n = 1;
#ifdef _OPENMP
  n = omp_get_max_threads();
#endif
  if (const char* env = std::getenv("MAJORANA_ENT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
    if (cap >= 1 && n < 1) n = cap;
  }
  return n < 1 ? 1 : n;
}

namespace {

std::vector<Complex> to_dense(const GnsVector& v, std::uint32_t dim) {
  std::vector<Complex> out(dim, Complex(0, 0));
  for (const auto& [mask, a] : v.amps) out[mask] = a;
  return out;
}

}  // namespace

Eigen::MatrixXcd dense_operator_serial(const GnsRep& rep,
                                       const CliffordElement& a) {
  if (a.modes() != rep.modes()) {
    throw std::invalid_argument("mode-count mismatch in dense_operator");
  }
  const std::uint32_t d = rep.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (std::uint32_t col = 0; col < d; ++col) {
    for (const auto& [s, coeff] : a.terms()) {
      const int sign = monomial_product_sign(s, col);
      out(s ^ col, col) += double(sign) * coeff;
    }
  }
  return out;
}

Eigen::MatrixXcd dense_operator_parallel(const GnsRep& rep,
                                         const CliffordElement& a) {
  if (a.modes() != rep.modes()) {
    throw std::invalid_argument("mode-count mismatch in dense_operator");
  }
  const std::uint32_t d = rep.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  // Each column is owned by exactly one iteration.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
#endif
  for (std::int64_t col = 0; col < std::int64_t(d); ++col) {
    for (const auto& [s, coeff] : a.terms()) {
      const int sign = monomial_product_sign(s, ModeMask(col));
      out(s ^ ModeMask(col), col) += double(sign) * coeff;
    }
  }
  return out;
}

Eigen::MatrixXcd dense_operator(const GnsRep& rep, const CliffordElement& a) {
  if (max_threads() > 1 && rep.dim() >= 256) {
    return dense_operator_parallel(rep, a);
  }
  return dense_operator_serial(rep, a);
}

Eigen::MatrixXcd gram_serial(const std::vector<GnsVector>& vs) {
  const Eigen::Index n = Eigen::Index(vs.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      g(i, j) = inner(vs[i], vs[j]);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return g;
}

Eigen::MatrixXcd gram_parallel(const std::vector<GnsVector>& vs) {
  const Eigen::Index n = Eigen::Index(vs.size());
  Eigen::MatrixXcd g(n, n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(max_threads())
#endif
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      g(i, j) = inner(vs[i], vs[j]);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return g;
}

Eigen::MatrixXcd gram(const std::vector<GnsVector>& vs) {
  if (max_threads() > 1 && vs.size() >= 64) return gram_parallel(vs);
  return gram_serial(vs);
}

Eigen::MatrixXcd cross_gram_serial(const std::vector<GnsVector>& vs,
                                   const std::vector<GnsVector>& ws) {
  Eigen::MatrixXcd g(vs.size(), ws.size());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      g(i, j) = inner(vs[i], ws[j]);
    }
  }
  return g;
}

Eigen::MatrixXcd cross_gram_parallel(const std::vector<GnsVector>& vs,
                                     const std::vector<GnsVector>& ws) {
  Eigen::MatrixXcd g(vs.size(), ws.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4) num_threads(max_threads())
#endif
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      g(i, j) = inner(vs[i], ws[j]);
    }
  }
  return g;
}

Eigen::MatrixXcd cross_gram(const std::vector<GnsVector>& vs,
                            const std::vector<GnsVector>& ws) {
  if (max_threads() > 1 && vs.size() * ws.size() >= 4096) {
    return cross_gram_parallel(vs, ws);
  }
  return cross_gram_serial(vs, ws);
}

namespace {

Complex monomial_expectation_dense(const GnsVector& psi,
                                   const std::vector<Complex>& dense,
                                   ModeMask s) {
  // <psi| pi(c_S) |psi> = sum_m conj(psi_{S^m}) sign(S,m) psi_m
  Complex e(0, 0);
  for (const auto& [m, amp] : psi.amps) {
    const Complex other = dense[s ^ m];
    if (other == Complex(0, 0)) continue;
    const int sign = monomial_product_sign(s, m);
    e += std::conj(other) * double(sign) * amp;
  }
  return e;
}

}  // namespace

std::vector<Complex> monomial_expectations_serial(const GnsRep& rep,
                                                  const GnsVector& psi) {
  const std::uint32_t d = rep.dim();
  const auto dense = to_dense(psi, d);
  std::vector<Complex> out(d);
  for (std::uint32_t s = 0; s < d; ++s) {
    out[s] = monomial_expectation_dense(psi, dense, s);
  }
  return out;
}

std::vector<Complex> monomial_expectations_parallel(const GnsRep& rep,
                                                    const GnsVector& psi) {
  const std::uint32_t d = rep.dim();
  const auto dense = to_dense(psi, d);
  std::vector<Complex> out(d);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
#endif
  for (std::int64_t s = 0; s < std::int64_t(d); ++s) {
    out[s] = monomial_expectation_dense(psi, dense, ModeMask(s));
  }
  return out;
}

std::vector<Complex> monomial_expectations(const GnsRep& rep,
                                           const GnsVector& psi) {
  if (max_threads() > 1 && rep.dim() >= 256) {
    return monomial_expectations_parallel(rep, psi);
  }
  return monomial_expectations_serial(rep, psi);
}

namespace {

std::vector<ModeMask> nonempty_submasks_ascending(ModeMask set) {
  std::vector<ModeMask> out;
  out.reserve((size_t(1) << popcount(set)) - 1);
  for (ModeMask s = set; s != 0; s = (s - 1) & set) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

void scan_one(const std::vector<Complex>& mono, ModeMask s1, ModeMask second,
              FactorizationScan& best) {
  for (ModeMask s2 = second; s2 != 0; s2 = (s2 - 1) & second) {
    const int sign = monomial_product_sign(s1, s2);
    const Complex delta = double(sign) * mono[s1 | s2] - mono[s1] * mono[s2];
    const double a = std::abs(delta);
    if (a > best.max_abs ||
        (a == best.max_abs &&
         (s1 < best.arg_first ||
          (s1 == best.arg_first && s2 < best.arg_second)))) {
      best = {a, s1, s2, delta};
    }
  }
}

FactorizationScan merge(const FactorizationScan& a,
                        const FactorizationScan& b) {
  if (b.max_abs > a.max_abs) return b;
  if (b.max_abs < a.max_abs) return a;
  if (b.arg_first < a.arg_first ||
      (b.arg_first == a.arg_first && b.arg_second < a.arg_second)) {
    return b;
  }
  return a;
}

}  // namespace

FactorizationScan factorization_scan_serial(const std::vector<Complex>& mono,
                                            ModeMask first, ModeMask second) {
  FactorizationScan best;
  best.arg_first = ~ModeMask(0);
  best.arg_second = ~ModeMask(0);
  for (ModeMask s1 : nonempty_submasks_ascending(first)) {
    scan_one(mono, s1, second, best);
  }
  return best;
}

FactorizationScan factorization_scan_parallel(const std::vector<Complex>& mono,
                                              ModeMask first, ModeMask second) {
  const auto firsts = nonempty_submasks_ascending(first);
  FactorizationScan best;
  best.arg_first = ~ModeMask(0);
  best.arg_second = ~ModeMask(0);
#ifdef _OPENMP
#pragma omp parallel num_threads(max_threads())
  {
    FactorizationScan local;
    local.arg_first = ~ModeMask(0);
    local.arg_second = ~ModeMask(0);
#pragma omp for schedule(dynamic, 8) nowait
    for (std::int64_t k = 0; k < std::int64_t(firsts.size()); ++k) {
      scan_one(mono, firsts[k], second, local);
    }
#pragma omp critical
    best = merge(best, local);
  }
#else
  for (ModeMask s1 : firsts) scan_one(mono, s1, second, best);
#endif
  return best;
}

FactorizationScan factorization_scan(const std::vector<Complex>& mono,
                                     ModeMask first, ModeMask second) {
  if (max_threads() > 1 && popcount(first) + popcount(second) >= 10) {
    return factorization_scan_parallel(mono, first, second);
  }
  return factorization_scan_serial(mono, first, second);
}

namespace {

// A = sum_i K_i^2 with K_i = M_i (x) I - I (x) M_i. Since M_i^2 = I,
// A = 2N I - 2 sum_i M_i (x) M_i, and each M_i (x) M_i is a signed
// permutation of entry pairs: (a,b) -> (a^bit, b^bit) with sign
// s_i(a) s_i(b).
void fill_commutant_column(const GnsRep& rep, std::uint32_t c1,
                           Eigen::MatrixXd& a) {
  const std::uint32_t d = rep.dim();
  const int n = rep.modes();
  for (std::uint32_t c2 = 0; c2 < d; ++c2) {
    const Eigen::Index col = Eigen::Index(c1) + Eigen::Index(d) * c2;
    a(col, col) += 2.0 * n;
    for (int i = 1; i <= n; ++i) {
      const ModeMask bit = ModeMask(1) << (i - 1);
      const Eigen::Index row =
          Eigen::Index(c1 ^ bit) + Eigen::Index(d) * (c2 ^ bit);
      a(row, col) -= 2.0 * rep.sign(i, c1) * rep.sign(i, c2);
    }
  }
}

}  // namespace

Eigen::MatrixXd commutant_gram_serial(const GnsRep& rep) {
  const std::uint32_t d = rep.dim();
  const Eigen::Index dd = Eigen::Index(d) * d;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dd, dd);
  for (std::uint32_t c1 = 0; c1 < d; ++c1) fill_commutant_column(rep, c1, a);
  return a;
}

Eigen::MatrixXd commutant_gram_parallel(const GnsRep& rep) {
  const std::uint32_t d = rep.dim();
  const Eigen::Index dd = Eigen::Index(d) * d;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dd, dd);
  // Distinct c1 never touch the same column block.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
#endif
  for (std::int64_t c1 = 0; c1 < std::int64_t(d); ++c1) {
    fill_commutant_column(rep, std::uint32_t(c1), a);
  }
  return a;
}

Eigen::MatrixXd commutant_gram(const GnsRep& rep) {
  if (max_threads() > 1 && rep.dim() >= 16) return commutant_gram_parallel(rep);
  return commutant_gram_serial(rep);
}

}  // namespace majent::kernels
