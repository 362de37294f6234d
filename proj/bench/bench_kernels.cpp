// Times the OpenMP kernels against their serial reference
// implementations. Run with MAJORANA_ENT_THREADS=1 to pin the parallel
// variants to one worker.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "majent/basis.hpp"
#include "majent/kernels.hpp"

using namespace majent;

namespace {

double sink = 0.0;

double time_best_of(int reps, const std::function<double()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    sink += fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.4f ms %10.4f ms %8.2fx\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", kernels::max_threads());
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  std::mt19937 rng(2024);
  std::uniform_int_distribution<ModeMask> mask10(0, (1u << 10) - 1);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);

  {
    const GnsRep rep(10);
    CliffordElement a(10);
    for (int k = 0; k < 24; ++k) {
      a.add_term(mask10(rng), Complex(coeff(rng), coeff(rng)));
    }
    const double s = time_best_of(5, [&] {
      return kernels::dense_operator_serial(rep, a)(0, 0).real();
    });
    const double p = time_best_of(5, [&] {
      return kernels::dense_operator_parallel(rep, a)(0, 0).real();
    });
    row("dense_operator N=10", s, p);
  }

  {
    const auto f = f_basis(10);
    const double s = time_best_of(
        3, [&] { return kernels::gram_serial(f.vectors)(0, 0).real(); });
    const double p = time_best_of(
        3, [&] { return kernels::gram_parallel(f.vectors)(0, 0).real(); });
    row("gram f-basis N=10", s, p);
  }

  {
    const GnsRep rep(12);
    GnsVector psi(12);
    for (int k = 0; k < 64; ++k) {
      psi.add(ModeMask(rng() & 0xfff), Complex(coeff(rng), coeff(rng)));
    }
    psi = psi.normalized();
    const double s = time_best_of(5, [&] {
      const auto e = kernels::monomial_expectations_serial(rep, psi);
      return e.back().real();
    });
    const double p = time_best_of(5, [&] {
      const auto e = kernels::monomial_expectations_parallel(rep, psi);
      return e.back().real();
    });
    row("monomial_expectations N=12", s, p);

    const auto mono = kernels::monomial_expectations(rep, psi);
    const ModeMask first = (1u << 6) - 1;
    const ModeMask second = ((1u << 12) - 1) & ~first;
    const double fs = time_best_of(5, [&] {
      return kernels::factorization_scan_serial(mono, first, second).max_abs;
    });
    const double fp = time_best_of(5, [&] {
      return kernels::factorization_scan_parallel(mono, first, second).max_abs;
    });
    row("factorization_scan N=12", fs, fp);
  }

  {
    const GnsRep rep(5);
    const double s = time_best_of(
        3, [&] { return kernels::commutant_gram_serial(rep).diagonal().sum(); });
    const double p = time_best_of(3, [&] {
      return kernels::commutant_gram_parallel(rep).diagonal().sum();
    });
    row("commutant_gram N=5", s, p);
  }

  return sink == 12345.0 ? 1 : 0;
}
