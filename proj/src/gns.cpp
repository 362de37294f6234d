#include "majent/gns.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace majent {

namespace {
constexpr double kPruneTol = 1e-14;
constexpr int kGnsMaxModes = 14;
}  // namespace

void GnsVector::add(ModeMask mask, Complex value) {
  auto [it, inserted] = amps.try_emplace(mask, value);
  if (!inserted) it->second += value;
  if (std::abs(it->second) <= kPruneTol) amps.erase(it);
}

double GnsVector::norm_sq() const {
  double s = 0.0;
  for (const auto& [mask, a] : amps) s += std::norm(a);
  return s;
}

double GnsVector::norm() const { return std::sqrt(norm_sq()); }

GnsVector GnsVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  GnsVector out(modes);
  for (const auto& [mask, a] : amps) out.amps.emplace(mask, a / n);
  return out;
}

GnsVector& GnsVector::operator+=(const GnsVector& rhs) {
  if (rhs.modes != modes) throw std::invalid_argument("mode-count mismatch");
  for (const auto& [mask, a] : rhs.amps) add(mask, a);
  return *this;
}

GnsVector& GnsVector::operator*=(Complex s) {
  if (std::abs(s) <= kPruneTol) {
    amps.clear();
    return *this;
  }
  for (auto& [mask, a] : amps) a *= s;
  return *this;
}

Complex inner(const GnsVector& a, const GnsVector& b) {
  if (a.modes != b.modes) throw std::invalid_argument("mode-count mismatch");
  // Iterate the sparser side.
  const GnsVector& small = a.amps.size() <= b.amps.size() ? a : b;
  const GnsVector& large = a.amps.size() <= b.amps.size() ? b : a;
  const bool small_is_a = &small == &a;
  Complex s(0, 0);
  for (const auto& [mask, v] : small.amps) {
    auto it = large.amps.find(mask);
    if (it == large.amps.end()) continue;
    s += small_is_a ? std::conj(v) * it->second : std::conj(it->second) * v;
  }
  return s;
}

GnsRep::GnsRep(int n_modes) : modes_(n_modes) {
  if (n_modes < 1 || n_modes > kGnsMaxModes) {
    throw std::invalid_argument("GNS mode count must be in [1, 14]");
  }
  const std::uint32_t d = dim();
  signs_.assign(n_modes, std::vector<std::int8_t>(d));
  for (int i = 0; i < n_modes; ++i) {
    const ModeMask below = bits_below(i);
    for (ModeMask m = 0; m < d; ++m) {
      // sign({i}, m) = (-1)^(# modes of m below i)
      signs_[i][m] = (popcount(m & below) & 1) ? -1 : 1;
    }
  }
}

GnsVector GnsRep::cyclic_vector() const {
  GnsVector v(modes_);
  v.amps.emplace(0, Complex(1, 0));
  return v;
}

GnsRep build_gns(int n_modes) { return GnsRep(n_modes); }

GnsVector apply(const GnsRep& rep, const CliffordElement& a,
                const GnsVector& v) {
  if (a.modes() != rep.modes() || v.modes != rep.modes()) {
    throw std::invalid_argument("mode-count mismatch in apply");
  }
  GnsVector out(rep.modes());
  for (const auto& [s, coeff] : a.terms()) {
    for (const auto& [m, amp] : v.amps) {
      const int sign = monomial_product_sign(s, m);
      out.add(s ^ m, double(sign) * coeff * amp);
    }
  }
  return out;
}

Complex expectation(const GnsRep& rep, const GnsVector& psi,
                    const CliffordElement& a) {
  if (std::abs(psi.norm_sq() - 1.0) > 1e-12) {
    throw std::invalid_argument("expectation requires a normalized vector");
  }
  return inner(psi, apply(rep, a, psi));
}

GnsVector basis_vector(int n_modes, ModeMask mask) {
  GnsVector v(n_modes);
  v.amps.emplace(mask, Complex(1, 0));
  return v;
}

CliffordElement element_of(const GnsVector& v) {
  CliffordElement e(v.modes);
  for (const auto& [mask, a] : v.amps) e.add_term(mask, a);
  return e;
}

void write_vector(std::ostream& os, const GnsVector& v) {
  for (const auto& [mask, a] : v.amps) {
    os << std::hex << mask << std::dec << " " << a.real() << " " << a.imag()
       << "\n";
  }
}

GnsVector read_vector(std::istream& is, int n_modes) {
  GnsVector v(n_modes);
  std::uint32_t mask = 0;
  double re = 0, im = 0;
  while (is >> std::hex >> mask >> std::dec >> re >> im) {
    v.add(mask, Complex(re, im));
  }
  return v;
}

}  // namespace majent
