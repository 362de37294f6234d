#include "majent/clifford.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace majent {

namespace {
constexpr double kPruneTol = 1e-14;

void check_mode_count(int n_modes) {
  if (n_modes < 1 || n_modes > kMaxModes) {
    throw std::invalid_argument("mode count must be in [1, " +
                                std::to_string(kMaxModes) + "], got " +
                                std::to_string(n_modes));
  }
}

void check_mask(int n_modes, ModeMask mask) {
  if (n_modes < kMaxModes && (mask >> n_modes) != 0) {
    throw std::invalid_argument("mode mask exceeds mode count");
  }
}
}  // namespace

int monomial_product_sign(ModeMask s, ModeMask t) {
  int inversions = 0;
  ModeMask rest = s;
  while (rest != 0) {
    const int bit = __builtin_ctz(rest);
    rest &= rest - 1;
    inversions += popcount(t & bits_below(bit));
  }
  return (inversions & 1) ? -1 : 1;
}

int reversal_sign(ModeMask s) {
  const int k = popcount(s);
  // k(k-1)/2 is odd exactly when k = 2,3 (mod 4)
  return ((k & 3) == 2 || (k & 3) == 3) ? -1 : 1;
}

CliffordElement::CliffordElement(int n_modes) : n_modes_(n_modes) {
  check_mode_count(n_modes);
}

CliffordElement CliffordElement::identity(int n_modes) {
  return monomial(n_modes, 0);
}

CliffordElement CliffordElement::monomial(int n_modes, ModeMask mask,
                                          Complex coeff) {
  check_mode_count(n_modes);
  check_mask(n_modes, mask);
  CliffordElement e(n_modes);
  e.add_term(mask, coeff);
  return e;
}

CliffordElement CliffordElement::generator(int n_modes, int mode_1based) {
  if (mode_1based < 1 || mode_1based > n_modes) {
    throw std::invalid_argument("generator index out of range");
  }
  return monomial(n_modes, ModeMask(1) << (mode_1based - 1));
}

Complex CliffordElement::coefficient(ModeMask mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? Complex(0, 0) : it->second;
}

void CliffordElement::add_term(ModeMask mask, Complex coeff) {
  check_mask(n_modes_, mask);
  auto [it, inserted] = terms_.try_emplace(mask, coeff);
  if (!inserted) it->second += coeff;
  if (std::abs(it->second) <= kPruneTol) terms_.erase(it);
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& rhs) {
  if (rhs.n_modes_ != n_modes_) {
    throw std::invalid_argument("mode-count mismatch in addition");
  }
  for (const auto& [mask, coeff] : rhs.terms_) add_term(mask, coeff);
  return *this;
}

CliffordElement& CliffordElement::operator-=(const CliffordElement& rhs) {
  if (rhs.n_modes_ != n_modes_) {
    throw std::invalid_argument("mode-count mismatch in subtraction");
  }
  for (const auto& [mask, coeff] : rhs.terms_) add_term(mask, -coeff);
  return *this;
}

CliffordElement& CliffordElement::operator*=(Complex scalar) {
  if (std::abs(scalar) <= kPruneTol) {
    terms_.clear();
    return *this;
  }
  for (auto& [mask, coeff] : terms_) coeff *= scalar;
  return *this;
}

CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) {
  return mul(a, b);
}

double CliffordElement::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [mask, coeff] : terms_) m = std::max(m, std::abs(coeff));
  return m;
}

CliffordElement mul(const CliffordElement& a, const CliffordElement& b) {
  if (a.modes() != b.modes()) {
    throw std::invalid_argument("mode-count mismatch in product");
  }
  CliffordElement out(a.modes());
  for (const auto& [s, ca] : a.terms()) {
    for (const auto& [t, cb] : b.terms()) {
      const int sign = monomial_product_sign(s, t);
      out.add_term(s ^ t, double(sign) * ca * cb);
    }
  }
  return out;
}

CliffordElement star(const CliffordElement& a) {
  CliffordElement out(a.modes());
  for (const auto& [mask, coeff] : a.terms()) {
    out.add_term(mask, double(reversal_sign(mask)) * std::conj(coeff));
  }
  return out;
}

Complex omega(const CliffordElement& a) { return a.coefficient(0); }

CliffordElement theta(const CliffordElement& a) {
  CliffordElement out(a.modes());
  for (const auto& [mask, coeff] : a.terms()) {
    out.add_term(mask, (popcount(mask) & 1) ? -coeff : coeff);
  }
  return out;
}

Parity parity(const CliffordElement& a) {
  bool has_even = false, has_odd = false;
  for (const auto& [mask, coeff] : a.terms()) {
    ((popcount(mask) & 1) ? has_odd : has_even) = true;
  }
  if (has_even && has_odd) return Parity::Mixed;
  return has_odd ? Parity::Odd : Parity::Even;
}

CliffordElement even_part(const CliffordElement& a) {
  CliffordElement out(a.modes());
  for (const auto& [mask, coeff] : a.terms()) {
    if ((popcount(mask) & 1) == 0) out.add_term(mask, coeff);
  }
  return out;
}

CliffordElement odd_part(const CliffordElement& a) {
  CliffordElement out(a.modes());
  for (const auto& [mask, coeff] : a.terms()) {
    if ((popcount(mask) & 1) == 1) out.add_term(mask, coeff);
  }
  return out;
}

std::vector<std::pair<CliffordElement, CliffordElement>> complex_fermion_modes(
    int n_modes) {
  if (n_modes % 2 != 0) {
    throw std::invalid_argument("complex fermion modes require an even N");
  }
  std::vector<std::pair<CliffordElement, CliffordElement>> out;
  out.reserve(n_modes / 2);
  for (int k = 1; k <= n_modes / 2; ++k) {
    // a_k = (c_{2k-1} + i c_{2k})/2, a_k* = (c_{2k-1} - i c_{2k})/2
    CliffordElement a(n_modes);
    a.add_term(ModeMask(1) << (2 * k - 2), Complex(0.5, 0));
    a.add_term(ModeMask(1) << (2 * k - 1), Complex(0, 0.5));
    out.emplace_back(a, star(a));
  }
  return out;
}

CliffordElement commutator(const CliffordElement& a, const CliffordElement& b) {
  return mul(a, b) - mul(b, a);
}

CliffordElement anticommutator(const CliffordElement& a,
                               const CliffordElement& b) {
  return mul(a, b) + mul(b, a);
}

}  // namespace majent
