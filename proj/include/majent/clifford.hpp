#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace majent {

using Complex = std::complex<double>;

/// Mode subset as a bitset: bit i set <=> generator c_{i+1} is present.
/// Mode indices are 1-based in all user-facing text, 0-based in masks;
/// the conversion happens only here and in the text formatter.
using ModeMask = std::uint32_t;

inline constexpr int kMaxModes = 24;

inline int popcount(ModeMask m) { return __builtin_popcount(m); }

/// Bits strictly below `mode_bit` (0-based).
inline ModeMask bits_below(int mode_bit) {
  return (ModeMask(1) << mode_bit) - 1;
}

/// Sign of the monomial product c_S * c_T = sign(S,T) * c_{S xor T}.
/// Equals (-1)^(number of pairs (s,t) in S x T with s > t), i.e. the
/// parity of the transpositions needed to interleave the two ordered
/// strings, using c_i^2 = 1. Exact integer arithmetic, no rounding.
int monomial_product_sign(ModeMask s, ModeMask t);

/// Sign picked up when reversing a monomial: (-1)^(k(k-1)/2) for k modes.
int reversal_sign(ModeMask s);

enum class Parity { Even, Odd, Mixed };

/// Element of the complex Clifford algebra C_N, stored as a sparse sum
/// of signed monomials over the basis (c_1)^{n_1}...(c_N)^{n_N}.
/// Canonical form: no coefficient with |z| = 0 is kept; after floating
/// arithmetic, coefficients with |z| <= 1e-14 are pruned.
class CliffordElement {
 public:
  explicit CliffordElement(int n_modes);

  static CliffordElement zero(int n_modes) { return CliffordElement(n_modes); }
  static CliffordElement identity(int n_modes);
  /// Single monomial c_S with the given coefficient.
  static CliffordElement monomial(int n_modes, ModeMask mask,
                                  Complex coeff = Complex(1, 0));
  /// The generator c_i, i 1-based.
  static CliffordElement generator(int n_modes, int mode_1based);

  int modes() const { return n_modes_; }
  const std::map<ModeMask, Complex>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  Complex coefficient(ModeMask mask) const;

  CliffordElement& operator+=(const CliffordElement& rhs);
  CliffordElement& operator-=(const CliffordElement& rhs);
  CliffordElement& operator*=(Complex scalar);

  friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) {
    a += b;
    return a;
  }
  friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) {
    a -= b;
    return a;
  }
  friend CliffordElement operator*(Complex s, CliffordElement a) {
    a *= s;
    return a;
  }
  friend CliffordElement operator*(const CliffordElement& a,
                                   const CliffordElement& b);

  /// Inserts coeff * c_mask, pruning if the running sum vanishes.
  void add_term(ModeMask mask, Complex coeff);

  double max_abs_coeff() const;

 private:
  int n_modes_;
  std::map<ModeMask, Complex> terms_;
};

/// Product in C_N, bilinear extension of c_S c_T = sign(S,T) c_{S xor T}.
CliffordElement mul(const CliffordElement& a, const CliffordElement& b);

/// Antilinear involution: coefficients conjugated, c_S -> reversal_sign(S) c_S.
CliffordElement star(const CliffordElement& a);

/// The state Omega: coefficient of the identity monomial, extended linearly.
Complex omega(const CliffordElement& a);

/// Grading automorphism theta(c_i) = -c_i.
CliffordElement theta(const CliffordElement& a);

Parity parity(const CliffordElement& a);

/// Projections P^e = (1+theta)/2 and P^o = (1-theta)/2.
CliffordElement even_part(const CliffordElement& a);
CliffordElement odd_part(const CliffordElement& a);

/// Complex fermion modes a_k = (c_{2k-1} + i c_{2k})/2 for k = 1..N/2.
/// Returns (annihilator, creator) pairs; requires N even.
std::vector<std::pair<CliffordElement, CliffordElement>> complex_fermion_modes(
    int n_modes);

CliffordElement commutator(const CliffordElement& a, const CliffordElement& b);
CliffordElement anticommutator(const CliffordElement& a,
                               const CliffordElement& b);

}  // namespace majent
