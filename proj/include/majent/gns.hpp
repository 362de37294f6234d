#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>

#include "majent/clifford.hpp"

namespace majent {

/// Vector in the GNS space of (C_N, Omega): sparse amplitudes over the
/// orthonormal monomial basis |c_S> = pi(c_S)|Omega>.
struct GnsVector {
  int modes = 0;
  std::map<ModeMask, Complex> amps;

  explicit GnsVector(int n_modes = 1) : modes(n_modes) {}

  void add(ModeMask mask, Complex value);
  double norm_sq() const;
  double norm() const;
  GnsVector normalized() const;

  GnsVector& operator+=(const GnsVector& rhs);
  GnsVector& operator*=(Complex s);
  friend GnsVector operator+(GnsVector a, const GnsVector& b) {
    a += b;
    return a;
  }
  friend GnsVector operator*(Complex s, GnsVector v) {
    v *= s;
    return v;
  }
};

Complex inner(const GnsVector& a, const GnsVector& b);

/// GNS representation of C_N over the trace-like state: pi(c_i) acts by
/// left multiplication on the monomial label, a signed permutation of
/// the 2^N basis masks. Tables are precomputed once per generator.
class GnsRep {
 public:
  /// N <= 14 (dim 16384 cap).
  explicit GnsRep(int n_modes);

  int modes() const { return modes_; }
  std::uint32_t dim() const { return std::uint32_t(1) << modes_; }

  /// pi(c_i)|c_S> = sign * |c_{ {i} xor S }>, i 1-based.
  ModeMask target(int mode_1based, ModeMask basis_mask) const {
    return basis_mask ^ (ModeMask(1) << (mode_1based - 1));
  }
  int sign(int mode_1based, ModeMask basis_mask) const {
    return signs_[mode_1based - 1][basis_mask];
  }

  GnsVector cyclic_vector() const;

 private:
  int modes_;
  std::vector<std::vector<std::int8_t>> signs_;
};

GnsRep build_gns(int n_modes);

/// Linear extension of the generator actions: pi(a) v.
GnsVector apply(const GnsRep& rep, const CliffordElement& a,
                const GnsVector& v);

/// <psi| pi(a) |psi> for a normalized vector.
Complex expectation(const GnsRep& rep, const GnsVector& psi,
                    const CliffordElement& a);

/// Monomial basis vector |c_S>.
GnsVector basis_vector(int n_modes, ModeMask mask);

/// Element whose coefficients are the amplitudes of v (the inverse of
/// applying an element to the cyclic vector).
CliffordElement element_of(const GnsVector& v);

/// Lines `mask_hex re im`, masks ascending.
void write_vector(std::ostream& os, const GnsVector& v);
GnsVector read_vector(std::istream& is, int n_modes);

}  // namespace majent
