// The generalized Pauli group on n qudits of dimension d: elements are
// zeta^delta * XZ(a) with a in Z_d^{2n} (upper half X exponents, lower half
// Z exponents) and delta in Z_{2d}, zeta being the principal square root of
// the primitive d-th root of unity.
#pragma once

#include <utility>
#include <vector>

#include "qudit/zmod.hpp"

namespace qudit {

// U = [[0,0],[I,0]] and P = U - U^T mod d; P encodes commutation.
struct SymplecticForm {
  Int n;
  Int d;
  ResidueMatrix u;
  ResidueMatrix p;

  static SymplecticForm make(Int n, Int d);
};

class PauliElement {
public:
  PauliElement(Int d, Int n, std::vector<Int> a, Int delta);

  static PauliElement identity(Int d, Int n);
  // XZ(E_k) for the standard basis vector E_k, k in [1, 2n].
  static PauliElement generator(Int d, Int n, Int k);

  Int d() const { return d_; }
  Int n() const { return n_; }
  const std::vector<Int>& a() const { return a_; }
  Int delta() const { return delta_; }

  Int x_exponent(Int qudit) const { return a_[qudit - 1]; }       // v_i
  Int z_exponent(Int qudit) const { return a_[n_ + qudit - 1]; }  // w_i

  bool is_identity() const;
  bool operator==(const PauliElement& rhs) const = default;

private:
  Int d_, n_;
  std::vector<Int> a_;  // canonical residues mod d
  Int delta_;           // canonical residue mod 2d
};

// zeta^{delta+eps+2 a^T U b} XZ(a+b), quadratic term on canonical lifts.
PauliElement multiply(const PauliElement& x, const PauliElement& y);

// Exponent of omega in XZ(a) XZ(b) = omega^{a^T P b} XZ(b) XZ(a).
Int commutation_exponent(const PauliElement& x, const PauliElement& y);

// Smallest k >= 1 with x^k = identity, phase included.
Int order(const PauliElement& x);

// XZ(a)|x> = omega^{w^T x} |x+v>; returns the zeta exponent and new label.
std::pair<Int, std::vector<Int>> apply_to_basis(const PauliElement& x,
                                                const std::vector<Int>& label);

PauliElement inverse(const PauliElement& x);

namespace detail {
// a^T U b over canonical lifts (no modular reduction).
Int upper_quadratic(const std::vector<Int>& a, const std::vector<Int>& b,
                    Int n);
}  // namespace detail

}  // namespace qudit
