// Clifford operations as pairs (C, h): C symplectic mod d and h in Z_{2d}^{2n}
// subject to the order-d parity condition. Covers validation, conjugation of
// Pauli elements, composition, inversion, the special-gate catalog, and the
// odd-d half-phase representation.
#pragma once

#include <vector>

#include "qudit/pauli.hpp"
#include "qudit/zmod.hpp"

namespace qudit {

class CliffordOp {
public:
  // Validates both defining conditions exactly.
  CliffordOp(ResidueMatrix c, std::vector<Int> h);

  static CliffordOp identity(Int d, Int n);

  Int d() const { return d_; }
  Int n() const { return n_; }
  const ResidueMatrix& c() const { return c_; }
  const std::vector<Int>& h() const { return h_; }

  bool operator==(const CliffordOp& rhs) const = default;

private:
  Int d_, n_;
  ResidueMatrix c_;
  std::vector<Int> h_;
};

PauliElement conjugate_pauli(const CliffordOp& q, const PauliElement& x);

// outer after inner: the operator product outer * inner.
CliffordOp compose(const CliffordOp& outer, const CliffordOp& inner);

CliffordOp invert(const CliffordOp& q);

// The conjugation action of XZ(a); the global phase of x is discarded.
CliffordOp from_pauli(const PauliElement& x);

// |x> -> |Tx> for invertible T: C = diag(T, T^{-T}), h = 0.
CliffordOp from_linear_transform(const ResidueMatrix& t);

CliffordOp fourier(Int target, Int n, Int d);
CliffordOp fourier_inverse(Int target, Int n, Int d);

// g-th power of the phase gate |x> -> zeta^{x(x+d)} |x>, 0 <= g < d.
CliffordOp phase_gate(Int target, Int power, Int n, Int d);

// Embeds an op on |targets| qudits into n qudits; targets are 1-based and
// strictly increasing, rows/columns land on targets and targets + n.
CliffordOp embed(const CliffordOp& op, const std::vector<Int>& targets, Int n);

// Odd d only: h is always even, so g = h/2 lives in Z_d^{2n} and every
// phase formula closes over Z_d.
struct OddCliffordForm {
  Int d, n;
  ResidueMatrix c;
  std::vector<Int> g;

  bool operator==(const OddCliffordForm& rhs) const = default;
};

OddCliffordForm to_odd_form(const CliffordOp& q);
CliffordOp from_odd_form(const OddCliffordForm& o);

OddCliffordForm odd_compose(const OddCliffordForm& outer,
                            const OddCliffordForm& inner);
OddCliffordForm odd_invert(const OddCliffordForm& q);
// x must carry an even zeta exponent (an omega power); so does the result.
PauliElement odd_conjugate_pauli(const OddCliffordForm& q,
                                 const PauliElement& x);

namespace detail {

using IntMat = std::vector<std::vector<Int>>;

IntMat rows_of(const ResidueMatrix& m);

// C^T U C mod d, canonical entries.
ResidueMatrix conjugation_form(const ResidueMatrix& c);

// Shared phase-transport kernel behind the conjugation-image, composition,
// generator-change, and stabilizer-action formulas:
//   out_j = base_j + sum_k A_kj (h_k - W_kk)
//         + sum_{k<l} 2 W_kl A_kj A_lj + sum_k W_kk A_kj^2   (mod 2d)
// A and W are accepted as raw integer lifts; the result does not depend on
// the lift choice, which the tests exercise with +d offsets.
std::vector<Int> phase_transport(const IntMat& a, const IntMat& w,
                                 const std::vector<Int>& h,
                                 const std::vector<Int>& base, Int d);

}  // namespace detail

}  // namespace qudit
