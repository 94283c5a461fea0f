// Decomposition of Clifford operations into elementary one- and two-qudit
// gates via symplectic column reduction, with Euclid gcd passes for
// composite d and a final Pauli correction fixing the phase vector.
#pragma once

#include <vector>

#include "qudit/clifford.hpp"

namespace qudit {

enum class GateKind {
  qudit_swap,       // exchange qudits i and j
  scale_row,        // |x_i> -> |r x_i>, gcd(r, d) = 1
  add_row,          // |x_j> -> |x_j + g x_i>
  fourier,          // discrete Fourier transform on qudit i
  fourier_inverse,  // its inverse
  phase_power,      // g-th phase-gate power on qudit i
  pauli_correction  // XZ(a)
};

struct ElementaryGate {
  GateKind kind;
  Int i = 0;                    // 1-based qudit index
  Int j = 0;                    // second qudit for qudit_swap / add_row
  Int factor = 0;               // r for scale_row, g for add_row/phase_power
  std::vector<Int> correction;  // a for pauli_correction

  static ElementaryGate qudit_swap(Int i, Int j) {
    return {GateKind::qudit_swap, i, j, 0, {}};
  }
  static ElementaryGate scale_row(Int i, Int r) {
    return {GateKind::scale_row, i, 0, r, {}};
  }
  static ElementaryGate add_row(Int i, Int j, Int g) {
    return {GateKind::add_row, i, j, g, {}};
  }
  static ElementaryGate fourier(Int i) {
    return {GateKind::fourier, i, 0, 0, {}};
  }
  static ElementaryGate fourier_inverse(Int i) {
    return {GateKind::fourier_inverse, i, 0, 0, {}};
  }
  static ElementaryGate phase_power(Int i, Int g) {
    return {GateKind::phase_power, i, 0, g, {}};
  }
  static ElementaryGate pauli_correction(std::vector<Int> a) {
    return {GateKind::pauli_correction, 0, 0, 0, std::move(a)};
  }

  bool operator==(const ElementaryGate& rhs) const = default;
};

struct GateSequence {
  Int d = 2;
  Int n = 1;
  std::vector<ElementaryGate> gates;  // leftmost applied first to the state

  bool operator==(const GateSequence& rhs) const = default;
};

// The (C, h) pair realized by one elementary gate on an n-qudit system.
CliffordOp gate_to_clifford(const ElementaryGate& g, Int n, Int d);

// Left-fold of gate_to_clifford via compose; empty sequence is the identity.
CliffordOp fold(const GateSequence& seq);

// Gate sequence whose fold reproduces q exactly, C and h both. The final
// gate, when present, is a single Pauli correction; the identity operation
// decomposes into the empty sequence.
GateSequence decompose(const CliffordOp& q);

// Fixed testable ceiling on the gate count emitted by decompose.
Int decompose_gate_bound(Int n, Int d);

}  // namespace qudit
