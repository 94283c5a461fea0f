// Dense ground truth: explicit d^n-dimensional unitaries for Pauli elements
// and elementary gates, built directly from their state maps (never from the
// (C, h) representation), plus comparison helpers. omega = exp(2*pi*i/d) and
// zeta = exp(i*pi/d), the principal square root of omega.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qudit/decomp.hpp"
#include "qudit/stabilizer.hpp"

namespace qudit::oracle {

inline constexpr Int kDefaultDimensionCap = 4096;

using Operator = Eigen::MatrixXcd;
using State = Eigen::VectorXcd;

// zeta^k for k in [0, 2d), one polar evaluation per entry.
std::vector<std::complex<double>> zeta_table(Int d);

// Hilbert-space dimension d^n, guarded by the cap.
Int dense_dimension(Int d, Int n, Int cap = kDefaultDimensionCap);

// Basis labels are mixed-radix with qudit 1 the most significant digit.
Int label_to_index(const std::vector<Int>& label, Int d);
std::vector<Int> index_to_label(Int index, Int n, Int d);

Operator pauli_operator(const PauliElement& x, Int cap = kDefaultDimensionCap);

Operator gate_operator(const ElementaryGate& g, Int n, Int d,
                       Int cap = kDefaultDimensionCap);

// Product of the gate unitaries, leftmost gate applied first.
Operator sequence_operator(const GateSequence& seq,
                           Int cap = kDefaultDimensionCap);

// U A U^dagger.
Operator conjugate(const Operator& u, const Operator& a);

bool equal_up_to_global_phase(const Operator& a, const Operator& b,
                              double tol = 1e-9);
bool equal_up_to_global_phase(const State& a, const State& b,
                              double tol = 1e-9);

// The normalized vector described by a state expansion.
State state_from_expansion(const StateExpansion& e,
                           Int cap = kDefaultDimensionCap);

// zeta^{delta} XZ(a) applied through the basis action, O(d^n) time.
State apply_pauli(const PauliElement& x, const State& v);

}  // namespace qudit::oracle
