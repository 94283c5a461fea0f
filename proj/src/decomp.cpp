#include "qudit/decomp.hpp"

#include <bit>
#include <numeric>
#include <string>
#include <utility>

namespace qudit {

CliffordOp gate_to_clifford(const ElementaryGate& g, Int n, Int d) {
  switch (g.kind) {
    case GateKind::qudit_swap: {
      require(g.i != g.j, errc::invalid_parameter,
              "qudit swap needs two distinct qudits");
      CliffordOp small(ResidueMatrix::from_rows({{0, 1, 0, 0},
                                                 {1, 0, 0, 0},
                                                 {0, 0, 0, 1},
                                                 {0, 0, 1, 0}},
                                                d),
                       {0, 0, 0, 0});
      return embed(small, {std::min(g.i, g.j), std::max(g.i, g.j)}, n);
    }
    case GateKind::scale_row: {
      const Int r = mod_norm(g.factor, d);
      require(std::gcd(r, d) == 1, errc::invalid_parameter,
              "row scale factor must be invertible mod d");
      CliffordOp small(
          ResidueMatrix::from_rows({{r, 0}, {0, inverse_mod(r, d)}}, d),
          {0, 0});
      return embed(small, {g.i}, n);
    }
    case GateKind::add_row: {
      require(g.i != g.j, errc::invalid_parameter,
              "row add needs two distinct qudits");
      // T = I + g E_{ji} on the pair sorted ascending.
      ResidueMatrix t = ResidueMatrix::identity(2, d);
      const Int src = g.i < g.j ? 0 : 1;
      t.set(1 - src, src, mod_norm(g.factor, d));
      return embed(from_linear_transform(t),
                   {std::min(g.i, g.j), std::max(g.i, g.j)}, n);
    }
    case GateKind::fourier:
      return fourier(g.i, n, d);
    case GateKind::fourier_inverse:
      return fourier_inverse(g.i, n, d);
    case GateKind::phase_power:
      return phase_gate(g.i, mod_norm(g.factor, d), n, d);
    case GateKind::pauli_correction:
      return from_pauli(PauliElement(d, n, g.correction, 0));
  }
  fail(errc::invalid_parameter, "unknown gate kind");
}

CliffordOp fold(const GateSequence& seq) {
  CliffordOp acc = CliffordOp::identity(seq.d, seq.n);
  for (const auto& g : seq.gates)
    acc = compose(gate_to_clifford(g, seq.n, seq.d), acc);
  return acc;
}

Int decompose_gate_bound(Int n, Int d) {
  const Int logd = std::bit_width(static_cast<std::uint64_t>(d) - 1);
  return 64 * n * n * (logd + 1);
}

namespace {

// Row-operation view of the reduction. Every primitive left-multiplies the
// working matrix by the symplectic block of one elementary gate and records
// the gate as applied.
struct Reduction {
  Int n, d;
  detail::IntMat c;
  std::vector<ElementaryGate> applied;

  explicit Reduction(const CliffordOp& q)
      : n(q.n()), d(q.d()), c(detail::rows_of(q.c())) {}

  Int at(Int row, Int col) const { return c[row][col]; }

  void row_scale(Int qudit, Int r) {
    r = mod_norm(r, d);
    if (r == 1) return;
    const Int rinv = inverse_mod(r, d);
    for (Int j = 0; j < 2 * n; ++j) {
      c[qudit - 1][j] = mod_norm(c[qudit - 1][j] * r, d);
      c[n + qudit - 1][j] = mod_norm(c[n + qudit - 1][j] * rinv, d);
    }
    applied.push_back(ElementaryGate::scale_row(qudit, r));
  }

  // row_j += g row_i in the upper block; row_{n+i} -= g row_{n+j} below.
  void row_add(Int i, Int j, Int g) {
    g = mod_norm(g, d);
    if (g == 0) return;
    for (Int col = 0; col < 2 * n; ++col) {
      c[j - 1][col] = mod_norm(c[j - 1][col] + g * c[i - 1][col], d);
      c[n + i - 1][col] =
          mod_norm(c[n + i - 1][col] - g * c[n + j - 1][col], d);
    }
    applied.push_back(ElementaryGate::add_row(i, j, g));
  }

  void row_swap(Int i, Int j) {
    if (i == j) return;
    std::swap(c[i - 1], c[j - 1]);
    std::swap(c[n + i - 1], c[n + j - 1]);
    applied.push_back(
        ElementaryGate::qudit_swap(std::min(i, j), std::max(i, j)));
  }

  void fourier(Int i) {  // (row_i, row_{n+i}) <- (-row_{n+i}, row_i)
    for (Int col = 0; col < 2 * n; ++col) {
      const Int top = c[i - 1][col];
      c[i - 1][col] = mod_norm(-c[n + i - 1][col], d);
      c[n + i - 1][col] = top;
    }
    applied.push_back(ElementaryGate::fourier(i));
  }

  void fourier_inverse(Int i) {  // (row_i, row_{n+i}) <- (row_{n+i}, -row_i)
    for (Int col = 0; col < 2 * n; ++col) {
      const Int top = c[i - 1][col];
      c[i - 1][col] = c[n + i - 1][col];
      c[n + i - 1][col] = mod_norm(-top, d);
    }
    applied.push_back(ElementaryGate::fourier_inverse(i));
  }

  void phase(Int i, Int g) {  // row_{n+i} += g row_i
    g = mod_norm(g, d);
    if (g == 0) return;
    for (Int col = 0; col < 2 * n; ++col)
      c[n + i - 1][col] = mod_norm(c[n + i - 1][col] + g * c[i - 1][col], d);
    applied.push_back(ElementaryGate::phase_power(i, g));
  }

  // row_i += g row_{n+i}, realized as the phase conjugated by Fourier.
  void phase_up(Int i, Int g) {
    g = mod_norm(g, d);
    if (g == 0) return;
    fourier(i);
    phase(i, -g);
    fourier_inverse(i);
  }

  bool unit(Int v) const { return std::gcd(mod_norm(v, d), d) == 1; }

  // Euclid on (C[i][col], C[n+i][col]) inside one qudit: the gcd of the two
  // canonical lifts ends up in the upper entry, zero below.
  void pair_gcd_vertical(Int i, Int col) {
    for (;;) {
      const Int a = at(i - 1, col), b = at(n + i - 1, col);
      if (b == 0) return;
      if (a == 0) {
        fourier_inverse(i);  // (0, b) -> (b, 0)
        return;
      }
      if (a >= b)
        phase_up(i, -(a / b));
      else
        phase(i, -(b / a));
    }
  }

  // Euclid on two upper-block entries, gcd into row i, zero into row j.
  void pair_gcd_horizontal(Int i, Int j, Int col) {
    for (;;) {
      const Int a = at(i - 1, col), b = at(j - 1, col);
      if (b == 0) return;
      if (a == 0) {
        row_add(j, i, 1);   // (0, b) -> (b, b)
        row_add(i, j, -1);  // (b, b) -> (b, 0)
        continue;
      }
      if (a >= b)
        row_add(j, i, -(a / b));
      else
        row_add(i, j, -(b / a));
    }
  }
};

}  // namespace

GateSequence decompose(const CliffordOp& q) {
  const Int n = q.n(), d = q.d();
  Reduction r(q);

  for (Int k = 1; k <= n; ++k) {
    const Int col = k - 1, colz = n + k - 1;

    // Pivot hunt for an invertible C[k][k]: upper block, then lower block,
    // then the gcd cascade (pairs inside each qudit, then across qudits).
    if (!r.unit(r.at(k - 1, col))) {
      Int found = 0;
      for (Int i = k; i <= n && !found; ++i)
        if (r.unit(r.at(i - 1, col))) found = i;
      if (found) {
        r.row_swap(k, found);
      } else {
        for (Int i = k; i <= n && !found; ++i)
          if (r.unit(r.at(n + i - 1, col))) found = i;
        if (found) {
          r.row_swap(k, found);
          r.fourier(k);
        } else {
          for (Int i = k; i <= n; ++i) r.pair_gcd_vertical(i, col);
          for (Int i = k + 1; i <= n; ++i) r.pair_gcd_horizontal(k, i, col);
          require(r.unit(r.at(k - 1, col)), errc::internal_contract_violation,
                  "column content not invertible; input is not symplectic");
        }
      }
    }
    r.row_scale(k, inverse_mod(mod_norm(r.at(k - 1, col), d), d));

    // Column k -> E_k.
    for (Int i = k + 1; i <= n; ++i) r.row_add(k, i, -r.at(i - 1, col));
    r.phase(k, -r.at(n + k - 1, col));
    bool lower_left = false;
    for (Int i = k + 1; i <= n; ++i) lower_left |= r.at(n + i - 1, col) != 0;
    if (lower_left) {
      r.fourier(k);
      for (Int i = k + 1; i <= n; ++i)
        r.row_add(i, k, r.at(n + i - 1, col));  // clears via the lower block
      r.fourier_inverse(k);
    }

    // Column n+k -> E_{n+k}; symplecticity forces a unit pivot there.
    require(r.at(n + k - 1, colz) == 1, errc::internal_contract_violation,
            "symplecticity should force a unit pivot in column n+k");
    bool col_done = true;
    for (Int i = 0; i < 2 * n && col_done; ++i)
      col_done = r.at(i, colz) == (i == n + k - 1 ? 1 : 0);
    if (!col_done) {
      r.fourier(k);
      r.row_scale(k, d - 1);
      for (Int i = k + 1; i <= n; ++i) r.row_add(k, i, -r.at(i - 1, colz));
      r.phase(k, -r.at(n + k - 1, colz));
      r.fourier(k);
      for (Int i = k + 1; i <= n; ++i) r.row_add(i, k, r.at(n + i - 1, colz));
    }

    for (Int j = 0; j < 2 * n; ++j) {
      require(r.at(k - 1, j) == (j == k - 1 ? 1 : 0),
              errc::internal_contract_violation, "row k is not a unit row");
      require(r.at(n + k - 1, j) == (j == n + k - 1 ? 1 : 0),
              errc::internal_contract_violation, "row n+k is not a unit row");
    }
  }

  // Inverses in reverse order realize C. The phase gate inverts as the
  // power d-g only up to a Pauli factor, which the final correction absorbs,
  // so the reversal can stay within the [0, d) power range.
  GateSequence seq{d, n, {}};
  seq.gates.reserve(r.applied.size() + 1);
  for (auto it = r.applied.rbegin(); it != r.applied.rend(); ++it) {
    switch (it->kind) {
      case GateKind::qudit_swap:
        seq.gates.push_back(*it);
        break;
      case GateKind::scale_row:
        seq.gates.push_back(
            ElementaryGate::scale_row(it->i, inverse_mod(it->factor, d)));
        break;
      case GateKind::add_row:
        seq.gates.push_back(
            ElementaryGate::add_row(it->i, it->j, mod_norm(-it->factor, d)));
        break;
      case GateKind::fourier:
        seq.gates.push_back(ElementaryGate::fourier_inverse(it->i));
        break;
      case GateKind::fourier_inverse:
        seq.gates.push_back(ElementaryGate::fourier(it->i));
        break;
      case GateKind::phase_power: {
        const Int g = mod_norm(-it->factor, d);
        if (g != 0) seq.gates.push_back(ElementaryGate::phase_power(it->i, g));
        break;
      }
      case GateKind::pauli_correction:
        fail(errc::internal_contract_violation,
             "reduction never applies Pauli corrections");
    }
  }

  // One Pauli on the left fixes h: XZ(C P (h_target - h_gates) / 2).
  const CliffordOp folded = fold(seq);
  require(folded.c() == q.c(), errc::internal_contract_violation,
          "gate sequence does not reproduce C");
  std::vector<Int> half(static_cast<std::size_t>(2 * n));
  for (Int i = 0; i < 2 * n; ++i) {
    const Int diff = mod_norm(q.h()[i] - folded.h()[i], 2 * d);
    require(diff % 2 == 0, errc::internal_contract_violation,
            "phase mismatch against the gate product must be even");
    half[i] = diff / 2;
  }
  const auto sp = SymplecticForm::make(n, d);
  std::vector<Int> a = q.c().mul_vec(sp.p.mul_vec(half));
  bool nonzero = false;
  for (Int e : a) nonzero |= e != 0;
  if (nonzero) seq.gates.push_back(ElementaryGate::pauli_correction(a));

  require(static_cast<Int>(seq.gates.size()) <= decompose_gate_bound(n, d),
          errc::internal_contract_violation, "gate count bound exceeded");
  return seq;
}

}  // namespace qudit
