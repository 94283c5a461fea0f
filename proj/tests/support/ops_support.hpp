// Random Clifford operations (as random gate sequences) and random
// stabilizer states (per-qudit divisor bases pushed through random
// Cliffords), shared by the unit and acceptance suites.
#pragma once

#include "qudit/decomp.hpp"
#include "qudit/stabilizer.hpp"
#include "support/random_support.hpp"

namespace qudit::testsupport {

inline ElementaryGate random_gate(Rng& rng, Int n, Int d) {
  for (;;) {
    switch (rand_below(rng, 7)) {
      case 0: {
        if (n < 2) break;
        const Int i = 1 + rand_below(rng, n);
        Int j = 1 + rand_below(rng, n - 1);
        if (j >= i) ++j;
        return ElementaryGate::qudit_swap(std::min(i, j), std::max(i, j));
      }
      case 1:
        return ElementaryGate::scale_row(1 + rand_below(rng, n),
                                         random_unit(rng, d));
      case 2: {
        if (n < 2) break;
        const Int i = 1 + rand_below(rng, n);
        Int j = 1 + rand_below(rng, n - 1);
        if (j >= i) ++j;
        return ElementaryGate::add_row(i, j, rand_below(rng, d));
      }
      case 3:
        return ElementaryGate::fourier(1 + rand_below(rng, n));
      case 4:
        return ElementaryGate::fourier_inverse(1 + rand_below(rng, n));
      case 5:
        return ElementaryGate::phase_power(1 + rand_below(rng, n),
                                           rand_below(rng, d));
      case 6:
        return ElementaryGate::pauli_correction(random_vector(rng, 2 * n, d));
    }
  }
}

inline GateSequence random_sequence(Rng& rng, Int n, Int d, Int length) {
  GateSequence seq{d, n, {}};
  seq.gates.reserve(static_cast<std::size_t>(length));
  for (Int i = 0; i < length; ++i) seq.gates.push_back(random_gate(rng, n, d));
  return seq;
}

inline CliffordOp random_clifford(Rng& rng, Int n, Int d, Int length = 8) {
  return fold(random_sequence(rng, n, d, length));
}

// Stabilizer of the product state with one divisor e | d per qudit: the
// qudit factor is the uniform superposition over {0, e, 2e, ...}, so the
// one-qudit stabilizer is <X^e, Z^{d/e}> (one generator when e is 1 or d).
inline StabilizerGenerators divisor_base_state(const std::vector<Int>& es,
                                               Int d) {
  const Int n = static_cast<Int>(es.size());
  std::vector<std::vector<Int>> cols;
  for (Int i = 0; i < n; ++i) {
    const Int e = es[i];
    auto col = [&](Int idx, Int val) {
      std::vector<Int> c(static_cast<std::size_t>(2 * n), 0);
      c[idx] = val;
      return c;
    };
    if (e != d) cols.push_back(col(i, e));              // X^e
    if (e != 1) cols.push_back(col(n + i, d / e));      // Z^{d/e}
  }
  ResidueMatrix s(2 * n, static_cast<Int>(cols.size()), d);
  for (Int j = 0; j < static_cast<Int>(cols.size()); ++j)
    for (Int i = 0; i < 2 * n; ++i) s.set(i, j, cols[j][i]);
  return StabilizerGenerators(
      s, std::vector<Int>(cols.size(), 0));
}

inline std::vector<Int> divisors_of(Int d) {
  std::vector<Int> out;
  for (Int e = 1; e <= d; ++e)
    if (d % e == 0) out.push_back(e);
  return out;
}

inline StabilizerGenerators random_stabilizer(Rng& rng, Int n, Int d,
                                              Int gate_length = 8) {
  const auto divs = divisors_of(d);
  std::vector<Int> es;
  for (Int i = 0; i < n; ++i)
    es.push_back(divs[rand_below(rng, static_cast<Int>(divs.size()))]);
  const auto base = divisor_base_state(es, d);
  return apply_clifford(base, random_clifford(rng, n, d, gate_length));
}

// Appends redundant generators (products of existing ones) so minimization
// has something to do; the generated group is unchanged.
inline StabilizerGenerators inflate_generators(Rng& rng,
                                               const StabilizerGenerators& st,
                                               Int extra) {
  const Int d = st.d(), n = st.n(), m = st.m();
  std::vector<std::vector<Int>> cols;
  std::vector<Int> f;
  for (Int j = 0; j < m; ++j) {
    std::vector<Int> c;
    for (Int i = 0; i < 2 * n; ++i) c.push_back(st.s()(i, j));
    cols.push_back(std::move(c));
    f.push_back(st.f()[j]);
  }
  for (Int e = 0; e < extra; ++e) {
    PauliElement acc = PauliElement::identity(d, n);
    for (Int j = 0; j < m; ++j) {
      const Int power = rand_below(rng, d);
      const PauliElement gen(d, n, cols[j], f[j]);
      for (Int rep = 0; rep < power; ++rep) acc = multiply(acc, gen);
    }
    cols.push_back(acc.a());
    f.push_back(acc.delta());
  }
  ResidueMatrix s(2 * n, static_cast<Int>(cols.size()), d);
  for (Int j = 0; j < static_cast<Int>(cols.size()); ++j)
    for (Int i = 0; i < 2 * n; ++i) s.set(i, j, cols[j][i]);
  return StabilizerGenerators(s, f);
}

}  // namespace qudit::testsupport
