#include <set>

#include "doctest.h"
#include "qudit/oracle.hpp"
#include "support/ops_support.hpp"

using namespace qudit;
using namespace qudit::testsupport;

namespace {

StabilizerGenerators make(Int d, Int n,
                          const std::vector<std::vector<Int>>& rows,
                          std::vector<Int> f) {
  (void)n;
  return StabilizerGenerators(ResidueMatrix::from_rows(rows, d), std::move(f));
}

PauliElement generator_of(const StabilizerGenerators& st, Int k) {
  std::vector<Int> col;
  for (Int i = 0; i < 2 * st.n(); ++i) col.push_back(st.s()(i, k));
  return PauliElement(st.d(), st.n(), std::move(col), st.f()[k]);
}

// Every phase-decorated element of the generated group, by closure.
std::set<std::pair<std::vector<Int>, Int>> enumerate_group(
    const StabilizerGenerators& st, std::size_t limit = 5000) {
  std::set<std::pair<std::vector<Int>, Int>> seen;
  std::vector<PauliElement> frontier{PauliElement::identity(st.d(), st.n())};
  seen.insert({frontier.front().a(), frontier.front().delta()});
  while (!frontier.empty()) {
    const PauliElement cur = frontier.back();
    frontier.pop_back();
    for (Int k = 0; k < st.m(); ++k) {
      const PauliElement next = multiply(cur, generator_of(st, k));
      if (seen.insert({next.a(), next.delta()}).second) {
        REQUIRE(seen.size() <= limit);
        frontier.push_back(next);
      }
    }
  }
  return seen;
}

oracle::State dense_state(const StabilizerGenerators& st) {
  return oracle::state_from_expansion(expand(st));
}

// The expansion vector must be a fixed point of every generator.
void check_eigenvector(const StabilizerGenerators& st, double tol = 1e-9) {
  const oracle::State v = dense_state(st);
  CHECK(std::abs(v.norm() - 1.0) <= tol);
  for (Int k = 0; k < st.m(); ++k) {
    const oracle::State w = oracle::apply_pauli(generator_of(st, k), v);
    CHECK((w - v).cwiseAbs().maxCoeff() <= tol);
  }
}

}  // namespace

TEST_CASE("validate_stabilizer pinned examples") {
  CHECK_NOTHROW(make(3, 1, {{0}, {1}}, {0}));  // <Z> fixes |0>

  // The d=4 two-generator example: <X^2, Z^2>.
  CHECK_NOTHROW(make(4, 1, {{2, 0}, {0, 2}}, {0, 0}));

  try {
    make(4, 1, {{2, 0}, {0, 2}}, {1, 0});
    FAIL("expected PhaseConditionViolation");
  } catch (const DomainError& e) {
    CHECK(e.code() == errc::phase_condition_violation);
  }

  // X and Z do not commute.
  try {
    make(2, 1, {{1, 0}, {0, 1}}, {0, 0});
    FAIL("expected NonCommuting");
  } catch (const DomainError& e) {
    CHECK(e.code() == errc::non_commuting);
  }

  // <Z^2> alone generates only 2 of the required 4 elements for d=4.
  try {
    make(4, 1, {{0}, {2}}, {0});
    FAIL("expected WrongGroupSize");
  } catch (const DomainError& e) {
    CHECK(e.code() == errc::wrong_group_size);
  }
}

TEST_CASE("minimize_generators") {
  // d=4: columns {[2;0],[0;2],[2;2]} reduce to two generators of the
  // same phase-decorated group.
  const auto st = make(4, 1, {{2, 0, 2}, {0, 2, 2}}, {0, 0, 0});
  const auto min = minimize_generators(st);
  CHECK(min.m() == 2);
  CHECK(enumerate_group(min) == enumerate_group(st));

  // Already minimal: the group is preserved and m stays put.
  const auto st2 = make(4, 1, {{2, 0}, {0, 2}}, {0, 0});
  const auto min2 = minimize_generators(st2);
  CHECK(min2.m() == 2);
  CHECK(enumerate_group(min2) == enumerate_group(st2));

  // Prime d always reaches m = n.
  Rng rng(0x57ab1);
  for (Int d : {2, 3, 5, 7}) {
    for (int it = 0; it < 30; ++it) {
      const Int n = 1 + rand_below(rng, 3);
      const auto r = random_stabilizer(rng, n, d);
      CHECK(minimize_generators(r).m() == n);
    }
  }
}

TEST_CASE("minimization preserves the phase-decorated group") {
  Rng rng(0x57ab2);
  for (Int d : {2, 3, 4, 6, 8}) {
    for (int it = 0; it < 25; ++it) {
      const Int n = 1 + rand_below(rng, 2);
      if (std::pow(double(d), double(n)) > 64) continue;
      const auto st = random_stabilizer(rng, n, d);
      const auto fat = inflate_generators(rng, st, 1 + rand_below(rng, 2));
      const auto min = minimize_generators(fat);
      CHECK(min.m() <= fat.m());
      CHECK(min.m() >= n);
      CHECK(enumerate_group(min) == enumerate_group(st));
    }
  }
}

TEST_CASE("change_generators") {
  const auto st = make(4, 1, {{2, 0}, {0, 2}}, {0, 0});
  CHECK(change_generators(st, ResidueMatrix::identity(2, 4)) == st);

  // R = [[1,1],[0,1]] turns the generators into {X^2, X^2 Z^2}, phases +1.
  const auto st2 =
      change_generators(st, ResidueMatrix::from_rows({{1, 1}, {0, 1}}, 4));
  CHECK(st2.s() == ResidueMatrix::from_rows({{2, 2}, {0, 2}}, 4));
  CHECK(st2.f() == std::vector<Int>{0, 0});
  CHECK(enumerate_group(st2) == enumerate_group(st));

  // Column swap.
  const auto st3 =
      change_generators(st, ResidueMatrix::from_rows({{0, 1}, {1, 0}}, 4));
  CHECK(st3.s() == ResidueMatrix::from_rows({{0, 2}, {2, 0}}, 4));
  CHECK(enumerate_group(st3) == enumerate_group(st));

  CHECK_THROWS_AS(
      change_generators(st, ResidueMatrix::from_rows({{2, 0}, {0, 1}}, 4)),
      DomainError);

  Rng rng(0x57ab3);
  for (Int d : {2, 3, 4, 6, 9}) {
    for (int it = 0; it < 20; ++it) {
      const Int n = 1 + rand_below(rng, 2);
      const auto base = random_stabilizer(rng, n, d);
      const auto r = random_invertible(rng, base.m(), d);
      const auto changed = change_generators(base, r);
      CHECK(enumerate_group(changed) == enumerate_group(base));
      // The described state is untouched (up to the global phase of the
      // emitted representative).
      CHECK(oracle::equal_up_to_global_phase(dense_state(changed),
                                             dense_state(base)));
    }
  }
}

TEST_CASE("apply_clifford") {
  const auto z0 = make(3, 1, {{0}, {1}}, {0});
  CHECK(apply_clifford(z0, CliffordOp::identity(3, 1)) == z0);

  const auto st = apply_clifford(z0, fourier(1, 1, 3));
  CHECK(st.s() == ResidueMatrix::from_rows({{2}, {0}}, 3));
  CHECK(st.f() == std::vector<Int>{0});

  // CNOT flow for d=2: Z_1 -> Z_1, Z_2 -> Z_1 Z_2.
  const auto zz = make(2, 2, {{0, 0}, {0, 0}, {1, 0}, {0, 1}}, {0, 0});
  const auto sum = gate_to_clifford(ElementaryGate::add_row(1, 2, 1), 2, 2);
  const auto flowed = apply_clifford(zz, sum);
  CHECK(flowed.s() ==
        ResidueMatrix::from_rows({{0, 0}, {0, 0}, {1, 1}, {0, 1}}, 2));
  CHECK(flowed.f() == std::vector<Int>{0, 0});

  // Dense consistency: U |psi> equals the new state's expansion.
  Rng rng(0x57ab4);
  for (auto [d, n] : std::vector<std::pair<Int, Int>>{
           {2, 2}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {5, 1}, {6, 1}, {6, 2},
           {8, 1}, {9, 1}, {12, 1}}) {
    for (int it = 0; it < 10; ++it) {
      const auto st0 = random_stabilizer(rng, n, d);
      const auto seq = random_sequence(rng, n, d, 6);
      const auto moved = apply_clifford(st0, fold(seq));
      const oracle::State expected =
          oracle::sequence_operator(seq) * dense_state(st0);
      CHECK(oracle::equal_up_to_global_phase(dense_state(moved), expected));
    }
  }
}

TEST_CASE("normal_form on the d=4 worked example") {
  const auto st = make(4, 1, {{2, 0}, {0, 2}}, {0, 0});
  const auto ef = normal_form(st);
  CHECK(ef.n == 1);
  CHECK(ef.m == 2);
  CHECK(ef.rank_r == 1);
  CHECK(ef.q == ResidueMatrix::from_rows({{2, 0}}, 4));
  CHECK(ef.b == ResidueMatrix::from_rows({{0, 2}}, 4));
  CHECK(ef.q_bar == std::vector<Int>{2});
  CHECK(ef.q_vec == std::vector<Int>{2, 4});
  CHECK(ef.f_prime == std::vector<Int>{0, 0});
  CHECK(ef.x_star == std::vector<Int>{0});
  CHECK(ef.m_form == ResidueMatrix::from_rows({{0}}, 4));
  CHECK(ef.p == std::vector<Int>{0});
}

TEST_CASE("normal_form on the computational basis stabilizer") {
  const auto st = make(3, 1, {{0}, {1}}, {0});
  const auto ef = normal_form(st);
  CHECK(ef.rank_r == 0);
  CHECK(ef.q == ResidueMatrix::from_rows({{0}}, 3));
  CHECK(ef.q_bar == std::vector<Int>{3});
  CHECK(ef.x_star == std::vector<Int>{0});
  const auto e = expand(st);
  REQUIRE(e.terms.size() == 1);
  CHECK(e.terms[0].label == std::vector<Int>{0});
  CHECK(e.terms[0].zeta_exponent == 0);
  CHECK(e.normalization == 1.0);
}

TEST_CASE("expand pinned examples") {
  // (|0> + |2>)/sqrt(2) with both exponents zero.
  const auto e4 = expand(make(4, 1, {{2, 0}, {0, 2}}, {0, 0}));
  REQUIRE(e4.terms.size() == 2);
  CHECK(e4.terms[0].label == std::vector<Int>{0});
  CHECK(e4.terms[0].zeta_exponent == 0);
  CHECK(e4.terms[1].label == std::vector<Int>{2});
  CHECK(e4.terms[1].zeta_exponent == 0);
  CHECK(e4.normalization == 0.7071067811865476);

  // |0> for d=5.
  const auto e5 = expand(make(5, 1, {{0}, {1}}, {0}));
  REQUIRE(e5.terms.size() == 1);
  CHECK(e5.terms[0].label == std::vector<Int>{0});

  // The Fourier image of |0> is the uniform superposition with flat phases.
  const auto uniform = expand(
      apply_clifford(make(3, 1, {{0}, {1}}, {0}), fourier(1, 1, 3)));
  REQUIRE(uniform.terms.size() == 3);
  for (const auto& term : uniform.terms) CHECK(term.zeta_exponent == 0);
}

TEST_CASE("expand_raw keeps periodic repeats") {
  const auto raw = expand_raw(make(4, 1, {{2, 0}, {0, 2}}, {0, 0}));
  REQUIRE(raw.terms.size() == 4);
  const std::vector<Int> labels{raw.terms[0].label[0], raw.terms[1].label[0],
                                raw.terms[2].label[0], raw.terms[3].label[0]};
  CHECK(labels == std::vector<Int>{0, 2, 0, 2});
  for (const auto& term : raw.terms) CHECK(term.zeta_exponent == 0);

  const auto raw2 = expand_raw(make(2, 1, {{0}, {1}}, {0}));
  REQUIRE(raw2.terms.size() == 2);
  CHECK(raw2.terms[0].label == raw2.terms[1].label);
  CHECK(raw2.terms[0].zeta_exponent == raw2.terms[1].zeta_exponent);
}

TEST_CASE("expand_generic pinned examples") {
  // d=4 example collapses to the same two-term state.
  const auto st = make(4, 1, {{2, 0}, {0, 2}}, {0, 0});
  const auto dedup = collapse_expansion(expand_generic(st));
  const auto direct = collapse_expansion(expand(st));
  CHECK(dedup.terms == direct.terms);
  CHECK(dedup.normalization == direct.normalization);

  // <X> for d=3 spreads |0> uniformly.
  const auto ux = collapse_expansion(expand_generic(make(3, 1, {{1}, {0}}, {0})));
  CHECK(ux.terms.size() == 3);

  // <Z> keeps a single label.
  const auto uz = collapse_expansion(expand_generic(make(3, 1, {{0}, {1}}, {0})));
  CHECK(uz.terms.size() == 1);
}

TEST_CASE("random states: eigenvector, collapse, and uniqueness properties") {
  Rng rng(0x57ab5);
  for (auto [d, n] : std::vector<std::pair<Int, Int>>{
           {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {3, 3}, {4, 1}, {4, 2},
           {5, 1}, {5, 2}, {6, 1}, {6, 2}, {8, 1}, {9, 1}, {12, 1}}) {
    for (int it = 0; it < 12; ++it) {
      const auto st = random_stabilizer(rng, n, d);
      check_eigenvector(st);

      const auto e = expand(st);
      const auto ef = normal_form(st);
      // Term count is prod d/q_i over the nonzero block.
      Int count = 1;
      for (Int i = 0; i < ef.rank_r; ++i) count *= d / ef.q_bar[i];
      CHECK(static_cast<Int>(e.terms.size()) == count);

      // Raw and generic sums collapse onto the deduplicated expansion.
      const auto collapsed = collapse_expansion(expand_raw(st));
      CHECK(collapsed.terms == collapse_expansion(e).terms);
      if (std::pow(double(d), double(st.m())) <= 100000.0) {
        const auto gen_collapsed = collapse_expansion(expand_generic(st));
        CHECK(gen_collapsed.terms == collapse_expansion(e).terms);
      }

      // x* is the unique solution in G_q̄ (brute force when small).
      Int size_gq = 1;
      bool small = true;
      for (Int qi : ef.q_bar) {
        size_gq *= qi;
        small = small && size_gq <= 10000;
      }
      if (small) {
        int hits = 0;
        std::vector<Int> x(static_cast<std::size_t>(n), 0);
        std::vector<Int> found;
        for (;;) {
          bool ok = true;
          for (Int j = 0; j < ef.m && ok; ++j) {
            Int acc = 0;
            for (Int i = 0; i < n; ++i) acc += ef.b(i, j) * x[i];
            const Int num =
                j < n ? (d - ef.q_vec[j]) * ef.b(j, j) + ef.f_prime[j]
                      : ef.f_prime[j];
            ok = mod_norm(acc, ef.q_vec[j]) ==
                 mod_norm(-(num / 2), ef.q_vec[j]);
          }
          if (ok) {
            ++hits;
            found = x;
          }
          Int pos = n - 1;
          while (pos >= 0 && ++x[pos] >= ef.q_bar[pos]) x[pos--] = 0;
          if (pos < 0) break;
        }
        CHECK(hits == 1);
        CHECK(found == ef.x_star);
      }
    }
  }
}

TEST_CASE("textbook entangled states") {
  // Bell pair: <XX, ZZ> describes (|00> + |11>)/sqrt(2).
  const auto bell = make(2, 2, {{1, 0}, {1, 0}, {0, 1}, {0, 1}}, {0, 0});
  const auto eb = expand(bell);
  REQUIRE(eb.terms.size() == 2);
  CHECK(eb.terms[0].label == std::vector<Int>{0, 0});
  CHECK(eb.terms[1].label == std::vector<Int>{1, 1});
  CHECK(eb.terms[0].zeta_exponent == 0);
  CHECK(eb.terms[1].zeta_exponent == 0);
  CHECK(eb.normalization == 0.7071067811865476);

  // Qutrit GHZ: <XXX, Z1 Z2^{-1}, Z2 Z3^{-1}> describes
  // (|000> + |111> + |222>)/sqrt(3).
  const auto ghz = make(3, 3,
                        {{1, 0, 0},
                         {1, 0, 0},
                         {1, 0, 0},
                         {0, 1, 0},
                         {0, 2, 1},
                         {0, 0, 2}},
                        {0, 0, 0});
  const auto eg = collapse_expansion(expand(ghz));
  REQUIRE(eg.terms.size() == 3);
  for (Int j = 0; j < 3; ++j) {
    CHECK(eg.terms[j].label == std::vector<Int>{j, j, j});
    CHECK(eg.terms[j].zeta_exponent == 0);
  }
  check_eigenvector(ghz);
}

TEST_CASE("product states expand as tensor products") {
  Rng rng(0x57ab6);
  for (Int d : {2, 3, 4, 6}) {
    for (int it = 0; it < 10; ++it) {
      const auto a = random_stabilizer(rng, 1, d);
      const auto b = random_stabilizer(rng, 1, d);
      // Direct sum of the two one-qudit generator sets.
      ResidueMatrix s(4, a.m() + b.m(), d);
      std::vector<Int> f;
      for (Int j = 0; j < a.m(); ++j) {
        s.set(0, j, a.s()(0, j));
        s.set(2, j, a.s()(1, j));
        f.push_back(a.f()[j]);
      }
      for (Int j = 0; j < b.m(); ++j) {
        s.set(1, a.m() + j, b.s()(0, j));
        s.set(3, a.m() + j, b.s()(1, j));
        f.push_back(b.f()[j]);
      }
      const StabilizerGenerators joint(s, f);
      oracle::State kron(d * d);
      const auto va = dense_state(a), vb = dense_state(b);
      for (Int i = 0; i < d; ++i)
        for (Int j = 0; j < d; ++j) kron(i * d + j) = va(i) * vb(j);
      CHECK(oracle::equal_up_to_global_phase(dense_state(joint), kron));
    }
  }
}

TEST_CASE("minimized sets satisfy the column independence property") {
  // If sum_k r_k S_k = 0 then every r_k S_k = 0 on a minimized matrix.
  Rng rng(0x57ab8);
  for (Int d : {4, 6, 8, 9, 12}) {
    for (int it = 0; it < 40; ++it) {
      const Int n = 1 + rand_below(rng, 2);
      const auto min = minimize_generators(random_stabilizer(rng, n, d));
      CHECK(min.m() >= n);
      CHECK(min.m() <= 2 * n);
      for (int trial = 0; trial < 50; ++trial) {
        const auto r = random_vector(rng, min.m(), d);
        bool sum_zero = true;
        for (Int i = 0; i < 2 * n && sum_zero; ++i) {
          Int acc = 0;
          for (Int j = 0; j < min.m(); ++j) acc += r[j] * min.s()(i, j);
          sum_zero = mod_norm(acc, d) == 0;
        }
        if (!sum_zero) continue;
        for (Int j = 0; j < min.m(); ++j)
          for (Int i = 0; i < 2 * n; ++i)
            CHECK(mod_norm(r[j] * min.s()(i, j), d) == 0);
      }
    }
  }
}

TEST_CASE("odd-d stabilizer form") {
  const auto z0 = make(3, 1, {{0}, {1}}, {0});
  CHECK(to_odd_stabilizer_form(z0).b == std::vector<Int>{0});

  CHECK_THROWS_AS(to_odd_stabilizer_form(make(4, 1, {{2, 0}, {0, 2}}, {0, 0})),
                  DomainError);

  Rng rng(0x57ab7);
  for (Int d : {3, 5, 7, 9}) {
    for (int it = 0; it < 25; ++it) {
      const Int n = 1 + rand_below(rng, 2);
      const auto base = random_stabilizer(rng, n, d);
      const auto odd = to_odd_stabilizer_form(base);
      CHECK(from_odd_stabilizer_form(odd) == base);

      // Half-phase generator change and Clifford action agree with the
      // general route after conversion.
      const auto r = random_invertible(rng, base.m(), d);
      CHECK(from_odd_stabilizer_form(odd_change_generators(odd, r)) ==
            change_generators(base, r));
      const auto q = random_clifford(rng, n, d);
      CHECK(from_odd_stabilizer_form(odd_apply_clifford(odd, to_odd_form(q))) ==
            apply_clifford(base, q));

      // Termwise identical expansions.
      const auto oe = odd_expand(odd);
      const auto ge = expand(base);
      CHECK(oe.terms == ge.terms);
      CHECK(oe.normalization == ge.normalization);
    }
  }

  // b doubles back to f, e.g. f = [4] -> b = [2] for d = 3.
  for (Int dd : {3, 5}) {
    Rng rng2(7);
    for (int it = 0; it < 20; ++it) {
      const auto s = random_stabilizer(rng2, 1 + rand_below(rng2, 2), dd);
      const auto odd = to_odd_stabilizer_form(s);
      for (Int k = 0; k < s.m(); ++k)
        CHECK(mod_norm(2 * odd.b[k], 2 * dd) == s.f()[k]);
    }
  }
}
