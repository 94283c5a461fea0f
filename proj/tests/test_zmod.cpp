#include <numeric>

#include "doctest.h"
#include "qudit/zmod.hpp"
#include "support/random_support.hpp"
#include "support/snf_oracle.hpp"

using namespace qudit;
using namespace qudit::testsupport;

TEST_CASE("ext_gcd on the pinned examples") {
  auto r = ext_gcd(6, 4);
  CHECK(r.g == 2);
  CHECK(r.u * 6 + r.v * 4 == 2);

  r = ext_gcd(0, 5);
  CHECK(r.g == 5);
  CHECK(r.u * 0 + r.v * 5 == 5);

  // Brute-force common-divisor scan as the oracle for (35, 21).
  Int expected = 1;
  for (Int c = 1; c <= 35; ++c)
    if (35 % c == 0 && 21 % c == 0) expected = c;
  r = ext_gcd(35, 21);
  CHECK(r.g == expected);
  CHECK(r.g == 7);
  CHECK(r.u * 35 + r.v * 21 == 7);
}

TEST_CASE("ext_gcd bezout identity over random pairs") {
  Rng rng(0x5eed01);
  for (int it = 0; it < 100000; ++it) {
    Int a = static_cast<Int>(rng() % 200001) - 100000;
    Int b = static_cast<Int>(rng() % 200001) - 100000;
    auto r = ext_gcd(a, b);
    CHECK(r.u * a + r.v * b == r.g);
    CHECK(r.g >= 0);
    if (r.g != 0) {
      CHECK(a % r.g == 0);
      CHECK(b % r.g == 0);
    } else {
      CHECK(a == 0);
      CHECK(b == 0);
    }
  }
}

TEST_CASE("inverse_mod") {
  CHECK(inverse_mod(3, 7) == 5);
  CHECK(inverse_mod(1, 5) == 1);
  CHECK(inverse_mod(1, 12) == 1);
  CHECK_THROWS_AS(inverse_mod(2, 4), DomainError);
  for (Int d : {2, 3, 4, 6, 8, 12, 15}) {
    for (Int r = 1; r < d; ++r) {
      if (std::gcd(r, d) != 1) continue;
      CHECK(mod_norm(r * inverse_mod(r, d), d) == 1);
    }
  }
}

TEST_CASE("unit_to_divisor maps entries to canonical divisors") {
  for (Int d : {2, 3, 4, 6, 8, 9, 12, 16, 30}) {
    for (Int e = 1; e < d; ++e) {
      const Int u = unit_to_divisor(e, d);
      CHECK(std::gcd(u, d) == 1);
      CHECK(mod_norm(u * e, d) == std::gcd(e, d));
    }
  }
}

namespace {

void check_snf_contract(const ResidueMatrix& a) {
  const Int d = a.modulus();
  const auto s = smith_normal_form(a);
  // K*A*L = F exactly.
  CHECK(s.k * a * s.l == s.f);
  // F diagonal with canonical-divisor entries.
  Int rank = 0;
  for (Int i = 0; i < s.f.rows(); ++i)
    for (Int j = 0; j < s.f.cols(); ++j) {
      if (i != j) CHECK(s.f(i, j) == 0);
    }
  for (Int i = 0; i < std::min(s.f.rows(), s.f.cols()); ++i) {
    const Int e = s.f(i, i);
    if (e != 0) {
      ++rank;
      CHECK(d % e == 0);
    }
  }
  CHECK(rank == s.rank_r);
  // Divisibility chain on the zero-means-d reading.
  for (Int i = 0; i + 1 < std::min(s.f.rows(), s.f.cols()); ++i) {
    const Int fi = s.f(i, i) == 0 ? d : s.f(i, i);
    const Int fj = s.f(i + 1, i + 1) == 0 ? d : s.f(i + 1, i + 1);
    CHECK(fj % fi == 0);
  }
  // K and L invertible mod d.
  CHECK(invert_matrix(s.k) * s.k == ResidueMatrix::identity(s.k.rows(), d));
  CHECK(invert_matrix(s.l) * s.l == ResidueMatrix::identity(s.l.rows(), d));
}

}  // namespace

TEST_CASE("smith_normal_form pinned examples") {
  // Permutation is unimodular.
  auto a = ResidueMatrix::from_rows({{0, 1}, {1, 0}}, 6);
  auto s = smith_normal_form(a);
  CHECK(s.f == ResidueMatrix::from_rows({{1, 0}, {0, 1}}, 6));
  CHECK(s.rank_r == 2);

  // Oracle: integer Smith form of the lift augmented with 6*I, mod 6.
  a = ResidueMatrix::from_rows({{2, 4}, {4, 2}}, 6);
  const auto expected = expected_smith_diagonal(a);
  REQUIRE(expected.tail_trivial);
  REQUIRE(expected.diagonal == std::vector<Int>{2, 0});
  s = smith_normal_form(a);
  CHECK(s.f(0, 0) == 2);
  CHECK(s.f(1, 1) == 0);
  CHECK(s.rank_r == 1);
  check_snf_contract(a);

  // Zero matrix of a few shapes.
  for (auto [r, c] : {std::pair<Int, Int>{1, 1}, {2, 3}, {3, 2}}) {
    ResidueMatrix z(r, c, 5);
    s = smith_normal_form(z);
    CHECK(s.f.is_zero());
    CHECK(s.k == ResidueMatrix::identity(r, 5));
    CHECK(s.l == ResidueMatrix::identity(c, 5));
    CHECK(s.rank_r == 0);
  }
}

TEST_CASE("smith_normal_form agrees with the minor-gcd oracle") {
  Rng rng(0x5eed02);
  for (Int d : {2, 3, 4, 6, 8, 12}) {
    for (int it = 0; it < 250; ++it) {
      const Int r = 1 + rand_below(rng, 4);
      const Int c = 1 + rand_below(rng, 4);
      const auto a = random_matrix(rng, r, c, d);
      const auto expected = expected_smith_diagonal(a);
      CHECK(expected.tail_trivial);
      const auto s = smith_normal_form(a);
      std::vector<Int> got;
      for (Int i = 0; i < std::min(r, c); ++i) got.push_back(s.f(i, i));
      CHECK(got == expected.diagonal);
    }
  }
}

TEST_CASE("smith_normal_form contract over random matrices") {
  Rng rng(0x5eed03);
  for (Int d : {2, 3, 4, 6, 8, 12}) {
    for (int it = 0; it < 120; ++it) {
      const Int r = 1 + rand_below(rng, 6);
      const Int c = 1 + rand_below(rng, 6);
      check_snf_contract(random_matrix(rng, r, c, d));
    }
  }
}

TEST_CASE("smith diagonal invariant under invertible pre/post factors") {
  Rng rng(0x5eed04);
  for (Int d : {2, 3, 4, 6, 8, 12}) {
    for (int it = 0; it < 80; ++it) {
      const Int r = 1 + rand_below(rng, 5);
      const Int c = 1 + rand_below(rng, 5);
      const auto a = random_matrix(rng, r, c, d);
      const auto p = random_invertible(rng, r, d);
      const auto q = random_invertible(rng, c, d);
      CHECK(smith_normal_form(p * a * q).f == smith_normal_form(a).f);
    }
  }
}

TEST_CASE("invert_matrix") {
  for (Int d : {2, 3, 5, 6, 12}) {
    auto i4 = ResidueMatrix::identity(4, d);
    CHECK(invert_matrix(i4) == i4);
  }

  // Exhaustive oracle over Z_3^{2x2}: the unique X with A*X = I.
  const auto a = ResidueMatrix::from_rows({{0, 2}, {1, 0}}, 3);
  const auto id = ResidueMatrix::identity(2, 3);
  ResidueMatrix found(2, 2, 3);
  int hits = 0;
  for (Int e0 = 0; e0 < 3; ++e0)
    for (Int e1 = 0; e1 < 3; ++e1)
      for (Int e2 = 0; e2 < 3; ++e2)
        for (Int e3 = 0; e3 < 3; ++e3) {
          auto x = ResidueMatrix::from_rows({{e0, e1}, {e2, e3}}, 3);
          if (a * x == id) {
            found = x;
            ++hits;
          }
        }
  REQUIRE(hits == 1);
  CHECK(found == ResidueMatrix::from_rows({{0, 1}, {2, 0}}, 3));
  CHECK(invert_matrix(a) == found);

  CHECK_THROWS_AS(invert_matrix(ResidueMatrix::from_rows({{2, 0}, {0, 1}}, 4)),
                  DomainError);

  Rng rng(0x5eed05);
  for (Int d : {2, 3, 4, 6, 9}) {
    for (int it = 0; it < 40; ++it) {
      const Int nn = 1 + rand_below(rng, 4);
      const auto m = random_invertible(rng, nn, d);
      CHECK(m * invert_matrix(m) == ResidueMatrix::identity(nn, d));
      CHECK(invert_matrix(m) * m == ResidueMatrix::identity(nn, d));
    }
  }
}

namespace {

// Enumerates G_q̄ and counts solutions of the row-wise system.
std::pair<int, std::vector<Int>> brute_force_solutions(
    const MixedModulusSystem& sys) {
  const Int n = sys.coefficient.cols();
  const Int m = sys.coefficient.rows();
  std::vector<Int> x(static_cast<std::size_t>(n), 0);
  int count = 0;
  std::vector<Int> hit;
  for (;;) {
    bool ok = true;
    for (Int j = 0; j < m && ok; ++j) {
      Int acc = 0;
      for (Int i = 0; i < n; ++i) acc += sys.coefficient(j, i) * x[i];
      ok = mod_norm(acc, sys.moduli[j]) ==
           mod_norm(sys.rhs[j], sys.moduli[j]);
    }
    if (ok) {
      ++count;
      hit = x;
    }
    Int pos = n - 1;
    while (pos >= 0) {
      if (++x[pos] < sys.solution_moduli[pos]) break;
      x[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return {count, hit};
}

}  // namespace

TEST_CASE("solve_mixed_modulus pinned examples") {
  // The d=4 single-qudit system from the worked stabilizer example.
  MixedModulusSystem sys{ResidueMatrix::from_rows({{0}, {2}}, 4),
                         {0, 0},
                         {2, 4},
                         {2}};
  auto [count, expected] = brute_force_solutions(sys);
  REQUIRE(count == 1);
  CHECK(solve_mixed_modulus(sys) == expected);
  CHECK(solve_mixed_modulus(sys) == std::vector<Int>{0});

  // Identity coefficient: solution is just the rhs.
  for (Int d : {3, 4, 6}) {
    MixedModulusSystem idsys{ResidueMatrix::identity(3, d),
                             {1 % d, d - 1, 0},
                             {d, d, d},
                             {d, d, d}};
    CHECK(solve_mixed_modulus(idsys) ==
          std::vector<Int>{1 % d, d - 1, 0});
  }

  // 2x is even mod 4, so rhs 1 is unreachable.
  MixedModulusSystem bad{ResidueMatrix::from_rows({{2}}, 4), {1}, {4}, {4}};
  CHECK_THROWS_AS(solve_mixed_modulus(bad), DomainError);
}

TEST_CASE("solve_mixed_modulus matches exhaustive search") {
  // Systems are generated well-posed (the row residues only depend on x
  // modulo the solution moduli), which is what the normal-form pipeline
  // guarantees; on such systems solve and brute force must agree exactly.
  Rng rng(0x5eed06);
  for (Int d : {2, 3, 4, 6, 8, 12}) {
    std::vector<Int> divisors;
    for (Int q = 1; q <= d; ++q)
      if (d % q == 0) divisors.push_back(q);
    auto pick = [&](Rng& r) {
      return divisors[rand_below(r, static_cast<Int>(divisors.size()))];
    };
    for (int it = 0; it < 150; ++it) {
      const Int n = 1 + rand_below(rng, 3);
      const Int m = n + rand_below(rng, 3);
      MixedModulusSystem sys{ResidueMatrix(m, n, d), {}, {}, {}};
      for (Int j = 0; j < m; ++j) sys.moduli.push_back(pick(rng));
      for (Int i = 0; i < n; ++i) sys.solution_moduli.push_back(pick(rng));
      for (Int j = 0; j < m; ++j) {
        for (Int i = 0; i < n; ++i) {
          // q̄_i * B_ji = 0 mod q_j keeps the system well-posed.
          const Int step =
              sys.moduli[j] / std::gcd(sys.moduli[j], sys.solution_moduli[i]);
          sys.coefficient.set(j, i, step * rand_below(rng, d / step));
        }
        sys.rhs.push_back(rand_below(rng, sys.moduli[j]));
      }

      const auto [count, expected] = brute_force_solutions(sys);
      try {
        const auto got = solve_mixed_modulus(sys);
        // Success implies the solution exists, is unique, and matches.
        CHECK(count == 1);
        CHECK(got == expected);
      } catch (const DomainError& e) {
        if (e.code() == errc::inconsistent)
          CHECK(count == 0);
        else if (e.code() == errc::internal_contract_violation)
          CHECK(count > 1);
        else
          FAIL("unexpected error: ", e.what());
      }
    }
  }
}
