// Exact linear algebra over the residue rings Z_d: canonical residues,
// extended Euclid, modular inverses, Smith normal form with invertible
// transformation matrices, matrix inversion mod d, and the per-row-modulus
// linear solver used by the stabilizer normal form.
//
// All values are immutable after construction and all operations are pure;
// arithmetic stays within int64 for d <= 2^15 and dimensions <= 2^10, which
// construction enforces.
#pragma once

#include <cstdint>
#include <vector>

#include "qudit/errors.hpp"

namespace qudit {

using Int = std::int64_t;

inline constexpr Int kMaxModulus = Int{1} << 15;
inline constexpr Int kMaxDimension = Int{1} << 10;

// Canonical representative of v modulo m, in [0, m).
constexpr Int mod_norm(Int v, Int m) {
  Int r = v % m;
  return r < 0 ? r + m : r;
}

struct ExtGcdResult {
  Int g;  // gcd(a, b) >= 0
  Int u;  // u*a + v*b = g
  Int v;
};

ExtGcdResult ext_gcd(Int a, Int b);

// Multiplicative inverse of r modulo d; requires gcd(r, d) = 1.
Int inverse_mod(Int r, Int d);

// A unit u (gcd(u, d) = 1) with u*e = gcd(e, d) (mod d). Requires e != 0.
Int unit_to_divisor(Int e, Int d);

class ResidueMatrix {
public:
  ResidueMatrix(Int rows, Int cols, Int modulus);

  static ResidueMatrix identity(Int size, Int modulus);
  static ResidueMatrix from_rows(const std::vector<std::vector<Int>>& rows,
                                 Int modulus);

  Int rows() const { return rows_; }
  Int cols() const { return cols_; }
  Int modulus() const { return modulus_; }

  Int operator()(Int i, Int j) const { return data_[i * cols_ + j]; }
  void set(Int i, Int j, Int value) {
    data_[i * cols_ + j] = mod_norm(value, modulus_);
  }

  ResidueMatrix transposed() const;
  ResidueMatrix operator*(const ResidueMatrix& rhs) const;
  ResidueMatrix operator+(const ResidueMatrix& rhs) const;
  ResidueMatrix operator-(const ResidueMatrix& rhs) const;
  std::vector<Int> mul_vec(const std::vector<Int>& v) const;

  bool is_zero() const;
  bool operator==(const ResidueMatrix& rhs) const = default;

private:
  Int rows_, cols_, modulus_;
  std::vector<Int> data_;  // row-major, canonical residues
};

struct SmithDecomposition {
  ResidueMatrix f;  // diagonal, entries canonical positive divisors of d
                    // (0 standing for the divisor d itself)
  ResidueMatrix k;  // rows x rows, invertible mod d
  ResidueMatrix l;  // cols x cols, invertible mod d
  Int rank_r;       // number of nonzero diagonal entries
};

// K*A*L = F (mod d) with the divisibility chain f_i | f_{i+1} on the
// canonical-divisor reading of the diagonal.
SmithDecomposition smith_normal_form(const ResidueMatrix& a);

// Inverse mod d; fails with NotInvertible unless the Smith form is I.
ResidueMatrix invert_matrix(const ResidueMatrix& a);

// The system B^T x = y where equation j is read modulo moduli[j] and the
// solution lives in the product group Z_{q̄_1} x ... x Z_{q̄_n}.
struct MixedModulusSystem {
  ResidueMatrix coefficient;         // m x n, modulus d
  std::vector<Int> rhs;              // length m
  std::vector<Int> moduli;           // length m, each a positive divisor of d
  std::vector<Int> solution_moduli;  // length n, each a positive divisor of d
};

std::vector<Int> solve_mixed_modulus(const MixedModulusSystem& sys);

}  // namespace qudit
