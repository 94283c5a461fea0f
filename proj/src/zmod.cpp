#include "qudit/zmod.hpp"

#include <numeric>
#include <string>
#include <utility>

namespace qudit {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::not_invertible: return "NotInvertible";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::not_symplectic: return "NotSymplectic";
    case errc::phase_parity_violation: return "PhaseParityViolation";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::even_dimension: return "EvenDimension";
    case errc::inconsistent: return "Inconsistent";
    case errc::internal_contract_violation: return "InternalContractViolation";
    case errc::non_commuting: return "NonCommuting";
    case errc::wrong_group_size: return "WrongGroupSize";
    case errc::phase_condition_violation: return "PhaseConditionViolation";
    case errc::label_phase_mismatch: return "LabelPhaseMismatch";
    case errc::invalid_parameter: return "InvalidParameter";
    case errc::invalid_operation: return "InvalidOperation";
    case errc::dimension_cap: return "DimensionCap";
    case errc::shape_mismatch: return "ShapeMismatch";
  }
  return "UnknownError";
}

ExtGcdResult ext_gcd(Int a, Int b) {
  // Iterative extended Euclid on |a|, |b|; signs folded back at the end.
  Int sa = a < 0 ? -1 : 1, sb = b < 0 ? -1 : 1;
  Int r0 = a < 0 ? -a : a, r1 = b < 0 ? -b : b;
  Int u0 = 1, u1 = 0, v0 = 0, v1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    r0 = r0 - q * r1;
    std::swap(r0, r1);
    u0 = u0 - q * u1;
    std::swap(u0, u1);
    v0 = v0 - q * v1;
    std::swap(v0, v1);
  }
  return {r0, sa * u0, sb * v0};
}

Int inverse_mod(Int r, Int d) {
  require(d >= 2, errc::invalid_parameter, "modulus must be at least 2");
  const auto res = ext_gcd(mod_norm(r, d), d);
  if (res.g != 1)
    fail(errc::not_invertible,
         std::to_string(r) + " has no inverse modulo " + std::to_string(d));
  return mod_norm(res.u, d);
}

Int unit_to_divisor(Int e, Int d) {
  e = mod_norm(e, d);
  require(e != 0, errc::invalid_parameter, "zero has no unit normalizer");
  const Int g = std::gcd(e, d);
  const Int dg = d / g;
  // u = (e/g)^{-1} mod d/g lifted to a unit mod d; a coprime lift exists.
  Int u = dg == 1 ? 1 : inverse_mod(mod_norm(e / g, dg), dg);
  while (std::gcd(u, d) != 1) u += dg;
  return mod_norm(u, d);
}

ResidueMatrix::ResidueMatrix(Int rows, Int cols, Int modulus)
    : rows_(rows), cols_(cols), modulus_(modulus) {
  require(modulus >= 2 && modulus <= kMaxModulus, errc::invalid_parameter,
          "modulus out of range [2, 2^15]");
  require(rows >= 1 && rows <= kMaxDimension && cols >= 1 &&
              cols <= kMaxDimension,
          errc::invalid_parameter, "matrix dimensions out of range [1, 2^10]");
  data_.assign(static_cast<std::size_t>(rows * cols), 0);
}

ResidueMatrix ResidueMatrix::identity(Int size, Int modulus) {
  ResidueMatrix m(size, size, modulus);
  for (Int i = 0; i < size; ++i) m.set(i, i, 1);
  return m;
}

ResidueMatrix ResidueMatrix::from_rows(
    const std::vector<std::vector<Int>>& rows, Int modulus) {
  require(!rows.empty() && !rows.front().empty(), errc::invalid_parameter,
          "matrix must be nonempty");
  ResidueMatrix m(static_cast<Int>(rows.size()),
                  static_cast<Int>(rows.front().size()), modulus);
  for (Int i = 0; i < m.rows(); ++i) {
    require(static_cast<Int>(rows[i].size()) == m.cols(),
            errc::invalid_parameter, "ragged rows");
    for (Int j = 0; j < m.cols(); ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

ResidueMatrix ResidueMatrix::transposed() const {
  ResidueMatrix t(cols_, rows_, modulus_);
  for (Int i = 0; i < rows_; ++i)
    for (Int j = 0; j < cols_; ++j) t.set(j, i, (*this)(i, j));
  return t;
}

ResidueMatrix ResidueMatrix::operator*(const ResidueMatrix& rhs) const {
  require(cols_ == rhs.rows_ && modulus_ == rhs.modulus_,
          errc::dimension_mismatch, "matrix product shape mismatch");
  ResidueMatrix out(rows_, rhs.cols_, modulus_);
  for (Int i = 0; i < rows_; ++i)
    for (Int j = 0; j < rhs.cols_; ++j) {
      Int acc = 0;
      for (Int k = 0; k < cols_; ++k)
        acc = mod_norm(acc + (*this)(i, k) * rhs(k, j), modulus_);
      out.set(i, j, acc);
    }
  return out;
}

ResidueMatrix ResidueMatrix::operator+(const ResidueMatrix& rhs) const {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_ && modulus_ == rhs.modulus_,
          errc::dimension_mismatch, "matrix sum shape mismatch");
  ResidueMatrix out(rows_, cols_, modulus_);
  for (Int i = 0; i < rows_; ++i)
    for (Int j = 0; j < cols_; ++j) out.set(i, j, (*this)(i, j) + rhs(i, j));
  return out;
}

ResidueMatrix ResidueMatrix::operator-(const ResidueMatrix& rhs) const {
  require(rows_ == rhs.rows_ && cols_ == rhs.cols_ && modulus_ == rhs.modulus_,
          errc::dimension_mismatch, "matrix difference shape mismatch");
  ResidueMatrix out(rows_, cols_, modulus_);
  for (Int i = 0; i < rows_; ++i)
    for (Int j = 0; j < cols_; ++j) out.set(i, j, (*this)(i, j) - rhs(i, j));
  return out;
}

std::vector<Int> ResidueMatrix::mul_vec(const std::vector<Int>& v) const {
  require(static_cast<Int>(v.size()) == cols_, errc::dimension_mismatch,
          "matrix-vector shape mismatch");
  std::vector<Int> out(static_cast<std::size_t>(rows_), 0);
  for (Int i = 0; i < rows_; ++i) {
    Int acc = 0;
    for (Int j = 0; j < cols_; ++j)
      acc = mod_norm(acc + (*this)(i, j) * mod_norm(v[j], modulus_), modulus_);
    out[i] = acc;
  }
  return out;
}

bool ResidueMatrix::is_zero() const {
  for (Int v : data_)
    if (v != 0) return false;
  return true;
}

namespace {

// Mutable elimination state; rows of K and columns of L record the
// operations applied to the working matrix, everything canonical mod d.
struct SnfWork {
  Int rows, cols, d;
  std::vector<std::vector<Int>> m, k, l;

  explicit SnfWork(const ResidueMatrix& a)
      : rows(a.rows()), cols(a.cols()), d(a.modulus()) {
    m.assign(rows, std::vector<Int>(cols, 0));
    for (Int i = 0; i < rows; ++i)
      for (Int j = 0; j < cols; ++j) m[i][j] = a(i, j);
    k.assign(rows, std::vector<Int>(rows, 0));
    for (Int i = 0; i < rows; ++i) k[i][i] = 1;
    l.assign(cols, std::vector<Int>(cols, 0));
    for (Int j = 0; j < cols; ++j) l[j][j] = 1;
  }

  // (row r1, row r2) <- (u*r1 + v*r2, s*r1 + w*r2); u*w - v*s = 1 mod d.
  void row_combine(Int r1, Int r2, Int u, Int v, Int s, Int w) {
    auto apply = [&](std::vector<std::vector<Int>>& mat) {
      for (std::size_t j = 0; j < mat[r1].size(); ++j) {
        Int a = mat[r1][j], b = mat[r2][j];
        mat[r1][j] = mod_norm(u * a + v * b, d);
        mat[r2][j] = mod_norm(s * a + w * b, d);
      }
    };
    apply(m);
    apply(k);
  }

  void col_combine(Int c1, Int c2, Int u, Int v, Int s, Int w) {
    for (Int i = 0; i < rows; ++i) {
      Int a = m[i][c1], b = m[i][c2];
      m[i][c1] = mod_norm(u * a + v * b, d);
      m[i][c2] = mod_norm(s * a + w * b, d);
    }
    for (Int i = 0; i < cols; ++i) {
      Int a = l[i][c1], b = l[i][c2];
      l[i][c1] = mod_norm(u * a + v * b, d);
      l[i][c2] = mod_norm(s * a + w * b, d);
    }
  }

  void swap_rows(Int r1, Int r2) {
    if (r1 == r2) return;
    std::swap(m[r1], m[r2]);
    std::swap(k[r1], k[r2]);
  }

  void swap_cols(Int c1, Int c2) {
    if (c1 == c2) return;
    for (Int i = 0; i < rows; ++i) std::swap(m[i][c1], m[i][c2]);
    for (Int i = 0; i < cols; ++i) std::swap(l[i][c1], l[i][c2]);
  }

  void scale_row(Int r, Int unit) {
    for (Int j = 0; j < cols; ++j) m[r][j] = mod_norm(m[r][j] * unit, d);
    for (Int j = 0; j < rows; ++j) k[r][j] = mod_norm(k[r][j] * unit, d);
  }

  void add_row(Int dst, Int src) {  // row dst += row src
    for (Int j = 0; j < cols; ++j) m[dst][j] = mod_norm(m[dst][j] + m[src][j], d);
    for (Int j = 0; j < rows; ++j) k[dst][j] = mod_norm(k[dst][j] + k[src][j], d);
  }
};

// gcd-forming unimodular pair for entries (a, b): maps (a, b) -> (g, 0).
struct GcdCombo {
  Int u, v, s, w;
};

GcdCombo gcd_combo(Int a, Int b) {
  // Keep the pivot untouched whenever it already divides the entry; the
  // elimination loop relies on that for termination.
  if (b % a == 0) return {1, 0, -(b / a), 1};
  const auto r = ext_gcd(a, b);
  return {r.u, r.v, -(b / r.g), a / r.g};
}

}  // namespace

SmithDecomposition smith_normal_form(const ResidueMatrix& a) {
  const Int d = a.modulus();
  SnfWork w(a);
  const Int tmax = std::min(w.rows, w.cols);
  Int t = 0;
  for (; t < tmax; ++t) {
    // Pivot minimizing gcd(entry, d), ties in row-major order.
    Int pi = -1, pj = -1, pg = 0;
    for (Int i = t; i < w.rows; ++i)
      for (Int j = t; j < w.cols; ++j) {
        if (w.m[i][j] == 0) continue;
        Int g = std::gcd(w.m[i][j], d);
        if (pi < 0 || g < pg) {
          pi = i;
          pj = j;
          pg = g;
        }
      }
    if (pi < 0) break;  // remaining block is zero
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    for (;;) {
      // Clear column t, then row t; column ops can refill the row and
      // vice versa, so loop until both are clear.
      bool touched = true;
      while (touched) {
        touched = false;
        for (Int i = t + 1; i < w.rows; ++i) {
          if (w.m[i][t] == 0) continue;
          const auto c = gcd_combo(w.m[t][t], w.m[i][t]);
          w.row_combine(t, i, c.u, c.v, c.s, c.w);
          touched = true;
        }
        for (Int j = t + 1; j < w.cols; ++j) {
          if (w.m[t][j] == 0) continue;
          const auto c = gcd_combo(w.m[t][t], w.m[t][j]);
          w.col_combine(t, j, c.u, c.v, c.s, c.w);
          touched = true;
        }
      }
      // Divisibility repair: the pivot ideal must contain every remaining
      // entry's ideal; merging an offending row lets the gcd pass fix it.
      const Int pivot_g = std::gcd(w.m[t][t], d);
      Int oi = -1, oj = -1;
      for (Int i = t + 1; i < w.rows && oi < 0; ++i)
        for (Int j = t + 1; j < w.cols; ++j) {
          if (w.m[i][j] == 0) continue;
          if (std::gcd(w.m[i][j], d) % pivot_g != 0) {
            oi = i;
            oj = j;
            break;
          }
        }
      if (oi < 0) break;
      w.add_row(t, oi);
      (void)oj;
    }
  }

  // Normalize each pivot to its canonical divisor gcd(f_i, d) by a unit.
  for (Int i = 0; i < t; ++i) {
    const Int e = w.m[i][i];
    if (e == 0) continue;
    const Int g = std::gcd(e, d);
    if (e != g) w.scale_row(i, unit_to_divisor(e, d));
  }

  SmithDecomposition out{ResidueMatrix(w.rows, w.cols, d),
                         ResidueMatrix(w.rows, w.rows, d),
                         ResidueMatrix(w.cols, w.cols, d), 0};
  Int rank = 0;
  for (Int i = 0; i < tmax; ++i) {
    out.f.set(i, i, w.m[i][i]);
    if (w.m[i][i] != 0) ++rank;
  }
  out.rank_r = rank;
  for (Int i = 0; i < w.rows; ++i)
    for (Int j = 0; j < w.rows; ++j) out.k.set(i, j, w.k[i][j]);
  for (Int i = 0; i < w.cols; ++i)
    for (Int j = 0; j < w.cols; ++j) out.l.set(i, j, w.l[i][j]);

  // Chain sanity on the canonical-divisor reading of the diagonal.
  for (Int i = 0; i + 1 < tmax; ++i) {
    const Int fi = out.f(i, i) == 0 ? d : out.f(i, i);
    const Int fj = out.f(i + 1, i + 1) == 0 ? d : out.f(i + 1, i + 1);
    require(fj % fi == 0, errc::internal_contract_violation,
            "Smith form divisibility chain failed");
  }
  return out;
}

ResidueMatrix invert_matrix(const ResidueMatrix& a) {
  require(a.rows() == a.cols(), errc::invalid_parameter,
          "only square matrices can be inverted");
  const auto snf = smith_normal_form(a);
  for (Int i = 0; i < a.rows(); ++i)
    if (snf.f(i, i) != 1)
      fail(errc::not_invertible, "matrix is singular modulo " +
                                     std::to_string(a.modulus()));
  return snf.l * snf.k;
}

std::vector<Int> solve_mixed_modulus(const MixedModulusSystem& sys) {
  const ResidueMatrix& bt = sys.coefficient;
  const Int d = bt.modulus();
  const Int m = bt.rows(), n = bt.cols();
  require(static_cast<Int>(sys.rhs.size()) == m &&
              static_cast<Int>(sys.moduli.size()) == m &&
              static_cast<Int>(sys.solution_moduli.size()) == n,
          errc::dimension_mismatch, "mixed-modulus system shape mismatch");
  for (Int q : sys.moduli)
    require(q >= 1 && d % q == 0, errc::invalid_parameter,
            "row modulus must divide d");
  for (Int q : sys.solution_moduli)
    require(q >= 1 && d % q == 0, errc::invalid_parameter,
            "solution modulus must divide d");

  // Scale row j by d/q_j so every equation is read modulo d.
  ResidueMatrix zbt(m, n, d);
  std::vector<Int> zy(static_cast<std::size_t>(m), 0);
  for (Int j = 0; j < m; ++j) {
    const Int z = d / sys.moduli[j];
    for (Int i = 0; i < n; ++i) zbt.set(j, i, z * bt(j, i));
    zy[j] = mod_norm(z * mod_norm(sys.rhs[j], sys.moduli[j]), d);
  }

  const auto snf = smith_normal_form(zbt);
  const std::vector<Int> yp = snf.k.mul_vec(zy);
  const Int diag = std::min(m, n);
  std::vector<Int> xp(static_cast<std::size_t>(n), 0);
  for (Int i = 0; i < diag; ++i) {
    const Int fi = snf.f(i, i);
    if (fi == 0) {
      if (yp[i] != 0)
        fail(errc::inconsistent, "no solution: zero pivot against nonzero rhs");
    } else {
      if (yp[i] % fi != 0)
        fail(errc::inconsistent, "no solution: pivot does not divide rhs");
      xp[i] = yp[i] / fi;
    }
  }
  for (Int i = diag; i < m; ++i)
    if (yp[i] != 0)
      fail(errc::inconsistent, "no solution: overdetermined row mismatch");

  std::vector<Int> x = snf.l.mul_vec(xp);
  for (Int i = 0; i < n; ++i) x[i] = mod_norm(x[i], sys.solution_moduli[i]);

  // The solution must be unique in G_q̄: every kernel generator of the
  // scaled system has to vanish modulo the solution moduli.
  for (Int i = 0; i < n; ++i) {
    const Int fi = i < diag ? snf.f(i, i) : 0;
    const Int free_step = d / (fi == 0 ? d : fi);
    for (Int j = 0; j < n; ++j)
      require(mod_norm(free_step * snf.l(j, i), sys.solution_moduli[j]) == 0,
              errc::internal_contract_violation,
              "mixed-modulus solution is not unique in G_q̄");
  }

  // Substitute back row-wise; failure means the input never came from a
  // valid normal form.
  for (Int j = 0; j < m; ++j) {
    Int acc = 0;
    for (Int i = 0; i < n; ++i)
      acc = mod_norm(acc + bt(j, i) * x[i], sys.moduli[j]);
    if (acc != mod_norm(sys.rhs[j], sys.moduli[j]))
      fail(errc::inconsistent, "solution does not satisfy every row modulus");
  }
  return x;
}

}  // namespace qudit
