#include "qudit/clifford.hpp"

#include <string>
#include <utility>

namespace qudit {

namespace detail {

IntMat rows_of(const ResidueMatrix& m) {
  IntMat out(static_cast<std::size_t>(m.rows()),
             std::vector<Int>(static_cast<std::size_t>(m.cols())));
  for (Int i = 0; i < m.rows(); ++i)
    for (Int j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

ResidueMatrix conjugation_form(const ResidueMatrix& c) {
  // U C = [0; C_upper], so C^T U C pairs the lower rows of C with the upper.
  const Int d = c.modulus();
  const Int n = c.rows() / 2;
  ResidueMatrix w(c.cols(), c.cols(), d);
  for (Int i = 0; i < c.cols(); ++i)
    for (Int j = 0; j < c.cols(); ++j) {
      Int acc = 0;
      for (Int k = 0; k < n; ++k)
        acc = mod_norm(acc + c(n + k, i) * c(k, j), d);
      w.set(i, j, acc);
    }
  return w;
}

std::vector<Int> phase_transport(const IntMat& a, const IntMat& w,
                                 const std::vector<Int>& h,
                                 const std::vector<Int>& base, Int d) {
  const Int two_d = 2 * d;
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();
  std::vector<Int> out(cols, 0);
  for (std::size_t j = 0; j < cols; ++j) {
    Int acc = mod_norm(base[j], two_d);
    for (std::size_t k = 0; k < rows; ++k) {
      const Int akj = a[k][j];
      acc = mod_norm(acc + akj * (h[k] - w[k][k]) + w[k][k] * akj * akj,
                     two_d);
      for (std::size_t l = k + 1; l < rows; ++l)
        acc = mod_norm(acc + 2 * w[k][l] * akj * a[l][j], two_d);
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace detail

CliffordOp::CliffordOp(ResidueMatrix c, std::vector<Int> h)
    : d_(c.modulus()), n_(c.rows() / 2), c_(std::move(c)), h_(std::move(h)) {
  require(c_.rows() == c_.cols() && c_.rows() % 2 == 0,
          errc::dimension_mismatch, "C must be 2n x 2n");
  require(static_cast<Int>(h_.size()) == 2 * n_, errc::dimension_mismatch,
          "h must have length 2n");
  for (auto& e : h_) e = mod_norm(e, 2 * d_);

  const auto sp = SymplecticForm::make(n_, d_);
  if (!(c_.transposed() * sp.p * c_ == sp.p))
    fail(errc::not_symplectic, "C^T P C != P mod d");
  const auto w = detail::conjugation_form(c_);
  for (Int k = 0; k < 2 * n_; ++k)
    if (mod_norm((d_ - 1) * w(k, k) + h_[k], 2) != 0)
      fail(errc::phase_parity_violation,
           "(d-1) Vdiag(C^T U C) + h must vanish mod 2 at index " +
               std::to_string(k + 1));
}

CliffordOp CliffordOp::identity(Int d, Int n) {
  return CliffordOp(ResidueMatrix::identity(2 * n, d),
                    std::vector<Int>(static_cast<std::size_t>(2 * n), 0));
}

static void check_same_system(Int da, Int na, Int db, Int nb) {
  require(da == db && na == nb, errc::dimension_mismatch,
          "operations live on different systems");
}

PauliElement conjugate_pauli(const CliffordOp& q, const PauliElement& x) {
  check_same_system(q.d(), q.n(), x.d(), x.n());
  const ResidueMatrix& c = q.c();
  std::vector<Int> b = c.mul_vec(x.a());
  detail::IntMat col(static_cast<std::size_t>(2 * q.n()),
                     std::vector<Int>(1));
  for (Int i = 0; i < 2 * q.n(); ++i) col[i][0] = x.a()[i];
  const auto eps = detail::phase_transport(
      col, detail::rows_of(detail::conjugation_form(c)), q.h(), {x.delta()},
      q.d());
  return PauliElement(q.d(), q.n(), std::move(b), eps[0]);
}

CliffordOp compose(const CliffordOp& outer, const CliffordOp& inner) {
  check_same_system(outer.d(), outer.n(), inner.d(), inner.n());
  ResidueMatrix cc = outer.c() * inner.c();
  const auto h = detail::phase_transport(
      detail::rows_of(inner.c()),
      detail::rows_of(detail::conjugation_form(outer.c())), outer.h(),
      inner.h(), inner.d());
  return CliffordOp(std::move(cc), h);
}

CliffordOp invert(const CliffordOp& q) {
  const Int d = q.d(), n = q.n();
  const auto sp = SymplecticForm::make(n, d);
  // C^{-1} = -P C^T P for symplectic C.
  ResidueMatrix cinv = sp.p * q.c().transposed() * sp.p;
  for (Int i = 0; i < 2 * n; ++i)
    for (Int j = 0; j < 2 * n; ++j) cinv.set(i, j, -cinv(i, j));

  // The phase vector comes from the defining identity: conjugating the
  // image zeta^{h'_k} XZ(C^{-1}_k) by Q must give back XZ(E_k), so h'_k
  // cancels the conjugation phase of XZ(C^{-1}_k). This sidesteps the
  // lift ambiguity a literal C^{-T} product would have modulo 2d.
  std::vector<Int> h(static_cast<std::size_t>(2 * n), 0);
  for (Int k = 0; k < 2 * n; ++k) {
    std::vector<Int> col(static_cast<std::size_t>(2 * n));
    for (Int i = 0; i < 2 * n; ++i) col[i] = cinv(i, k);
    const auto image = conjugate_pauli(q, PauliElement(d, n, std::move(col), 0));
    h[k] = mod_norm(-image.delta(), 2 * d);
  }
  return CliffordOp(std::move(cinv), std::move(h));
}

CliffordOp from_pauli(const PauliElement& x) {
  const Int d = x.d(), n = x.n();
  const auto sp = SymplecticForm::make(n, d);
  const auto pa = sp.p.mul_vec(x.a());
  std::vector<Int> h(static_cast<std::size_t>(2 * n));
  for (Int i = 0; i < 2 * n; ++i) h[i] = mod_norm(-2 * pa[i], 2 * d);
  return CliffordOp(ResidueMatrix::identity(2 * n, d), std::move(h));
}

CliffordOp from_linear_transform(const ResidueMatrix& t) {
  const Int n = t.rows(), d = t.modulus();
  require(t.rows() == t.cols(), errc::invalid_parameter,
          "configuration transform must be square");
  const ResidueMatrix tinv_t = invert_matrix(t).transposed();
  ResidueMatrix c(2 * n, 2 * n, d);
  for (Int i = 0; i < n; ++i)
    for (Int j = 0; j < n; ++j) {
      c.set(i, j, t(i, j));
      c.set(n + i, n + j, tinv_t(i, j));
    }
  return CliffordOp(std::move(c),
                    std::vector<Int>(static_cast<std::size_t>(2 * n), 0));
}

static CliffordOp one_qudit_gate(Int c00, Int c01, Int c10, Int c11, Int h0,
                                 Int h1, Int target, Int n, Int d) {
  require(target >= 1 && target <= n, errc::index_out_of_range,
          "target qudit out of range");
  CliffordOp small(
      ResidueMatrix::from_rows({{c00, c01}, {c10, c11}}, d), {h0, h1});
  if (n == 1) return small;
  return embed(small, {target}, n);
}

CliffordOp fourier(Int target, Int n, Int d) {
  return one_qudit_gate(0, d - 1, 1, 0, 0, 0, target, n, d);
}

CliffordOp fourier_inverse(Int target, Int n, Int d) {
  return one_qudit_gate(0, 1, d - 1, 0, 0, 0, target, n, d);
}

CliffordOp phase_gate(Int target, Int power, Int n, Int d) {
  require(power >= 0 && power < d, errc::invalid_parameter,
          "phase power must lie in [0, d)");
  return one_qudit_gate(1, 0, power, 1, mod_norm(power * (d + 1), 2 * d), 0,
                        target, n, d);
}

CliffordOp embed(const CliffordOp& op, const std::vector<Int>& targets,
                 Int n) {
  const Int d = op.d(), ns = op.n();
  require(static_cast<Int>(targets.size()) == ns, errc::invalid_parameter,
          "target list must match the embedded operation");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    require(targets[i] >= 1 && targets[i] <= n, errc::index_out_of_range,
            "embedding target out of range");
    require(i == 0 || targets[i] > targets[i - 1], errc::invalid_parameter,
            "embedding targets must be strictly increasing");
  }
  auto map = [&](Int p) {
    return p < ns ? targets[p] - 1 : n + targets[p - ns] - 1;
  };
  ResidueMatrix c = ResidueMatrix::identity(2 * n, d);
  std::vector<Int> h(static_cast<std::size_t>(2 * n), 0);
  for (Int p = 0; p < 2 * ns; ++p) c.set(map(p), map(p), 0);
  for (Int p = 0; p < 2 * ns; ++p) {
    for (Int q = 0; q < 2 * ns; ++q) c.set(map(p), map(q), op.c()(p, q));
    h[map(p)] = op.h()[p];
  }
  return CliffordOp(std::move(c), std::move(h));
}

static Int half_inverse(Int d) { return (d + 1) / 2; }  // 2^{-1} mod odd d

OddCliffordForm to_odd_form(const CliffordOp& q) {
  require(q.d() % 2 == 1, errc::even_dimension,
          "half-phase form requires odd d");
  const Int inv2 = half_inverse(q.d());
  std::vector<Int> g(q.h().size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = mod_norm(inv2 * q.h()[i], q.d());
  return {q.d(), q.n(), q.c(), std::move(g)};
}

CliffordOp from_odd_form(const OddCliffordForm& o) {
  require(o.d % 2 == 1, errc::even_dimension,
          "half-phase form requires odd d");
  std::vector<Int> h(o.g.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    h[i] = mod_norm(2 * mod_norm(o.g[i], o.d), 2 * o.d);
  return CliffordOp(o.c, std::move(h));
}

OddCliffordForm odd_compose(const OddCliffordForm& outer,
                            const OddCliffordForm& inner) {
  check_same_system(outer.d, outer.n, inner.d, inner.n);
  const Int d = outer.d, n = outer.n, inv2 = half_inverse(d);
  const ResidueMatrix cc = outer.c * inner.c;
  const auto wp = detail::conjugation_form(outer.c);
  const auto u = SymplecticForm::make(n, d).u;
  const ResidueMatrix wu = wp - u;
  // g'' = g + C^T g' + 2^{-1} (Vdiag(C^T (W' - U) C) - C^T Vdiag(W'))
  const ResidueMatrix mid = inner.c.transposed() * wu * inner.c;
  std::vector<Int> g(static_cast<std::size_t>(2 * n), 0);
  for (Int j = 0; j < 2 * n; ++j) {
    Int acc = mod_norm(inner.g[j], d);
    for (Int k = 0; k < 2 * n; ++k)
      acc = mod_norm(
          acc + inner.c(k, j) * (outer.g[k] - mod_norm(inv2 * wp(k, k), d)),
          d);
    acc = mod_norm(acc + inv2 * mid(j, j), d);
    g[j] = acc;
  }
  return {d, n, cc, std::move(g)};
}

OddCliffordForm odd_invert(const OddCliffordForm& q) {
  const Int d = q.d, n = q.n, inv2 = half_inverse(d);
  const auto sp = SymplecticForm::make(n, d);
  ResidueMatrix cinv = sp.p * q.c.transposed() * sp.p;
  for (Int i = 0; i < 2 * n; ++i)
    for (Int j = 0; j < 2 * n; ++j) cinv.set(i, j, -cinv(i, j));
  const auto w = detail::conjugation_form(q.c);
  const auto winv = detail::conjugation_form(cinv);
  // g' = -C^{-T} g + 2^{-1}(C^{-T} Vdiag(C^T U C) + Vdiag(C^{-T} U C^{-1}))
  std::vector<Int> g(static_cast<std::size_t>(2 * n), 0);
  for (Int j = 0; j < 2 * n; ++j) {
    Int acc = mod_norm(inv2 * winv(j, j), d);
    for (Int k = 0; k < 2 * n; ++k)
      acc = mod_norm(acc + cinv(k, j) * (inv2 * w(k, k) - q.g[k]), d);
    g[j] = acc;
  }
  return {d, n, cinv, std::move(g)};
}

PauliElement odd_conjugate_pauli(const OddCliffordForm& q,
                                 const PauliElement& x) {
  check_same_system(q.d, q.n, x.d(), x.n());
  require(x.delta() % 2 == 0, errc::invalid_parameter,
          "odd-d Pauli phases are omega powers (even zeta exponents)");
  const Int d = q.d, n = q.n, inv2 = half_inverse(d);
  const Int delta_w = mod_norm(x.delta() / 2, d);
  std::vector<Int> b = q.c.mul_vec(x.a());
  const auto w = detail::conjugation_form(q.c);
  const auto u = SymplecticForm::make(n, d).u;
  Int eps = delta_w;
  for (Int k = 0; k < 2 * n; ++k) {
    eps = mod_norm(
        eps + x.a()[k] * (q.g[k] - mod_norm(inv2 * w(k, k), d)), d);
    for (Int l = 0; l < 2 * n; ++l)
      eps = mod_norm(
          eps + inv2 * mod_norm(w(k, l) - u(k, l), d) * x.a()[k] * x.a()[l],
          d);
  }
  return PauliElement(d, n, std::move(b), 2 * eps);
}

}  // namespace qudit
