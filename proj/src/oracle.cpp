#include "qudit/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qudit::oracle {

std::vector<std::complex<double>> zeta_table(Int d) {
  std::vector<std::complex<double>> table(static_cast<std::size_t>(2 * d));
  for (Int k = 0; k < 2 * d; ++k)
    table[k] = std::polar(1.0, std::numbers::pi * double(k) / double(d));
  return table;
}

Int dense_dimension(Int d, Int n, Int cap) {
  __int128 dim = 1;
  for (Int i = 0; i < n; ++i) {
    dim *= d;
    if (dim > cap)
      fail(errc::dimension_cap, "d^n = " + std::to_string(double(dim)) +
                                    " exceeds the dense cap " +
                                    std::to_string(cap));
  }
  return static_cast<Int>(dim);
}

Int label_to_index(const std::vector<Int>& label, Int d) {
  Int idx = 0;
  for (Int digit : label) idx = idx * d + mod_norm(digit, d);
  return idx;
}

std::vector<Int> index_to_label(Int index, Int n, Int d) {
  std::vector<Int> label(static_cast<std::size_t>(n));
  for (Int i = n - 1; i >= 0; --i) {
    label[i] = index % d;
    index /= d;
  }
  return label;
}

Operator pauli_operator(const PauliElement& x, Int cap) {
  const Int d = x.d(), n = x.n();
  const Int dim = dense_dimension(d, n, cap);
  const auto zeta = zeta_table(d);
  Operator out = Operator::Zero(dim, dim);
  for (Int col = 0; col < dim; ++col) {
    const auto label = index_to_label(col, n, d);
    const auto [phase, moved] = apply_to_basis(x, label);
    out(label_to_index(moved, d), col) = zeta[phase];
  }
  return out;
}

namespace {

// Diagonal-or-monomial gates map |x> to phi(x) |tau(x)|; Fourier is handled
// separately since it mixes a full axis.
struct AxisView {
  Int stride, block, d, dim;
};

AxisView axis_view(Int qudit, Int n, Int d, Int dim) {
  Int stride = 1;
  for (Int i = n; i > qudit; --i) stride *= d;
  return {stride, stride * d, d, dim};
}

}  // namespace

Operator gate_operator(const ElementaryGate& g, Int n, Int d, Int cap) {
  const Int dim = dense_dimension(d, n, cap);
  const auto zeta = zeta_table(d);
  const double inv_sqrt_d = 1.0 / std::sqrt(double(d));

  switch (g.kind) {
    case GateKind::qudit_swap:
    case GateKind::scale_row:
    case GateKind::add_row: {
      Operator out = Operator::Zero(dim, dim);
      for (Int col = 0; col < dim; ++col) {
        auto label = index_to_label(col, n, d);
        if (g.kind == GateKind::qudit_swap) {
          std::swap(label[g.i - 1], label[g.j - 1]);
        } else if (g.kind == GateKind::scale_row) {
          label[g.i - 1] = mod_norm(g.factor * label[g.i - 1], d);
        } else {
          label[g.j - 1] =
              mod_norm(label[g.j - 1] + g.factor * label[g.i - 1], d);
        }
        out(label_to_index(label, d), col) = 1.0;
      }
      return out;
    }
    case GateKind::phase_power: {
      Operator out = Operator::Zero(dim, dim);
      for (Int col = 0; col < dim; ++col) {
        const auto label = index_to_label(col, n, d);
        const Int xi = label[g.i - 1];
        out(col, col) = zeta[mod_norm(g.factor * xi * (xi + d), 2 * d)];
      }
      return out;
    }
    case GateKind::fourier:
    case GateKind::fourier_inverse: {
      const bool inv = g.kind == GateKind::fourier_inverse;
      Operator out = Operator::Zero(dim, dim);
      const auto view = axis_view(g.i, n, d, dim);
      for (Int col = 0; col < dim; ++col) {
        const Int x = (col / view.stride) % d;
        const Int base = col - x * view.stride;
        for (Int k = 0; k < d; ++k) {
          const Int e = mod_norm(2 * k * x * (inv ? -1 : 1), 2 * d);
          out(base + k * view.stride, col) = inv_sqrt_d * zeta[e];
        }
      }
      return out;
    }
    case GateKind::pauli_correction:
      return pauli_operator(PauliElement(d, n, g.correction, 0), cap);
  }
  fail(errc::invalid_parameter, "unknown gate kind");
}

Operator sequence_operator(const GateSequence& seq, Int cap) {
  const Int dim = dense_dimension(seq.d, seq.n, cap);
  const Int d = seq.d, n = seq.n;
  Operator acc = Operator::Identity(dim, dim);
  const auto zeta = zeta_table(d);
  const double inv_sqrt_d = 1.0 / std::sqrt(double(d));

  std::vector<Int> target(static_cast<std::size_t>(dim));
  std::vector<std::complex<double>> phase(static_cast<std::size_t>(dim));
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(dim));
  std::vector<std::complex<double>> fiber(static_cast<std::size_t>(d));

  for (const auto& g : seq.gates) {
    if (g.kind == GateKind::fourier || g.kind == GateKind::fourier_inverse) {
      const bool inv = g.kind == GateKind::fourier_inverse;
      const auto view = axis_view(g.i, n, d, dim);
      for (Int col = 0; col < dim; ++col) {
        auto* data = acc.col(col).data();
        for (Int base = 0; base < dim; ++base) {
          if ((base / view.stride) % d != 0) continue;
          for (Int x = 0; x < d; ++x) fiber[x] = data[base + x * view.stride];
          for (Int k = 0; k < d; ++k) {
            std::complex<double> s{};
            for (Int x = 0; x < d; ++x)
              s += zeta[mod_norm(2 * k * x * (inv ? -1 : 1), 2 * d)] *
                   fiber[x];
            data[base + k * view.stride] = inv_sqrt_d * s;
          }
        }
      }
      continue;
    }

    // One basis-map table shared by every column.
    const bool diagonal = g.kind == GateKind::phase_power;
    const PauliElement correction =
        g.kind == GateKind::pauli_correction
            ? PauliElement(d, n, g.correction, 0)
            : PauliElement::identity(d, n);
    for (Int row = 0; row < dim; ++row) {
      auto label = index_to_label(row, n, d);
      switch (g.kind) {
        case GateKind::qudit_swap:
          std::swap(label[g.i - 1], label[g.j - 1]);
          target[row] = label_to_index(label, d);
          phase[row] = 1.0;
          break;
        case GateKind::scale_row:
          label[g.i - 1] = mod_norm(g.factor * label[g.i - 1], d);
          target[row] = label_to_index(label, d);
          phase[row] = 1.0;
          break;
        case GateKind::add_row:
          label[g.j - 1] =
              mod_norm(label[g.j - 1] + g.factor * label[g.i - 1], d);
          target[row] = label_to_index(label, d);
          phase[row] = 1.0;
          break;
        case GateKind::phase_power: {
          const Int xi = label[g.i - 1];
          target[row] = row;
          phase[row] = zeta[mod_norm(g.factor * xi * (xi + d), 2 * d)];
          break;
        }
        case GateKind::pauli_correction: {
          const auto [ph, moved] = apply_to_basis(correction, label);
          target[row] = label_to_index(moved, d);
          phase[row] = zeta[ph];
          break;
        }
        default:
          break;
      }
    }
    for (Int col = 0; col < dim; ++col) {
      auto* data = acc.col(col).data();
      if (diagonal) {
        for (Int row = 0; row < dim; ++row) data[row] *= phase[row];
      } else {
        for (Int row = 0; row < dim; ++row)
          buf[target[row]] = phase[row] * data[row];
        for (Int row = 0; row < dim; ++row) data[row] = buf[row];
      }
    }
  }
  return acc;
}

Operator conjugate(const Operator& u, const Operator& a) {
  require(u.rows() == u.cols() && a.rows() == a.cols() && u.rows() == a.rows(),
          errc::shape_mismatch, "conjugation needs equal square shapes");
  return u * a * u.adjoint();
}

namespace {

template <typename Mat>
bool equal_up_to_phase_impl(const Mat& a, const Mat& b, double tol) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), errc::shape_mismatch,
          "compared objects have different shapes");
  // The reference scalar comes from the largest-magnitude entry.
  Eigen::Index mi = 0, mj = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j)) > best) {
        best = std::abs(a(i, j));
        mi = i;
        mj = j;
      }
  if (best <= tol) return b.cwiseAbs().maxCoeff() <= tol;
  if (std::abs(b(mi, mj)) <= tol) return false;
  const std::complex<double> c = a(mi, mj) / b(mi, mj);
  if (std::abs(std::abs(c) - 1.0) > tol) return false;
  return (a - c * b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

bool equal_up_to_global_phase(const Operator& a, const Operator& b,
                              double tol) {
  return equal_up_to_phase_impl(a, b, tol);
}

bool equal_up_to_global_phase(const State& a, const State& b, double tol) {
  return equal_up_to_phase_impl<Eigen::MatrixXcd>(a, b, tol);
}

State state_from_expansion(const StateExpansion& e, Int cap) {
  const Int dim = dense_dimension(e.d, e.n, cap);
  const auto zeta = zeta_table(e.d);
  State v = State::Zero(dim);
  for (const auto& term : e.terms)
    v(label_to_index(term.label, e.d)) +=
        e.normalization * zeta[mod_norm(term.zeta_exponent, 2 * e.d)];
  return v;
}

State apply_pauli(const PauliElement& x, const State& v) {
  const Int d = x.d(), n = x.n();
  const Int dim = static_cast<Int>(v.size());
  const auto zeta = zeta_table(d);
  State out = State::Zero(dim);
  for (Int idx = 0; idx < dim; ++idx) {
    if (v(idx) == std::complex<double>(0.0, 0.0)) continue;
    const auto [phase, moved] = apply_to_basis(x, index_to_label(idx, n, d));
    out(label_to_index(moved, d)) += zeta[phase] * v(idx);
  }
  return out;
}

}  // namespace qudit::oracle
