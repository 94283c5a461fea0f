#include "qudit/pauli.hpp"

#include <string>

namespace qudit {

SymplecticForm SymplecticForm::make(Int n, Int d) {
  ResidueMatrix u(2 * n, 2 * n, d);
  for (Int i = 0; i < n; ++i) u.set(n + i, i, 1);
  ResidueMatrix p = u - u.transposed();
  return {n, d, std::move(u), std::move(p)};
}

PauliElement::PauliElement(Int d, Int n, std::vector<Int> a, Int delta)
    : d_(d), n_(n), a_(std::move(a)), delta_(mod_norm(delta, 2 * d)) {
  require(d >= 2 && d <= kMaxModulus, errc::invalid_parameter,
          "qudit dimension out of range [2, 2^15]");
  require(n >= 1 && 2 * n <= kMaxDimension, errc::invalid_parameter,
          "qudit count out of range");
  require(static_cast<Int>(a_.size()) == 2 * n, errc::dimension_mismatch,
          "Pauli vector must have length 2n");
  for (auto& e : a_) e = mod_norm(e, d_);
}

PauliElement PauliElement::identity(Int d, Int n) {
  return PauliElement(d, n, std::vector<Int>(static_cast<std::size_t>(2 * n), 0), 0);
}

PauliElement PauliElement::generator(Int d, Int n, Int k) {
  require(k >= 1 && k <= 2 * n, errc::index_out_of_range,
          "generator index must lie in [1, 2n]");
  std::vector<Int> a(static_cast<std::size_t>(2 * n), 0);
  a[k - 1] = 1;
  return PauliElement(d, n, std::move(a), 0);
}

bool PauliElement::is_identity() const {
  if (delta_ != 0) return false;
  for (Int e : a_)
    if (e != 0) return false;
  return true;
}

namespace detail {

Int upper_quadratic(const std::vector<Int>& a, const std::vector<Int>& b,
                    Int n) {
  // U b = [0; b_upper], so a^T U b pairs lower a with upper b.
  Int acc = 0;
  for (Int i = 0; i < n; ++i) acc += a[n + i] * b[i];
  return acc;
}

}  // namespace detail

static void check_same_group(const PauliElement& x, const PauliElement& y) {
  require(x.d() == y.d() && x.n() == y.n(), errc::dimension_mismatch,
          "Pauli elements live on different systems");
}

PauliElement multiply(const PauliElement& x, const PauliElement& y) {
  check_same_group(x, y);
  const Int d = x.d(), n = x.n();
  std::vector<Int> sum(static_cast<std::size_t>(2 * n));
  for (Int i = 0; i < 2 * n; ++i) sum[i] = mod_norm(x.a()[i] + y.a()[i], d);
  const Int phase =
      x.delta() + y.delta() + 2 * detail::upper_quadratic(x.a(), y.a(), n);
  return PauliElement(d, n, std::move(sum), mod_norm(phase, 2 * d));
}

Int commutation_exponent(const PauliElement& x, const PauliElement& y) {
  check_same_group(x, y);
  const Int d = x.d(), n = x.n();
  Int acc = 0;
  for (Int i = 0; i < n; ++i)
    acc += x.a()[n + i] * y.a()[i] - x.a()[i] * y.a()[n + i];
  return mod_norm(acc, d);
}

Int order(const PauliElement& x) {
  PauliElement acc = x;
  const Int bound = 2 * x.d();
  for (Int k = 1; k <= bound; ++k) {
    if (acc.is_identity()) return k;
    acc = multiply(acc, x);
  }
  fail(errc::internal_contract_violation,
       "Pauli order exceeded 2d after " + std::to_string(bound) + " steps");
}

std::pair<Int, std::vector<Int>> apply_to_basis(
    const PauliElement& x, const std::vector<Int>& label) {
  const Int d = x.d(), n = x.n();
  require(static_cast<Int>(label.size()) == n, errc::dimension_mismatch,
          "basis label must have length n");
  Int w_dot = 0;
  std::vector<Int> out(static_cast<std::size_t>(n));
  for (Int i = 0; i < n; ++i) {
    const Int xi = mod_norm(label[i], d);
    w_dot += x.a()[n + i] * xi;
    out[i] = mod_norm(xi + x.a()[i], d);
  }
  return {mod_norm(x.delta() + 2 * w_dot, 2 * d), std::move(out)};
}

PauliElement inverse(const PauliElement& x) {
  const Int d = x.d(), n = x.n();
  std::vector<Int> neg(static_cast<std::size_t>(2 * n));
  for (Int i = 0; i < 2 * n; ++i) neg[i] = mod_norm(-x.a()[i], d);
  const Int delta =
      mod_norm(-x.delta() - 2 * detail::upper_quadratic(x.a(), neg, n), 2 * d);
  return PauliElement(d, n, std::move(neg), delta);
}

}  // namespace qudit
