#include "qudit/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <utility>

namespace qudit {

namespace {

// Normalization factors are pinned to 16 significant digits once, so emitted
// documents are bit-stable.
double snap16(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16g", v);
  return std::strtod(buf, nullptr);
}

std::vector<std::pair<Int, Int>> factorize(Int d) {
  std::vector<std::pair<Int, Int>> out;
  for (Int p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    Int e = 0;
    while (d % p == 0) {
      d /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (d > 1) out.emplace_back(d, 1);
  return out;
}

Int valuation(Int v, Int p) {
  Int e = 0;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  return e;
}

// S^T U S mod d for S in Z_d^{2n x m}.
ResidueMatrix generator_form(const ResidueMatrix& s) {
  const Int d = s.modulus(), n = s.rows() / 2, m = s.cols();
  ResidueMatrix w(m, m, d);
  for (Int i = 0; i < m; ++i)
    for (Int j = 0; j < m; ++j) {
      Int acc = 0;
      for (Int k = 0; k < n; ++k) acc = mod_norm(acc + s(n + k, i) * s(k, j), d);
      w.set(i, j, acc);
    }
  return w;
}

// The order of column k of S in Z_d^{2n}.
Int column_order(const ResidueMatrix& s, Int k) {
  const Int d = s.modulus();
  Int g = d;
  for (Int i = 0; i < s.rows(); ++i) g = std::gcd(g, s(i, k));
  return d / g;
}

struct Minimized {
  ResidueMatrix s;
  std::vector<Int> f;
};

// Smith-based reduction to the minimal generating set; phases follow the
// generator change and dropped (zero) columns must carry trivial phases.
Minimized minimize_impl(const ResidueMatrix& s, const std::vector<Int>& f) {
  const Int d = s.modulus();
  const auto snf = smith_normal_form(s);
  const ResidueMatrix sl = s * snf.l;
  const auto w = generator_form(s);
  const std::vector<Int> zero(f.size(), 0);
  const auto f_all = detail::phase_transport(detail::rows_of(snf.l),
                                             detail::rows_of(w), f, zero, d);
  const Int keep = std::max<Int>(snf.rank_r, 0);
  for (Int j = keep; j < s.cols(); ++j) {
    for (Int i = 0; i < s.rows(); ++i)
      require(sl(i, j) == 0, errc::internal_contract_violation,
              "columns past the Smith rank should vanish");
    if (f_all[j] != 0)
      fail(errc::phase_condition_violation,
           "redundant generator reduces to a nontrivial multiple of the "
           "identity");
  }
  require(keep >= 1, errc::wrong_group_size,
          "stabilizer generators span only the identity");
  ResidueMatrix sm(s.rows(), keep, d);
  for (Int i = 0; i < s.rows(); ++i)
    for (Int j = 0; j < keep; ++j) sm.set(i, j, sl(i, j));
  std::vector<Int> fm(f_all.begin(), f_all.begin() + keep);
  return {std::move(sm), std::move(fm)};
}

}  // namespace

StabilizerGenerators::StabilizerGenerators(ResidueMatrix s, std::vector<Int> f)
    : d_(s.modulus()), n_(s.rows() / 2), m_(s.cols()), s_(std::move(s)),
      f_(std::move(f)) {
  require(s_.rows() % 2 == 0, errc::dimension_mismatch,
          "generator matrix must have 2n rows");
  require(static_cast<Int>(f_.size()) == m_, errc::dimension_mismatch,
          "phase vector length must match the generator count");
  for (auto& e : f_) e = mod_norm(e, 2 * d_);

  // Commutation: S^T P S = 0.
  const auto sp = SymplecticForm::make(n_, d_);
  if (!(s_.transposed() * sp.p * s_).is_zero())
    fail(errc::non_commuting, "generators do not commute");

  // Group size: the product of the invariant-factor orders must be d^n,
  // compared prime by prime to stay exact.
  const auto snf = smith_normal_form(s_);
  for (const auto& [p, e] : factorize(d_)) {
    Int total = 0;
    for (Int i = 0; i < std::min(s_.rows(), m_); ++i) {
      const Int fi = snf.f(i, i) == 0 ? d_ : snf.f(i, i);
      total += e - valuation(fi, p);
    }
    if (total != n_ * e)
      fail(errc::wrong_group_size,
           "generated group has size != d^n (prime " + std::to_string(p) +
               ")");
  }

  // Phase condition on the minimized set: for every r with r S_k = 0,
  // (r-1) r S_k^T U S_k + r f_k = 0 mod 2d.
  const auto min = minimize_impl(s_, f_);
  const auto wmin = generator_form(min.s);
  for (Int k = 0; k < min.s.cols(); ++k) {
    const Int o = column_order(min.s, k);
    for (Int rk = o; rk <= d_; rk += o) {
      if (mod_norm((rk - 1) * rk * wmin(k, k) + rk * min.f[k], 2 * d_) != 0)
        fail(errc::phase_condition_violation,
             "phase vector admits a nontrivial multiple of the identity");
    }
  }
}

StabilizerGenerators minimize_generators(const StabilizerGenerators& st) {
  auto min = minimize_impl(st.s(), st.f());
  return StabilizerGenerators(std::move(min.s), std::move(min.f));
}

StabilizerGenerators change_generators(const StabilizerGenerators& st,
                                       const ResidueMatrix& r) {
  require(r.rows() == st.m() && r.cols() == st.m() &&
              r.modulus() == st.d(),
          errc::dimension_mismatch, "generator change must be m x m mod d");
  invert_matrix(r);  // NotInvertible when singular
  const auto w = generator_form(st.s());
  const std::vector<Int> zero(static_cast<std::size_t>(st.m()), 0);
  auto f = detail::phase_transport(detail::rows_of(r), detail::rows_of(w),
                                   st.f(), zero, st.d());
  return StabilizerGenerators(st.s() * r, std::move(f));
}

StabilizerGenerators apply_clifford(const StabilizerGenerators& st,
                                    const CliffordOp& q) {
  require(st.d() == q.d() && st.n() == q.n(), errc::dimension_mismatch,
          "stabilizer and operation live on different systems");
  const auto w = detail::conjugation_form(q.c());
  auto f = detail::phase_transport(detail::rows_of(st.s()),
                                   detail::rows_of(w), q.h(), st.f(), st.d());
  return StabilizerGenerators(q.c() * st.s(), std::move(f));
}

ExpansionForm normal_form(const StabilizerGenerators& input) {
  const StabilizerGenerators st = minimize_generators(input);
  const Int d = st.d(), n = st.n(), m = st.m();

  ResidueMatrix s1(n, m, d), s2(n, m, d);
  for (Int i = 0; i < n; ++i)
    for (Int j = 0; j < m; ++j) {
      s1.set(i, j, st.s()(i, j));
      s2.set(i, j, st.s()(n + i, j));
    }

  const auto snf1 = smith_normal_form(s1);
  ExpansionForm ef{d, n, m, snf1.rank_r,
                   invert_matrix(snf1.k), snf1.l, snf1.f,
                   ResidueMatrix(n, m, d), {}, {}, {},
                   ResidueMatrix(n, n, d), {}, {}};
  ef.b = ef.t.transposed() * s2 * ef.r;

  const auto w = generator_form(st.s());
  const std::vector<Int> zero(static_cast<std::size_t>(m), 0);
  ef.f_prime = detail::phase_transport(detail::rows_of(ef.r),
                                       detail::rows_of(w), st.f(), zero, d);

  // Q^T B must be symmetric mod d.
  const ResidueMatrix qtb = ef.q.transposed() * ef.b;
  require(qtb == qtb.transposed(), errc::internal_contract_violation,
          "Q^T B is not symmetric");

  for (Int k = 0; k < n; ++k)
    ef.q_bar.push_back(ef.q(k, k) == 0 ? d : ef.q(k, k));
  ef.q_vec = ef.q_bar;
  ef.q_vec.resize(static_cast<std::size_t>(m), d);

  // y_k = -((d - q_k) B_kk + f'_k)/2 for k <= n, -f'_k/2 past that; the
  // numerators are even for any valid phase vector.
  std::vector<Int> y(static_cast<std::size_t>(m), 0);
  for (Int k = 0; k < m; ++k) {
    const Int num = k < n
                        ? (d - ef.q_vec[k]) * ef.b(k, k) + ef.f_prime[k]
                        : ef.f_prime[k];
    require(num % 2 == 0, errc::internal_contract_violation,
            "expansion offset numerator must be even");
    y[k] = mod_norm(-(num / 2), ef.q_vec[k]);
  }
  ef.x_star = solve_mixed_modulus(
      {ef.b.transposed(), y, ef.q_vec, ef.q_bar});

  // M = Q̄ B̄ mod d; Q̄ is diagonal, and symmetry holds entrywise on the
  // canonical representatives.
  for (Int i = 0; i < n; ++i)
    for (Int j = 0; j < n; ++j)
      ef.m_form.set(i, j, ef.q(i, i) * ef.b(i, j));
  require(ef.m_form == ef.m_form.transposed(),
          errc::internal_contract_violation, "M = Q̄ B̄ is not symmetric");

  ef.p.assign(static_cast<std::size_t>(n), 0);
  for (Int k = 0; k < n; ++k) {
    Int acc = ef.f_prime[k] - ef.m_form(k, k);
    for (Int i = 0; i < n; ++i) acc += 2 * ef.b(i, k) * ef.x_star[i];
    ef.p[k] = mod_norm(acc, 2 * d);
  }
  return ef;
}

namespace {

Int checked_term_count(const std::vector<Int>& ranges) {
  __int128 total = 1;
  for (Int r : ranges) {
    total *= r;
    require(total <= (Int{1} << 31), errc::dimension_cap,
            "expansion would have more than 2^31 terms");
  }
  return static_cast<Int>(total);
}

// Odometer over the given ranges, last coordinate fastest.
bool advance(std::vector<Int>& t, const std::vector<Int>& ranges) {
  for (Int pos = static_cast<Int>(t.size()) - 1; pos >= 0; --pos) {
    if (++t[pos] < ranges[pos]) return true;
    t[pos] = 0;
  }
  return false;
}

Int quad_exponent(const ResidueMatrix& m, const std::vector<Int>& p,
                  const std::vector<Int>& t, Int two_d) {
  Int acc = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0) continue;
    acc = mod_norm(acc + p[i] * t[i], two_d);
    for (std::size_t j = 0; j < t.size(); ++j)
      acc = mod_norm(acc + m(i, j) * t[i] * t[j], two_d);
  }
  return acc;
}

}  // namespace

StateExpansion expand(const StabilizerGenerators& st) {
  const auto ef = normal_form(st);
  const Int d = ef.d, n = ef.n, r = ef.rank_r;
  std::vector<Int> ranges;
  for (Int i = 0; i < r; ++i) ranges.push_back(d / ef.q_bar[i]);
  const Int count = checked_term_count(ranges);

  StateExpansion out{d, n, {}, snap16(std::sqrt(1.0 / double(count)))};
  out.terms.reserve(static_cast<std::size_t>(count));
  std::vector<Int> t(static_cast<std::size_t>(r), 0);
  std::vector<Int> z(static_cast<std::size_t>(n));
  do {
    Int exponent = 0;
    {
      Int acc = 0;
      for (Int i = 0; i < r; ++i) {
        if (t[i] == 0) continue;
        acc = mod_norm(acc + ef.p[i] * t[i], 2 * d);
        for (Int j = 0; j < r; ++j)
          acc = mod_norm(acc + ef.m_form(i, j) * t[i] * t[j], 2 * d);
      }
      exponent = acc;
    }
    for (Int i = 0; i < n; ++i)
      z[i] = i < r ? mod_norm(ef.q_bar[i] * t[i] + ef.x_star[i], d)
                   : ef.x_star[i];
    out.terms.push_back({exponent, ef.t.mul_vec(z)});
  } while (advance(t, ranges));

  // Labels must be pairwise distinct in the deduplicated form.
  auto labels = out.terms;
  std::sort(labels.begin(), labels.end(),
            [](const auto& a, const auto& b) { return a.label < b.label; });
  for (std::size_t i = 1; i < labels.size(); ++i)
    require(labels[i - 1].label != labels[i].label,
            errc::internal_contract_violation,
            "deduplicated expansion repeated a label");
  return out;
}

StateExpansion expand_raw(const StabilizerGenerators& st) {
  const auto ef = normal_form(st);
  const Int d = ef.d, n = ef.n;
  const std::vector<Int> ranges(static_cast<std::size_t>(n), d);
  const Int count = checked_term_count(ranges);

  StateExpansion out{d, n, {}, snap16(std::sqrt(1.0 / double(count)))};
  out.terms.reserve(static_cast<std::size_t>(count));
  std::vector<Int> t(static_cast<std::size_t>(n), 0);
  std::vector<Int> z(static_cast<std::size_t>(n));
  do {
    const Int exponent = quad_exponent(ef.m_form, ef.p, t, 2 * d);
    for (Int i = 0; i < n; ++i)
      z[i] = mod_norm(ef.q(i, i) * t[i] + ef.x_star[i], d);
    out.terms.push_back({exponent, ef.t.mul_vec(z)});
  } while (advance(t, ranges));

  // Periodicity: equal labels must carry equal exponents.
  std::map<std::vector<Int>, Int> seen;
  for (const auto& term : out.terms) {
    auto [it, inserted] = seen.emplace(term.label, term.zeta_exponent);
    if (!inserted && it->second != term.zeta_exponent)
      fail(errc::label_phase_mismatch,
           "raw expansion assigned different phases to one label");
  }
  return out;
}

StateExpansion expand_generic(const StabilizerGenerators& st) {
  const Int d = st.d(), n = st.n(), m = st.m();
  const auto ef = normal_form(st);
  const std::vector<Int> x_prime = ef.t.mul_vec(ef.x_star);

  ResidueMatrix s1(n, m, d), s2(n, m, d);
  for (Int i = 0; i < n; ++i)
    for (Int j = 0; j < m; ++j) {
      s1.set(i, j, st.s()(i, j));
      s2.set(i, j, st.s()(n + i, j));
    }
  const ResidueMatrix mg = s1.transposed() * s2;
  require(mg == mg.transposed(), errc::internal_contract_violation,
          "S1^T S2 is not symmetric");
  std::vector<Int> p(static_cast<std::size_t>(m));
  for (Int k = 0; k < m; ++k) {
    Int acc = st.f()[k] - mg(k, k);
    for (Int i = 0; i < n; ++i) acc += 2 * s2(i, k) * x_prime[i];
    p[k] = mod_norm(acc, 2 * d);
  }

  const std::vector<Int> ranges(static_cast<std::size_t>(m), d);
  const Int count = checked_term_count(ranges);
  StateExpansion out{d, n, {}, snap16(std::sqrt(1.0 / double(count)))};
  out.terms.reserve(static_cast<std::size_t>(count));

  // Stepping only the last coordinate shifts the exponent by
  // 2 (M t)_k + M_kk + p_k and the label by column k of S1; carries are
  // rare enough that a full recompute there does not matter.
  const Int two_d = 2 * d;
  std::vector<Int> t(static_cast<std::size_t>(m), 0);
  std::vector<Int> mt(static_cast<std::size_t>(m), 0);
  std::vector<Int> label = x_prime;
  Int exponent = 0;
  for (;;) {
    out.terms.push_back({exponent, label});
    Int pos = m - 1;
    while (pos >= 0 && t[pos] + 1 >= d) {
      t[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    if (pos == m - 1) {
      exponent =
          mod_norm(exponent + 2 * mt[pos] + mg(pos, pos) + p[pos], two_d);
      ++t[pos];
      for (Int i = 0; i < m; ++i) mt[i] = mod_norm(mt[i] + mg(i, pos), two_d);
      for (Int i = 0; i < n; ++i)
        label[i] = mod_norm(label[i] + s1(i, pos), d);
    } else {
      ++t[pos];
      std::fill(mt.begin(), mt.end(), 0);
      for (Int i = 0; i < m; ++i)
        for (Int j = 0; j < m; ++j)
          if (t[j] != 0) mt[i] = mod_norm(mt[i] + mg(i, j) * t[j], two_d);
      label = x_prime;
      for (Int i = 0; i < n; ++i) {
        Int acc = label[i];
        for (Int j = 0; j < m; ++j) acc += s1(i, j) * t[j];
        label[i] = mod_norm(acc, d);
      }
      exponent = quad_exponent(mg, p, t, two_d);
    }
  }
  return out;
}

StateExpansion collapse_expansion(const StateExpansion& e) {
  std::map<std::vector<Int>, Int> groups;
  for (const auto& term : e.terms) {
    auto [it, inserted] = groups.emplace(term.label, term.zeta_exponent);
    if (!inserted && it->second != term.zeta_exponent)
      fail(errc::label_phase_mismatch,
           "expansion assigned different phases to one label");
  }
  StateExpansion out{e.d, e.n, {},
                     snap16(std::sqrt(1.0 / double(groups.size())))};
  for (auto& [label, exponent] : groups) out.terms.push_back({exponent, label});
  return out;
}

static Int half_inverse(Int d) { return (d + 1) / 2; }

OddStabilizerForm to_odd_stabilizer_form(const StabilizerGenerators& st) {
  require(st.d() % 2 == 1, errc::even_dimension,
          "half-phase form requires odd d");
  const Int inv2 = half_inverse(st.d());
  std::vector<Int> b(st.f().size());
  for (std::size_t i = 0; i < b.size(); ++i)
    b[i] = mod_norm(inv2 * st.f()[i], st.d());
  return {st.d(), st.n(), st.m(), st.s(), std::move(b)};
}

StabilizerGenerators from_odd_stabilizer_form(const OddStabilizerForm& o) {
  require(o.d % 2 == 1, errc::even_dimension,
          "half-phase form requires odd d");
  std::vector<Int> f(o.b.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = mod_norm(2 * mod_norm(o.b[i], o.d), 2 * o.d);
  return StabilizerGenerators(o.s, std::move(f));
}

OddStabilizerForm odd_change_generators(const OddStabilizerForm& o,
                                        const ResidueMatrix& r) {
  const Int d = o.d, m = o.m, inv2 = half_inverse(d);
  require(r.rows() == m && r.cols() == m && r.modulus() == d,
          errc::dimension_mismatch, "generator change must be m x m mod d");
  invert_matrix(r);
  const auto w = generator_form(o.s);
  const ResidueMatrix rwr = r.transposed() * w * r;
  std::vector<Int> b(static_cast<std::size_t>(m), 0);
  for (Int j = 0; j < m; ++j) {
    Int acc = mod_norm(inv2 * rwr(j, j), d);
    for (Int k = 0; k < m; ++k)
      acc = mod_norm(acc + r(k, j) * (o.b[k] - mod_norm(inv2 * w(k, k), d)), d);
    b[j] = acc;
  }
  OddStabilizerForm out{d, o.n, m, o.s * r, std::move(b)};
  from_odd_stabilizer_form(out);  // validates
  return out;
}

OddStabilizerForm odd_apply_clifford(const OddStabilizerForm& o,
                                     const OddCliffordForm& q) {
  require(o.d == q.d && o.n == q.n, errc::dimension_mismatch,
          "stabilizer and operation live on different systems");
  const Int d = o.d, m = o.m, inv2 = half_inverse(d);
  const auto w = detail::conjugation_form(q.c);
  const auto u = SymplecticForm::make(o.n, d).u;
  const ResidueMatrix mid = o.s.transposed() * (w - u) * o.s;
  std::vector<Int> b(static_cast<std::size_t>(m), 0);
  for (Int j = 0; j < m; ++j) {
    Int acc = mod_norm(o.b[j] + inv2 * mid(j, j), d);
    for (Int k = 0; k < 2 * o.n; ++k)
      acc = mod_norm(
          acc + o.s(k, j) * (q.g[k] - mod_norm(inv2 * w(k, k), d)), d);
    b[j] = acc;
  }
  OddStabilizerForm out{d, o.n, m, q.c * o.s, std::move(b)};
  from_odd_stabilizer_form(out);  // validates
  return out;
}

StateExpansion odd_expand(const OddStabilizerForm& o) {
  const Int d = o.d, inv2 = half_inverse(d);
  // Minimize in the odd form: same Smith reduction, phases mod d.
  const auto gen = from_odd_stabilizer_form(o);
  const auto omin = to_odd_stabilizer_form(minimize_generators(gen));
  const Int n = omin.n, m = omin.m;

  ResidueMatrix s1(n, m, d), s2(n, m, d);
  for (Int i = 0; i < n; ++i)
    for (Int j = 0; j < m; ++j) {
      s1.set(i, j, omin.s(i, j));
      s2.set(i, j, omin.s(n + i, j));
    }
  const auto snf1 = smith_normal_form(s1);
  const ResidueMatrix t = invert_matrix(snf1.k);
  const ResidueMatrix b = t.transposed() * s2 * snf1.l;
  const ResidueMatrix q = snf1.f;
  const Int rank = snf1.rank_r;

  // b' under the generator change R, all mod d.
  const auto w = generator_form(omin.s);
  const ResidueMatrix rwr = snf1.l.transposed() * w * snf1.l;
  std::vector<Int> bp(static_cast<std::size_t>(m), 0);
  for (Int j = 0; j < m; ++j) {
    Int acc = mod_norm(inv2 * rwr(j, j), d);
    for (Int k = 0; k < m; ++k)
      acc = mod_norm(
          acc + snf1.l(k, j) * (omin.b[k] - mod_norm(inv2 * w(k, k), d)), d);
    bp[j] = acc;
  }

  std::vector<Int> q_bar, q_vec;
  for (Int k = 0; k < n; ++k) q_bar.push_back(q(k, k) == 0 ? d : q(k, k));
  q_vec = q_bar;
  q_vec.resize(static_cast<std::size_t>(m), d);

  // x* solves B^T x = -b' mod q.
  std::vector<Int> y(static_cast<std::size_t>(m));
  for (Int k = 0; k < m; ++k) y[k] = mod_norm(-bp[k], q_vec[k]);
  const auto x_star =
      solve_mixed_modulus({b.transposed(), y, q_vec, q_bar});

  // M = 2^{-1} Q̄ B̄ mod d, p = b̄' - Vdiag(M) + B̄^T x* mod d.
  ResidueMatrix mform(n, n, d);
  for (Int i = 0; i < n; ++i)
    for (Int j = 0; j < n; ++j)
      mform.set(i, j, inv2 * q(i, i) * b(i, j));
  std::vector<Int> p(static_cast<std::size_t>(n));
  for (Int k = 0; k < n; ++k) {
    Int acc = bp[k] - mform(k, k);
    for (Int i = 0; i < n; ++i) acc += b(i, k) * x_star[i];
    p[k] = mod_norm(acc, d);
  }

  std::vector<Int> ranges;
  for (Int i = 0; i < rank; ++i) ranges.push_back(d / q_bar[i]);
  const Int count = checked_term_count(ranges);
  StateExpansion out{d, n, {}, snap16(std::sqrt(1.0 / double(count)))};
  std::vector<Int> tvec(static_cast<std::size_t>(rank), 0);
  std::vector<Int> z(static_cast<std::size_t>(n));
  do {
    Int acc = 0;
    for (Int i = 0; i < rank; ++i) {
      if (tvec[i] == 0) continue;
      acc = mod_norm(acc + p[i] * tvec[i], d);
      for (Int j = 0; j < rank; ++j)
        acc = mod_norm(acc + mform(i, j) * tvec[i] * tvec[j], d);
    }
    for (Int i = 0; i < n; ++i)
      z[i] = i < rank ? mod_norm(q_bar[i] * tvec[i] + x_star[i], d)
                      : x_star[i];
    out.terms.push_back({mod_norm(2 * acc, 2 * d), t.mul_vec(z)});
  } while (advance(tvec, ranges));
  return out;
}

}  // namespace qudit
