// Stabilizer groups given by generator matrices S in Z_d^{2n x m} and phase
// vectors f in Z_{2d}^m: validation, minimal generating sets through the
// Smith form, generator changes, Clifford action, the pseudo-diagonal normal
// form, and standard-basis expansions (deduplicated, raw, and generic).
#pragma once

#include <vector>

#include "qudit/clifford.hpp"
#include "qudit/zmod.hpp"

namespace qudit {

class StabilizerGenerators {
public:
  // Validates commutation, group size d^n, and the phase condition on the
  // minimized generating set.
  StabilizerGenerators(ResidueMatrix s, std::vector<Int> f);

  Int d() const { return d_; }
  Int n() const { return n_; }
  Int m() const { return m_; }
  const ResidueMatrix& s() const { return s_; }
  const std::vector<Int>& f() const { return f_; }

  bool operator==(const StabilizerGenerators& rhs) const = default;

private:
  Int d_, n_, m_;
  ResidueMatrix s_;
  std::vector<Int> f_;
};

inline StabilizerGenerators validate_stabilizer(ResidueMatrix s,
                                                std::vector<Int> f) {
  return StabilizerGenerators(std::move(s), std::move(f));
}

// Smallest generating set for the same group, phases transformed along.
StabilizerGenerators minimize_generators(const StabilizerGenerators& st);

// S' = S R for invertible R, phases transformed so the generated group,
// phases included, is unchanged.
StabilizerGenerators change_generators(const StabilizerGenerators& st,
                                       const ResidueMatrix& r);

// The stabilizer of Q|psi>.
StabilizerGenerators apply_clifford(const StabilizerGenerators& st,
                                    const CliffordOp& q);

// Data of the pseudo-diagonal form S' = [[Q̄, 0], [B̄, B̄̄]] together with
// the solved basis offset x* and the quadratic/linear exponent data.
struct ExpansionForm {
  Int d, n, m, rank_r;
  ResidueMatrix t;          // n x n invertible configuration transform
  ResidueMatrix r;          // m x m invertible generator change
  ResidueMatrix q;          // n x m, Smith form of the upper block
  ResidueMatrix b;          // n x m
  std::vector<Int> f_prime;  // length m, mod 2d
  std::vector<Int> q_bar;    // length n, divisors of d (value d where Q_kk=0)
  std::vector<Int> q_vec;    // length m, q_bar padded with d
  ResidueMatrix m_form;      // n x n, Q̄ B̄ mod d (symmetric)
  std::vector<Int> p;        // length n, mod 2d
  std::vector<Int> x_star;   // length n, entries in [0, q_bar_i)
};

ExpansionForm normal_form(const StabilizerGenerators& st);

struct ExpansionTerm {
  Int zeta_exponent;        // mod 2d
  std::vector<Int> label;   // in Z_d^n

  bool operator==(const ExpansionTerm& rhs) const = default;
};

struct StateExpansion {
  Int d, n;
  std::vector<ExpansionTerm> terms;
  double normalization;  // (number of terms)^{-1/2}, 16 significant digits
};

// Deduplicated expansion: distinct labels, unit-norm state.
StateExpansion expand(const StabilizerGenerators& st);

// All t in Z_d^n, labels repeating; equal labels carry equal exponents.
StateExpansion expand_raw(const StabilizerGenerators& st);

// The generic-sum form over t in Z_d^m on the given generators.
StateExpansion expand_generic(const StabilizerGenerators& st);

// Groups equal labels (exponents must agree, else LabelPhaseMismatch) and
// returns the deduplicated expansion sorted by label.
StateExpansion collapse_expansion(const StateExpansion& e);

// Odd d: phases as omega exponents b = f/2 in Z_d^m.
struct OddStabilizerForm {
  Int d, n, m;
  ResidueMatrix s;
  std::vector<Int> b;

  bool operator==(const OddStabilizerForm& rhs) const = default;
};

OddStabilizerForm to_odd_stabilizer_form(const StabilizerGenerators& st);
StabilizerGenerators from_odd_stabilizer_form(const OddStabilizerForm& o);

OddStabilizerForm odd_change_generators(const OddStabilizerForm& o,
                                        const ResidueMatrix& r);
OddStabilizerForm odd_apply_clifford(const OddStabilizerForm& o,
                                     const OddCliffordForm& q);
// Deduplicated expansion through the mod-d formulas; the returned zeta
// exponents are the doubled omega exponents, so it compares termwise with
// expand on the general form.
StateExpansion odd_expand(const OddStabilizerForm& o);

}  // namespace qudit
