#pragma once

#include "bratteli/crossed_product.hpp"
#include "bratteli/sparse.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bratteli {

/// Basis of the depth-M truncation: all paths of length 1..M, lengths
/// ascending; within a length, grouped by terminal vertex (in index order)
/// and colexicographic inside each group. The tables make single-basis-vector
/// evaluation of generator words O(1) per factor.
struct TruncatedSpace {
  int depth = 0;
  std::vector<Path> basis;
  std::map<Path, int> index_of;

  std::vector<int> succ;  ///< shift image, -1 when undefined (asserted table when present)
  std::vector<int> pred;  ///< inverse of succ
  std::vector<int> head;  ///< first edge of the path
  std::vector<int> tail;  ///< index of the path with its head removed, -1 for length 1
  std::vector<int> len;
  std::vector<std::vector<int>> prepend;  ///< [edge][i]: index of e.p, -1 past cap or incompatible

  int size() const { return static_cast<int>(basis.size()); }
  int index(const Path& p) const {
    auto it = index_of.find(p);
    return it == index_of.end() ? -1 : it->second;
  }
};

TruncatedSpace make_space(const Diagram& d, int depth);

/// The truncated generators: U shifts a basis path to its successor (zero on
/// all-maximal paths), V_e prepends e (zero on incompatible heads and at the
/// depth cap). Entries are 0/1 with at most one nonzero per row and column.
struct Generators {
  Diagram diagram;
  TruncatedSpace space;
  SparseMat<long long> U;
  std::vector<SparseMat<long long>> V;  ///< indexed by edge
};

/// pre: depth >= 2.
Generators build_generators(const Diagram& d, int depth);

/// U^n for n >= 0, (U^*)^|n| for n < 0.
SparseMat<long long> pi_matrix(const Generators& g, long long n);

/// One letter of an operator word.
struct Factor {
  enum class Kind { U, Ustar, V, Vstar };
  Kind kind = Kind::U;
  int edge = -1;  ///< meaningful for V / Vstar

  bool operator==(const Factor&) const = default;
};

/// A formal product of factors; factors.front() acts FIRST on a vector.
struct OperatorWord {
  std::vector<Factor> factors;
};

/// s_f = V_{f_1} ... V_{f_m} for any word f (compatibility not required).
OperatorWord creator_word(const Word& f);
OperatorWord annihilator_word(const Word& f);  ///< s_f^*
OperatorWord range_projection_word(const Word& f);  ///< e_f = s_f s_f^*
OperatorWord shift_word(long long n);  ///< u^n, with u^* powers for n < 0
/// Operator product: `after` applied after `first`.
OperatorWord compose(const OperatorWord& after, const OperatorWord& first);

/// An integer combination of words. The identity is the empty word.
struct OperatorExpr {
  std::vector<std::pair<long long, OperatorWord>> terms;

  static OperatorExpr identity() { return OperatorExpr{{{1, OperatorWord{}}}}; }
  static OperatorExpr of(const OperatorWord& w) { return OperatorExpr{{{1, w}}}; }
  OperatorExpr& add(long long c, OperatorWord w) {
    terms.emplace_back(c, std::move(w));
    return *this;
  }
};

/// Inclusive range [lo, hi] of basis-path lengths whose evaluation never
/// leaves lengths 1..depth at any intermediate step, tracked through the
/// word's running length offset (V: +1, V*: -1, U/U*: 0). lo > hi means
/// empty.
std::pair<int, int> interior_lengths(const OperatorWord& w, int depth);
/// Intersection over every word of both sides.
std::pair<int, int> interior_lengths(const OperatorExpr& lhs, const OperatorExpr& rhs, int depth);
/// The basis subset realizing interior_lengths.
std::vector<int> interior_basis(const TruncatedSpace& space, const OperatorWord& w);

/// Image of the basis vector `index` under a word / an expression. Words of
/// generators act as partial permutations, so a word image is empty or a
/// single unit vector.
std::optional<int> apply_word(const TruncatedSpace& space, const OperatorWord& w, int index);
std::map<int, long long> apply_expr(const TruncatedSpace& space, const OperatorExpr& e, int index);

SparseMat<long long> expr_matrix(const TruncatedSpace& space, const OperatorExpr& e);

struct Counterexample {
  std::string path;  ///< basis path the sides disagree on
  std::string lhs;
  std::string rhs;
};

struct RelationReport {
  std::string relation;
  long long interior_size = 0;  ///< number of basis vectors both sides were evaluated on
  long long mismatches = 0;
  bool pass = false;
  std::vector<Counterexample> counterexamples;  ///< first few, empty iff pass
};

/// Evaluates both sides on every interior basis vector with exact integer
/// arithmetic. Throws EmptyInterior when the depth leaves no vector to check.
RelationReport check_relation(const Generators& g, const std::string& name,
                              const OperatorExpr& lhs, const OperatorExpr& rhs);
RelationReport check_relation(const Diagram& d, const std::string& name, const OperatorExpr& lhs,
                              const OperatorExpr& rhs, int depth);

/// Runs every relation family on the truncation: the two Cuntz-Krieger
/// families, the successor-intertwining and extremal-exchange relations, the
/// partial-isometry family for shift powers, the word lemma (s_f vanishes
/// exactly off paths), the cylinder product/refinement rules, both successor
/// conjugation identities, the partial-representation law, the range
/// projections, and the covariance identities. n_max defaults to
/// domain_bound(d, depth).n_sup + 1 so the shift laws cover the whole nonzero
/// range; every report states the range it verified.
/// pre: depth >= 3.
std::vector<RelationReport> check_all(const Diagram& d, int depth,
                                      std::optional<long long> n_max = {},
                                      bool parallel = false);

bool all_pass(const std::vector<RelationReport>& reports);

/// Matrix of sum coeff * phi(1_f) pi(n) over the terms of x, where phi(1_f)
/// is the diagonal projection onto basis paths extending f. Requires every
/// support path to have length <= depth-1 (throws DepthExceeded).
SparseMat<Rational> phi_times_pi(const Generators& g, const CrossedElement& x);
SparseMat<Rational> phi_times_pi(const Diagram& d, const CrossedElement& x, int depth);

}  // namespace bratteli
