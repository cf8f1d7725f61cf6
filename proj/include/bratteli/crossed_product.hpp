#pragma once

#include "bratteli/function_algebra.hpp"

#include <utility>
#include <vector>

namespace bratteli {

/// A finitely supported rational combination of symbols 1_f delta_n. Every
/// key (f, n) satisfies in_domain(f, n); the constructors and operations
/// maintain this. Zero coefficients are never stored.
struct CrossedElement {
  std::map<std::pair<Path, long long>, Rational> terms;

  bool operator==(const CrossedElement&) const = default;
  bool is_zero() const { return terms.empty(); }
};

/// 1_f delta_n. Throws DomainViolation unless f lies in P_n.
CrossedElement crossed_indicator(const Diagram& d, const Path& f, long long n);

/// Sum of 1_f delta_0 over all length `level` paths; the multiplicative unit
/// once operands are refined to this level.
CrossedElement crossed_unit(const Diagram& d, int level);

CrossedElement cross_scale(const CrossedElement& x, const Rational& c);
CrossedElement cross_add(const Diagram& d, const CrossedElement& x, const CrossedElement& y);

/// The embedding step 1_f delta_n = sum over compatible e of 1_{fe} delta_n;
/// writes x one level deeper without changing it as an algebra element.
CrossedElement refine_crossed(const Diagram& d, const CrossedElement& x);
CrossedElement refine_crossed_to(const Diagram& d, const CrossedElement& x, int level);

/// Product by the rule (1_f delta_n)(1_g delta_m) = [iterate(f,-n)=g]
/// 1_f delta_{n+m}, extended bilinearly. Operands with mixed support lengths
/// are refined to the common maximum first.
CrossedElement cross_multiply(const Diagram& d, const CrossedElement& x, const CrossedElement& y);

/// Involution: (1_f delta_n)^* = 1_{iterate(f,-n)} delta_{-n}. Scalars are
/// rational, so conjugation is the identity on coefficients.
CrossedElement cross_adjoint(const Diagram& d, const CrossedElement& x);

/// All pairs (f, n) with |f| = length and f in P_n, listed chain by chain.
/// This is a linear basis of the finite-dimensional algebra A_N.
std::vector<std::pair<Path, long long>> a_n_basis(const Diagram& d, int length);

/// A_N decomposed into one full matrix block per terminal vertex: the block
/// of v is indexed by the successor chain of length-N paths into v.
struct BlockDecomposition {
  int level = 1;
  std::vector<std::vector<Path>> chains;  ///< per vertex, successor-consecutive
  std::vector<long long> block_sizes;     ///< chain lengths p_N(v)
  long long dimension = 0;                ///< sum of squares
};

BlockDecomposition block_decomposition(const Diagram& d, int length);

/// Matrix unit E_{f,g} = 1_f delta_{pos(f)-pos(g)} for f, g in the chain of
/// `vertex` at positions `row`, `col`.
CrossedElement matrix_unit(const Diagram& d, const BlockDecomposition& blocks, int vertex,
                           int row, int col);

/// Multiplicities of the unital embedding A_N -> A_{N+1} realized by
/// refine_crossed: entry [v][w] counts how many copies of the level-N block
/// of v land in the level-(N+1) block of w. Derived from the last-edge
/// grouping of the level-(N+1) chains.
struct InclusionData {
  int level = 1;  ///< embeds level -> level+1
  std::vector<std::vector<long long>> multiplicity;
};

InclusionData inclusion(const Diagram& d, int length);

struct AfLevel {
  BlockDecomposition blocks;
  InclusionData incl;
};

/// The filtration A_1 (subset of) A_2 (subset of) ... up to `levels`.
std::vector<AfLevel> af_tower(const Diagram& d, int levels);

}  // namespace bratteli
