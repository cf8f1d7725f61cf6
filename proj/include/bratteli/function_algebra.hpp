#pragma once

#include "bratteli/dynamics.hpp"
#include "bratteli/rational.hpp"

#include <map>

namespace bratteli {

/// A level-m function: a finitely supported rational combination of cylinder
/// indicators over length-m paths. Zero coefficients are never stored, so
/// equality of values is equality of representations.
struct LevelFunction {
  int level = 1;
  std::map<Path, Rational> coeffs;

  bool operator==(const LevelFunction&) const = default;
  bool is_zero() const { return coeffs.empty(); }
};

/// The indicator of the cylinder of p, as a level-|p| basis vector.
LevelFunction indicator(const Diagram& d, const Path& p);

/// The constant-one function at the given level (sum of all indicators).
LevelFunction unity(const Diagram& d, int level);

LevelFunction lf_scale(const LevelFunction& a, const Rational& c);

/// Sum; operands are refined to the common level first.
LevelFunction lf_add(const Diagram& d, const LevelFunction& a, const LevelFunction& b);

/// One-level refinement: the same function written at level m+1, spreading
/// each coefficient over the one-edge extensions of its path.
LevelFunction refine(const Diagram& d, const LevelFunction& a);
LevelFunction refine_to(const Diagram& d, const LevelFunction& a, int level);

/// Pointwise product. Levels may differ; both operands are refined to the
/// common maximum first.
LevelFunction multiply(const Diagram& d, const LevelFunction& a, const LevelFunction& b);

/// True iff every support path lies in P_{-n}, i.e. the translate exists.
bool alpha_defined(const Diagram& d, const LevelFunction& a, long long n);

/// Partial-action translate: coefficient of f moves to the n-th successor
/// iterate of f. Throws DomainViolation (listing the offending support paths)
/// when some support path is outside P_{-n}; never truncates silently.
LevelFunction alpha(const Diagram& d, const LevelFunction& a, long long n);

/// {"level": m, "coeffs": {"A1,A1": "3/2", ...}}
std::string level_function_json(const Diagram& d, const LevelFunction& a);
LevelFunction level_function_from_json(const Diagram& d, const std::string& text);

}  // namespace bratteli
