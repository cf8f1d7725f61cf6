#pragma once

#include "bratteli/diagram.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bratteli {

/// A finite path f_1...f_m: consecutive edges are compatible, meaning the
/// target vertex of f_j equals the source vertex of f_{j+1}. Always non-empty.
/// Edges are stored as indices into the owning Diagram.
struct Path {
  std::vector<int> edges;
  auto operator<=>(const Path&) const = default;

  int length() const { return static_cast<int>(edges.size()); }
};

/// A word is an arbitrary non-empty edge sequence, compatibility not required.
using Word = std::vector<int>;

struct PathClass {
  bool is_max = false;  ///< every edge is its fiber maximum
  bool is_min = false;  ///< every edge is its fiber minimum
};

/// True iff consecutive compatibility holds everywhere, i.e. the word is a
/// path. Words failing this are exactly the ones whose generator products
/// vanish in the operator model.
bool is_path(const Diagram& d, const Word& w);

/// Comma-separated edge ids, e.g. "A1,A2".
Path parse_path(const Diagram& d, const std::string& text);
std::string path_string(const Diagram& d, const Path& p);

PathClass classify(const Diagram& d, const Path& p);

/// Successor map on paths: with n the least index whose edge is not a fiber
/// maximum, the prefix before n is replaced by the unique all-minimal path and
/// edge n by its fiber successor. Empty iff p is all-maximal. Preserves
/// length and the terminal vertex.
std::optional<Path> vershik(const Diagram& d, const Path& p);

/// Inverse of `vershik`: predecessor at the least non-minimal index, all-
/// maximal prefix before it. Empty iff p is all-minimal.
std::optional<Path> vershik_inv(const Diagram& d, const Path& p);

/// n-fold successor (n >= 0) or inverse (n < 0), stepping one application at
/// a time; empty as soon as any intermediate step is undefined.
std::optional<Path> iterate(const Diagram& d, const Path& p, long long n);

/// Membership in the partial-action domain P_n: true iff iterate(p, -n) is
/// defined. P_0 is everything.
bool in_domain(const Diagram& d, const Path& p, long long n);

/// All length `length` paths (optionally restricted to those whose last edge
/// targets `end`), in colexicographic order: compare the last differing
/// coordinate by fiber rank. Without `end`, groups run over terminal vertices
/// in index order. The successor map walks each group front to back.
std::vector<Path> enumerate_paths(const Diagram& d, int length, std::optional<int> end = {});

/// The successor orbit through the all-minimal path into `end_vertex`;
/// independent route to the same list as enumerate_paths(d, length, v).
std::vector<Path> orbit_chain(const Diagram& d, int length, int end_vertex);

Path min_path_into(const Diagram& d, int length, int end_vertex);
Path max_path_into(const Diagram& d, int length, int end_vertex);

/// Number of length `length` paths per terminal vertex.
std::vector<long long> path_counts(const Diagram& d, int length);

struct DomainBound {
  unsigned long long n_sup = 0;               ///< max |n| with P_n meeting the length-N words
  std::optional<unsigned long long> bound;    ///< m^N; empty when it exceeds 64-bit range
};

/// For words of length N: the largest |n| for which some length-N path lies
/// in P_n, together with the guaranteed strict upper bound m^N (m = number of
/// edges). n_sup is computed by stepping the successor map, never via the
/// bound.
DomainBound domain_bound(const Diagram& d, int length);

/// Successor map derived from the diagram's asserted successor table instead
/// of the ranks (identical to `vershik` when no table is present). This is
/// what the operator model's shift implements, so that `check` can falsify an
/// inconsistent assertion.
std::optional<Path> asserted_vershik(const Diagram& d, const Path& p);

}  // namespace bratteli
