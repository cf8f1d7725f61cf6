#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bratteli {

enum class ErrorKind {
  MalformedLine,
  UnknownVertex,
  UnknownEdge,
  DuplicateEdgeId,
  BadRankSet,
  SinkOrSource,
  BadSuccessorTable,
  UnknownLetter,
  DuplicateLetter,
  EmptyImage,
  BadPath,
  DomainViolation,
  DepthExceeded,
  EmptyInterior,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// One level-one edge. A stationary diagram repeats the same edge set at every
/// level, so a single copy of the level-one data determines everything.
struct Edge {
  std::string id;
  int source = 0;  ///< i(e), the vertex the edge leaves
  int target = 0;  ///< t(e), the vertex the edge enters
  int rank = 0;    ///< position in the total order of the target fiber
};

struct Substitution {
  std::vector<std::string> letters;
  std::vector<std::vector<int>> images;  ///< per letter, indices into `letters`

  /// Parses the `.sub` format: one line per letter, `a -> b1 b2 ... bk`.
  static Substitution parse(const std::string& text);
};

/// A stationary ordered Bratteli diagram given by its level-one data: a dense
/// vertex set, edges with source/target/rank, and per-target fibers that are
/// totally ordered by rank. Immutable after construction; construction
/// validates every structural invariant.
///
/// A diagram may additionally carry an *asserted successor table* (the
/// optional `successor:` lines of the `.bd` format). The table claims what
/// the order's successor map is; it is stored verbatim and is deliberately
/// not cross-checked against the ranks, because verifying such claims through
/// the operator relations is one of the jobs of this library. All rank-based
/// accessors ignore it.
class Diagram {
 public:
  Diagram(std::vector<std::string> vertex_names, std::vector<Edge> edges,
          std::map<std::string, std::string> successor_assertions = {});

  /// Parses the `.bd` format. Errors name the offending line or vertex.
  static Diagram parse(const std::string& text);

  /// The p-th letter b_p of the image of a yields an edge with source b_p,
  /// target a and rank p-1.
  static Diagram from_substitution(const Substitution& s);

  int vertex_count() const { return static_cast<int>(names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::string& vertex_name(int v) const { return names_.at(v); }
  int vertex_index(const std::string& name) const;

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_.at(e); }
  int edge_index(const std::string& id) const;

  /// Incoming edges of v in rank order. Never empty.
  const std::vector<int>& fiber(int v) const { return fibers_.at(v); }
  /// Edges with source v, in edge-index order. Never empty.
  const std::vector<int>& out_edges(int v) const { return out_edges_.at(v); }

  /// Next edge in the target fiber; empty for the fiber maximum.
  std::optional<int> successor_edge(int e) const;
  std::optional<int> predecessor_edge(int e) const;

  int min_edge_into(int v) const { return fibers_.at(v).front(); }
  int max_edge_into(int v) const { return fibers_.at(v).back(); }
  /// Rank-0 edge of each fiber, indexed by vertex. Size = vertex_count().
  std::vector<int> minimal_edges() const;
  /// Top-rank edge of each fiber, indexed by vertex. Size = vertex_count().
  std::vector<int> maximal_edges() const;

  /// Entry [u][v] counts edges with source u and target v.
  std::vector<std::vector<long long>> incidence_matrix() const;
  /// Some power of the incidence matrix is entrywise positive.
  bool is_primitive() const;

  bool has_successor_assertions() const { return !asserted_succ_.empty(); }
  std::optional<int> asserted_successor(int e) const;
  std::optional<int> asserted_predecessor(int e) const;
  /// Start of the asserted chain of fiber(v); equals min_edge_into(v) when no
  /// table is present.
  int asserted_min_edge_into(int v) const;

  /// Canonical `.bd` form: vertices line first, edges sorted by
  /// (target, rank), then successor assertions sorted by source edge id.
  std::string serialize() const;

  bool operator==(const Diagram& other) const;

 private:
  void validate();

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> fibers_;
  std::vector<std::vector<int>> out_edges_;
  std::map<std::string, int> vertex_index_;
  std::map<std::string, int> edge_index_;
  std::map<int, int> asserted_succ_;
  std::map<int, int> asserted_pred_;
  std::vector<int> asserted_min_;  ///< per vertex; chain starts
};

}  // namespace bratteli
