#include "bratteli/diagram.hpp"
#include "bratteli/dynamics.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>

#include "test_util.hpp"

using namespace bratteli;
using testutil::fibonacci;
using testutil::single_loop;
using testutil::thue_morse;

namespace {

const char* kFibText =
    "# comment\n"
    "vertices: a b\n"
    "edge: A1 a -> a rank 0\n"
    "edge: A2 b -> a rank 1\n"
    "edge: B1 a -> b rank 0\n";

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::MalformedLine;
}

}  // namespace

TEST_CASE("parse accepts the Fibonacci diagram") {
  Diagram d = Diagram::parse(kFibText);
  CHECK(d.vertex_count() == 2);
  CHECK(d.edge_count() == 3);
  const int a = d.vertex_index("a");
  const int b = d.vertex_index("b");
  CHECK(d.fiber(a).size() == 2);
  CHECK(d.fiber(b).size() == 1);
  CHECK(d.edge(d.fiber(a)[0]).id == "A1");
  CHECK(d.edge(d.fiber(a)[1]).id == "A2");
  CHECK(d.edge(d.edge_index("A2")).source == b);
  CHECK(d == fibonacci());
}

TEST_CASE("parse accepts the smallest legal diagram") {
  Diagram d = Diagram::parse("vertices: v\nedge: L v -> v rank 0\n");
  CHECK(d.vertex_count() == 1);
  CHECK(d.edge_count() == 1);
  CHECK(d.minimal_edges() == d.maximal_edges());
}

TEST_CASE("parse rejects bad input with named errors") {
  CHECK(kind_of([] { Diagram::parse("vertices: a\nedge: X a -> a\n"); }) ==
        ErrorKind::MalformedLine);
  CHECK(kind_of([] { Diagram::parse("edge: X a -> a rank 0\n"); }) == ErrorKind::MalformedLine);
  CHECK(kind_of([] { Diagram::parse("vertices: a\nedge: X a -> c rank 0\n"); }) ==
        ErrorKind::UnknownVertex);
  CHECK(kind_of([] {
          Diagram::parse("vertices: a\nedge: X a -> a rank 0\nedge: X a -> a rank 1\n");
        }) == ErrorKind::DuplicateEdgeId);
  CHECK(kind_of([] {
          Diagram::parse("vertices: a\nedge: X a -> a rank 0\nedge: Y a -> a rank 2\n");
        }) == ErrorKind::BadRankSet);
  // vertex b never receives an edge
  CHECK(kind_of([] {
          Diagram::parse("vertices: a b\nedge: X a -> a rank 0\nedge: Y b -> a rank 1\n");
        }) == ErrorKind::SinkOrSource);
}

TEST_CASE("substitution parsing and its named errors") {
  Substitution s = Substitution::parse("a -> a b\nb -> a\n");
  CHECK(s.letters == std::vector<std::string>{"a", "b"});
  CHECK(s.images[0] == std::vector<int>{0, 1});
  CHECK(kind_of([] { Substitution::parse("a -> a c\n"); }) == ErrorKind::UnknownLetter);
  CHECK(kind_of([] { Substitution::parse("a -> a\na -> a a\n"); }) == ErrorKind::DuplicateLetter);
  CHECK(kind_of([] { Substitution::parse("a ->\n"); }) == ErrorKind::MalformedLine);
  CHECK(kind_of([] { Substitution::parse(""); }) == ErrorKind::MalformedLine);
}

TEST_CASE("diagram from the Fibonacci substitution") {
  Diagram d = fibonacci();
  CHECK(d.vertex_count() == 2);
  CHECK(d.edge_count() == 3);
  const Edge& a1 = d.edge(d.edge_index("A1"));
  CHECK(d.vertex_name(a1.source) == "a");
  CHECK(d.vertex_name(a1.target) == "a");
  CHECK(a1.rank == 0);
  const Edge& a2 = d.edge(d.edge_index("A2"));
  CHECK(d.vertex_name(a2.source) == "b");
  CHECK(a2.rank == 1);
  const Edge& b1 = d.edge(d.edge_index("B1"));
  CHECK(d.vertex_name(b1.source) == "a");
  CHECK(d.vertex_name(b1.target) == "b");
}

TEST_CASE("identity substitution gives the one-loop diagram") {
  Diagram d = Diagram::from_substitution(Substitution::parse("a -> a\n"));
  CHECK(d.vertex_count() == 1);
  CHECK(d.edge_count() == 1);
  CHECK(d.minimal_edges() == d.maximal_edges());
}

TEST_CASE("Thue-Morse substitution gives two fibers of size two") {
  Diagram d = thue_morse();
  CHECK(d.vertex_count() == 2);
  CHECK(d.edge_count() == 4);
  for (int v = 0; v < 2; ++v) CHECK(d.fiber(v).size() == 2);
}

TEST_CASE("successor edges follow fiber ranks") {
  Diagram d = fibonacci();
  auto next = d.successor_edge(d.edge_index("A1"));
  REQUIRE(next.has_value());
  CHECK(d.edge(*next).id == "A2");
  CHECK_FALSE(d.successor_edge(d.edge_index("A2")).has_value());
  CHECK_FALSE(d.successor_edge(d.edge_index("B1")).has_value());
  CHECK(kind_of([&] { (void)d.edge_index("Z9"); }) == ErrorKind::UnknownEdge);
}

TEST_CASE("extremal edges") {
  Diagram d = fibonacci();
  auto ids = [&](const std::vector<int>& edges) {
    std::vector<std::string> out;
    for (int e : edges) out.push_back(d.edge(e).id);
    return out;
  };
  CHECK(ids(d.minimal_edges()) == std::vector<std::string>{"A1", "B1"});
  CHECK(ids(d.maximal_edges()) == std::vector<std::string>{"A2", "B1"});

  Diagram ex4 = testutil::load_corpus("ex4-E.bd");
  auto max = ex4.maximal_edges();
  auto has = [&](const std::string& id) {
    return std::any_of(max.begin(), max.end(), [&](int e) { return ex4.edge(e).id == id; });
  };
  CHECK(has("e2"));
  CHECK(has("e6"));
}

TEST_CASE("incidence matrices") {
  CHECK(fibonacci().incidence_matrix() ==
        std::vector<std::vector<long long>>{{1, 1}, {1, 0}});
  CHECK(single_loop().incidence_matrix() == std::vector<std::vector<long long>>{{1}});
  CHECK(thue_morse().incidence_matrix() ==
        std::vector<std::vector<long long>>{{1, 1}, {1, 1}});
}

TEST_CASE("primitivity") {
  CHECK(fibonacci().is_primitive());
  CHECK(thue_morse().is_primitive());
  CHECK(single_loop().is_primitive());
  // pure 2-cycle is irreducible but not primitive
  Diagram cycle = Diagram::parse(
      "vertices: a b\nedge: X b -> a rank 0\nedge: Y a -> b rank 0\n");
  CHECK_FALSE(cycle.is_primitive());
}

TEST_CASE("substitution diagram edge counts match image lengths") {
  for (const char* text : {"a -> a b\nb -> a\n", "a -> a b\nb -> b a\n", "a -> a a b\nb -> a\n"}) {
    Substitution s = Substitution::parse(text);
    Diagram d = Diagram::from_substitution(s);
    size_t total = 0;
    for (const auto& img : s.images) total += img.size();
    CHECK(d.edge_count() == static_cast<int>(total));
    // column sums of the incidence matrix are the image lengths
    auto m = d.incidence_matrix();
    for (size_t a = 0; a < s.letters.size(); ++a) {
      long long col = 0;
      for (int u = 0; u < d.vertex_count(); ++u) col += m[u][a];
      CHECK(col == static_cast<long long>(s.images[a].size()));
    }
  }
}

TEST_CASE("extremal sets always have one edge per vertex") {
  std::mt19937_64 rng(20240815);
  for (int trial = 0; trial < 50; ++trial) {
    Diagram d = testutil::random_diagram(rng);
    CHECK(static_cast<int>(d.minimal_edges().size()) == d.vertex_count());
    CHECK(static_cast<int>(d.maximal_edges().size()) == d.vertex_count());
    for (int e = 0; e < d.edge_count(); ++e) {
      auto next = d.successor_edge(e);
      if (!next) continue;
      CHECK(d.edge(*next).target == d.edge(e).target);
      CHECK(d.edge(*next).rank == d.edge(e).rank + 1);
      CHECK(d.predecessor_edge(*next) == e);
    }
  }
}

TEST_CASE("serialize round-trips") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Diagram d = testutil::random_diagram(rng);
    CHECK(Diagram::parse(d.serialize()) == d);
  }
  for (const auto& d : testutil::corpus_diagrams()) CHECK(Diagram::parse(d.serialize()) == d);
  Diagram corrupt = Diagram::parse(testutil::read_corpus("fib-corrupt.bd"));
  CHECK(Diagram::parse(corrupt.serialize()) == corrupt);
}

TEST_CASE("successor assertions") {
  Diagram corrupt = Diagram::parse(testutil::read_corpus("fib-corrupt.bd"));
  CHECK(corrupt.has_successor_assertions());
  // rank order says the successor of A2 is A1; the assertion claims A1 -> A2
  auto rank_next = corrupt.successor_edge(corrupt.edge_index("A2"));
  REQUIRE(rank_next.has_value());
  CHECK(corrupt.edge(*rank_next).id == "A1");
  auto asserted = corrupt.asserted_successor(corrupt.edge_index("A1"));
  REQUIRE(asserted.has_value());
  CHECK(corrupt.edge(*asserted).id == "A2");
  CHECK_FALSE(corrupt.asserted_successor(corrupt.edge_index("A2")).has_value());

  // an assertion matching the ranks behaves like no assertion at all
  Diagram consistent = Diagram::parse(
      "vertices: a b\n"
      "edge: A1 a -> a rank 0\n"
      "edge: A2 b -> a rank 1\n"
      "edge: B1 a -> b rank 0\n"
      "successor: A1 A2\n");
  Path p = testutil::path_of(consistent, "A1,A1");
  CHECK(asserted_vershik(consistent, p) == vershik(consistent, p));

  CHECK(kind_of([] {
          Diagram::parse("vertices: a b\nedge: A1 a -> a rank 0\nedge: A2 b -> a rank 1\n"
                         "edge: B1 a -> b rank 0\nsuccessor: A1 B1\n");
        }) == ErrorKind::BadSuccessorTable);  // crosses fibers
  CHECK(kind_of([] {
          Diagram::parse("vertices: a\nedge: X a -> a rank 0\nedge: Y a -> a rank 1\n"
                         "edge: Z a -> a rank 2\nsuccessor: X Y\n");
        }) == ErrorKind::BadSuccessorTable);  // chain does not cover the fiber
  CHECK(kind_of([] {
          Diagram::parse("vertices: a\nedge: X a -> a rank 0\nedge: Y a -> a rank 1\n"
                         "successor: X Q\n");
        }) == ErrorKind::UnknownEdge);
}
