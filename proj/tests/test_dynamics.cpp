#include "bratteli/dynamics.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "test_util.hpp"

using namespace bratteli;
using testutil::fibonacci;
using testutil::path_of;
using testutil::single_loop;
using testutil::thue_morse;

TEST_CASE("word compatibility") {
  Diagram d = fibonacci();
  CHECK(is_path(d, path_of(d, "A1,A1").edges));
  CHECK_FALSE(is_path(d, {d.edge_index("A1"), d.edge_index("A2")}));
  for (int e = 0; e < d.edge_count(); ++e) CHECK(is_path(d, {e}));
}

TEST_CASE("path strings round-trip") {
  Diagram d = fibonacci();
  for (const char* text : {"A1,A1", "A2,A1", "B1,A2", "A1"})
    CHECK(path_string(d, path_of(d, text)) == text);
  CHECK_THROWS_AS((void)parse_path(d, "A1,A2"), Error);  // incompatible
  CHECK_THROWS_AS((void)parse_path(d, "Z1"), Error);
  CHECK_THROWS_AS((void)parse_path(d, ""), Error);
}

TEST_CASE("colexicographic enumeration, frozen Fibonacci tables") {
  Diagram d = fibonacci();
  const int a = d.vertex_index("a");
  const int b = d.vertex_index("b");
  auto strings = [&](const std::vector<Path>& paths) {
    std::vector<std::string> out;
    for (const auto& p : paths) out.push_back(path_string(d, p));
    return out;
  };
  CHECK(strings(enumerate_paths(d, 2, a)) ==
        std::vector<std::string>{"A1,A1", "A2,A1", "B1,A2"});
  CHECK(strings(enumerate_paths(d, 2, b)) == std::vector<std::string>{"A1,B1", "A2,B1"});
  CHECK(enumerate_paths(single_loop(), 6).size() == 1);
}

TEST_CASE("classification") {
  Diagram d = fibonacci();
  auto c = classify(d, path_of(d, "B1,A2"));
  CHECK(c.is_max);
  CHECK_FALSE(c.is_min);
  c = classify(d, path_of(d, "A1,A1"));
  CHECK(c.is_min);
  CHECK_FALSE(c.is_max);
  c = classify(single_loop(), path_of(single_loop(), "L,L"));
  CHECK(c.is_max);
  CHECK(c.is_min);
}

TEST_CASE("successor map, frozen Fibonacci values") {
  Diagram d = fibonacci();
  CHECK(vershik(d, path_of(d, "A1,A1")) == path_of(d, "A2,A1"));
  CHECK(vershik(d, path_of(d, "A2,A1")) == path_of(d, "B1,A2"));
  CHECK_FALSE(vershik(d, path_of(d, "B1,A2")).has_value());

  CHECK(vershik_inv(d, path_of(d, "B1,A2")) == path_of(d, "A2,A1"));
  CHECK_FALSE(vershik_inv(d, path_of(d, "A1,A1")).has_value());
  CHECK(vershik_inv(d, path_of(d, "A2,B1")) == path_of(d, "A1,B1"));
}

TEST_CASE("iteration") {
  Diagram d = fibonacci();
  Path p = path_of(d, "A1,A1");
  CHECK(iterate(d, p, 2) == path_of(d, "B1,A2"));
  CHECK_FALSE(iterate(d, p, 3).has_value());
  CHECK(iterate(d, p, 0) == p);
  CHECK(iterate(d, path_of(d, "B1,A2"), -2) == p);
}

TEST_CASE("domain membership") {
  Diagram d = fibonacci();
  CHECK(in_domain(d, path_of(d, "B1,A2"), 2));
  CHECK_FALSE(in_domain(d, path_of(d, "A2,A1"), 2));
  CHECK(in_domain(d, path_of(d, "A2,A1"), 0));
  CHECK(in_domain(d, path_of(d, "A1,A1"), -2));
  CHECK_FALSE(in_domain(d, path_of(d, "A1,A1"), 1));
}

TEST_CASE("domain bounds, frozen values") {
  Diagram fib = fibonacci();
  auto b = domain_bound(fib, 2);
  CHECK(b.n_sup == 2);
  CHECK(b.bound == 9);
  b = domain_bound(fib, 1);
  CHECK(b.n_sup == 1);
  CHECK(b.bound == 3);
  b = domain_bound(single_loop(), 1);
  CHECK(b.n_sup == 0);
  CHECK(b.bound == 1);
  b = domain_bound(thue_morse(), 1);
  CHECK(b.n_sup == 1);
  CHECK(b.bound == 4);
  // m^N overflows 64 bits but n_sup is still computed
  b = domain_bound(thue_morse(), 40);
  CHECK_FALSE(b.bound.has_value());
  CHECK(b.n_sup > 0);
}

TEST_CASE("P_1 at length 1 is exactly the non-minimal singleton") {
  Diagram d = fibonacci();
  std::vector<std::string> in_p1;
  for (const Path& p : enumerate_paths(d, 1))
    if (in_domain(d, p, 1)) in_p1.push_back(path_string(d, p));
  CHECK(in_p1 == std::vector<std::string>{"A2"});
}

namespace {

void check_successor_structure(const Diagram& d, int length) {
  std::set<Path> all, non_max_domain, image;
  for (int v = 0; v < d.vertex_count(); ++v) {
    const auto paths = enumerate_paths(d, length, v);
    // the orbit through the all-minimal path is exactly the enumeration
    CHECK(orbit_chain(d, length, v) == paths);
    for (size_t i = 0; i < paths.size(); ++i) {
      all.insert(paths[i]);
      auto next = vershik(d, paths[i]);
      auto cls = classify(d, paths[i]);
      CHECK(next.has_value() == !cls.is_max);
      if (!next) continue;
      non_max_domain.insert(paths[i]);
      // successor stays in the list, one step ahead
      REQUIRE(i + 1 < paths.size());
      CHECK(*next == paths[i + 1]);
      CHECK(next->length() == paths[i].length());
      CHECK(d.edge(next->edges.back()).target == d.edge(paths[i].edges.back()).target);
      CHECK(image.insert(*next).second);  // injectivity
      CHECK(vershik_inv(d, *next) == paths[i]);
    }
  }
  // image = everything minus the all-minimal paths
  std::set<Path> expected_image;
  for (const Path& p : all)
    if (!classify(d, p).is_min) expected_image.insert(p);
  CHECK(image == expected_image);
}

}  // namespace

TEST_CASE("successor map is a bijection off the extremes, all corpus diagrams") {
  for (const auto& d : testutil::corpus_diagrams())
    for (int n = 1; n <= 4; ++n) check_successor_structure(d, n);
}

TEST_CASE("successor map structure on random diagrams") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 25; ++trial) {
    Diagram d = testutil::random_diagram(rng);
    for (int n = 1; n <= 3; ++n) check_successor_structure(d, n);
  }
}

TEST_CASE("monotone domains") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    Diagram d = testutil::random_diagram(rng);
    for (const Path& p : enumerate_paths(d, 3)) {
      for (long long n = 0; n <= 6; ++n)
        for (long long s = 0; s <= n; ++s) {
          if (in_domain(d, p, n)) CHECK(in_domain(d, p, s));
          if (in_domain(d, p, -n)) CHECK(in_domain(d, p, -s));
        }
    }
  }
}

TEST_CASE("domain bound agrees with the longest-chain oracle") {
  std::mt19937_64 rng(1234);
  std::vector<Diagram> diagrams = testutil::corpus_diagrams();
  for (int trial = 0; trial < 10; ++trial) diagrams.push_back(testutil::random_diagram(rng));
  for (const auto& d : diagrams)
    for (int n = 1; n <= 3; ++n) {
      unsigned long long longest = 0;
      for (int v = 0; v < d.vertex_count(); ++v)
        longest = std::max(longest,
                           static_cast<unsigned long long>(orbit_chain(d, n, v).size()));
      auto b = domain_bound(d, n);
      CHECK(b.n_sup == longest - 1);
      REQUIRE(b.bound.has_value());
      CHECK(b.n_sup < *b.bound);
    }
}
