#include "bratteli/function_algebra.hpp"

#include <doctest.h>

#include <random>

#include "test_util.hpp"

using namespace bratteli;
using testutil::fibonacci;
using testutil::path_of;

namespace {

LevelFunction random_function(const Diagram& d, std::mt19937_64& rng, int max_level = 3) {
  const int level = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_level));
  LevelFunction f;
  f.level = level;
  for (const Path& p : enumerate_paths(d, level)) {
    if (rng() % 2) continue;
    const long long num = static_cast<long long>(rng() % 7) - 3;
    const long long den = 1 + static_cast<long long>(rng() % 3);
    if (num != 0) f.coeffs[p] = Rational(num, den);
  }
  return f;
}

}  // namespace

TEST_CASE("indicators") {
  Diagram d = fibonacci();
  LevelFunction f = indicator(d, path_of(d, "A1"));
  CHECK(f.level == 1);
  CHECK(f.coeffs.size() == 1);
  CHECK(f.coeffs.at(path_of(d, "A1")) == 1);
  CHECK(indicator(d, path_of(d, "A2,A1")).level == 2);

  // sum of all length-1 indicators is the unit
  LevelFunction sum;
  sum.level = 1;
  for (const Path& p : enumerate_paths(d, 1)) sum = lf_add(d, sum, indicator(d, p));
  CHECK(sum == unity(d, 1));
}

TEST_CASE("refinement") {
  Diagram d = fibonacci();
  LevelFunction f = refine(d, indicator(d, path_of(d, "A1")));
  LevelFunction expected = lf_add(d, indicator(d, path_of(d, "A1,A1")),
                                  indicator(d, path_of(d, "A1,B1")));
  CHECK(f == expected);
  CHECK(refine(d, unity(d, 1)) == unity(d, 2));
  LevelFunction zero;
  zero.level = 1;
  CHECK(refine(d, zero).is_zero());
}

TEST_CASE("products") {
  Diagram d = fibonacci();
  CHECK(multiply(d, indicator(d, path_of(d, "A1")), indicator(d, path_of(d, "A1,A1"))) ==
        indicator(d, path_of(d, "A1,A1")));
  CHECK(multiply(d, indicator(d, path_of(d, "A1")), indicator(d, path_of(d, "A2,A1"))).is_zero());
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    LevelFunction a = random_function(d, rng);
    CHECK(multiply(d, a, unity(d, 1)) == refine_to(d, a, std::max(a.level, 1)));
  }
}

TEST_CASE("translates") {
  Diagram d = fibonacci();
  CHECK(alpha(d, indicator(d, path_of(d, "A1,A1")), 1) == indicator(d, path_of(d, "A2,A1")));
  CHECK(alpha(d, indicator(d, path_of(d, "A2,A1")), -1) == indicator(d, path_of(d, "A1,A1")));
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    LevelFunction a = random_function(d, rng);
    CHECK(alpha(d, a, 0) == a);
  }

  // the all-maximal support path blocks the forward translate
  LevelFunction bad = indicator(d, path_of(d, "B1,A2"));
  CHECK_FALSE(alpha_defined(d, bad, 1));
  CHECK_THROWS_AS((void)alpha(d, bad, 1), Error);
  try {
    (void)alpha(d, bad, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainViolation);
    CHECK(std::string(e.what()).find("B1,A2") != std::string::npos);
  }
}

TEST_CASE("translate round-trip") {
  Diagram d = fibonacci();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    LevelFunction a = random_function(d, rng);
    for (long long n : {-2, -1, 1, 2}) {
      if (!alpha_defined(d, a, n)) continue;
      LevelFunction moved = alpha(d, a, n);
      REQUIRE(alpha_defined(d, moved, -n));
      CHECK(alpha(d, moved, -n) == a);
    }
  }
}

TEST_CASE("algebra laws on random functions") {
  Diagram d = fibonacci();
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    LevelFunction a = random_function(d, rng);
    LevelFunction b = random_function(d, rng);
    LevelFunction c = random_function(d, rng);
    CHECK(multiply(d, a, b) == multiply(d, b, a));
    CHECK(multiply(d, multiply(d, a, b), c) == multiply(d, a, multiply(d, b, c)));
    // refinement is an algebra map
    CHECK(refine(d, multiply(d, a, b)) == multiply(d, refine(d, a), refine(d, b)));
  }
  // indicators are projections
  for (const Path& p : enumerate_paths(d, 2))
    CHECK(multiply(d, indicator(d, p), indicator(d, p)) == indicator(d, p));
}

TEST_CASE("partition of unity at every level") {
  for (const auto& d : testutil::corpus_diagrams()) {
    for (int level = 1; level <= 3; ++level) {
      LevelFunction sum;
      sum.level = level;
      for (const Path& p : enumerate_paths(d, level)) sum = lf_add(d, sum, indicator(d, p));
      CHECK(sum == unity(d, level));
    }
    CHECK(refine(d, unity(d, 1)) == unity(d, 2));
  }
}

TEST_CASE("level dimension counts paths") {
  Diagram d = fibonacci();
  for (int level = 1; level <= 4; ++level) {
    auto paths = enumerate_paths(d, level);
    // distinct indicators occupy distinct basis slots, so the span has one
    // dimension per path
    LevelFunction sum;
    sum.level = level;
    for (const Path& p : paths) sum = lf_add(d, sum, indicator(d, p));
    CHECK(sum.coeffs.size() == paths.size());
  }
}

TEST_CASE("JSON round-trip") {
  Diagram d = fibonacci();
  LevelFunction f;
  f.level = 2;
  f.coeffs[path_of(d, "A1,A1")] = Rational(3, 2);
  f.coeffs[path_of(d, "B1,A2")] = Rational(-1);
  std::string text = level_function_json(d, f);
  CHECK(text.find("\"3/2\"") != std::string::npos);
  CHECK(level_function_from_json(d, text) == f);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    LevelFunction a = random_function(d, rng);
    CHECK(level_function_from_json(d, level_function_json(d, a)) == a);
  }
  CHECK_THROWS_AS((void)level_function_from_json(d, "{"), Error);
  CHECK_THROWS_AS((void)level_function_from_json(d, R"({"level":2,"coeffs":{"A1":"1"}})"), Error);
}
