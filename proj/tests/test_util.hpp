#pragma once

#include "bratteli/diagram.hpp"
#include "bratteli/dynamics.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

inline bratteli::Diagram fibonacci() {
  return bratteli::Diagram::from_substitution(
      bratteli::Substitution::parse("a -> a b\nb -> a\n"));
}

inline bratteli::Diagram thue_morse() {
  return bratteli::Diagram::from_substitution(
      bratteli::Substitution::parse("a -> a b\nb -> b a\n"));
}

inline bratteli::Diagram single_loop() {
  return bratteli::Diagram::parse("vertices: v\nedge: L v -> v rank 0\n");
}

inline std::string read_corpus(const std::string& name) {
  std::ifstream in(std::string(BRATTELI_CORPUS_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline bratteli::Diagram load_corpus(const std::string& name) {
  const std::string text = read_corpus(name);
  if (name.size() > 4 && name.substr(name.size() - 4) == ".sub")
    return bratteli::Diagram::from_substitution(bratteli::Substitution::parse(text));
  return bratteli::Diagram::parse(text);
}

inline std::vector<bratteli::Diagram> corpus_diagrams() {
  return {load_corpus("fib.bd"), load_corpus("thue-morse.sub"), load_corpus("single-loop.bd"),
          load_corpus("ex4-E.bd"), load_corpus("ex4-F.bd")};
}

inline bratteli::Path path_of(const bratteli::Diagram& d, const std::string& csv) {
  return bratteli::parse_path(d, csv);
}

/// Random valid diagram: every vertex keeps at least one outgoing edge by
/// construction, fibers carry contiguous ranks.
inline bratteli::Diagram random_diagram(std::mt19937_64& rng, int max_vertices = 4,
                                        int max_fiber = 3) {
  const int nv = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_vertices));
  std::vector<std::pair<int, int>> slots;  // (target, rank)
  for (int v = 0; v < nv; ++v) {
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_fiber));
    for (int r = 0; r < k; ++r) slots.emplace_back(v, r);
  }
  std::shuffle(slots.begin(), slots.end(), rng);
  std::vector<bratteli::Edge> edges;
  for (size_t i = 0; i < slots.size(); ++i) {
    bratteli::Edge e;
    e.id = "e" + std::to_string(i);
    e.target = slots[i].first;
    e.rank = slots[i].second;
    // the first nv slots cover every vertex as a source
    e.source = i < static_cast<size_t>(nv) ? static_cast<int>(i)
                                           : static_cast<int>(rng() % static_cast<unsigned>(nv));
    edges.push_back(std::move(e));
  }
  std::vector<std::string> names;
  for (int v = 0; v < nv; ++v) names.push_back("v" + std::to_string(v));
  return bratteli::Diagram(std::move(names), std::move(edges));
}

}  // namespace testutil
