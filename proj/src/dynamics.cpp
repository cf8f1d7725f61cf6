#include "bratteli/dynamics.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace bratteli {

namespace {

// Shared successor machinery, parameterized by the edge order in use (rank
// order or the asserted table).
struct EdgeOrder {
  std::function<std::optional<int>(int)> succ;
  std::function<std::optional<int>(int)> pred;
  std::function<int(int)> min_into;
  std::function<int(int)> max_into;
};

EdgeOrder rank_order(const Diagram& d) {
  return {
      [&d](int e) { return d.successor_edge(e); },
      [&d](int e) { return d.predecessor_edge(e); },
      [&d](int v) { return d.min_edge_into(v); },
      [&d](int v) { return d.max_edge_into(v); },
  };
}

std::optional<Path> successor_with(const Diagram& d, const EdgeOrder& order, const Path& p) {
  const auto& edges = p.edges;
  for (size_t j = 0; j < edges.size(); ++j) {
    auto next = order.succ(edges[j]);
    if (!next) continue;
    Path out = p;
    out.edges[j] = *next;
    // Rebuild the prefix as the unique all-minimal path leading into the
    // replaced edge, working backwards from its source vertex.
    int v = d.edge(*next).source;
    for (size_t k = j; k-- > 0;) {
      out.edges[k] = order.min_into(v);
      v = d.edge(out.edges[k]).source;
    }
    return out;
  }
  return std::nullopt;
}

std::optional<Path> predecessor_with(const Diagram& d, const EdgeOrder& order, const Path& p) {
  const auto& edges = p.edges;
  for (size_t j = 0; j < edges.size(); ++j) {
    auto prev = order.pred(edges[j]);
    if (!prev) continue;
    Path out = p;
    out.edges[j] = *prev;
    int v = d.edge(*prev).source;
    for (size_t k = j; k-- > 0;) {
      out.edges[k] = order.max_into(v);
      v = d.edge(out.edges[k]).source;
    }
    return out;
  }
  return std::nullopt;
}

void check_path(const Diagram& d, const Path& p) {
  if (p.edges.empty()) throw Error(ErrorKind::BadPath, "empty path");
  if (!is_path(d, p.edges))
    throw Error(ErrorKind::BadPath, "edge sequence '" + path_string(d, p) + "' is not a path");
}

}  // namespace

bool is_path(const Diagram& d, const Word& w) {
  for (size_t j = 0; j + 1 < w.size(); ++j)
    if (d.edge(w[j]).target != d.edge(w[j + 1]).source) return false;
  return true;
}

Path parse_path(const Diagram& d, const std::string& text) {
  Path p;
  std::istringstream in(text);
  std::string id;
  while (std::getline(in, id, ',')) {
    // allow surrounding whitespace around each id
    auto b = id.find_first_not_of(" \t");
    auto e = id.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error(ErrorKind::BadPath, "empty edge id in path");
    p.edges.push_back(d.edge_index(id.substr(b, e - b + 1)));
  }
  check_path(d, p);
  return p;
}

std::string path_string(const Diagram& d, const Path& p) {
  std::string out;
  for (size_t i = 0; i < p.edges.size(); ++i) {
    if (i) out += ',';
    out += d.edge(p.edges[i]).id;
  }
  return out;
}

PathClass classify(const Diagram& d, const Path& p) {
  PathClass c{true, true};
  for (int e : p.edges) {
    if (d.successor_edge(e)) c.is_max = false;
    if (d.predecessor_edge(e)) c.is_min = false;
  }
  return c;
}

std::optional<Path> vershik(const Diagram& d, const Path& p) {
  return successor_with(d, rank_order(d), p);
}

std::optional<Path> vershik_inv(const Diagram& d, const Path& p) {
  return predecessor_with(d, rank_order(d), p);
}

std::optional<Path> asserted_vershik(const Diagram& d, const Path& p) {
  if (!d.has_successor_assertions()) return vershik(d, p);
  EdgeOrder order{
      [&d](int e) { return d.asserted_successor(e); },
      [&d](int e) { return d.asserted_predecessor(e); },
      [&d](int v) { return d.asserted_min_edge_into(v); },
      [&d](int v) { return d.max_edge_into(v); },  // unused by successor_with
  };
  return successor_with(d, order, p);
}

std::optional<Path> iterate(const Diagram& d, const Path& p, long long n) {
  Path cur = p;
  for (long long i = 0; i < (n < 0 ? -n : n); ++i) {
    auto next = n > 0 ? vershik(d, cur) : vershik_inv(d, cur);
    if (!next) return std::nullopt;
    cur = std::move(*next);
  }
  return cur;
}

bool in_domain(const Diagram& d, const Path& p, long long n) {
  return iterate(d, p, -n).has_value();
}

Path min_path_into(const Diagram& d, int length, int end_vertex) {
  Path p;
  p.edges.assign(length, -1);
  int v = end_vertex;
  for (int k = length; k-- > 0;) {
    p.edges[k] = d.min_edge_into(v);
    v = d.edge(p.edges[k]).source;
  }
  return p;
}

Path max_path_into(const Diagram& d, int length, int end_vertex) {
  Path p;
  p.edges.assign(length, -1);
  int v = end_vertex;
  for (int k = length; k-- > 0;) {
    p.edges[k] = d.max_edge_into(v);
    v = d.edge(p.edges[k]).source;
  }
  return p;
}

std::vector<Path> enumerate_paths(const Diagram& d, int length, std::optional<int> end) {
  if (length < 1) throw Error(ErrorKind::BadPath, "path length must be at least 1");
  std::vector<Path> out;
  if (!end) {
    for (int v = 0; v < d.vertex_count(); ++v) {
      auto part = enumerate_paths(d, length, v);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  // Colex order: the last coordinate is the most significant, so the outer
  // level walks the fiber of the terminal vertex in rank order and recursion
  // fills the earlier coordinates.
  std::vector<int> edges(length);
  std::function<void(int, int)> rec = [&](int pos, int vertex) {
    for (int e : d.fiber(vertex)) {
      edges[pos] = e;
      if (pos == 0) {
        out.push_back(Path{std::vector<int>(edges.begin(), edges.end())});
      } else {
        rec(pos - 1, d.edge(e).source);
      }
    }
  };
  rec(length - 1, *end);
  return out;
}

std::vector<Path> orbit_chain(const Diagram& d, int length, int end_vertex) {
  std::vector<Path> chain;
  std::optional<Path> cur = min_path_into(d, length, end_vertex);
  while (cur) {
    chain.push_back(*cur);
    cur = vershik(d, *cur);
  }
  return chain;
}

std::vector<long long> path_counts(const Diagram& d, int length) {
  std::vector<long long> counts(d.vertex_count());
  for (int v = 0; v < d.vertex_count(); ++v)
    counts[v] = static_cast<long long>(d.fiber(v).size());
  for (int n = 2; n <= length; ++n) {
    std::vector<long long> next(d.vertex_count(), 0);
    for (int v = 0; v < d.vertex_count(); ++v)
      for (int e : d.fiber(v)) next[v] += counts[d.edge(e).source];
    counts = std::move(next);
  }
  return counts;
}

DomainBound domain_bound(const Diagram& d, int length) {
  DomainBound report;
  for (int v = 0; v < d.vertex_count(); ++v) {
    for (const Path& p : enumerate_paths(d, length, v)) {
      unsigned long long fwd = 0, bwd = 0;
      for (Path cur = p;;) {
        auto next = vershik(d, cur);
        if (!next) break;
        cur = std::move(*next);
        ++fwd;
      }
      for (Path cur = p;;) {
        auto prev = vershik_inv(d, cur);
        if (!prev) break;
        cur = std::move(*prev);
        ++bwd;
      }
      report.n_sup = std::max({report.n_sup, fwd, bwd});
    }
  }
  unsigned long long bound = 1;
  const auto m = static_cast<unsigned long long>(d.edge_count());
  bool overflow = false;
  for (int i = 0; i < length; ++i) {
    if (bound > ~0ULL / m) {
      overflow = true;
      break;
    }
    bound *= m;
  }
  if (!overflow) report.bound = bound;
  return report;
}

}  // namespace bratteli
