#include "bratteli/crossed_product.hpp"

#include <algorithm>

namespace bratteli {

namespace {

void insert_term(CrossedElement& x, const Path& f, long long n, const Rational& c) {
  if (c == 0) return;
  auto key = std::make_pair(f, n);
  auto [it, inserted] = x.terms.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) x.terms.erase(it);
  }
}

int support_level(const CrossedElement& x) {
  int level = 0;
  for (const auto& [key, c] : x.terms) level = std::max(level, key.first.length());
  return level;
}

}  // namespace

CrossedElement crossed_indicator(const Diagram& d, const Path& f, long long n) {
  if (!in_domain(d, f, n))
    throw Error(ErrorKind::DomainViolation,
                "path '" + path_string(d, f) + "' lies outside P_" + std::to_string(n));
  CrossedElement x;
  x.terms[{f, n}] = 1;
  return x;
}

CrossedElement crossed_unit(const Diagram& d, int level) {
  CrossedElement x;
  for (const Path& p : enumerate_paths(d, level)) x.terms[{p, 0}] = 1;
  return x;
}

CrossedElement cross_scale(const CrossedElement& x, const Rational& c) {
  CrossedElement out;
  if (c == 0) return out;
  for (const auto& [key, v] : x.terms) out.terms[key] = v * c;
  return out;
}

CrossedElement cross_add(const Diagram& d, const CrossedElement& x, const CrossedElement& y) {
  const int level = std::max(support_level(x), support_level(y));
  CrossedElement out = refine_crossed_to(d, x, level);
  for (const auto& [key, c] : refine_crossed_to(d, y, level).terms)
    insert_term(out, key.first, key.second, c);
  return out;
}

CrossedElement refine_crossed(const Diagram& d, const CrossedElement& x) {
  CrossedElement out;
  for (const auto& [key, c] : x.terms) {
    const auto& [f, n] = key;
    int v = d.edge(f.edges.back()).target;
    for (int e : d.out_edges(v)) {
      Path g = f;
      g.edges.push_back(e);
      // Extensions inherit membership in P_n; guard the invariant anyway.
      if (!in_domain(d, g, n))
        throw Error(ErrorKind::DomainViolation,
                    "refinement left the domain at '" + path_string(d, g) + "'");
      insert_term(out, g, n, c);
    }
  }
  return out;
}

CrossedElement refine_crossed_to(const Diagram& d, const CrossedElement& x, int level) {
  CrossedElement out = x;
  int cur = support_level(out);
  if (level < cur)
    throw Error(ErrorKind::BadPath, "cannot refine a crossed element downwards");
  // Mixed support lengths are legal inputs; refine term by term until every
  // support path sits at `level`.
  while (true) {
    CrossedElement next;
    bool changed = false;
    for (const auto& [key, c] : out.terms) {
      const auto& [f, n] = key;
      if (f.length() >= level) {
        insert_term(next, f, n, c);
        continue;
      }
      changed = true;
      int v = d.edge(f.edges.back()).target;
      for (int e : d.out_edges(v)) {
        Path g = f;
        g.edges.push_back(e);
        insert_term(next, g, n, c);
      }
    }
    out = std::move(next);
    if (!changed) break;
  }
  return out;
}

CrossedElement cross_multiply(const Diagram& d, const CrossedElement& x, const CrossedElement& y) {
  const int level = std::max(support_level(x), support_level(y));
  CrossedElement rx = refine_crossed_to(d, x, level);
  CrossedElement ry = refine_crossed_to(d, y, level);
  CrossedElement out;
  for (const auto& [kx, cx] : rx.terms) {
    const auto& [f, n] = kx;
    auto pulled = iterate(d, f, -n);
    if (!pulled) continue;  // cannot happen for a valid element
    for (const auto& [ky, cy] : ry.terms) {
      const auto& [g, m] = ky;
      if (*pulled != g) continue;
      if (!in_domain(d, f, n + m))
        throw Error(ErrorKind::DomainViolation, "product left the domain invariant");
      insert_term(out, f, n + m, cx * cy);
    }
  }
  return out;
}

CrossedElement cross_adjoint(const Diagram& d, const CrossedElement& x) {
  CrossedElement out;
  for (const auto& [key, c] : x.terms) {
    const auto& [f, n] = key;
    auto g = iterate(d, f, -n);
    if (!g)
      throw Error(ErrorKind::DomainViolation, "adjoint of an element violating the domain invariant");
    insert_term(out, *g, -n, c);
  }
  return out;
}

std::vector<std::pair<Path, long long>> a_n_basis(const Diagram& d, int length) {
  std::vector<std::pair<Path, long long>> basis;
  for (int v = 0; v < d.vertex_count(); ++v) {
    const auto chain = orbit_chain(d, length, v);
    const long long size = static_cast<long long>(chain.size());
    for (long long pos = 0; pos < size; ++pos) {
      for (long long n = -(size - 1 - pos); n <= pos; ++n)
        basis.emplace_back(chain[pos], n);
    }
  }
  return basis;
}

BlockDecomposition block_decomposition(const Diagram& d, int length) {
  BlockDecomposition b;
  b.level = length;
  b.chains.resize(d.vertex_count());
  b.block_sizes.resize(d.vertex_count());
  b.dimension = 0;
  for (int v = 0; v < d.vertex_count(); ++v) {
    b.chains[v] = orbit_chain(d, length, v);
    b.block_sizes[v] = static_cast<long long>(b.chains[v].size());
    b.dimension += b.block_sizes[v] * b.block_sizes[v];
  }
  return b;
}

CrossedElement matrix_unit(const Diagram& d, const BlockDecomposition& blocks, int vertex,
                           int row, int col) {
  const auto& chain = blocks.chains.at(vertex);
  const Path& f = chain.at(row);
  return crossed_indicator(d, f, static_cast<long long>(row) - col);
}

InclusionData inclusion(const Diagram& d, int length) {
  InclusionData data;
  data.level = length;
  data.multiplicity.assign(d.vertex_count(), std::vector<long long>(d.vertex_count(), 0));
  // Group the level-(N+1) chain of w by the last edge of its paths: each last
  // edge e contributes one traversal of the level-N chain of i(e).
  for (int w = 0; w < d.vertex_count(); ++w)
    for (int e : d.fiber(w)) ++data.multiplicity[d.edge(e).source][w];
  return data;
}

std::vector<AfLevel> af_tower(const Diagram& d, int levels) {
  std::vector<AfLevel> tower;
  tower.reserve(levels);
  for (int n = 1; n <= levels; ++n)
    tower.push_back({block_decomposition(d, n), inclusion(d, n)});
  return tower;
}

}  // namespace bratteli
