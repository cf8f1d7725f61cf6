#include "bratteli/equivalence.hpp"

#include <algorithm>
#include <functional>

namespace bratteli {

CertificateCheck check_certificate(const Diagram& a, const Diagram& b,
                                   const std::map<std::string, std::string>& mapping) {
  CertificateCheck result;
  auto& viol = result.violations;

  std::vector<int> image(a.edge_count(), -1);
  std::vector<int> preimage(b.edge_count(), -1);
  for (const auto& [from, to] : mapping) {
    const int ea = a.edge_index(from);
    const int eb = b.edge_index(to);
    image[ea] = eb;
    if (preimage[eb] >= 0)
      viol.push_back("edges '" + a.edge(preimage[eb]).id + "' and '" + from +
                     "' share the image '" + to + "'");
    preimage[eb] = ea;
  }
  for (int e = 0; e < a.edge_count(); ++e)
    if (image[e] < 0) viol.push_back("edge '" + a.edge(e).id + "' has no image");
  if (a.edge_count() != b.edge_count())
    viol.push_back("edge counts differ (" + std::to_string(a.edge_count()) + " vs " +
                   std::to_string(b.edge_count()) + ")");
  if (!viol.empty()) return result;

  // Adjacency in both directions, over all ordered edge pairs.
  for (int e = 0; e < a.edge_count(); ++e)
    for (int f = 0; f < a.edge_count(); ++f) {
      const bool adj_a = a.edge(e).target == a.edge(f).source;
      const bool adj_b = b.edge(image[e]).target == b.edge(image[f]).source;
      if (adj_a != adj_b)
        viol.push_back("adjacency of ('" + a.edge(e).id + "','" + a.edge(f).id +
                       "') not preserved: " + (adj_a ? "adjacent" : "not adjacent") +
                       " but images are " + (adj_b ? "adjacent" : "not adjacent"));
    }

  // The successor condition on every non-maximal edge.
  for (int e = 0; e < a.edge_count(); ++e) {
    auto next = a.successor_edge(e);
    if (!next) continue;
    auto image_next = b.successor_edge(image[e]);
    if (!image_next) {
      viol.push_back("successor of '" + a.edge(e).id + "' is '" + a.edge(*next).id +
                     "' but the image '" + b.edge(image[e]).id + "' is maximal");
      continue;
    }
    if (image[*next] != *image_next)
      viol.push_back("successor of '" + a.edge(e).id + "' maps to '" +
                     b.edge(image[*next]).id + "', expected '" + b.edge(*image_next).id + "'");
  }

  result.valid = viol.empty();
  return result;
}

EquivalenceResult find_equivalence(const Diagram& a, const Diagram& b) {
  if (a.edge_count() != b.edge_count())
    return {std::nullopt, "edge count mismatch (" + std::to_string(a.edge_count()) + " vs " +
                              std::to_string(b.edge_count()) + ")"};
  if (a.vertex_count() != b.vertex_count())
    return {std::nullopt, "vertex count mismatch (" + std::to_string(a.vertex_count()) + " vs " +
                              std::to_string(b.vertex_count()) + ")"};

  auto fiber_sizes = [](const Diagram& d) {
    std::vector<size_t> sizes;
    for (int v = 0; v < d.vertex_count(); ++v) sizes.push_back(d.fiber(v).size());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
  };
  if (fiber_sizes(a) != fiber_sizes(b))
    return {std::nullopt, "fiber size multiset mismatch"};

  // A certificate maps fibers to fibers rank-isomorphically (the successor
  // condition pins the order, the adjacency condition pins the partition), so
  // it is determined by a vertex bijection. Backtrack over those, rejecting a
  // partial assignment as soon as some edge's source lands wrong.
  const int nv = a.vertex_count();
  std::vector<int> sigma(nv, -1);
  std::vector<bool> used(nv, false);

  auto consistent = [&]() {
    for (int v = 0; v < nv; ++v) {
      if (sigma[v] < 0) continue;
      const auto& fa = a.fiber(v);
      const auto& fb = b.fiber(sigma[v]);
      for (size_t r = 0; r < fa.size(); ++r) {
        const int source = a.edge(fa[r]).source;
        if (sigma[source] >= 0 && sigma[source] != b.edge(fb[r]).source) return false;
      }
    }
    return true;
  };

  std::function<bool(int)> assign = [&](int v) -> bool {
    if (v == nv) return true;
    for (int w = 0; w < nv; ++w) {
      if (used[w] || a.fiber(v).size() != b.fiber(w).size()) continue;
      sigma[v] = w;
      used[w] = true;
      if (consistent() && assign(v + 1)) return true;
      sigma[v] = -1;
      used[w] = false;
    }
    return false;
  };

  if (!assign(0)) return {std::nullopt, "exhausted search over vertex assignments"};

  EquivalenceCertificate cert;
  for (int v = 0; v < nv; ++v) {
    const auto& fa = a.fiber(v);
    const auto& fb = b.fiber(sigma[v]);
    for (size_t r = 0; r < fa.size(); ++r) cert.mapping[a.edge(fa[r]).id] = b.edge(fb[r]).id;
  }
  auto verdict = check_certificate(a, b, cert.mapping);
  if (!verdict.valid)
    throw std::logic_error("find_equivalence produced an invalid certificate: " +
                           (verdict.violations.empty() ? std::string("?") : verdict.violations.front()));
  return {std::move(cert), ""};
}

}  // namespace bratteli
