#pragma once

#include "bratteli/diagram.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bratteli {

/// A bijection of level-one edge ids witnessing equivalence of two diagrams:
/// it preserves the source/target adjacency in both directions and
/// intertwines the successor maps on the non-maximal edges.
struct EquivalenceCertificate {
  std::map<std::string, std::string> mapping;
};

struct CertificateCheck {
  bool valid = false;
  std::vector<std::string> violations;
};

/// Validates a claimed certificate independently of the search: totality,
/// bijectivity, the adjacency condition over all edge pairs, and the
/// successor condition on every non-maximal edge. Throws UnknownEdge for ids
/// outside either diagram.
CertificateCheck check_certificate(const Diagram& a, const Diagram& b,
                                   const std::map<std::string, std::string>& mapping);

struct EquivalenceResult {
  std::optional<EquivalenceCertificate> certificate;
  /// For the negative answer, the strongest failed invariant: edge count,
  /// vertex count, fiber-size multiset, or exhausted search.
  std::string reason;

  bool equivalent() const { return certificate.has_value(); }
};

/// Decides equivalence. The successor condition forces a certificate to map
/// whole fibers rank-isomorphically, so the search backtracks over
/// vertex-to-vertex assignments with matching fiber sizes and checks the
/// adjacency condition incrementally; a returned certificate always passes
/// check_certificate, and a refusal comes only after exhausting the search.
EquivalenceResult find_equivalence(const Diagram& a, const Diagram& b);

}  // namespace bratteli
