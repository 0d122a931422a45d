#ifndef DSRW_HOMOMORPHISM_HPP
#define DSRW_HOMOMORPHISM_HPP

#include <map>
#include <optional>

#include "dsrw/graph.hpp"

namespace dsrw {

/// Structure-preserving node map between two graphs: labeled nodes map to
/// labeled nodes with the same symbol and pointwise-mapped successor strings;
/// unlabeled nodes may map anywhere. A homomorphism is nothing more than its
/// node map, so equality compares (dom, cod, map) componentwise.
class Homomorphism {
 public:
  Homomorphism() = default;

  /// Validates the map against the definition. Errors: NotTotal (missing
  /// entry), UnknownNode (entry for a non-dom node or image outside cod),
  /// UnlabeledImageOfLabeled, LabelNotPreserved, SuccessorNotPreserved.
  static Homomorphism checked(Graph dom, Graph cod,
                              std::map<NodeId, NodeId> map);

  /// Wraps the map without any validation. Intended for callers that know
  /// validity by construction, and for tests that deliberately force invalid
  /// configurations through the later stages.
  static Homomorphism unchecked(Graph dom, Graph cod,
                                std::map<NodeId, NodeId> map);

  const Graph& dom() const { return dom_; }
  const Graph& cod() const { return cod_; }
  const std::map<NodeId, NodeId>& node_map() const { return map_; }

  /// Image of a node; throws NotTotal if the node has no entry.
  const NodeId& apply(const NodeId& id) const;

  /// Induced action on edges: (n, i) goes to (apply(n), i).
  Edge apply(const Edge& e) const { return Edge(apply(e.source), e.index); }

  bool operator==(const Homomorphism&) const = default;

 private:
  Graph dom_;
  Graph cod_;
  std::map<NodeId, NodeId> map_;
};

/// Validated construction, named after the operation it performs.
Homomorphism check_homomorphism(const Graph& dom, const Graph& cod,
                                const std::map<NodeId, NodeId>& map);

/// Throws (with the same codes as check_homomorphism) when `phi`'s node map
/// is not a valid homomorphism between its stored graphs.
void validate(const Homomorphism& phi);

/// True when distinct labeled nodes of the domain have distinct images.
/// Unlabeled nodes are free to collide.
bool is_omega_injective(const Homomorphism& phi);

/// Identity homomorphism on a graph.
Homomorphism identity(const Graph& g);

/// Composition, first `f` then `g`; requires cod(f) == dom(g)
/// (DomainMismatch otherwise).
Homomorphism compose(const Homomorphism& f, const Homomorphism& g);

/// Deterministic backtracking search for an isomorphism (a bijective
/// homomorphism whose inverse is also one). Nodes are tried in sorted order,
/// so the result is reproducible.
std::optional<Homomorphism> find_isomorphism(const Graph& g, const Graph& h);

}  // namespace dsrw

#endif
