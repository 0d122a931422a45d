#ifndef DSRW_DISCONNECT_HPP
#define DSRW_DISCONNECT_HPP

#include <set>

#include "dsrw/homomorphism.hpp"

namespace dsrw {

/// Result of disconnecting a set of edges: for every edge (n,i) in E a fresh
/// unlabeled node named "n[i]" is added and the edge is redirected to it.
/// The connection homomorphism sends each fresh node back to the original
/// target and is the identity elsewhere, so it undoes the disconnection.
struct DisconnectionResult {
  Graph disconnected;                 // D(G,E)
  std::map<Edge, NodeId> fresh;       // (n,i) -> n[i]
  Homomorphism connection;            // D(G,E) -> G
};

/// Build D(G,E). Errors: NoSuchEdge (an element of E is not an edge of G),
/// FreshIdCollision (a node literally named "n[i]" already exists).
/// Edges whose target is already unlabeled may be disconnected again; the
/// construction does not care.
DisconnectionResult disconnect_edges(const Graph& g, const std::set<Edge>& e);

/// Lift a homomorphism phi : G -> H to D(phi,E) : D(G,E) -> D(H,phi(E)).
/// Old nodes keep their phi-images; the fresh node for (n,i) maps to the
/// fresh node for (phi(n),i). phi(E) is the set image, so edges merged by phi
/// share one fresh node on the H side. The input map is only checked
/// structurally (totality, node existence: InvalidHom); label or successor
/// violations in phi are deliberately not re-checked here, which is what
/// allows deliberately broken matches to be pushed through in tests. The
/// resulting map is validated for real.
Homomorphism disconnect_hom(const Homomorphism& phi, const std::set<Edge>& e);

/// Result of disconnecting all incoming edges of one node: a single fresh
/// unlabeled node (named "mr", counter-suffixed on collision) receives every
/// edge that used to target `o`.
struct NodeDisconnectionResult {
  Graph disconnected;                 // D̄(G,o)
  NodeId fresh;                       // the "mr" node
  Homomorphism connection;            // D̄(G,o) -> G, fresh -> o
};

/// Build D̄(G,o). Errors: NoSuchNode.
NodeDisconnectionResult disconnect_node(const Graph& g, const NodeId& o);

}  // namespace dsrw

#endif
