#include "dsrw/disconnect.hpp"

#include <sstream>

namespace dsrw {

namespace {

NodeId fresh_edge_id(const Edge& e) {
  std::ostringstream name;
  name << e.source.name << "[" << e.index << "]";
  return NodeId(name.str());
}

}  // namespace

DisconnectionResult disconnect_edges(const Graph& g, const std::set<Edge>& e) {
  for (const Edge& edge : e) {
    if (!g.has_edge(edge)) {
      std::ostringstream msg;
      msg << edge << " is not an edge";
      throw Error(ErrorCode::NoSuchEdge, msg.str());
    }
  }

  std::map<Edge, NodeId> fresh;
  for (const Edge& edge : e) {
    NodeId id = fresh_edge_id(edge);
    if (g.has_node(id)) {
      throw Error(ErrorCode::FreshIdCollision,
                  "fresh node id \"" + id.name + "\" already names a node");
    }
    fresh.emplace(edge, id);
  }

  std::vector<Graph::NodeDecl> decls = g.declarations();
  for (auto& decl : decls) {
    for (std::size_t i = 0; i < decl.successors.size(); ++i) {
      auto it = fresh.find(Edge(decl.id, i + 1));
      if (it != fresh.end()) decl.successors[i] = it->second;
    }
  }
  for (const auto& [edge, id] : fresh) {
    decls.push_back(Graph::NodeDecl{id, std::nullopt, {}});
  }

  Graph d = Graph::build(decls, g.signature());

  std::map<NodeId, NodeId> back;
  for (const NodeId& n : g.node_ids()) back.emplace(n, n);
  for (const auto& [edge, id] : fresh) {
    back.emplace(id, g.successor(edge.source, edge.index));
  }

  DisconnectionResult out;
  out.connection = Homomorphism::checked(d, g, std::move(back));
  out.disconnected = std::move(d);
  out.fresh = std::move(fresh);
  return out;
}

Homomorphism disconnect_hom(const Homomorphism& phi, const std::set<Edge>& e) {
  const Graph& dom = phi.dom();
  const Graph& cod = phi.cod();

  // Structural sanity only; see the header for why semantic validity of phi
  // is not enforced here.
  for (const NodeId& n : dom.node_ids()) {
    if (phi.node_map().count(n) == 0) {
      throw Error(ErrorCode::InvalidHom,
                  "map has no image for node \"" + n.name + "\"");
    }
  }
  for (const auto& [from, to] : phi.node_map()) {
    if (!dom.has_node(from) || !cod.has_node(to)) {
      throw Error(ErrorCode::InvalidHom,
                  "map entry \"" + from.name + " -> " + to.name +
                      "\" does not connect the two graphs");
    }
  }

  DisconnectionResult left = disconnect_edges(dom, e);

  std::set<Edge> image;
  for (const Edge& edge : e) image.insert(phi.apply(edge));
  DisconnectionResult right = disconnect_edges(cod, image);

  std::map<NodeId, NodeId> map = phi.node_map();
  for (const auto& [edge, id] : left.fresh) {
    map.emplace(id, right.fresh.at(phi.apply(edge)));
  }
  return Homomorphism::checked(left.disconnected, right.disconnected,
                               std::move(map));
}

NodeDisconnectionResult disconnect_node(const Graph& g, const NodeId& o) {
  if (!g.has_node(o)) {
    throw Error(ErrorCode::NoSuchNode, "no node \"" + o.name + "\"");
  }

  NodeId fresh("mr");
  for (int counter = 1; g.has_node(fresh); ++counter) {
    fresh = NodeId("mr" + std::to_string(counter));
  }

  std::vector<Graph::NodeDecl> decls = g.declarations();
  for (auto& decl : decls) {
    for (auto& succ : decl.successors) {
      if (succ == o) succ = fresh;
    }
  }
  decls.push_back(Graph::NodeDecl{fresh, std::nullopt, {}});

  Graph d = Graph::build(decls, g.signature());

  std::map<NodeId, NodeId> back;
  for (const NodeId& n : g.node_ids()) back.emplace(n, n);
  back.emplace(fresh, o);

  NodeDisconnectionResult out;
  out.connection = Homomorphism::checked(d, g, std::move(back));
  out.disconnected = std::move(d);
  out.fresh = std::move(fresh);
  return out;
}

}  // namespace dsrw
