#include "dsrw/graph.hpp"

#include <algorithm>
#include <sstream>

namespace dsrw {

void Signature::declare(const std::string& symbol, std::size_t arity) {
  auto it = table_.find(symbol);
  if (it == table_.end()) {
    table_.emplace(symbol, arity);
    return;
  }
  if (it->second != arity) {
    std::ostringstream msg;
    msg << "symbol \"" << symbol << "\" declared with arity " << arity
        << " but already has arity " << it->second;
    throw Error(ErrorCode::InconsistentArity, msg.str());
  }
}

bool Signature::contains(const std::string& symbol) const {
  return table_.count(symbol) != 0;
}

std::optional<std::size_t> Signature::arity(const std::string& symbol) const {
  auto it = table_.find(symbol);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

Signature Signature::merged(const Signature& a, const Signature& b) {
  Signature out = a;
  for (const auto& [symbol, arity] : b.table_) out.declare(symbol, arity);
  return out;
}

Graph Graph::build(const std::vector<NodeDecl>& decls, const Signature& base) {
  Graph g;
  g.signature_ = base;

  for (const auto& decl : decls) {
    if (g.nodes_.count(decl.id) != 0) {
      throw Error(ErrorCode::DuplicateNode,
                  "node \"" + decl.id.name + "\" declared twice");
    }
    if (!decl.label && !decl.successors.empty()) {
      throw Error(ErrorCode::UnlabeledWithSuccessors,
                  "unlabeled node \"" + decl.id.name +
                      "\" cannot have successors");
    }
    if (decl.label) {
      auto known = g.signature_.arity(*decl.label);
      if (known && *known != decl.successors.size()) {
        std::ostringstream msg;
        msg << "node \"" << decl.id.name << "\" uses \"" << *decl.label
            << "\" with " << decl.successors.size()
            << " successor(s) but the symbol has arity " << *known;
        throw Error(ErrorCode::ArityMismatch, msg.str());
      }
      if (!known) g.signature_.declare(*decl.label, decl.successors.size());
    }
    g.nodes_.emplace(decl.id, NodeData{decl.label, decl.successors});
  }

  for (const auto& [id, data] : g.nodes_) {
    for (const auto& succ : data.successors) {
      if (g.nodes_.count(succ) == 0) {
        throw Error(ErrorCode::UnknownNode,
                    "successor \"" + succ.name + "\" of node \"" + id.name +
                        "\" is not declared");
      }
    }
  }
  return g;
}

const Graph::NodeData& Graph::at(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) {
    throw Error(ErrorCode::NoSuchNode, "no node \"" + id.name + "\"");
  }
  return it->second;
}

bool Graph::has_node(const NodeId& id) const { return nodes_.count(id) != 0; }

bool Graph::is_labeled(const NodeId& id) const {
  return at(id).label.has_value();
}

const std::string& Graph::label(const NodeId& id) const {
  const NodeData& data = at(id);
  if (!data.label) {
    throw Error(ErrorCode::NoSuchNode,
                "node \"" + id.name + "\" is unlabeled");
  }
  return *data.label;
}

const std::vector<NodeId>& Graph::successors(const NodeId& id) const {
  return at(id).successors;
}

const NodeId& Graph::successor(const NodeId& id, std::size_t i) const {
  const NodeData& data = at(id);
  if (i < 1 || i > data.successors.size()) {
    std::ostringstream msg;
    msg << "(" << id << "," << i << ") is not an edge";
    throw Error(ErrorCode::NoSuchEdge, msg.str());
  }
  return data.successors[i - 1];
}

std::vector<NodeId> Graph::node_ids() const {
  std::vector<NodeId> out;
  out.reserve(nodes_.size());
  for (const auto& [id, data] : nodes_) out.push_back(id);
  return out;
}

std::vector<NodeId> Graph::labeled_ids() const {
  std::vector<NodeId> out;
  for (const auto& [id, data] : nodes_) {
    if (data.label) out.push_back(id);
  }
  return out;
}

std::vector<NodeId> Graph::unlabeled_ids() const {
  std::vector<NodeId> out;
  for (const auto& [id, data] : nodes_) {
    if (!data.label) out.push_back(id);
  }
  return out;
}

std::size_t Graph::labeled_count() const {
  return labeled_ids().size();
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (const auto& [id, data] : nodes_) {
    for (std::size_t i = 1; i <= data.successors.size(); ++i) {
      out.emplace_back(id, i);
    }
  }
  return out;  // map order is already (source, index) sorted
}

bool Graph::has_edge(const Edge& e) const {
  auto it = nodes_.find(e.source);
  if (it == nodes_.end()) return false;
  return e.index >= 1 && e.index <= it->second.successors.size();
}

bool Graph::is_disconnected_edge(const Edge& e) const {
  if (!has_edge(e)) {
    std::ostringstream msg;
    msg << e << " is not an edge";
    throw Error(ErrorCode::NoSuchEdge, msg.str());
  }
  return !is_labeled(successor(e.source, e.index));
}

std::vector<Graph::NodeDecl> Graph::declarations() const {
  std::vector<NodeDecl> out;
  out.reserve(nodes_.size());
  for (const auto& [id, data] : nodes_) {
    out.push_back(NodeDecl{id, data.label, data.successors});
  }
  return out;
}

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::InconsistentArity: return "InconsistentArity";
    case ErrorCode::UnlabeledWithSuccessors: return "UnlabeledWithSuccessors";
    case ErrorCode::NoSuchNode: return "NoSuchNode";
    case ErrorCode::NoSuchEdge: return "NoSuchEdge";
    case ErrorCode::FreshIdCollision: return "FreshIdCollision";
    case ErrorCode::NotTotal: return "NotTotal";
    case ErrorCode::LabelNotPreserved: return "LabelNotPreserved";
    case ErrorCode::SuccessorNotPreserved: return "SuccessorNotPreserved";
    case ErrorCode::UnlabeledImageOfLabeled: return "UnlabeledImageOfLabeled";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::InvalidHom: return "InvalidHom";
    case ErrorCode::NotStronglyLabeled: return "NotStronglyLabeled";
    case ErrorCode::InvalidSquare: return "InvalidSquare";
    case ErrorCode::RhoNotHom: return "RhoNotHom";
    case ErrorCode::UnlabeledMappedToLabeled: return "UnlabeledMappedToLabeled";
    case ErrorCode::UnlabeledMergedByRho: return "UnlabeledMergedByRho";
    case ErrorCode::BadRedirectTarget: return "BadRedirectTarget";
    case ErrorCode::MatchInvalid: return "MatchInvalid";
    case ErrorCode::DuplicateRule: return "DuplicateRule";
    case ErrorCode::NoSuchRule: return "NoSuchRule";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::FuelExhausted: return "FuelExhausted";
    case ErrorCode::Internal: return "Internal";
  }
  return "Internal";
}

}  // namespace dsrw
