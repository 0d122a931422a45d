#ifndef DSRW_GRAPH_HPP
#define DSRW_GRAPH_HPP

#include <compare>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dsrw/error.hpp"

namespace dsrw {

/// Operation symbols and their arities. Arities are inferred from first use
/// when building graphs from declarations; redeclaring a symbol with a
/// different arity is an error.
class Signature {
 public:
  Signature() = default;

  /// Record `symbol` with the given arity. Throws InconsistentArity if the
  /// symbol is already known with a different one.
  void declare(const std::string& symbol, std::size_t arity);

  bool contains(const std::string& symbol) const;

  /// Arity of a known symbol; throws UnknownNode-style lookup failure is not
  /// useful here, so unknown symbols yield std::nullopt.
  std::optional<std::size_t> arity(const std::string& symbol) const;

  const std::map<std::string, std::size_t>& symbols() const { return table_; }

  /// Union of two signatures; conflicting arities raise InconsistentArity.
  static Signature merged(const Signature& a, const Signature& b);

  bool operator==(const Signature&) const = default;

 private:
  std::map<std::string, std::size_t> table_;
};

/// Node identifier. Deliberately a distinct type from plain strings so node
/// ids and operation symbols cannot be mixed up.
struct NodeId {
  std::string name;

  NodeId() = default;
  explicit NodeId(std::string n) : name(std::move(n)) {}

  auto operator<=>(const NodeId&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const NodeId& id) {
  return os << id.name;
}

/// An edge is a (source node, argument position) pair; positions are 1-based.
struct Edge {
  NodeId source;
  std::size_t index = 0;

  Edge() = default;
  Edge(NodeId s, std::size_t i) : source(std::move(s)), index(i) {}

  auto operator<=>(const Edge&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << "(" << e.source << "," << e.index << ")";
}

/// Ordered, partially labeled graph. Labeled nodes carry an operation symbol
/// and exactly arity-many successors; unlabeled nodes carry nothing and act
/// as placeholders. Instances are immutable once built.
class Graph {
 public:
  /// One node declaration: id, optional label, successor ids (must be empty
  /// for unlabeled nodes).
  struct NodeDecl {
    NodeId id;
    std::optional<std::string> label;
    std::vector<NodeId> successors;
  };

  Graph() = default;

  /// Validates and builds a graph. Errors: DuplicateNode, UnknownNode
  /// (successor id not declared), ArityMismatch (successor count conflicts
  /// with the symbol's known arity), UnlabeledWithSuccessors, and
  /// InconsistentArity propagated from the signature.
  static Graph build(const std::vector<NodeDecl>& decls,
                     const Signature& base = Signature());

  bool has_node(const NodeId& id) const;
  bool is_labeled(const NodeId& id) const;

  /// Label of a labeled node; throws NoSuchNode / UnknownNode as appropriate.
  const std::string& label(const NodeId& id) const;

  /// Successor string of a node (empty for unlabeled nodes).
  const std::vector<NodeId>& successors(const NodeId& id) const;

  /// Target of edge (id, i), 1-based. Throws NoSuchEdge if out of range.
  const NodeId& successor(const NodeId& id, std::size_t i) const;

  std::vector<NodeId> node_ids() const;
  std::vector<NodeId> labeled_ids() const;
  std::vector<NodeId> unlabeled_ids() const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t labeled_count() const;

  /// All edges, sorted by (source, index).
  std::vector<Edge> edges() const;
  bool has_edge(const Edge& e) const;

  /// An edge is disconnected when its target is unlabeled.
  /// Throws NoSuchEdge for non-edges.
  bool is_disconnected_edge(const Edge& e) const;

  const Signature& signature() const { return signature_; }

  /// Structural equality: same nodes, labels and successor strings. The
  /// signature is context and does not participate.
  bool operator==(const Graph& other) const { return nodes_ == other.nodes_; }

  /// Declarations in sorted id order; round-trips through build().
  std::vector<NodeDecl> declarations() const;

 private:
  struct NodeData {
    std::optional<std::string> label;
    std::vector<NodeId> successors;

    bool operator==(const NodeData&) const = default;
  };

  const NodeData& at(const NodeId& id) const;

  std::map<NodeId, NodeData> nodes_;
  Signature signature_;
};

}  // namespace dsrw

#endif
