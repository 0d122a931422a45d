#ifndef DSRW_TEXT_HPP
#define DSRW_TEXT_HPP

#include <string>

#include "dsrw/rewrite.hpp"

namespace dsrw {

/// A named graph as read from / written to the text format.
struct GraphDocument {
  std::string name;
  Graph graph;
};

/// Parse `graph <name> { <decl>* }` where a declaration is
/// `id: symbol(arg, …)`, `id: symbol` (nullary) or `id: .` (placeholder,
/// written • in rendered output). `//` starts a line comment. Identifiers
/// may contain letters, digits, `_`, `'`, `#`, plus one bracketed numeric
/// suffix, so disconnection names like `m[2]` are ordinary identifiers.
/// Errors carry 1-based line/column positions: SyntaxError and the graph
/// construction errors (DuplicateNode, UnknownNode, ArityMismatch, …).
GraphDocument parse_graph(const std::string& text);

std::string serialize_graph(const GraphDocument& doc);

/// A named node map: `map <name> { a -> b  c -> d  … }` (commas optional).
struct NodeMapDocument {
  std::string name;
  std::map<NodeId, NodeId> entries;
};

NodeMapDocument parse_node_map(const std::string& text);

std::string serialize_node_map(const NodeMapDocument& doc);

/// Parse a rule file: any number of
///   rule <name> { lhs {…} disconnect { (n,i) … } rhs {…}
///                 rho { a -> b, … } redirect { (x,y) … } }
/// blocks — disconnect/rho/redirect are optional and blocks may appear in
/// any order — plus optional `fuel <n>` and `trim <id, …>` directives.
/// All graphs in one file share one signature. rho entries may be omitted
/// for left-hand-side nodes that keep their name in the right-hand side;
/// fresh nodes like m[2] must be mapped explicitly. Every rule is validated
/// as by make_lrr_rule; those errors are reported with the rule's name and
/// position. Duplicate rule names raise DuplicateRule.
RewriteSystem parse_rules(const std::string& text);

std::string serialize_rules(const RewriteSystem& system);

/// Graphviz export: one node statement per graph node labeled `id:symbol`
/// or `id:•`, one edge per (n,i) labeled with i, everything sorted so that
/// equal graphs produce byte-identical output.
std::string export_dot(const Graph& g);

}  // namespace dsrw

#endif
