#ifndef DSRW_TESTS_SUPPORT_HPP
#define DSRW_TESTS_SUPPORT_HPP

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dsrw/text.hpp"

namespace dsrw::testing {

std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);
GraphDocument load_graph_fixture(const std::string& name);
RewriteSystem load_rules_fixture(const std::string& name);
NodeMapDocument load_map_fixture(const std::string& name);

// Plain-set homomorphism checks, deliberately reimplemented from the
// definitions so library results can be judged against something that
// shares no code with them.
bool is_valid_hom_map(const Graph& dom, const Graph& cod,
                      const std::map<NodeId, NodeId>& m);
bool is_omega_injective_map(const Graph& dom,
                            const std::map<NodeId, NodeId>& m);

// Every way of laying `pattern` over `host` (valid homomorphism, injective
// on labeled nodes), found by brute force over all |host|^|pattern| total
// assignments. Sorted.
std::vector<std::map<NodeId, NodeId>> oracle_matches(const Graph& pattern,
                                                     const Graph& host);

// The same graph with every id prefixed — an easy source of isomorphic
// copies.
Graph prefix_nodes(const Graph& g, const std::string& prefix);

// Fixed symbol inventory shared by all random generators, so arities never
// conflict when graphs meet.
struct SymbolPool {
  std::vector<std::pair<std::string, std::size_t>> symbols;
};
SymbolPool small_pool();

Graph random_graph(std::mt19937& rng, std::size_t max_nodes,
                   const SymbolPool& pool, double placeholder_bias = 0.45);

// A random valid homomorphism out of dom, built constructively: some
// placeholders are merged into other nodes, every id is renamed, and
// (optionally) unreachable junk is appended to the codomain.
struct RandomHom {
  Graph cod;
  Homomorphism map;  // dom -> cod
};
RandomHom random_hom(std::mt19937& rng, const Graph& dom,
                     const SymbolPool& pool, bool add_junk = true);

std::set<Edge> random_edge_subset(std::mt19937& rng, const Graph& g,
                                  std::size_t max_edges);

// len:#(c1) plus cells c1..ck (payloads v1..vk), ci's next pointer closing
// the circle back to c1.
Graph circular_list(std::size_t cells);

// s1:succ(s2), ..., sk:succ(z), z:0 — `height` nested succ around 0.
Graph succ_tower(std::size_t height);

}  // namespace dsrw::testing

#endif
