#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dsrw::testing {

std::string fixture_path(const std::string& name) {
  return std::string(DSRW_FIXTURE_DIR) + "/" + name;
}

std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture: " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GraphDocument load_graph_fixture(const std::string& name) {
  return parse_graph(read_fixture(name));
}

RewriteSystem load_rules_fixture(const std::string& name) {
  return parse_rules(read_fixture(name));
}

NodeMapDocument load_map_fixture(const std::string& name) {
  return parse_node_map(read_fixture(name));
}

bool is_valid_hom_map(const Graph& dom, const Graph& cod,
                      const std::map<NodeId, NodeId>& m) {
  for (const NodeId& n : dom.node_ids()) {
    auto it = m.find(n);
    if (it == m.end() || !cod.has_node(it->second)) return false;
  }
  for (const NodeId& n : dom.labeled_ids()) {
    const NodeId& img = m.at(n);
    if (!cod.is_labeled(img)) return false;
    if (cod.label(img) != dom.label(n)) return false;
    const auto& ds = dom.successors(n);
    const auto& cs = cod.successors(img);
    if (ds.size() != cs.size()) return false;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (m.at(ds[i]) != cs[i]) return false;
    }
  }
  return true;
}

bool is_omega_injective_map(const Graph& dom,
                            const std::map<NodeId, NodeId>& m) {
  std::set<NodeId> images;
  for (const NodeId& n : dom.labeled_ids()) {
    auto it = m.find(n);
    if (it == m.end()) return false;
    if (!images.insert(it->second).second) return false;
  }
  return true;
}

std::vector<std::map<NodeId, NodeId>> oracle_matches(const Graph& pattern,
                                                     const Graph& host) {
  std::vector<NodeId> dn = pattern.node_ids();
  std::vector<NodeId> cn = host.node_ids();
  std::vector<std::map<NodeId, NodeId>> found;
  if (dn.empty()) {
    found.push_back({});
    return found;
  }
  if (cn.empty()) return found;

  // Index form of both graphs for a cheap inner loop.
  std::map<NodeId, std::size_t> di, ci;
  for (std::size_t i = 0; i < dn.size(); ++i) di[dn[i]] = i;
  for (std::size_t i = 0; i < cn.size(); ++i) ci[cn[i]] = i;
  struct NodeInfo {
    bool labeled = false;
    std::string label;
    std::vector<std::size_t> succ;
  };
  auto index_graph = [](const Graph& g, const std::vector<NodeId>& nodes,
                        std::map<NodeId, std::size_t>& idx) {
    std::vector<NodeInfo> out(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!g.is_labeled(nodes[i])) continue;
      out[i].labeled = true;
      out[i].label = g.label(nodes[i]);
      for (const NodeId& s : g.successors(nodes[i])) {
        out[i].succ.push_back(idx.at(s));
      }
    }
    return out;
  };
  std::vector<NodeInfo> dg = index_graph(pattern, dn, di);
  std::vector<NodeInfo> cg = index_graph(host, cn, ci);

  std::vector<std::size_t> a(dn.size(), 0);
  std::vector<bool> used(cn.size(), false);
  for (;;) {
    bool ok = true;
    std::fill(used.begin(), used.end(), false);
    for (std::size_t i = 0; ok && i < dn.size(); ++i) {
      const NodeInfo& d = dg[i];
      if (!d.labeled) continue;
      const NodeInfo& c = cg[a[i]];
      if (!c.labeled || c.label != d.label || c.succ.size() != d.succ.size()) {
        ok = false;
        break;
      }
      for (std::size_t k = 0; k < d.succ.size(); ++k) {
        if (a[d.succ[k]] != c.succ[k]) {
          ok = false;
          break;
        }
      }
      if (ok) {
        if (used[a[i]]) ok = false;  // two labeled nodes on one host node
        used[a[i]] = true;
      }
    }
    if (ok) {
      std::map<NodeId, NodeId> m;
      for (std::size_t i = 0; i < dn.size(); ++i) m[dn[i]] = cn[a[i]];
      found.push_back(std::move(m));
    }
    // odometer
    std::size_t pos = 0;
    while (pos < a.size() && ++a[pos] == cn.size()) {
      a[pos] = 0;
      ++pos;
    }
    if (pos == a.size()) break;
  }
  std::sort(found.begin(), found.end());
  return found;
}

Graph prefix_nodes(const Graph& g, const std::string& prefix) {
  std::vector<Graph::NodeDecl> decls = g.declarations();
  for (auto& d : decls) {
    d.id = NodeId(prefix + d.id.name);
    for (auto& s : d.successors) s = NodeId(prefix + s.name);
  }
  return Graph::build(decls, g.signature());
}

SymbolPool small_pool() {
  return SymbolPool{{{"zero", 0}, {"one", 0}, {"s", 1}, {"f", 2}, {"g", 2},
                     {"h", 3}}};
}

Graph random_graph(std::mt19937& rng, std::size_t max_nodes,
                   const SymbolPool& pool, double placeholder_bias) {
  std::uniform_int_distribution<std::size_t> size_dist(1, max_nodes);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::size_t n = size_dist(rng);
  std::vector<NodeId> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.emplace_back("a" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> node_dist(0, n - 1);
  std::uniform_int_distribution<std::size_t> sym_dist(0,
                                                      pool.symbols.size() - 1);
  std::vector<Graph::NodeDecl> decls;
  for (std::size_t i = 0; i < n; ++i) {
    Graph::NodeDecl d;
    d.id = ids[i];
    if (coin(rng) >= placeholder_bias) {
      const auto& [sym, arity] = pool.symbols[sym_dist(rng)];
      d.label = sym;
      for (std::size_t k = 0; k < arity; ++k) {
        d.successors.push_back(ids[node_dist(rng)]);
      }
    }
    decls.push_back(std::move(d));
  }
  return Graph::build(decls);
}

RandomHom random_hom(std::mt19937& rng, const Graph& dom,
                     const SymbolPool& pool, bool add_junk) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<NodeId> all = dom.node_ids();

  // Schedule merges: each placeholder may collapse onto a node that is not
  // itself scheduled to disappear. Following the schedule always ends at a
  // kept node.
  std::set<NodeId> kept(all.begin(), all.end());
  std::map<NodeId, NodeId> merged_into;
  for (const NodeId& u : dom.unlabeled_ids()) {
    if (coin(rng) >= 0.4 || kept.size() < 2) continue;
    std::vector<NodeId> targets;
    for (const NodeId& v : kept) {
      if (v != u) targets.push_back(v);
    }
    std::uniform_int_distribution<std::size_t> pick(0, targets.size() - 1);
    merged_into[u] = targets[pick(rng)];
    kept.erase(u);
  }
  auto resolve = [&](NodeId x) {
    while (true) {
      auto it = merged_into.find(x);
      if (it == merged_into.end()) return x;
      x = it->second;
    }
  };

  // Rename kept nodes bijectively.
  std::map<NodeId, NodeId> rename;
  std::size_t counter = 0;
  for (const NodeId& v : kept) {
    rename[v] = NodeId("h" + std::to_string(counter++));
  }

  std::vector<Graph::NodeDecl> decls;
  for (const Graph::NodeDecl& d : dom.declarations()) {
    if (kept.find(d.id) == kept.end()) continue;
    Graph::NodeDecl nd;
    nd.id = rename.at(d.id);
    nd.label = d.label;
    for (const NodeId& s : d.successors) {
      nd.successors.push_back(rename.at(resolve(s)));
    }
    decls.push_back(std::move(nd));
  }

  if (add_junk) {
    std::uniform_int_distribution<std::size_t> extra_dist(0, 2);
    std::uniform_int_distribution<std::size_t> sym_dist(
        0, pool.symbols.size() - 1);
    std::size_t extra = extra_dist(rng);
    std::vector<NodeId> present;
    for (const auto& d : decls) present.push_back(d.id);
    for (std::size_t i = 0; i < extra; ++i) {
      Graph::NodeDecl nd;
      nd.id = NodeId("junk" + std::to_string(i));
      if (!present.empty() && coin(rng) < 0.6) {
        const auto& [sym, arity] = pool.symbols[sym_dist(rng)];
        nd.label = sym;
        std::uniform_int_distribution<std::size_t> pick(0,
                                                        present.size() - 1);
        for (std::size_t k = 0; k < arity; ++k) {
          nd.successors.push_back(present[pick(rng)]);
        }
      }
      decls.push_back(nd);
      present.push_back(decls.back().id);
    }
  }

  RandomHom out;
  out.cod = Graph::build(decls, dom.signature());
  std::map<NodeId, NodeId> phi;
  for (const NodeId& x : all) phi[x] = rename.at(resolve(x));
  out.map = Homomorphism::checked(dom, out.cod, phi);
  return out;
}

std::set<Edge> random_edge_subset(std::mt19937& rng, const Graph& g,
                                  std::size_t max_edges) {
  std::vector<Edge> edges = g.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  if (edges.size() > max_edges) edges.resize(max_edges);
  std::uniform_int_distribution<std::size_t> count_dist(0, edges.size());
  edges.resize(count_dist(rng));
  return {edges.begin(), edges.end()};
}

Graph circular_list(std::size_t cells) {
  std::vector<Graph::NodeDecl> decls;
  Graph::NodeDecl len;
  len.id = NodeId("len");
  len.label = "#";
  len.successors = {NodeId("c1")};
  decls.push_back(len);
  for (std::size_t i = 1; i <= cells; ++i) {
    Graph::NodeDecl cell;
    cell.id = NodeId("c" + std::to_string(i));
    cell.label = "cons";
    cell.successors = {NodeId("v" + std::to_string(i)),
                       NodeId("c" + std::to_string(i % cells + 1))};
    decls.push_back(cell);
    Graph::NodeDecl v;
    v.id = NodeId("v" + std::to_string(i));
    decls.push_back(v);
  }
  return Graph::build(decls);
}

Graph succ_tower(std::size_t height) {
  std::vector<Graph::NodeDecl> decls;
  for (std::size_t i = 1; i <= height; ++i) {
    Graph::NodeDecl s;
    s.id = NodeId("s" + std::to_string(i));
    s.label = "succ";
    s.successors = {i == height ? NodeId("z")
                                : NodeId("s" + std::to_string(i + 1))};
    decls.push_back(s);
  }
  Graph::NodeDecl z;
  z.id = NodeId("z");
  z.label = "0";
  decls.push_back(z);
  return Graph::build(decls);
}

}  // namespace dsrw::testing
