#include "dsrw/homomorphism.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace dsrw {

namespace {

void check_map(const Graph& dom, const Graph& cod,
               const std::map<NodeId, NodeId>& map) {
  for (const auto& [from, to] : map) {
    if (!dom.has_node(from)) {
      throw Error(ErrorCode::UnknownNode,
                  "map mentions \"" + from.name + "\" which is not a node of "
                  "the domain");
    }
    if (!cod.has_node(to)) {
      throw Error(ErrorCode::UnknownNode,
                  "image \"" + to.name + "\" of \"" + from.name +
                      "\" is not a node of the codomain");
    }
  }
  for (const NodeId& n : dom.node_ids()) {
    if (map.count(n) == 0) {
      throw Error(ErrorCode::NotTotal, "no image for node \"" + n.name + "\"");
    }
  }
  for (const NodeId& n : dom.node_ids()) {
    if (!dom.is_labeled(n)) continue;
    const NodeId& image = map.at(n);
    if (!cod.is_labeled(image)) {
      throw Error(ErrorCode::UnlabeledImageOfLabeled,
                  "labeled node \"" + n.name + "\" maps to unlabeled \"" +
                      image.name + "\"");
    }
    if (dom.label(n) != cod.label(image)) {
      throw Error(ErrorCode::LabelNotPreserved,
                  "node \"" + n.name + "\" is labeled \"" + dom.label(n) +
                      "\" but its image \"" + image.name + "\" is labeled \"" +
                      cod.label(image) + "\"");
    }
    const auto& src = dom.successors(n);
    const auto& dst = cod.successors(image);
    if (src.size() != dst.size()) {
      std::ostringstream msg;
      msg << "node \"" << n << "\" has " << src.size()
          << " successor(s) but its image \"" << image << "\" has "
          << dst.size();
      throw Error(ErrorCode::SuccessorNotPreserved, msg.str());
    }
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (map.at(src[i]) != dst[i]) {
        std::ostringstream msg;
        msg << "edge (" << n << "," << i + 1 << "): successor \"" << src[i]
            << "\" maps to \"" << map.at(src[i]) << "\" but the image edge "
            << "targets \"" << dst[i] << "\"";
        throw Error(ErrorCode::SuccessorNotPreserved, msg.str());
      }
    }
  }
}

}  // namespace

Homomorphism Homomorphism::checked(Graph dom, Graph cod,
                                   std::map<NodeId, NodeId> map) {
  check_map(dom, cod, map);
  return unchecked(std::move(dom), std::move(cod), std::move(map));
}

Homomorphism Homomorphism::unchecked(Graph dom, Graph cod,
                                     std::map<NodeId, NodeId> map) {
  Homomorphism h;
  h.dom_ = std::move(dom);
  h.cod_ = std::move(cod);
  h.map_ = std::move(map);
  return h;
}

const NodeId& Homomorphism::apply(const NodeId& id) const {
  auto it = map_.find(id);
  if (it == map_.end()) {
    throw Error(ErrorCode::NotTotal, "no image for node \"" + id.name + "\"");
  }
  return it->second;
}

Homomorphism check_homomorphism(const Graph& dom, const Graph& cod,
                                const std::map<NodeId, NodeId>& map) {
  return Homomorphism::checked(dom, cod, map);
}

void validate(const Homomorphism& phi) {
  check_map(phi.dom(), phi.cod(), phi.node_map());
}

bool is_omega_injective(const Homomorphism& phi) {
  std::map<NodeId, NodeId> seen;  // image -> first labeled preimage
  for (const NodeId& n : phi.dom().labeled_ids()) {
    const NodeId& image = phi.apply(n);
    auto [it, fresh] = seen.emplace(image, n);
    if (!fresh) return false;
  }
  return true;
}

Homomorphism identity(const Graph& g) {
  std::map<NodeId, NodeId> map;
  for (const NodeId& n : g.node_ids()) map.emplace(n, n);
  return Homomorphism::unchecked(g, g, std::move(map));
}

Homomorphism compose(const Homomorphism& f, const Homomorphism& g) {
  if (!(f.cod() == g.dom())) {
    throw Error(ErrorCode::DomainMismatch,
                "codomain of the first homomorphism differs from the domain "
                "of the second");
  }
  std::map<NodeId, NodeId> map;
  for (const auto& [from, mid] : f.node_map()) map.emplace(from, g.apply(mid));
  Homomorphism out = Homomorphism::unchecked(f.dom(), g.cod(), std::move(map));
#ifndef NDEBUG
  validate(out);  // category law makes this redundant; keep honest in debug
#endif
  return out;
}

namespace {

struct IsoSearch {
  const Graph& g;
  const Graph& h;
  std::vector<NodeId> order;           // dom nodes, labeled first
  std::map<NodeId, NodeId> assignment;
  std::map<NodeId, NodeId> used;       // cod node -> dom node

  bool consistent(const NodeId& n) const {
    // Check every dom edge whose endpoints are both assigned and that
    // involves n on either side.
    for (const auto& [a, b] : assignment) {
      if (!g.is_labeled(a)) continue;
      const auto& src = g.successors(a);
      const auto& dst = h.successors(assignment.at(a));
      if (src.size() != dst.size()) return false;
      for (std::size_t i = 0; i < src.size(); ++i) {
        auto it = assignment.find(src[i]);
        if (it != assignment.end() && it->second != dst[i]) return false;
      }
    }
    (void)n;
    return true;
  }

  bool extend(std::size_t k) {
    if (k == order.size()) return true;
    const NodeId& n = order[k];
    std::vector<NodeId> candidates =
        g.is_labeled(n) ? h.labeled_ids() : h.unlabeled_ids();
    for (const NodeId& c : candidates) {
      if (used.count(c) != 0) continue;
      if (g.is_labeled(n) && g.label(n) != h.label(c)) continue;
      assignment.emplace(n, c);
      used.emplace(c, n);
      if (consistent(n) && extend(k + 1)) return true;
      assignment.erase(n);
      used.erase(c);
    }
    return false;
  }
};

}  // namespace

std::optional<Homomorphism> find_isomorphism(const Graph& g, const Graph& h) {
  if (g.node_count() != h.node_count()) return std::nullopt;
  if (g.labeled_count() != h.labeled_count()) return std::nullopt;

  std::multiset<std::string> gl, hl;
  for (const NodeId& n : g.labeled_ids()) gl.insert(g.label(n));
  for (const NodeId& n : h.labeled_ids()) hl.insert(h.label(n));
  if (gl != hl) return std::nullopt;

  IsoSearch search{g, h, {}, {}, {}};
  search.order = g.labeled_ids();
  for (const NodeId& n : g.unlabeled_ids()) search.order.push_back(n);
  if (!search.extend(0)) return std::nullopt;
  return Homomorphism::unchecked(g, h, std::move(search.assignment));
}

}  // namespace dsrw
