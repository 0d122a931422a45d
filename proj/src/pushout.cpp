#include "dsrw/pushout.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dsrw {

std::ostream& operator<<(std::ostream& os, const TaggedNode& n) {
  return os << (n.side == Side::Left ? "G1:" : "G2:") << n.id;
}

Span make_span(Homomorphism left, Homomorphism right) {
  if (!(left.dom() == right.dom())) {
    throw Error(ErrorCode::DomainMismatch,
                "span legs do not share an apex");
  }
  return Span{std::move(left), std::move(right)};
}

const std::vector<TaggedNode>& QuotientWitness::members(std::size_t cls) const {
  if (cls >= classes_.size()) {
    throw Error(ErrorCode::Internal, "class index out of range");
  }
  return classes_[cls];
}

const TaggedNode& QuotientWitness::canonical(std::size_t cls) const {
  return members(cls).front();
}

std::size_t QuotientWitness::class_of(const TaggedNode& n) const {
  auto it = index_.find(n);
  if (it == index_.end()) {
    std::ostringstream msg;
    msg << "node " << n << " is not part of the quotient";
    throw Error(ErrorCode::Internal, msg.str());
  }
  return it->second;
}

std::size_t QuotientWitness::class_of_left(const NodeId& n) const {
  return class_of(TaggedNode(Side::Left, n));
}

std::size_t QuotientWitness::class_of_right(const NodeId& n) const {
  return class_of(TaggedNode(Side::Right, n));
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  }
};

const Graph& side_graph(const Span& span, Side side) {
  return side == Side::Left ? span.g1() : span.g2();
}

bool shortlex_less(const NodeId& a, const NodeId& b) {
  if (a.name.size() != b.name.size()) return a.name.size() < b.name.size();
  return a.name < b.name;
}

}  // namespace

QuotientWitness quotient(const Span& span) {
  std::vector<TaggedNode> all;
  for (const NodeId& n : span.g1().node_ids()) all.emplace_back(Side::Left, n);
  for (const NodeId& n : span.g2().node_ids()) all.emplace_back(Side::Right, n);

  std::map<TaggedNode, std::size_t> idx;
  for (std::size_t i = 0; i < all.size(); ++i) idx.emplace(all[i], i);

  UnionFind uf(all.size());
  for (const NodeId& n : span.apex().node_ids()) {
    TaggedNode a(Side::Left, span.left.apply(n));
    TaggedNode b(Side::Right, span.right.apply(n));
    auto ia = idx.find(a);
    auto ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end()) {
      throw Error(ErrorCode::InvalidHom,
                  "span leg maps apex node \"" + n.name +
                      "\" outside its codomain");
    }
    uf.unite(ia->second, ib->second);
  }

  // all[] is ascending, so each class's member list comes out sorted.
  std::map<std::size_t, std::vector<TaggedNode>> groups;
  for (std::size_t i = 0; i < all.size(); ++i) {
    groups[uf.find(i)].push_back(all[i]);
  }

  QuotientWitness w;
  for (auto& [root, members] : groups) w.classes_.push_back(std::move(members));
  std::sort(w.classes_.begin(), w.classes_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (std::size_t c = 0; c < w.classes_.size(); ++c) {
    for (const TaggedNode& n : w.classes_[c]) w.index_.emplace(n, c);
  }
  return w;
}

namespace {

std::string describe_class(const std::vector<TaggedNode>& members) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) os << ", ";
    os << members[i];
  }
  os << "}";
  return os.str();
}

/// Shared by is_strongly_labeled and pushout so the quotient is built once.
StrongLabelDiagnostic strong_label_check(const Span& span,
                                         const QuotientWitness& w) {
  StrongLabelDiagnostic diag;
  for (std::size_t cls = 0; cls < w.class_count(); ++cls) {
    std::vector<TaggedNode> labeled;
    for (const TaggedNode& m : w.members(cls)) {
      if (side_graph(span, m.side).is_labeled(m.id)) labeled.push_back(m);
    }
    if (labeled.size() < 2) continue;

    const TaggedNode& ref = labeled.front();
    const Graph& ref_graph = side_graph(span, ref.side);
    for (std::size_t j = 1; j < labeled.size(); ++j) {
      const TaggedNode& other = labeled[j];
      const Graph& other_graph = side_graph(span, other.side);

      auto fail = [&](ClashKind kind, const std::string& what) {
        diag.ok = false;
        diag.offending_class = cls;
        diag.first = ref;
        diag.second = other;
        diag.kind = kind;
        std::ostringstream msg;
        msg << "class " << describe_class(w.members(cls)) << ": " << what
            << "; no pushout exists for this span";
        diag.message = msg.str();
      };

      if (ref_graph.label(ref.id) != other_graph.label(other.id)) {
        std::ostringstream what;
        what << "labels \"" << ref_graph.label(ref.id) << "\" (" << ref
             << ") and \"" << other_graph.label(other.id) << "\" (" << other
             << ") disagree";
        fail(ClashKind::Label, what.str());
        return diag;
      }

      const auto& a = ref_graph.successors(ref.id);
      const auto& b = other_graph.successors(other.id);
      if (a.size() != b.size()) {
        fail(ClashKind::Successor, "successor strings have different lengths");
        return diag;
      }
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (w.class_of(TaggedNode(ref.side, a[i])) !=
            w.class_of(TaggedNode(other.side, b[i]))) {
          std::ostringstream what;
          what << "successors at position " << i + 1 << " of " << ref
               << " and " << other << " fall into different classes";
          fail(ClashKind::Successor, what.str());
          return diag;
        }
      }
    }
  }
  return diag;
}

TaggedNode default_section(const std::vector<TaggedNode>& labeled) {
  for (const TaggedNode& m : labeled) {
    if (m.side == Side::Right) return m;  // members are sorted, Left first
  }
  return labeled.front();
}

}  // namespace

StrongLabelDiagnostic is_strongly_labeled(const Span& span) {
  return strong_label_check(span, quotient(span));
}

PushoutResult pushout(const Span& span, const PushoutOptions& options) {
  QuotientWitness w = quotient(span);
  StrongLabelDiagnostic diag = strong_label_check(span, w);
  if (!diag.ok) throw NotStronglyLabeledError(std::move(diag));

  // Pick the labeled representative ("section") of every labeled class.
  std::map<std::size_t, TaggedNode> section;
  for (std::size_t cls = 0; cls < w.class_count(); ++cls) {
    std::vector<TaggedNode> labeled;
    for (const TaggedNode& m : w.members(cls)) {
      if (side_graph(span, m.side).is_labeled(m.id)) labeled.push_back(m);
    }
    if (labeled.empty()) continue;
    TaggedNode chosen =
        options.section ? options.section(labeled) : default_section(labeled);
    if (std::find(labeled.begin(), labeled.end(), chosen) == labeled.end()) {
      throw Error(ErrorCode::Internal,
                  "section chose a node outside the class");
    }
    section.emplace(cls, chosen);
  }

  // Name every class. Classes holding a preferred G1 id claim names first
  // and always get them verbatim; everything else takes its natural name and
  // picks up primes on collision.
  struct Claim {
    int rank;
    TaggedNode canonical;
    std::size_t cls;
    NodeId wanted;
  };
  std::vector<Claim> claims;
  for (std::size_t cls = 0; cls < w.class_count(); ++cls) {
    const auto& members = w.members(cls);
    std::optional<NodeId> preferred;
    for (const TaggedNode& m : members) {
      if (m.side == Side::Left && options.preferred_left.count(m.id) != 0) {
        preferred = m.id;  // members sorted: first hit is the least
        break;
      }
    }
    NodeId wanted;
    int rank;
    if (preferred) {
      wanted = *preferred;
      rank = 0;
    } else if (auto it = section.find(cls); it != section.end()) {
      wanted = it->second.id;
      rank = 1;
    } else {
      wanted = members.front().id;
      for (const TaggedNode& m : members) {
        if (m.side != members.front().side) break;
        if (shortlex_less(m.id, wanted)) wanted = m.id;
      }
      rank = 1;
    }
    claims.push_back(Claim{rank, w.canonical(cls), cls, std::move(wanted)});
  }
  std::sort(claims.begin(), claims.end(), [](const Claim& a, const Claim& b) {
    return std::tie(a.rank, a.canonical) < std::tie(b.rank, b.canonical);
  });

  std::map<std::size_t, NodeId> names;
  std::set<NodeId> taken;
  for (const Claim& claim : claims) {
    NodeId name = claim.wanted;
    while (taken.count(name) != 0) name = NodeId(name.name + "'");
    taken.insert(name);
    names.emplace(claim.cls, std::move(name));
  }

  // Assemble the result graph, reading every labeled class through its
  // section representative.
  std::vector<Graph::NodeDecl> decls;
  for (std::size_t cls = 0; cls < w.class_count(); ++cls) {
    Graph::NodeDecl decl;
    decl.id = names.at(cls);
    auto it = section.find(cls);
    if (it != section.end()) {
      const TaggedNode& rep = it->second;
      const Graph& rep_graph = side_graph(span, rep.side);
      decl.label = rep_graph.label(rep.id);
      for (const NodeId& s : rep_graph.successors(rep.id)) {
        decl.successors.push_back(
            names.at(w.class_of(TaggedNode(rep.side, s))));
      }
    }
    decls.push_back(std::move(decl));
  }

  Signature base;
  try {
    base = Signature::merged(span.g1().signature(), span.g2().signature());
  } catch (const Error&) {
    base = Signature();  // conflicting unused symbols; infer from use instead
  }
  Graph result = Graph::build(decls, base);

  std::map<NodeId, NodeId> map1, map2;
  for (const NodeId& n : span.g1().node_ids()) {
    map1.emplace(n, names.at(w.class_of_left(n)));
  }
  for (const NodeId& n : span.g2().node_ids()) {
    map2.emplace(n, names.at(w.class_of_right(n)));
  }

  PushoutResult out;
  out.left_leg = Homomorphism::checked(span.g1(), result, std::move(map1));
  out.right_leg = Homomorphism::checked(span.g2(), result, std::move(map2));
  out.result = std::move(result);
  out.witness = std::move(w);
  out.section = std::move(section);
  out.class_names = std::move(names);
  return out;
}

PushoutSquare make_square(Span span, Homomorphism left_leg,
                          Homomorphism right_leg) {
  if (!(left_leg.dom() == span.g1()) || !(right_leg.dom() == span.g2()) ||
      !(left_leg.cod() == right_leg.cod())) {
    throw Error(ErrorCode::InvalidSquare,
                "legs do not type-check against the span");
  }
  return PushoutSquare{std::move(span), std::move(left_leg),
                       std::move(right_leg)};
}

namespace {

/// Merge node u (unlabeled) into v, returning the smaller graph and the
/// quotient node map.
std::pair<Graph, std::map<NodeId, NodeId>> merge_unlabeled(const Graph& g,
                                                           const NodeId& u,
                                                           const NodeId& v) {
  std::vector<Graph::NodeDecl> decls;
  for (Graph::NodeDecl decl : g.declarations()) {
    if (decl.id == u) continue;
    for (NodeId& s : decl.successors) {
      if (s == u) s = v;
    }
    decls.push_back(std::move(decl));
  }
  std::map<NodeId, NodeId> map;
  for (const NodeId& n : g.node_ids()) map.emplace(n, n == u ? v : n);
  return {Graph::build(decls, g.signature()), std::move(map)};
}

std::map<NodeId, NodeId> compose_maps(const std::map<NodeId, NodeId>& first,
                                      const std::map<NodeId, NodeId>& then) {
  std::map<NodeId, NodeId> out;
  for (const auto& [a, b] : first) out.emplace(a, then.at(b));
  return out;
}

/// Number of homomorphisms corner -> target that mediate the given co-cone.
/// The candidate is forced on the leg images; condition (2) of the verifier
/// guarantees those cover the corner, so at most one candidate exists.
std::size_t count_mediating(const PushoutSquare& square, const Graph& target,
                            const std::map<NodeId, NodeId>& t1,
                            const std::map<NodeId, NodeId>& t2) {
  std::map<NodeId, NodeId> theta;
  auto force = [&](const Homomorphism& leg,
                   const std::map<NodeId, NodeId>& t) {
    for (const auto& [n, via] : leg.node_map()) {
      auto want = t.at(n);
      auto [it, fresh] = theta.emplace(via, want);
      if (!fresh && it->second != want) return false;
    }
    return true;
  };
  if (!force(square.left_leg, t1) || !force(square.right_leg, t2)) return 0;

  std::vector<NodeId> free;
  for (const NodeId& n : square.corner().node_ids()) {
    if (theta.count(n) == 0) free.push_back(n);
  }

  std::vector<NodeId> pool = target.node_ids();
  std::size_t count = 0;
  // Enumerate assignments of uncovered corner nodes (none for set pushouts).
  std::vector<std::size_t> pick(free.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < free.size(); ++i) theta[free[i]] = pool[pick[i]];
    try {
      Homomorphism::checked(square.corner(), target, theta);
      ++count;
    } catch (const Error&) {
    }
    if (count > 1) return count;  // already not unique
    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < pool.size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
    if (free.empty()) break;
  }
  return count;
}

bool universal_property_holds(const PushoutSquare& square) {
  const Graph& corner = square.corner();

  struct Cospan {
    Graph target;
    std::map<NodeId, NodeId> t1, t2;
  };
  std::vector<Cospan> cospans;

  // The square's own co-cone: the unique mediating morphism must be the
  // identity.
  cospans.push_back(Cospan{corner, square.left_leg.node_map(),
                           square.right_leg.node_map()});

  // Every single merge of an unlabeled corner node into another node.
  for (const NodeId& u : corner.unlabeled_ids()) {
    for (const NodeId& v : corner.node_ids()) {
      if (u == v) continue;
      auto [merged, h] = merge_unlabeled(corner, u, v);
      cospans.push_back(
          Cospan{std::move(merged),
                 compose_maps(square.left_leg.node_map(), h),
                 compose_maps(square.right_leg.node_map(), h)});
    }
  }

  // The corner extended by one isolated unlabeled node.
  {
    NodeId aux("aux");
    while (corner.has_node(aux)) aux = NodeId(aux.name + "'");
    auto decls = corner.declarations();
    decls.push_back(Graph::NodeDecl{aux, std::nullopt, {}});
    cospans.push_back(Cospan{Graph::build(decls, corner.signature()),
                             square.left_leg.node_map(),
                             square.right_leg.node_map()});
  }

  for (const Cospan& c : cospans) {
    if (count_mediating(square, c.target, c.t1, c.t2) != 1) return false;
  }
  return true;
}

}  // namespace

bool verify_pushout(const PushoutSquare& square, const VerifyOptions& options) {
  if (!(square.left_leg.dom() == square.span.g1()) ||
      !(square.right_leg.dom() == square.span.g2()) ||
      !(square.left_leg.cod() == square.right_leg.cod())) {
    throw Error(ErrorCode::InvalidSquare,
                "legs do not type-check against the span");
  }

  // A square whose maps are not homomorphisms is not a pushout square.
  try {
    validate(square.span.left);
    validate(square.span.right);
    validate(square.left_leg);
    validate(square.right_leg);
  } catch (const Error&) {
    return false;
  }

  // (1) the square commutes
  for (const NodeId& n : square.span.apex().node_ids()) {
    if (square.left_leg.apply(square.span.left.apply(n)) !=
        square.right_leg.apply(square.span.right.apply(n))) {
      return false;
    }
  }

  // (2) the node maps form a set pushout: compare with the canonical
  // quotient through the correspondence class -> corner node
  QuotientWitness w = quotient(square.span);
  std::map<std::size_t, NodeId> to_corner;
  for (std::size_t cls = 0; cls < w.class_count(); ++cls) {
    for (const TaggedNode& m : w.members(cls)) {
      const Homomorphism& leg =
          m.side == Side::Left ? square.left_leg : square.right_leg;
      const NodeId& image = leg.apply(m.id);
      auto [it, fresh] = to_corner.emplace(cls, image);
      if (!fresh && it->second != image) return false;  // class torn apart
    }
  }
  std::set<NodeId> hit;
  for (const auto& [cls, n] : to_corner) {
    if (!hit.insert(n).second) return false;  // two classes collapsed
  }
  if (hit.size() != square.corner().node_count()) return false;  // not onto

  // (3) labeled corner nodes are images of labeled foot nodes
  std::set<NodeId> labeled_covered;
  for (const NodeId& n : square.span.g1().labeled_ids()) {
    labeled_covered.insert(square.left_leg.apply(n));
  }
  for (const NodeId& n : square.span.g2().labeled_ids()) {
    labeled_covered.insert(square.right_leg.apply(n));
  }
  for (const NodeId& n : square.corner().labeled_ids()) {
    if (labeled_covered.count(n) == 0) return false;
  }

  // (4) universal property, brute-forced on small squares
  if (options.run_universal) {
    std::size_t largest = std::max(
        {square.span.apex().node_count(), square.span.g1().node_count(),
         square.span.g2().node_count(), square.corner().node_count()});
    if (largest <= options.universal_bound &&
        !universal_property_holds(square)) {
      return false;
    }
  }
  return true;
}

}  // namespace dsrw
