#include "dsrw/rewrite.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace dsrw {

LrrRule make_lrr_rule(Graph lhs, std::set<Edge> disconnect_set, Graph rhs,
                      std::map<NodeId, NodeId> rho,
                      std::vector<RedirectPair> redirects, std::string name) {
  LrrRule rule;
  rule.name = std::move(name);

  DisconnectionResult d = disconnect_edges(lhs, disconnect_set);

  try {
    rule.rho = check_homomorphism(d.disconnected, rhs, rho);
  } catch (const Error& err) {
    throw Error(ErrorCode::RhoNotHom, std::string("rho: ") + err.what());
  }

  // Placeholders of the left-hand side must go injectively to placeholders
  // of the right-hand side; the fresh nodes minted by disconnection are not
  // placeholders of the pattern and may map anywhere.
  for (const NodeId& u : lhs.unlabeled_ids()) {
    const NodeId& img = rule.rho.apply(u);
    if (rhs.is_labeled(img)) {
      throw Error(ErrorCode::UnlabeledMappedToLabeled,
                  "placeholder \"" + u.name + "\" maps to labeled node \"" +
                      img.name + "\"");
    }
  }
  {
    std::map<NodeId, NodeId> seen;
    for (const NodeId& u : lhs.unlabeled_ids()) {
      auto [it, fresh] = seen.emplace(rule.rho.apply(u), u);
      if (!fresh) {
        throw Error(ErrorCode::UnlabeledMergedByRho,
                    "placeholders \"" + it->second.name + "\" and \"" +
                        u.name + "\" share the image \"" + it->first.name +
                        "\"");
      }
    }
  }

  std::set<NodeId> sources;
  for (const RedirectPair& pair : redirects) {
    if (!rhs.has_node(pair.from)) {
      throw Error(ErrorCode::UnknownNode,
                  "redirect source \"" + pair.from.name +
                      "\" is not a node of the right-hand side");
    }
    if (!rhs.has_node(pair.to)) {
      throw Error(ErrorCode::UnknownNode,
                  "redirect target \"" + pair.to.name +
                      "\" is not a node of the right-hand side");
    }
    if (!sources.insert(pair.from).second) {
      throw Error(ErrorCode::BadRedirectTarget,
                  "node \"" + pair.from.name + "\" is redirected twice");
    }
    // Any pattern edge still holding a redirect source would be re-created
    // verbatim by the step and then contradict the redirection; such edges
    // must be disconnected by the rule instead.
    for (const NodeId& l : lhs.node_ids()) {
      if (rule.rho.apply(l) != pair.from) continue;
      for (const Edge& edge : lhs.edges()) {
        if (lhs.successor(edge.source, edge.index) != l) continue;
        if (disconnect_set.count(edge) != 0) continue;
        std::ostringstream msg;
        msg << "pattern edge " << edge << " still points at redirect source \""
            << pair.from.name << "\"; the rule must disconnect it";
        throw Error(ErrorCode::BadRedirectTarget, msg.str());
      }
    }
  }

  rule.lhs = std::move(lhs);
  rule.disconnect_set = std::move(disconnect_set);
  rule.middle = std::move(d.disconnected);
  rule.delta = std::move(d.connection);
  rule.rhs = std::move(rhs);
  rule.redirects = std::move(redirects);
  return rule;
}

std::vector<Match> find_lrr_matches(const LrrRule& rule, const Graph& host) {
  const Graph& lhs = rule.lhs;

  std::map<std::string, std::size_t> freq;
  for (const NodeId& n : host.labeled_ids()) ++freq[host.label(n)];

  // Labeled pattern nodes first, rarest host label first; placeholders last.
  std::vector<NodeId> order = lhs.labeled_ids();
  std::stable_sort(order.begin(), order.end(),
                   [&](const NodeId& a, const NodeId& b) {
                     return freq[lhs.label(a)] < freq[lhs.label(b)];
                   });
  {
    std::vector<NodeId> unl = lhs.unlabeled_ids();
    order.insert(order.end(), unl.begin(), unl.end());
  }

  std::map<NodeId, NodeId> assign;
  std::set<NodeId> used;  // host images of labeled pattern nodes
  std::vector<std::map<NodeId, NodeId>> found;

  auto consistent = [&]() {
    for (const auto& [a, b] : assign) {
      if (!lhs.is_labeled(a)) continue;
      const auto& pattern = lhs.successors(a);
      const auto& image = host.successors(b);
      if (pattern.size() != image.size()) return false;
      for (std::size_t i = 0; i < pattern.size(); ++i) {
        auto it = assign.find(pattern[i]);
        if (it != assign.end() && it->second != image[i]) return false;
      }
    }
    return true;
  };

  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == order.size()) {
      found.push_back(assign);
      return;
    }
    const NodeId& n = order[k];
    if (lhs.is_labeled(n)) {
      for (const NodeId& x : host.labeled_ids()) {
        if (host.label(x) != lhs.label(n)) continue;
        if (used.count(x) != 0) continue;
        assign.emplace(n, x);
        used.insert(x);
        if (consistent()) go(k + 1);
        used.erase(x);
        assign.erase(n);
      }
    } else {
      for (const NodeId& x : host.node_ids()) {
        assign.emplace(n, x);
        if (consistent()) go(k + 1);
        assign.erase(n);
      }
    }
  };
  go(0);

  std::sort(found.begin(), found.end());
  std::vector<Match> out;
  out.reserve(found.size());
  for (auto& map : found) {
    out.push_back(
        Match{rule.name, Homomorphism::unchecked(lhs, host, std::move(map))});
  }
  return out;
}

namespace {

struct ResolvedSource {
  NodeId apex;    // pair node in the extended span apex
  NodeId source;  // lhs node whose host image loses its edges
  NodeId target;  // rhs node that receives them
};

}  // namespace

StepResult lrr_step(const LrrRule& rule, const Match& match,
                    const StepOptions& options) {
  const Homomorphism& mu = match.mu;
  if (!(mu.dom() == rule.lhs)) {
    throw Error(ErrorCode::DomainMismatch,
                "match domain is not the rule's left-hand side");
  }
  const Graph& host = mu.cod();

  if (options.enforce_match_validity) {
    try {
      validate(mu);
    } catch (const Error& err) {
      throw Error(ErrorCode::MatchInvalid,
                  std::string("match is not a homomorphism: ") + err.what());
    }
    if (!is_omega_injective(mu)) {
      throw Error(ErrorCode::MatchInvalid,
                  "match merges two labeled pattern nodes");
    }
  }

  // Resolve redirect pairs to left-hand-side sources: every lhs node whose
  // rho-image is the pair's source loses its host edges to the pair's
  // target. Sources without a preimage name brand-new rhs nodes, which have
  // no pre-existing edges — nothing to do for them.
  std::vector<ResolvedSource> resolved;
  for (const RedirectPair& pair : rule.redirects) {
    for (const NodeId& l : rule.lhs.node_ids()) {
      if (rule.rho.apply(l) != pair.from) continue;
      NodeId apex_id("rd" + std::to_string(resolved.size() + 1));
      while (rule.middle.has_node(apex_id)) apex_id = NodeId(apex_id.name + "'");
      resolved.push_back(ResolvedSource{apex_id, l, pair.to});
    }
  }

  // The span apex: the rule's middle plus one unlabeled node per resolved
  // redirect source.
  Graph apex = rule.middle;
  if (!resolved.empty()) {
    std::vector<Graph::NodeDecl> decls = apex.declarations();
    for (const ResolvedSource& r : resolved) {
      decls.push_back(Graph::NodeDecl{r.apex, std::nullopt, {}});
    }
    apex = Graph::build(decls, apex.signature());
  }

  std::map<NodeId, NodeId> lambda_map = rule.delta.node_map();
  std::map<NodeId, NodeId> rho_map = rule.rho.node_map();
  for (const ResolvedSource& r : resolved) {
    lambda_map.emplace(r.apex, r.source);
    rho_map.emplace(r.apex, r.target);
  }
  Homomorphism lambda_hat =
      Homomorphism::checked(apex, rule.lhs, std::move(lambda_map));
  Homomorphism rho_hat =
      Homomorphism::checked(apex, rule.rhs, std::move(rho_map));

  // Host-side middle object: disconnect the match image of every rule edge,
  // then hand each resolved source's remaining edges to a switch node.
  std::set<Edge> host_edges;
  for (const Edge& e : rule.disconnect_set) host_edges.insert(mu.apply(e));
  DisconnectionResult du = disconnect_edges(host, host_edges);

  Graph mid_host = du.disconnected;
  std::vector<NodeId> switch_nodes;
  for (const ResolvedSource& r : resolved) {
    NodeDisconnectionResult nd = disconnect_node(mid_host, mu.apply(r.source));
    mid_host = std::move(nd.disconnected);
    switch_nodes.push_back(nd.fresh);
  }

  std::map<NodeId, NodeId> delta_host_map;
  for (const NodeId& n : host.node_ids()) delta_host_map.emplace(n, n);
  for (const auto& [edge, id] : du.fresh) {
    delta_host_map.emplace(id, host.successor(edge.source, edge.index));
  }
  for (std::size_t k = 0; k < resolved.size(); ++k) {
    delta_host_map.emplace(switch_nodes[k], mu.apply(resolved[k].source));
  }
  Homomorphism delta_host =
      Homomorphism::checked(mid_host, host, std::move(delta_host_map));

  // Lay the apex over the host-side middle. For a valid match this is a
  // homomorphism by construction; a forced match may fail here.
  DisconnectionResult dl = disconnect_edges(rule.lhs, rule.disconnect_set);
  std::map<NodeId, NodeId> d_map;
  for (const NodeId& n : rule.lhs.node_ids()) d_map.emplace(n, mu.apply(n));
  for (const auto& [edge, id] : dl.fresh) {
    d_map.emplace(id, du.fresh.at(mu.apply(edge)));
  }
  for (std::size_t k = 0; k < resolved.size(); ++k) {
    d_map.emplace(resolved[k].apex, switch_nodes[k]);
  }
  Homomorphism d_hat;
  try {
    d_hat = Homomorphism::checked(apex, mid_host, std::move(d_map));
  } catch (const Error& err) {
    throw Error(ErrorCode::MatchInvalid,
                std::string("match does not lift to the disconnected host: ") +
                    err.what());
  }

  // Right square: push the rule's replacement out against the host middle.
  Span right_span = make_span(d_hat, rho_hat);
  PushoutOptions po_options;
  for (const NodeId& n : host.node_ids()) po_options.preferred_left.insert(n);
  PushoutResult po = pushout(right_span, po_options);

  StepResult out;
  out.result = po.result;
  out.rho_prime = po.left_leg;
  out.nu = po.right_leg;
  out.trace.rule = rule.name;
  out.trace.left =
      make_square(make_span(lambda_hat, d_hat), mu, std::move(delta_host));
  out.trace.right = make_square(std::move(right_span), std::move(po.left_leg),
                                std::move(po.right_leg));
  for (const ResolvedSource& r : resolved) {
    out.trace.resolved_redirects.push_back(
        RedirectPair(out.rho_prime.apply(mu.apply(r.source)),
                     out.nu.apply(r.target)));
  }

#ifndef NDEBUG
  if (options.enforce_match_validity) {
    assert(verify_pushout(out.trace.right));
  }
#endif
  return out;
}

GrRule gr_rule() {
  NodeId ar("ar"), pr("pr"), mr("mr");
  Graph p = Graph::build({Graph::NodeDecl{ar, std::nullopt, {}},
                          Graph::NodeDecl{pr, std::nullopt, {}}});
  Graph sw = Graph::build({Graph::NodeDecl{ar, std::nullopt, {}},
                           Graph::NodeDecl{pr, std::nullopt, {}},
                           Graph::NodeDecl{mr, std::nullopt, {}}});
  GrRule rule;
  rule.lambda = Homomorphism::checked(sw, p,
                                      {{ar, ar}, {mr, ar}, {pr, pr}});
  rule.rho = Homomorphism::checked(sw, p, {{ar, ar}, {mr, pr}, {pr, pr}});
  rule.p = std::move(p);
  rule.sw = std::move(sw);
  return rule;
}

StepResult gr_step(const Graph& host, const NodeId& from, const NodeId& to) {
  if (!host.has_node(from)) {
    throw Error(ErrorCode::NoSuchNode, "no node \"" + from.name + "\"");
  }
  if (!host.has_node(to)) {
    throw Error(ErrorCode::NoSuchNode, "no node \"" + to.name + "\"");
  }

  GrRule rule = gr_rule();
  NodeId ar("ar"), pr("pr"), mr("mr");

  Homomorphism mu =
      Homomorphism::checked(rule.p, host, {{ar, from}, {pr, to}});
  NodeDisconnectionResult nd = disconnect_node(host, from);
  Homomorphism d_mu = Homomorphism::checked(
      rule.sw, nd.disconnected, {{ar, from}, {mr, nd.fresh}, {pr, to}});

  Span right_span = make_span(d_mu, rule.rho);
  PushoutOptions po_options;
  for (const NodeId& n : host.node_ids()) po_options.preferred_left.insert(n);
  PushoutResult po = pushout(right_span, po_options);

  StepResult out;
  out.result = po.result;
  out.rho_prime = po.left_leg;
  out.nu = po.right_leg;
  out.trace.rule = "gr";
  out.trace.left = make_square(make_span(rule.lambda, std::move(d_mu)),
                               std::move(mu), std::move(nd.connection));
  out.trace.right = make_square(std::move(right_span), std::move(po.left_leg),
                                std::move(po.right_leg));
  out.trace.resolved_redirects.push_back(RedirectPair(from, to));

#ifndef NDEBUG
  assert(verify_pushout(out.trace.left));
  assert(verify_pushout(out.trace.right));
#endif
  return out;
}

Graph trim(const Graph& g, const std::set<NodeId>& roots) {
  for (const NodeId& r : roots) {
    if (!g.has_node(r)) {
      throw Error(ErrorCode::NoSuchNode,
                  "trim root \"" + r.name + "\" is not a node");
    }
  }

  std::set<NodeId> keep;
  std::vector<NodeId> queue(roots.begin(), roots.end());
  while (!queue.empty()) {
    NodeId n = std::move(queue.back());
    queue.pop_back();
    if (!keep.insert(n).second) continue;
    for (const NodeId& s : g.successors(n)) queue.push_back(s);
  }

  std::vector<Graph::NodeDecl> all = g.declarations();
  std::vector<Graph::NodeDecl> decls;
  for (Graph::NodeDecl& decl : all) {
    if (keep.count(decl.id) != 0) decls.push_back(std::move(decl));
  }
  return Graph::build(decls, g.signature());
}

std::optional<StepResult> apply_once(const RewriteSystem& system,
                                     const Graph& host) {
  for (const LrrRule& rule : system.rules) {
    std::vector<Match> matches = find_lrr_matches(rule, host);
    if (!matches.empty()) return lrr_step(rule, matches.front());
  }
  return std::nullopt;
}

Graph normalize(const RewriteSystem& system, const Graph& start,
                NormalizeStats* stats) {
  Graph current = start;
  std::optional<std::set<NodeId>> roots = system.trim_roots;
  if (roots) current = trim(current, *roots);

  std::size_t steps = 0;
  for (;;) {
    std::optional<StepResult> step = apply_once(system, current);
    if (!step) break;
    if (steps == system.fuel) {
      throw FuelExhaustedError(std::move(current), system.fuel);
    }
    ++steps;
    if (stats) {
      stats->steps = steps;
      stats->applied.push_back(step->trace.rule);
    }
    current = std::move(step->result);
    if (roots) {
      std::set<NodeId> moved;
      for (const NodeId& r : *roots) {
        NodeId target = r;
        for (const RedirectPair& pair : step->trace.resolved_redirects) {
          if (pair.from == r) {
            target = pair.to;
            break;
          }
        }
        moved.insert(std::move(target));
      }
      roots = std::move(moved);
      current = trim(current, *roots);
    }
  }
  if (stats) stats->steps = steps;
  return current;
}

}  // namespace dsrw
