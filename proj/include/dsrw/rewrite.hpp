#ifndef DSRW_REWRITE_HPP
#define DSRW_REWRITE_HPP

#include <optional>

#include "dsrw/disconnect.hpp"
#include "dsrw/pushout.hpp"

namespace dsrw {

/// Global redirection pair, named by right-hand-side nodes: after the local
/// part of a step, every pre-existing host edge pointing at the instance of
/// `from` is redirected to the instance of `to`. Edges created by the
/// right-hand side itself are exempt, which is what lets rules grow chains
/// through a repeatedly redirected node.
struct RedirectPair {
  NodeId from;
  NodeId to;

  RedirectPair() = default;
  RedirectPair(NodeId f, NodeId t) : from(std::move(f)), to(std::move(t)) {}

  auto operator<=>(const RedirectPair&) const = default;
};

/// A local redirection-and-replacement rule: the span
/// lhs <- middle -> rhs where middle = D(lhs, disconnect_set), delta is the
/// connection homomorphism and rho places the middle into the right-hand
/// side. Optional redirect pairs add global redirection to the same step.
struct LrrRule {
  std::string name;
  Graph lhs;
  std::set<Edge> disconnect_set;
  Graph middle;
  Homomorphism delta;  // middle -> lhs
  Graph rhs;
  Homomorphism rho;    // middle -> rhs
  std::vector<RedirectPair> redirects;
};

/// Validate and assemble a rule. rho must contain an image for every middle
/// node (lhs nodes plus the fresh ones named by disconnection).
/// Errors: RhoNotHom (rho is not a homomorphism middle -> rhs);
/// UnlabeledMappedToLabeled / UnlabeledMergedByRho (lhs placeholders must map
/// injectively to rhs placeholders; disconnection-fresh nodes are exempt);
/// UnknownNode (redirect pair naming a non-rhs node); BadRedirectTarget
/// (a node redirected twice, or a redirect source still held by a pattern
/// edge outside disconnect_set).
LrrRule make_lrr_rule(Graph lhs, std::set<Edge> disconnect_set, Graph rhs,
                      std::map<NodeId, NodeId> rho,
                      std::vector<RedirectPair> redirects = {},
                      std::string name = {});

/// A way of laying the rule's left-hand side over a host graph: a
/// homomorphism lhs -> host that is injective on labeled nodes.
struct Match {
  std::string rule;  // name of the matched rule, informational
  Homomorphism mu;   // lhs -> host
};

/// All matches of the rule in the host, in a deterministic order (sorted by
/// image assignment). Backtracks over labeled nodes first — seeded at the
/// rarest label in the host — because placeholders are only constrained
/// through their labeled sources.
std::vector<Match> find_lrr_matches(const LrrRule& rule, const Graph& host);

/// The two pushout squares of a performed step, kept for auditing: both can
/// be handed to verify_pushout. resolved_redirects lists the redirect pairs
/// in result-graph ids (what moved where), which the normalization driver
/// uses to follow its roots.
struct StepTrace {
  std::string rule;
  PushoutSquare left;
  PushoutSquare right;
  std::vector<RedirectPair> resolved_redirects;
};

struct StepResult {
  Graph result;            // the rewritten graph
  Homomorphism nu;         // rhs -> result
  Homomorphism rho_prime;  // host-side middle object -> result
  StepTrace trace;
};

struct StepOptions {
  /// When false, the match is taken as-is even if it is not a homomorphism
  /// or not injective on labeled nodes. The step then either still succeeds
  /// or fails in the machinery (MatchInvalid, NotStronglyLabeled) — useful
  /// for demonstrating *why* such matches are excluded.
  bool enforce_match_validity = true;
};

/// Perform one rule application at the given match. Surviving host nodes
/// keep their ids; nodes introduced by the right-hand side keep their rhs
/// ids unless taken (then primes are appended). Redirect pairs are resolved
/// in the same double pushout: the host image of each pair's source has its
/// incoming edges handed to the instance of the target.
/// Errors: DomainMismatch; MatchInvalid; NotStronglyLabeled (no pushout
/// exists for the configuration — unreachable for enforced matches).
StepResult lrr_step(const LrrRule& rule, const Match& match,
                    const StepOptions& options = {});

/// The fixed global-redirection rule: a span P <- SW -> P over the two-node
/// unlabeled graph P = {ar, pr} and the three-node switch graph
/// SW = {ar, pr, mr}, with lambda folding mr onto ar and rho folding it onto
/// pr. Matching ar to a node and pr to another redirects every edge of the
/// first onto the second.
struct GrRule {
  Graph p;
  Graph sw;
  Homomorphism lambda;  // sw -> p
  Homomorphism rho;     // sw -> p
};

GrRule gr_rule();

/// Redirect every edge targeting `from` to target `to`, as a double pushout
/// of the fixed GR rule. The result keeps exactly the host's node set; the
/// switch node's class merges into `to`. Errors: NoSuchNode.
StepResult gr_step(const Graph& host, const NodeId& from, const NodeId& to);

/// The subgraph reachable from the given roots along successor edges.
/// Successor-closure keeps every labeled node's string intact, so the result
/// is a valid graph. Errors: NoSuchNode (a root outside the graph).
Graph trim(const Graph& g, const std::set<NodeId>& roots);

/// An ordered rule list with a step budget and optional garbage roots.
struct RewriteSystem {
  Signature signature;
  std::vector<LrrRule> rules;
  std::size_t fuel = 1000;
  std::optional<std::set<NodeId>> trim_roots;
};

/// First rule (in declaration order) with a match, applied at its first
/// match (in enumeration order); nullopt when nothing matches.
std::optional<StepResult> apply_once(const RewriteSystem& system,
                                     const Graph& host);

struct NormalizeStats {
  std::size_t steps = 0;
  std::vector<std::string> applied;  // rule name per step
};

/// Thrown when normalization runs out of fuel; carries the last graph so a
/// nontermination suspect can still be inspected.
class FuelExhaustedError : public Error {
 public:
  FuelExhaustedError(Graph last, std::size_t fuel)
      : Error(ErrorCode::FuelExhausted,
              "no normal form within " + std::to_string(fuel) + " step(s)"),
        last_(std::move(last)) {}

  const Graph& last() const { return last_; }

 private:
  Graph last_;
};

/// Iterate apply_once until no rule matches. With trim_roots set the graph
/// is kept trimmed to the roots throughout: trimmed once at entry and after
/// every step, with roots following the step's resolved redirect pairs (a
/// root whose edges were handed over moves to the receiving node). Without
/// roots the iteration is plain. Errors: FuelExhaustedError; NoSuchNode
/// (bad trim root).
Graph normalize(const RewriteSystem& system, const Graph& start,
                NormalizeStats* stats = nullptr);

}  // namespace dsrw

#endif
