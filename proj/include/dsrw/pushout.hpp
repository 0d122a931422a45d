#ifndef DSRW_PUSHOUT_HPP
#define DSRW_PUSHOUT_HPP

#include <functional>
#include <optional>
#include <set>

#include "dsrw/homomorphism.hpp"

namespace dsrw {

/// Nodes of the two feet of a span live in independent id spaces; a tag keeps
/// them apart inside quotients. Left is the first foot (G1), Right the second
/// (G2), and Left sorts before Right everywhere.
enum class Side { Left, Right };

struct TaggedNode {
  Side side = Side::Left;
  NodeId id;

  TaggedNode() = default;
  TaggedNode(Side s, NodeId n) : side(s), id(std::move(n)) {}

  auto operator<=>(const TaggedNode&) const = default;
};

std::ostream& operator<<(std::ostream& os, const TaggedNode& n);

/// Span G1 <- G0 -> G2, stored as its two legs (the apex is the shared
/// domain).
struct Span {
  Homomorphism left;   // G0 -> G1
  Homomorphism right;  // G0 -> G2

  const Graph& apex() const { return left.dom(); }
  const Graph& g1() const { return left.cod(); }
  const Graph& g2() const { return right.cod(); }
};

/// Validates that both legs share one apex (DomainMismatch otherwise).
Span make_span(Homomorphism left, Homomorphism right);

/// The canonical partition of N1 + N2 generated by left(n) ~ right(n) for
/// every apex node n. Class ids are indices into a list sorted by each
/// class's smallest member (G1 before G2, then lexicographic), so they are
/// deterministic.
class QuotientWitness {
 public:
  std::size_t class_count() const { return classes_.size(); }

  /// Members of a class, sorted.
  const std::vector<TaggedNode>& members(std::size_t cls) const;

  /// Smallest member; doubles as the class's stable identifier.
  const TaggedNode& canonical(std::size_t cls) const;

  std::size_t class_of(const TaggedNode& n) const;
  std::size_t class_of_left(const NodeId& n) const;
  std::size_t class_of_right(const NodeId& n) const;

 private:
  friend QuotientWitness quotient(const Span&);
  std::vector<std::vector<TaggedNode>> classes_;
  std::map<TaggedNode, std::size_t> index_;
};

QuotientWitness quotient(const Span& span);

/// Why a span fails to be strongly labeled.
enum class ClashKind { Label, Successor };

struct StrongLabelDiagnostic {
  bool ok = true;
  std::optional<std::size_t> offending_class;
  std::optional<TaggedNode> first;   // the two labeled members that disagree
  std::optional<TaggedNode> second;
  std::optional<ClashKind> kind;
  std::string message;
};

/// A span is strongly labeled when, within every quotient class, all labeled
/// members carry one symbol and have positionwise equivalent successors.
/// Exactly the spans with this property admit a pushout.
StrongLabelDiagnostic is_strongly_labeled(const Span& span);

class NotStronglyLabeledError : public Error {
 public:
  explicit NotStronglyLabeledError(StrongLabelDiagnostic diag)
      : Error(ErrorCode::NotStronglyLabeled, diag.message),
        diagnostic_(std::move(diag)) {}

  const StrongLabelDiagnostic& diagnostic() const { return diagnostic_; }

 private:
  StrongLabelDiagnostic diagnostic_;
};

struct PushoutOptions {
  /// Picks the labeled member a labeled class reads its label and successor
  /// string from. Receives the class's labeled members, sorted. The default
  /// prefers the least G2-side labeled member, then the least G1-side one.
  /// Strong labeling makes the resulting graph independent of this choice up
  /// to node naming.
  std::function<TaggedNode(const std::vector<TaggedNode>&)> section;

  /// G1 ids whose classes should be named after them (used by the rewrite
  /// layer to keep the rewritten graph on the host graph's node ids).
  std::set<NodeId> preferred_left;
};

struct PushoutResult {
  Graph result;
  Homomorphism left_leg;                      // G1 -> result
  Homomorphism right_leg;                     // G2 -> result
  QuotientWitness witness;
  std::map<std::size_t, TaggedNode> section;  // labeled class -> chosen rep
  std::map<std::size_t, NodeId> class_names;  // class -> result node id
};

/// Build the pushout of a span. Throws NotStronglyLabeledError when no
/// pushout exists. Result nodes are the quotient classes; naming rules:
/// classes containing a preferred G1 id take it, labeled classes take their
/// section representative's id, unlabeled classes take their smallest member
/// (G1 before G2, shorter ids first, then lexicographic). Collisions append
/// primes, G1-preferred classes claiming first.
PushoutResult pushout(const Span& span, const PushoutOptions& options = {});

/// A span together with a candidate co-cone over it.
struct PushoutSquare {
  Span span;
  Homomorphism left_leg;   // G1 -> corner
  Homomorphism right_leg;  // G2 -> corner

  const Graph& corner() const { return left_leg.cod(); }
};

/// Validates that the legs type-check against the span (InvalidSquare).
PushoutSquare make_square(Span span, Homomorphism left_leg,
                          Homomorphism right_leg);

struct VerifyOptions {
  /// The universal property is confirmed by brute force only when every graph
  /// in the square has at most this many nodes.
  std::size_t universal_bound = 8;
  bool run_universal = true;
};

/// Decide whether the square is a pushout: the square commutes, the node maps
/// form a set pushout (checked against the canonical quotient), every labeled
/// corner node is the image of a labeled foot node, and — within the size
/// bound — the universal property holds against a generated family of test
/// co-cones. Throws InvalidSquare if the legs do not type-check.
bool verify_pushout(const PushoutSquare& square,
                    const VerifyOptions& options = {});

}  // namespace dsrw

#endif
