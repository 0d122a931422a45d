#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>

#include "dsrw/disconnect.hpp"
#include "dsrw/rewrite.hpp"
#include "support.hpp"

using namespace dsrw;
using namespace dsrw::testing;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

Graph cell_pattern() {
  return Graph::build({{NodeId("m"), "cons", {NodeId("p"), NodeId("o")}},
                       {NodeId("p"), {}, {}},
                       {NodeId("o"), {}, {}}});
}

// lhs { x: 0 }  rhs { x: 0, i: 1 }  redirect { (x, i) }
LrrRule nullary_swap_rule() {
  Graph lhs = Graph::build({{NodeId("x"), "0", {}}});
  Graph rhs = Graph::build({{NodeId("x"), "0", {}}, {NodeId("i"), "1", {}}});
  return make_lrr_rule(lhs, {}, rhs, {{NodeId("x"), NodeId("x")}},
                       {RedirectPair(NodeId("x"), NodeId("i"))}, "swap");
}

}  // namespace

TEST_CASE("rule validation") {
  Graph lhs = cell_pattern();
  std::map<NodeId, NodeId> id_rho = {{NodeId("m"), NodeId("m")},
                                     {NodeId("p"), NodeId("p")},
                                     {NodeId("o"), NodeId("o")}};

  // the plain copy rule is fine
  LrrRule copy = make_lrr_rule(lhs, {}, lhs, id_rho, {}, "copy");
  CHECK(copy.middle == lhs);
  CHECK(copy.delta == identity(lhs));

  // a placeholder may not become labeled
  Graph filled = Graph::build({{NodeId("m"), "cons", {NodeId("p"), NodeId("o")}},
                               {NodeId("p"), {}, {}},
                               {NodeId("o"), "0", {}}});
  CHECK(code_of([&] { make_lrr_rule(lhs, {}, filled, id_rho); }) ==
        ErrorCode::UnlabeledMappedToLabeled);

  // two pattern placeholders may not merge
  Graph folded = Graph::build({{NodeId("m"), "cons", {NodeId("o"), NodeId("o")}},
                               {NodeId("o"), {}, {}}});
  CHECK(code_of([&] {
          make_lrr_rule(lhs, {}, folded,
                        {{NodeId("m"), NodeId("m")},
                         {NodeId("p"), NodeId("o")},
                         {NodeId("o"), NodeId("o")}});
        }) == ErrorCode::UnlabeledMergedByRho);

  // ...but fresh disconnection nodes may, and may even share their target
  Graph pinched = Graph::build({{NodeId("m"), "cons", {NodeId("p"), NodeId("p")}},
                                {NodeId("p"), {}, {}},
                                {NodeId("o"), {}, {}}});
  LrrRule fold_fresh = make_lrr_rule(
      lhs, {{NodeId("m"), 1}, {NodeId("m"), 2}}, pinched,
      {{NodeId("m"), NodeId("m")},
       {NodeId("p"), NodeId("p")},
       {NodeId("o"), NodeId("o")},
       {NodeId("m[1]"), NodeId("p")},
       {NodeId("m[2]"), NodeId("p")}},
      {}, "fold");
  CHECK(fold_fresh.rho.apply(NodeId("m[1]")) == NodeId("p"));

  // rho must stay a homomorphism
  CHECK(code_of([&] {
          make_lrr_rule(lhs, {}, lhs,
                        {{NodeId("m"), NodeId("m")},
                         {NodeId("p"), NodeId("o")},
                         {NodeId("o"), NodeId("p")}});
        }) == ErrorCode::RhoNotHom);

  // redirect pairs must name right-hand-side nodes
  CHECK(code_of([&] {
          make_lrr_rule(lhs, {}, lhs, id_rho,
                        {RedirectPair(NodeId("m"), NodeId("zz"))});
        }) == ErrorCode::UnknownNode);
  CHECK(code_of([&] {
          make_lrr_rule(lhs, {}, lhs, id_rho,
                        {RedirectPair(NodeId("zz"), NodeId("m"))});
        }) == ErrorCode::UnknownNode);

  // a node cannot be redirected twice
  CHECK(code_of([&] {
          make_lrr_rule(lhs, {}, lhs, id_rho,
                        {RedirectPair(NodeId("m"), NodeId("o")),
                         RedirectPair(NodeId("m"), NodeId("p"))});
        }) == ErrorCode::BadRedirectTarget);

  // a redirected node may not keep pattern edges
  Graph held = Graph::build({{NodeId("n"), "s", {NodeId("m")}},
                             {NodeId("m"), "0", {}}});
  Graph held_rhs = Graph::build({{NodeId("n"), "s", {NodeId("m")}},
                                 {NodeId("m"), "0", {}},
                                 {NodeId("i"), "1", {}}});
  CHECK(code_of([&] {
          make_lrr_rule(held, {}, held_rhs,
                        {{NodeId("n"), NodeId("n")}, {NodeId("m"), NodeId("m")}},
                        {RedirectPair(NodeId("m"), NodeId("i"))});
        }) == ErrorCode::BadRedirectTarget);
  // disconnecting the holding edge makes the same rule legal
  LrrRule freed = make_lrr_rule(held, {{NodeId("n"), 1}}, held_rhs,
                                {{NodeId("n"), NodeId("n")},
                                 {NodeId("m"), NodeId("m")},
                                 {NodeId("n[1]"), NodeId("m")}},
                                {RedirectPair(NodeId("m"), NodeId("i"))},
                                "freed");
  CHECK(freed.redirects.size() == 1);
}

TEST_CASE("match enumeration") {
  RewriteSystem sys = load_rules_fixture("example6.rules");
  const LrrRule& add = sys.rules.at(0);
  Graph u = load_graph_fixture("example6_u.graph").graph;

  std::vector<Match> matches = find_lrr_matches(add, u);
  REQUIRE(matches.size() == 1);
  CHECK(matches[0].rule == "add");
  const Homomorphism& mu = matches[0].mu;
  CHECK(mu.apply(NodeId("n1")) == NodeId("o"));
  CHECK(mu.apply(NodeId("n2")) == NodeId("m"));
  CHECK(mu.apply(NodeId("n3")) == NodeId("c1"));
  CHECK(mu.apply(NodeId("n4")) == NodeId("p1"));
  CHECK(mu.apply(NodeId("n5")) == NodeId("c2"));
  CHECK(mu.apply(NodeId("n6")) == NodeId("c4"));
  CHECK(mu.apply(NodeId("n7")) == NodeId("p4"));
  CHECK(is_valid_hom_map(add.lhs, u, mu.node_map()));
  CHECK(is_omega_injective_map(add.lhs, mu.node_map()));

  // same answer twice
  std::vector<Match> again = find_lrr_matches(add, u);
  REQUIRE(again.size() == 1);
  CHECK(again[0].mu == matches[0].mu);
}

TEST_CASE("matches that must not exist") {
  RewriteSystem sys3 = load_rules_fixture("example3.rules");
  const LrrRule& add_one = sys3.rules.at(0);
  Graph two_cells =
      Graph::build({{NodeId("a"), "add", {NodeId("c1"), NodeId("e")}},
                    {NodeId("c1"), "cons", {NodeId("v1"), NodeId("c2")}},
                    {NodeId("c2"), "cons", {NodeId("v2"), NodeId("c1")}},
                    {NodeId("e"), {}, {}},
                    {NodeId("v1"), {}, {}},
                    {NodeId("v2"), {}, {}}});
  CHECK(find_lrr_matches(add_one, two_cells).empty());

  // the one-cell list refuses the two-cell walker: labeled nodes may not merge
  RewriteSystem length = load_rules_fixture("length.rules");
  const LrrRule& recursive = length.rules.at(2);
  Graph one_cell =
      Graph::build({{NodeId("w"), "#_b", {NodeId("c1"), NodeId("c1")}},
                    {NodeId("c1"), "cons", {NodeId("v"), NodeId("c1")}},
                    {NodeId("v"), {}, {}}});
  CHECK(find_lrr_matches(recursive, one_cell).empty());
  const LrrRule& base = length.rules.at(1);
  CHECK(find_lrr_matches(base, one_cell).size() == 1);
}

TEST_CASE("match enumeration agrees with brute force") {
  RewriteSystem sys = load_rules_fixture("example6.rules");
  Graph u = load_graph_fixture("example6_u.graph").graph;
  RewriteSystem sys3 = load_rules_fixture("example3.rules");
  Graph g = load_graph_fixture("example1.graph").graph;

  auto maps_of = [](const std::vector<Match>& ms) {
    std::vector<std::map<NodeId, NodeId>> out;
    for (const Match& m : ms) out.push_back(m.mu.node_map());
    return out;
  };

  CHECK(maps_of(find_lrr_matches(sys.rules[0], u)) ==
        oracle_matches(sys.rules[0].lhs, u));
  CHECK(maps_of(find_lrr_matches(sys3.rules[0], u)) ==
        oracle_matches(sys3.rules[0].lhs, u));
  CHECK(maps_of(find_lrr_matches(sys.rules[0], g)) ==
        oracle_matches(sys.rules[0].lhs, g));

  LrrRule cells = make_lrr_rule(cell_pattern(), {}, cell_pattern(),
                                {{NodeId("m"), NodeId("m")},
                                 {NodeId("p"), NodeId("p")},
                                 {NodeId("o"), NodeId("o")}},
                                {}, "cells");
  Graph ring = circular_list(3);
  std::vector<Match> ms = find_lrr_matches(cells, ring);
  CHECK(ms.size() == 3);
  CHECK(maps_of(ms) == oracle_matches(cells.lhs, ring));

  // the empty pattern matches exactly once, emptily
  Graph none = Graph::build({});
  LrrRule empty_rule = make_lrr_rule(none, {}, none, {}, {}, "empty");
  std::vector<Match> empty_ms = find_lrr_matches(empty_rule, u);
  REQUIRE(empty_ms.size() == 1);
  CHECK(empty_ms[0].mu.node_map().empty());
  CHECK(oracle_matches(none, u).size() == 1);

  std::mt19937 rng(7501);
  SymbolPool pool = small_pool();
  for (int i = 0; i < 10; ++i) {
    Graph pattern = random_graph(rng, 3, pool);
    Graph host = random_graph(rng, 5, pool);
    std::map<NodeId, NodeId> rho;
    for (const NodeId& n : pattern.node_ids()) rho[n] = n;
    LrrRule r = make_lrr_rule(pattern, {}, pattern, rho, {}, "r");
    CHECK(maps_of(find_lrr_matches(r, host)) == oracle_matches(pattern, host));
  }
}

TEST_CASE("a step rewires the matched cell") {
  RewriteSystem sys3 = load_rules_fixture("example3.rules");
  const LrrRule& add_one = sys3.rules.at(0);
  Graph host = Graph::build({{NodeId("a"), "add", {NodeId("c1"), NodeId("e")}},
                             {NodeId("c1"), "cons", {NodeId("v"), NodeId("c1")}},
                             {NodeId("e"), {}, {}},
                             {NodeId("v"), {}, {}}});
  std::vector<Match> ms = find_lrr_matches(add_one, host);
  REQUIRE(ms.size() == 1);
  StepResult step = lrr_step(add_one, ms[0]);

  Graph expected =
      Graph::build({{NodeId("a"), "add", {NodeId("c1"), NodeId("e")}},
                    {NodeId("c1"), "cons", {NodeId("v"), NodeId("q")}},
                    {NodeId("q"), "cons", {NodeId("e"), NodeId("c1")}},
                    {NodeId("e"), {}, {}},
                    {NodeId("v"), {}, {}}});
  CHECK(step.result == expected);
  CHECK(step.nu.apply(NodeId("q")) == NodeId("q"));
  CHECK(step.nu.apply(NodeId("m")) == NodeId("c1"));
  CHECK(step.rho_prime.apply(NodeId("c1[2]")) == NodeId("q"));
  CHECK(step.trace.rule == "add_one");
  CHECK(step.trace.resolved_redirects.empty());
  CHECK(verify_pushout(step.trace.left));
  CHECK(verify_pushout(step.trace.right));
}

TEST_CASE("the list-append step reproduces the published result") {
  RewriteSystem sys = load_rules_fixture("example6.rules");
  const LrrRule& add = sys.rules.at(0);
  Graph u = load_graph_fixture("example6_u.graph").graph;
  Graph w = load_graph_fixture("example6_w.graph").graph;

  std::vector<Match> ms = find_lrr_matches(add, u);
  REQUIRE(ms.size() == 1);
  StepResult step = lrr_step(add, ms[0]);
  CHECK(step.result == w);
  CHECK(is_valid_hom_map(add.rhs, w, step.nu.node_map()));
  CHECK(step.nu.apply(NodeId("n8")) == NodeId("n8"));
  CHECK(step.rho_prime.apply(NodeId("c4[2]")) == NodeId("n8"));
  VerifyOptions opts;
  opts.universal_bound = 16;
  CHECK(verify_pushout(step.trace.left, opts));
  CHECK(verify_pushout(step.trace.right, opts));

  // the same step on a renamed host gives the same graph up to renaming
  Graph uz = prefix_nodes(u, "z");
  std::vector<Match> msz = find_lrr_matches(add, uz);
  REQUIRE(msz.size() == 1);
  StepResult stepz = lrr_step(add, msz[0]);
  CHECK(find_isomorphism(stepz.result, w).has_value());
}

TEST_CASE("a copy rule leaves the host alone") {
  LrrRule copy = make_lrr_rule(cell_pattern(), {}, cell_pattern(),
                               {{NodeId("m"), NodeId("m")},
                                {NodeId("p"), NodeId("p")},
                                {NodeId("o"), NodeId("o")}},
                               {}, "copy");
  Graph ring = circular_list(2);
  std::vector<Match> ms = find_lrr_matches(copy, ring);
  REQUIRE(ms.size() == 2);
  for (const Match& m : ms) {
    CHECK(lrr_step(copy, m).result == ring);
  }
}

TEST_CASE("redirection hands over incoming edges") {
  LrrRule swap = nullary_swap_rule();
  Graph host = Graph::build({{NodeId("x"), "0", {}},
                             {NodeId("y"), "s", {NodeId("x")}}});
  std::vector<Match> ms = find_lrr_matches(swap, host);
  REQUIRE(ms.size() == 1);
  StepResult step = lrr_step(swap, ms[0]);
  Graph expected = Graph::build({{NodeId("x"), "0", {}},
                                 {NodeId("i"), "1", {}},
                                 {NodeId("y"), "s", {NodeId("i")}}});
  CHECK(step.result == expected);
  REQUIRE(step.trace.resolved_redirects.size() == 1);
  CHECK(step.trace.resolved_redirects[0].from == NodeId("x"));
  CHECK(step.trace.resolved_redirects[0].to == NodeId("i"));
  CHECK(verify_pushout(step.trace.left));
  CHECK(verify_pushout(step.trace.right));

  // a taken name steps aside with a prime
  Graph taken = Graph::build({{NodeId("x"), "0", {}},
                              {NodeId("y"), "s", {NodeId("x")}},
                              {NodeId("i"), "2", {}}});
  std::vector<Match> ms2 = find_lrr_matches(swap, taken);
  REQUIRE(ms2.size() == 1);
  StepResult step2 = lrr_step(swap, ms2[0]);
  Graph expected2 = Graph::build({{NodeId("x"), "0", {}},
                                  {NodeId("i"), "2", {}},
                                  {NodeId("i'"), "1", {}},
                                  {NodeId("y"), "s", {NodeId("i'")}}});
  CHECK(step2.result == expected2);
  CHECK(step2.trace.resolved_redirects[0].to == NodeId("i'"));
}

TEST_CASE("invalid matches are rejected or fail honestly") {
  RewriteSystem sys7 = load_rules_fixture("example7.rules");
  const LrrRule& rule = sys7.rules.at(0);
  Graph u7 = load_graph_fixture("example7_u.graph").graph;

  CHECK(find_lrr_matches(rule, u7).empty());

  Match forced{"merge_fail",
               Homomorphism::unchecked(rule.lhs, u7,
                                       {{NodeId("n1"), NodeId("m")},
                                        {NodeId("n2"), NodeId("m")},
                                        {NodeId("n3"), NodeId("o")}})};
  CHECK(code_of([&] { lrr_step(rule, forced); }) == ErrorCode::MatchInvalid);

  StepOptions lax;
  lax.enforce_match_validity = false;
  try {
    lrr_step(rule, forced, lax);
    FAIL("expected throw");
  } catch (const NotStronglyLabeledError& e) {
    REQUIRE(e.diagnostic().kind.has_value());
    CHECK(*e.diagnostic().kind == ClashKind::Label);
    CHECK(e.diagnostic().message.find("\"b\"") != std::string::npos);
    CHECK(e.diagnostic().message.find("\"c\"") != std::string::npos);
  }

  // a match over the wrong pattern graph is refused up front
  Graph other = cell_pattern();
  Match misfit{"", identity(other)};
  CHECK(code_of([&] { lrr_step(rule, misfit); }) == ErrorCode::DomainMismatch);
}

TEST_CASE("global redirection") {
  Graph g = load_graph_fixture("example1.graph").graph;
  StepResult step = gr_step(g, NodeId("n"), NodeId("q"));
  CHECK(step.result == load_graph_fixture("example8_result.graph").graph);
  CHECK(step.trace.rule == "gr");
  REQUIRE(step.trace.resolved_redirects.size() == 1);
  CHECK(step.trace.resolved_redirects[0].from == NodeId("n"));
  CHECK(step.trace.resolved_redirects[0].to == NodeId("q"));
  CHECK(step.nu.apply(NodeId("ar")) == NodeId("n"));
  CHECK(step.nu.apply(NodeId("pr")) == NodeId("q"));
  CHECK(verify_pushout(step.trace.left));
  CHECK(verify_pushout(step.trace.right));

  // redirecting a node onto itself is a no-op
  CHECK(gr_step(g, NodeId("n"), NodeId("n")).result == g);

  // a node without incoming edges changes nothing either
  Graph h = load_graph_fixture("example2.graph").graph;
  CHECK(gr_step(h, NodeId("a"), NodeId("b")).result == h);

  CHECK(code_of([&] { gr_step(g, NodeId("zz"), NodeId("q")); }) ==
        ErrorCode::NoSuchNode);
  CHECK(code_of([&] { gr_step(g, NodeId("n"), NodeId("zz")); }) ==
        ErrorCode::NoSuchNode);
}

TEST_CASE("the redirection rule itself") {
  GrRule gr = gr_rule();
  CHECK(gr.p.node_ids() == std::vector<NodeId>{NodeId("ar"), NodeId("pr")});
  CHECK(gr.sw.node_ids() ==
        std::vector<NodeId>{NodeId("ar"), NodeId("mr"), NodeId("pr")});
  CHECK(gr.p.unlabeled_ids().size() == 2);
  CHECK(gr.sw.unlabeled_ids().size() == 3);
  CHECK(gr.lambda.apply(NodeId("ar")) == NodeId("ar"));
  CHECK(gr.lambda.apply(NodeId("mr")) == NodeId("ar"));
  CHECK(gr.lambda.apply(NodeId("pr")) == NodeId("pr"));
  CHECK(gr.rho.apply(NodeId("ar")) == NodeId("ar"));
  CHECK(gr.rho.apply(NodeId("mr")) == NodeId("pr"));
  CHECK(gr.rho.apply(NodeId("pr")) == NodeId("pr"));
}

TEST_CASE("global redirection on random graphs") {
  std::mt19937 rng(7531);
  SymbolPool pool = small_pool();
  for (int i = 0; i < 25; ++i) {
    Graph u = random_graph(rng, 6, pool);
    std::vector<NodeId> ids = u.node_ids();
    std::uniform_int_distribution<std::size_t> dist(0, ids.size() - 1);
    NodeId a = ids[dist(rng)];
    NodeId b = ids[dist(rng)];
    StepResult step = gr_step(u, a, b);
    CHECK(step.result.node_ids() == u.node_ids());
    CHECK(step.result.labeled_ids() == u.labeled_ids());
    for (const NodeId& n : u.labeled_ids()) {
      CHECK(step.result.label(n) == u.label(n));
      const auto& before = u.successors(n);
      const auto& after = step.result.successors(n);
      REQUIRE(before.size() == after.size());
      for (std::size_t k = 0; k < before.size(); ++k) {
        CHECK(after[k] == (before[k] == a ? b : before[k]));
      }
    }
    VerifyOptions opts;
    opts.universal_bound = 12;
    CHECK(verify_pushout(step.trace.left, opts));
    CHECK(verify_pushout(step.trace.right, opts));
  }
}

TEST_CASE("trimming to the reachable part") {
  Graph w = load_graph_fixture("example6_w.graph").graph;
  Graph trimmed = trim(w, {NodeId("n8")});
  std::vector<Graph::NodeDecl> kept;
  for (const Graph::NodeDecl& d : w.declarations()) {
    if (d.id != NodeId("o")) kept.push_back(d);
  }
  CHECK(trimmed == Graph::build(kept, w.signature()));
  CHECK_FALSE(trimmed.has_node(NodeId("o")));
  CHECK(trimmed.node_ids().size() == 10);

  std::vector<NodeId> all_ids = w.node_ids();
  std::set<NodeId> everything(all_ids.begin(), all_ids.end());
  CHECK(trim(w, everything) == w);
  CHECK(trim(w, {NodeId("o")}) == w);  // o reaches the whole graph

  Graph g = load_graph_fixture("example1.graph").graph;
  Graph lone = trim(g, {NodeId("q")});
  CHECK(lone == Graph::build({{NodeId("q"), {}, {}}}));

  CHECK(code_of([&] { trim(g, {NodeId("zz")}); }) == ErrorCode::NoSuchNode);
}

TEST_CASE("driving a system one step at a time") {
  RewriteSystem length = load_rules_fixture("length.rules");
  Graph start = circular_list(1);

  std::optional<StepResult> first = apply_once(length, start);
  REQUIRE(first.has_value());
  CHECK(first->trace.rule == "setup");
  Graph expected =
      Graph::build({{NodeId("len"), "#", {NodeId("c1")}},
                    {NodeId("c1"), "cons", {NodeId("v1"), NodeId("c1")}},
                    {NodeId("v1"), {}, {}},
                    {NodeId("q"), "#_b", {NodeId("c1"), NodeId("c1")}}});
  CHECK(first->result == expected);
  REQUIRE(first->trace.resolved_redirects.size() == 1);
  CHECK(first->trace.resolved_redirects[0].from == NodeId("len"));
  CHECK(first->trace.resolved_redirects[0].to == NodeId("q"));

  Graph walked = trim(first->result, {NodeId("q")});
  std::optional<StepResult> second = apply_once(length, walked);
  REQUIRE(second.has_value());
  CHECK(second->trace.rule == "base");

  RewriteSystem toothless;
  toothless.fuel = 5;
  CHECK_FALSE(apply_once(toothless, start).has_value());

  RewriteSystem two = parse_rules(
      "rule first { lhs { x: 0 } rhs { x: 0  j: one } redirect { (x, j) } }\n"
      "rule second { lhs { x: 0 } rhs { x: 0  k: two } redirect { (x, k) } }\n");
  Graph host = Graph::build({{NodeId("x"), "0", {}},
                             {NodeId("y"), "s", {NodeId("x")}}});
  std::optional<StepResult> pick = apply_once(two, host);
  REQUIRE(pick.has_value());
  CHECK(pick->trace.rule == "first");
  CHECK_FALSE(apply_once(two, Graph::build({{NodeId("y"), {}, {}}})).has_value());
}

TEST_CASE("normalization computes list lengths") {
  RewriteSystem length = load_rules_fixture("length.rules");
  for (std::size_t k = 1; k <= 4; ++k) {
    NormalizeStats stats;
    Graph out = normalize(length, circular_list(k), &stats);
    CHECK(find_isomorphism(out, succ_tower(k)).has_value());
    CHECK(stats.steps == k + 1);
    REQUIRE(stats.applied.size() == k + 1);
    CHECK(stats.applied.front() == "setup");
    CHECK(stats.applied.back() == "base");
    for (std::size_t i = 1; i + 1 < stats.applied.size(); ++i) {
      CHECK(stats.applied[i] == "recursive");
    }
  }
}

TEST_CASE("normalization stops at normal forms") {
  RewriteSystem length = load_rules_fixture("length.rules");
  length.trim_roots.reset();
  NormalizeStats stats;
  Graph tower = succ_tower(2);
  Graph out = normalize(length, tower, &stats);
  CHECK(out == tower);
  CHECK(stats.steps == 0);
  CHECK(stats.applied.empty());
}

TEST_CASE("trim roots must exist") {
  RewriteSystem length = load_rules_fixture("length.rules");
  CHECK(code_of([&] { normalize(length, succ_tower(1)); }) ==
        ErrorCode::NoSuchNode);
}

TEST_CASE("running out of fuel") {
  RewriteSystem length = load_rules_fixture("length.rules");
  Graph start = circular_list(1);

  length.fuel = 0;
  NormalizeStats stats;
  try {
    normalize(length, start, &stats);
    FAIL("expected throw");
  } catch (const FuelExhaustedError& e) {
    CHECK(e.code() == ErrorCode::FuelExhausted);
    CHECK(e.last() == start);  // the entry graph, nothing done yet
  }
  CHECK(stats.steps == 0);

  length.fuel = 1;
  NormalizeStats stats1;
  try {
    normalize(length, start, &stats1);
    FAIL("expected throw");
  } catch (const FuelExhaustedError& e) {
    CHECK(e.last().has_node(NodeId("q")));
    CHECK_FALSE(e.last().has_node(NodeId("len")));
  }
  CHECK(stats1.steps == 1);
  CHECK(stats1.applied == std::vector<std::string>{"setup"});
}

TEST_CASE("node bookkeeping of random valid steps") {
  std::mt19937 rng(7551);
  SymbolPool pool = small_pool();
  for (int i = 0; i < 15; ++i) {
    Graph lhs = random_graph(rng, 5, pool);
    std::set<Edge> e = random_edge_subset(rng, lhs, 2);

    std::vector<NodeId> all = lhs.node_ids();
    std::uniform_int_distribution<std::size_t> dist(0, all.size() - 1);
    std::map<Edge, NodeId> retarget;
    for (const Edge& edge : e) retarget[edge] = all[dist(rng)];

    std::vector<Graph::NodeDecl> decls = lhs.declarations();
    for (Graph::NodeDecl& d : decls) {
      for (std::size_t k = 0; k < d.successors.size(); ++k) {
        auto it = retarget.find(Edge{d.id, k + 1});
        if (it != retarget.end()) d.successors[k] = it->second;
      }
    }
    std::map<NodeId, NodeId> rho;
    for (const NodeId& n : lhs.node_ids()) rho[n] = n;
    for (const auto& [edge, target] : retarget) {
      rho[NodeId(edge.source.name + "[" + std::to_string(edge.index) + "]")] =
          target;
    }
    if (std::bernoulli_distribution(0.5)(rng)) {
      decls.push_back({NodeId("extra"), "zero", {}});
    }
    Graph rhs = Graph::build(decls, lhs.signature());
    LrrRule rule = make_lrr_rule(lhs, e, rhs, rho, {}, "gen");

    RandomHom rh = random_hom(rng, rule.lhs, pool);
    StepResult step = lrr_step(rule, Match{"gen", rh.map});
    const Graph& host = rh.cod;
    const Graph& result = step.result;

    CHECK(result.labeled_ids().size() == host.labeled_ids().size() -
                                             rule.lhs.labeled_ids().size() +
                                             rule.rhs.labeled_ids().size());

    // multiset identity: result + lhs carry the same labels as host + rhs
    std::vector<std::string> a, b;
    for (const NodeId& n : result.labeled_ids()) a.push_back(result.label(n));
    for (const NodeId& n : rule.lhs.labeled_ids())
      a.push_back(rule.lhs.label(n));
    for (const NodeId& n : host.labeled_ids()) b.push_back(host.label(n));
    for (const NodeId& n : rule.rhs.labeled_ids())
      b.push_back(rule.rhs.label(n));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);

    CHECK(is_valid_hom_map(rule.rhs, result, step.nu.node_map()));
  }
}
