#include "dsrw/text.hpp"

#include <cctype>
#include <sstream>

namespace dsrw {

namespace {

struct Token {
  enum class Kind {
    Ident,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Comma,
    Dot,
    Arrow,
    End,
  };

  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::Ident:
      return "\"" + t.text + "\"";
    case Token::Kind::LBrace:
      return "'{'";
    case Token::Kind::RBrace:
      return "'}'";
    case Token::Kind::LParen:
      return "'('";
    case Token::Kind::RParen:
      return "')'";
    case Token::Kind::Colon:
      return "':'";
    case Token::Kind::Comma:
      return "','";
    case Token::Kind::Dot:
      return "'.'";
    case Token::Kind::Arrow:
      return "'->'";
    case Token::Kind::End:
      return "end of input";
  }
  return "?";
}

// '#' is an ordinary symbol character (arithmetic rules use # and #_b), so
// comments are '//' only.
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' ||
         c == '\'' || c == '#';
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { current_ = lex(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    current_ = lex();
    return t;
  }

 private:
  [[noreturn]] void fail(int line, int column, const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, msg).at(line, column);
  }

  void step() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  Token lex() {
    for (;;) {
      while (pos_ < text_.size() &&
             std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
        step();
      }
      if (at('/') && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') step();
        continue;
      }
      break;
    }

    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) {
      t.kind = Token::Kind::End;
      return t;
    }

    char c = text_[pos_];
    auto single = [&](Token::Kind k) {
      t.kind = k;
      step();
      return t;
    };
    switch (c) {
      case '{':
        return single(Token::Kind::LBrace);
      case '}':
        return single(Token::Kind::RBrace);
      case '(':
        return single(Token::Kind::LParen);
      case ')':
        return single(Token::Kind::RParen);
      case ':':
        return single(Token::Kind::Colon);
      case ',':
        return single(Token::Kind::Comma);
      case '.':
        return single(Token::Kind::Dot);
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          step();
          step();
          t.kind = Token::Kind::Arrow;
          return t;
        }
        fail(t.line, t.column, "unexpected '-' (did you mean '->'?)");
      default:
        break;
    }

    if (!ident_char(c)) {
      fail(t.line, t.column,
           std::string("unexpected character '") + c + "'");
    }
    std::string s;
    while (pos_ < text_.size() && ident_char(text_[pos_])) {
      s += text_[pos_];
      step();
    }
    // One bracketed numeric suffix, as produced by edge disconnection.
    if (at('[')) {
      s += '[';
      step();
      if (pos_ >= text_.size() ||
          std::isdigit(static_cast<unsigned char>(text_[pos_])) == 0) {
        fail(line_, column_, "expected digits after '['");
      }
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
        s += text_[pos_];
        step();
      }
      if (!at(']')) fail(line_, column_, "expected ']' after index");
      s += ']';
      step();
    }
    t.kind = Token::Kind::Ident;
    t.text = s;
    return t;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token current_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) {}

  const Token& peek() const { return lexer_.peek(); }
  Token take() { return lexer_.take(); }

  bool peek_is(Token::Kind k) const { return peek().kind == k; }

  [[noreturn]] void fail(const Token& t, const std::string& expected) const {
    throw Error(ErrorCode::SyntaxError,
                "expected " + expected + ", found " + describe(t))
        .at(t.line, t.column);
  }

  Token expect(Token::Kind kind, const std::string& expected) {
    Token t = take();
    if (t.kind != kind) fail(t, expected);
    return t;
  }

  Token expect_ident(const std::string& expected) {
    return expect(Token::Kind::Ident, expected);
  }

  Token expect_keyword(const std::string& kw) {
    Token t = take();
    if (t.kind != Token::Kind::Ident || t.text != kw) fail(t, "\"" + kw + "\"");
    return t;
  }

  void expect_end() {
    Token t = take();
    if (t.kind != Token::Kind::End) fail(t, "end of input");
  }

 private:
  Lexer lexer_;
};

std::size_t parse_number(Parser& p, const std::string& expected) {
  Token t = p.expect_ident(expected);
  for (char c : t.text) {
    if (std::isdigit(static_cast<unsigned char>(c)) == 0) p.fail(t, expected);
  }
  return static_cast<std::size_t>(std::stoull(t.text));
}

// A node declaration plus the token positions needed to report validation
// errors at the offending spot rather than at the whole block.
struct DeclSite {
  Token id;
  Token label;  // kind == End when the node is a placeholder
  std::vector<Token> successors;
};

std::vector<DeclSite> parse_decl_block(Parser& p) {
  std::vector<DeclSite> sites;
  p.expect(Token::Kind::LBrace, "'{'");
  while (!p.peek_is(Token::Kind::RBrace)) {
    DeclSite site;
    site.id = p.expect_ident("a node declaration or '}'");
    p.expect(Token::Kind::Colon, "':'");
    if (p.peek_is(Token::Kind::Dot)) {
      p.take();
      sites.push_back(std::move(site));
      continue;
    }
    site.label = p.expect_ident("a symbol or '.'");
    if (p.peek_is(Token::Kind::LParen)) {
      p.take();
      if (!p.peek_is(Token::Kind::RParen)) {
        site.successors.push_back(p.expect_ident("a successor id"));
        while (p.peek_is(Token::Kind::Comma)) {
          p.take();
          site.successors.push_back(p.expect_ident("a successor id"));
        }
      }
      p.expect(Token::Kind::RParen, "')'");
    }
    sites.push_back(std::move(site));
  }
  p.take();  // '}'
  return sites;
}

// Validates the declarations with source positions, builds the graph, and
// folds newly inferred symbols into `sig` so later graphs in the same file
// see them.
Graph build_graph_at(const std::vector<DeclSite>& sites, Signature& sig) {
  std::set<NodeId> seen;
  Signature running = sig;
  std::vector<Graph::NodeDecl> decls;
  decls.reserve(sites.size());
  for (const DeclSite& site : sites) {
    NodeId id(site.id.text);
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::DuplicateNode,
                  "node \"" + id.name + "\" is declared twice")
          .at(site.id.line, site.id.column);
    }
    Graph::NodeDecl decl;
    decl.id = id;
    if (site.label.kind == Token::Kind::Ident) {
      decl.label = site.label.text;
      auto known = running.arity(site.label.text);
      std::size_t n = site.successors.size();
      if (known && *known != n) {
        throw Error(ErrorCode::ArityMismatch,
                    "node \"" + id.name + "\" uses \"" + site.label.text +
                        "\" with " + std::to_string(n) + " successor(s) but " +
                        "the symbol has arity " + std::to_string(*known))
            .at(site.label.line, site.label.column);
      }
      if (!known) running.declare(site.label.text, n);
      for (const Token& s : site.successors) {
        decl.successors.emplace_back(s.text);
      }
    }
    decls.push_back(std::move(decl));
  }
  for (const DeclSite& site : sites) {
    for (const Token& s : site.successors) {
      if (seen.find(NodeId(s.text)) == seen.end()) {
        throw Error(ErrorCode::UnknownNode,
                    "successor \"" + s.text + "\" of node \"" + site.id.text +
                        "\" is not declared")
            .at(s.line, s.column);
      }
    }
  }
  Graph g = Graph::build(decls, sig);
  sig = g.signature();
  return g;
}

void append_decls(std::ostringstream& os, const Graph& g, const char* indent) {
  for (const Graph::NodeDecl& decl : g.declarations()) {
    os << indent << decl.id.name << ": ";
    if (!decl.label) {
      os << ".\n";
      continue;
    }
    os << *decl.label;
    if (!decl.successors.empty()) {
      os << "(";
      for (std::size_t i = 0; i < decl.successors.size(); ++i) {
        if (i > 0) os << ", ";
        os << decl.successors[i].name;
      }
      os << ")";
    }
    os << "\n";
  }
}

struct RhoEntry {
  Token from;
  Token to;
};

struct RuleText {
  Token name;
  bool has_lhs = false;
  bool has_rhs = false;
  std::vector<DeclSite> lhs;
  std::vector<DeclSite> rhs;
  std::vector<std::pair<Token, Token>> disconnect;  // (node, index literal)
  std::vector<RhoEntry> rho;
  std::vector<std::pair<Token, Token>> redirect;
};

LrrRule build_rule(const RuleText& rt, Signature& sig) {
  Graph lhs = build_graph_at(rt.lhs, sig);
  Graph rhs = build_graph_at(rt.rhs, sig);

  std::set<Edge> edges;
  for (const auto& [node_tok, index_tok] : rt.disconnect) {
    NodeId n(node_tok.text);
    for (char c : index_tok.text) {
      if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
        throw Error(ErrorCode::SyntaxError, "expected an argument position")
            .at(index_tok.line, index_tok.column);
      }
    }
    Edge e(n, static_cast<std::size_t>(std::stoull(index_tok.text)));
    if (!lhs.has_edge(e)) {
      throw Error(ErrorCode::NoSuchEdge,
                  "the left-hand side has no edge (" + n.name + "," +
                      index_tok.text + ")")
          .at(node_tok.line, node_tok.column);
    }
    edges.insert(e);
  }

  // Explicit rho entries; remaining left-hand-side nodes default to the
  // same-named node on the right. Fresh nodes from disconnection have no
  // sensible default and must be mapped explicitly.
  std::map<NodeId, NodeId> rho;
  for (const RhoEntry& entry : rt.rho) {
    NodeId from(entry.from.text);
    if (rho.count(from) != 0) {
      throw Error(ErrorCode::SyntaxError,
                  "rho maps \"" + from.name + "\" twice")
          .at(entry.from.line, entry.from.column);
    }
    rho.emplace(from, NodeId(entry.to.text));
  }
  std::set<NodeId> middle_nodes;
  for (const NodeId& n : lhs.node_ids()) middle_nodes.insert(n);
  for (const Edge& e : edges) {
    middle_nodes.insert(
        NodeId(e.source.name + "[" + std::to_string(e.index) + "]"));
  }
  for (const NodeId& n : middle_nodes) {
    if (rho.count(n) != 0) continue;
    if (lhs.has_node(n) && rhs.has_node(n)) {
      rho.emplace(n, n);
      continue;
    }
    std::string reason = lhs.has_node(n)
                             ? "the right-hand side has no node of that name"
                             : "it is introduced by disconnection";
    throw Error(ErrorCode::SyntaxError,
                "rho has no entry for \"" + n.name + "\" and " + reason)
        .at(rt.name.line, rt.name.column);
  }

  std::vector<RedirectPair> redirects;
  for (const auto& [from_tok, to_tok] : rt.redirect) {
    redirects.push_back({NodeId(from_tok.text), NodeId(to_tok.text)});
  }

  try {
    return make_lrr_rule(std::move(lhs), std::move(edges), std::move(rhs),
                         std::move(rho), std::move(redirects), rt.name.text);
  } catch (const Error& e) {
    throw Error(e.code(), "rule \"" + rt.name.text + "\": " + e.message())
        .at(rt.name.line, rt.name.column);
  }
}

RuleText parse_rule_text(Parser& p) {
  RuleText rt;
  rt.name = p.expect_ident("a rule name");
  p.expect(Token::Kind::LBrace, "'{'");
  bool saw_disconnect = false, saw_rho = false, saw_redirect = false;
  while (!p.peek_is(Token::Kind::RBrace)) {
    Token kw = p.expect_ident(
        "\"lhs\", \"disconnect\", \"rhs\", \"rho\", \"redirect\" or '}'");
    auto once = [&](bool& flag) {
      if (flag) p.fail(kw, "each block at most once in a rule");
      flag = true;
    };
    if (kw.text == "lhs") {
      once(rt.has_lhs);
      rt.lhs = parse_decl_block(p);
    } else if (kw.text == "rhs") {
      once(rt.has_rhs);
      rt.rhs = parse_decl_block(p);
    } else if (kw.text == "disconnect") {
      once(saw_disconnect);
      p.expect(Token::Kind::LBrace, "'{'");
      while (p.peek_is(Token::Kind::LParen)) {
        p.take();
        Token node = p.expect_ident("a node id");
        p.expect(Token::Kind::Comma, "','");
        Token index = p.expect_ident("an argument position");
        p.expect(Token::Kind::RParen, "')'");
        rt.disconnect.emplace_back(node, index);
        if (p.peek_is(Token::Kind::Comma)) p.take();
      }
      p.expect(Token::Kind::RBrace, "'}' or '('");
    } else if (kw.text == "rho") {
      once(saw_rho);
      p.expect(Token::Kind::LBrace, "'{'");
      while (p.peek_is(Token::Kind::Ident)) {
        RhoEntry entry;
        entry.from = p.take();
        p.expect(Token::Kind::Arrow, "'->'");
        entry.to = p.expect_ident("a node id");
        rt.rho.push_back(entry);
        if (p.peek_is(Token::Kind::Comma)) p.take();
      }
      p.expect(Token::Kind::RBrace, "'}' or a node id");
    } else if (kw.text == "redirect") {
      once(saw_redirect);
      p.expect(Token::Kind::LBrace, "'{'");
      while (p.peek_is(Token::Kind::LParen)) {
        p.take();
        Token from = p.expect_ident("a node id");
        p.expect(Token::Kind::Comma, "','");
        Token to = p.expect_ident("a node id");
        p.expect(Token::Kind::RParen, "')'");
        rt.redirect.emplace_back(from, to);
        if (p.peek_is(Token::Kind::Comma)) p.take();
      }
      p.expect(Token::Kind::RBrace, "'}' or '('");
    } else {
      p.fail(kw,
             "\"lhs\", \"disconnect\", \"rhs\", \"rho\", \"redirect\" or '}'");
    }
  }
  p.take();  // '}'
  if (!rt.has_lhs) {
    p.fail(rt.name, "rule \"" + rt.name.text + "\" to have an lhs block");
  }
  if (!rt.has_rhs) {
    p.fail(rt.name, "rule \"" + rt.name.text + "\" to have an rhs block");
  }
  return rt;
}

}  // namespace

GraphDocument parse_graph(const std::string& text) {
  Parser p(text);
  p.expect_keyword("graph");
  Token name = p.expect_ident("a graph name");
  std::vector<DeclSite> sites = parse_decl_block(p);
  p.expect_end();
  GraphDocument doc;
  doc.name = name.text;
  Signature sig;
  doc.graph = build_graph_at(sites, sig);
  return doc;
}

std::string serialize_graph(const GraphDocument& doc) {
  std::ostringstream os;
  os << "graph " << doc.name << " {\n";
  append_decls(os, doc.graph, "  ");
  os << "}\n";
  return os.str();
}

NodeMapDocument parse_node_map(const std::string& text) {
  Parser p(text);
  p.expect_keyword("map");
  Token name = p.expect_ident("a map name");
  NodeMapDocument doc;
  doc.name = name.text;
  p.expect(Token::Kind::LBrace, "'{'");
  while (p.peek_is(Token::Kind::Ident)) {
    Token from = p.take();
    p.expect(Token::Kind::Arrow, "'->'");
    Token to = p.expect_ident("a node id");
    NodeId key(from.text);
    if (doc.entries.count(key) != 0) {
      throw Error(ErrorCode::SyntaxError,
                  "map sends \"" + key.name + "\" to two nodes")
          .at(from.line, from.column);
    }
    doc.entries.emplace(key, NodeId(to.text));
    if (p.peek_is(Token::Kind::Comma)) p.take();
  }
  p.expect(Token::Kind::RBrace, "'}' or a node id");
  p.expect_end();
  return doc;
}

std::string serialize_node_map(const NodeMapDocument& doc) {
  std::ostringstream os;
  os << "map " << doc.name << " {\n";
  for (const auto& [from, to] : doc.entries) {
    os << "  " << from.name << " -> " << to.name << "\n";
  }
  os << "}\n";
  return os.str();
}

RewriteSystem parse_rules(const std::string& text) {
  Parser p(text);
  RewriteSystem sys;
  std::set<std::string> names;
  bool fuel_seen = false;
  bool trim_seen = false;
  while (!p.peek_is(Token::Kind::End)) {
    Token kw = p.expect_ident("\"rule\", \"fuel\" or \"trim\"");
    if (kw.text == "fuel") {
      if (fuel_seen) p.fail(kw, "at most one fuel directive");
      fuel_seen = true;
      sys.fuel = parse_number(p, "a fuel amount");
    } else if (kw.text == "trim") {
      if (trim_seen) p.fail(kw, "at most one trim directive");
      trim_seen = true;
      std::set<NodeId> roots;
      roots.insert(NodeId(p.expect_ident("a root id").text));
      while (p.peek_is(Token::Kind::Comma)) {
        p.take();
        roots.insert(NodeId(p.expect_ident("a root id").text));
      }
      sys.trim_roots = std::move(roots);
    } else if (kw.text == "rule") {
      RuleText rt = parse_rule_text(p);
      if (!names.insert(rt.name.text).second) {
        throw Error(ErrorCode::DuplicateRule,
                    "rule \"" + rt.name.text + "\" is defined twice")
            .at(rt.name.line, rt.name.column);
      }
      sys.rules.push_back(build_rule(rt, sys.signature));
    } else {
      p.fail(kw, "\"rule\", \"fuel\" or \"trim\"");
    }
  }
  return sys;
}

std::string serialize_rules(const RewriteSystem& system) {
  std::ostringstream os;
  os << "fuel " << system.fuel << "\n";
  if (system.trim_roots) {
    os << "trim ";
    bool first = true;
    for (const NodeId& r : *system.trim_roots) {
      if (!first) os << ", ";
      os << r.name;
      first = false;
    }
    os << "\n";
  }
  for (const LrrRule& rule : system.rules) {
    os << "\nrule " << rule.name << " {\n";
    os << "  lhs {\n";
    append_decls(os, rule.lhs, "    ");
    os << "  }\n";
    if (!rule.disconnect_set.empty()) {
      os << "  disconnect {";
      for (const Edge& e : rule.disconnect_set) {
        os << " (" << e.source.name << ", " << e.index << ")";
      }
      os << " }\n";
    }
    os << "  rhs {\n";
    append_decls(os, rule.rhs, "    ");
    os << "  }\n";
    std::vector<std::string> entries;
    for (const auto& [from, to] : rule.rho.node_map()) {
      if (!rule.lhs.has_node(from) || from != to) {
        entries.push_back(from.name + " -> " + to.name);
      }
    }
    if (!entries.empty()) {
      os << "  rho { ";
      for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0) os << ", ";
        os << entries[i];
      }
      os << " }\n";
    }
    if (!rule.redirects.empty()) {
      os << "  redirect {";
      for (const RedirectPair& pr : rule.redirects) {
        os << " (" << pr.from.name << ", " << pr.to.name << ")";
      }
      os << " }\n";
    }
    os << "}\n";
  }
  return os.str();
}

std::string export_dot(const Graph& g) {
  std::ostringstream os;
  os << "digraph {\n";
  for (const NodeId& n : g.node_ids()) {
    os << "  \"" << n.name << "\" [label=\"" << n.name << ":"
       << (g.is_labeled(n) ? g.label(n) : "•") << "\"];\n";
  }
  for (const Edge& e : g.edges()) {
    os << "  \"" << e.source.name << "\" -> \""
       << g.successor(e.source, e.index).name << "\" [label=\"" << e.index
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace dsrw
