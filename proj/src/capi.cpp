#include "dsrw.h"

#include <cstdlib>
#include <cstring>
#include <sstream>

#include "dsrw/text.hpp"

struct dsrw_graph {
  dsrw::GraphDocument doc;
};

struct dsrw_system {
  dsrw::RewriteSystem sys;
};

namespace {

thread_local std::string t_last_error;

int set_error(const dsrw::Error& e) {
  std::string msg = dsrw::error_name(e.code());
  msg += ": ";
  if (e.line() > 0) {
    msg += "line " + std::to_string(e.line()) + ", column " +
           std::to_string(e.column()) + ": ";
  }
  msg += e.message();
  t_last_error = std::move(msg);
  return static_cast<int>(e.code()) + 1;
}

int set_internal(const char* what) {
  t_last_error = std::string("Internal: ") + what;
  return DSRW_E_INTERNAL;
}

int bad_argument(const char* what) {
  t_last_error = std::string("Internal: null ") + what;
  return DSRW_E_INTERNAL;
}

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const dsrw::Error& e) {
    return set_error(e);
  } catch (const std::exception& e) {
    return set_internal(e.what());
  } catch (...) {
    return set_internal("unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const dsrw::LrrRule& rule_by_name(const dsrw::RewriteSystem& sys,
                                  const char* name) {
  for (const dsrw::LrrRule& r : sys.rules) {
    if (r.name == name) return r;
  }
  throw dsrw::Error(dsrw::ErrorCode::NoSuchRule,
                    "no rule named \"" + std::string(name) + "\"");
}

std::set<dsrw::NodeId> parse_id_list(const char* list) {
  std::set<dsrw::NodeId> out;
  std::string item;
  std::istringstream is(list);
  while (std::getline(is, item, ',')) {
    std::size_t a = item.find_first_not_of(" \t");
    std::size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) {
      throw dsrw::Error(dsrw::ErrorCode::SyntaxError,
                        "empty entry in id list \"" + std::string(list) + "\"");
    }
    out.insert(dsrw::NodeId(item.substr(a, b - a + 1)));
  }
  if (out.empty()) {
    throw dsrw::Error(dsrw::ErrorCode::SyntaxError, "empty id list");
  }
  return out;
}

}  // namespace

extern "C" {

const char* dsrw_last_error(void) { return t_last_error.c_str(); }

const char* dsrw_status_name(dsrw_status status) {
  if (status == DSRW_OK) return "OK";
  if (status < DSRW_E_SYNTAX || status > DSRW_E_INTERNAL) return "?";
  return dsrw::error_name(static_cast<dsrw::ErrorCode>(status - 1));
}

dsrw_status dsrw_graph_parse(const char* text, dsrw_graph** out) {
  if (text == nullptr) return bad_argument("text");
  if (out == nullptr) return bad_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto* g = new dsrw_graph{dsrw::parse_graph(text)};
    *out = g;
    return DSRW_OK;
  });
}

dsrw_status dsrw_graph_serialize(const dsrw_graph* g, char** out) {
  if (g == nullptr) return bad_argument("graph");
  if (out == nullptr) return bad_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = dup_string(dsrw::serialize_graph(g->doc));
    return DSRW_OK;
  });
}

dsrw_status dsrw_graph_dot(const dsrw_graph* g, char** out) {
  if (g == nullptr) return bad_argument("graph");
  if (out == nullptr) return bad_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = dup_string(dsrw::export_dot(g->doc.graph));
    return DSRW_OK;
  });
}

const char* dsrw_graph_name(const dsrw_graph* g) {
  return g != nullptr ? g->doc.name.c_str() : nullptr;
}

size_t dsrw_graph_node_count(const dsrw_graph* g) {
  return g != nullptr ? g->doc.graph.node_ids().size() : 0;
}

void dsrw_graph_free(dsrw_graph* g) { delete g; }

dsrw_status dsrw_system_parse(const char* text, dsrw_system** out) {
  if (text == nullptr) return bad_argument("text");
  if (out == nullptr) return bad_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto* s = new dsrw_system{dsrw::parse_rules(text)};
    *out = s;
    return DSRW_OK;
  });
}

size_t dsrw_system_rule_count(const dsrw_system* s) {
  return s != nullptr ? s->sys.rules.size() : 0;
}

const char* dsrw_system_rule_name(const dsrw_system* s, size_t i) {
  if (s == nullptr || i >= s->sys.rules.size()) return nullptr;
  return s->sys.rules[i].name.c_str();
}

void dsrw_system_free(dsrw_system* s) { delete s; }

dsrw_status dsrw_match(const dsrw_system* s, const char* rule,
                       const dsrw_graph* host, char** out, size_t* count) {
  if (s == nullptr) return bad_argument("system");
  if (rule == nullptr) return bad_argument("rule");
  if (host == nullptr) return bad_argument("host");
  if (out != nullptr) *out = nullptr;
  return guarded([&] {
    const dsrw::LrrRule& r = rule_by_name(s->sys, rule);
    std::vector<dsrw::Match> matches =
        dsrw::find_lrr_matches(r, host->doc.graph);
    if (count != nullptr) *count = matches.size();
    if (out != nullptr) {
      std::ostringstream os;
      for (std::size_t i = 0; i < matches.size(); ++i) {
        if (i > 0) os << "\n";
        for (const auto& [l, u] : matches[i].mu.node_map()) {
          os << l.name << " -> " << u.name << "\n";
        }
      }
      *out = dup_string(os.str());
    }
    return DSRW_OK;
  });
}

dsrw_status dsrw_apply(const dsrw_system* s, const char* rule,
                       const dsrw_graph* host, size_t index,
                       dsrw_graph** out) {
  if (s == nullptr) return bad_argument("system");
  if (rule == nullptr) return bad_argument("rule");
  if (host == nullptr) return bad_argument("host");
  if (out == nullptr) return bad_argument("out");
  *out = nullptr;
  return guarded([&] {
    const dsrw::LrrRule& r = rule_by_name(s->sys, rule);
    std::vector<dsrw::Match> matches =
        dsrw::find_lrr_matches(r, host->doc.graph);
    if (index >= matches.size()) {
      throw dsrw::Error(
          dsrw::ErrorCode::NoMatch,
          "rule \"" + r.name + "\" has " + std::to_string(matches.size()) +
              " match(es) in graph \"" + host->doc.name + "\"; wanted number " +
              std::to_string(index));
    }
    dsrw::StepResult step = dsrw::lrr_step(r, matches[index]);
    *out = new dsrw_graph{{host->doc.name, std::move(step.result)}};
    return DSRW_OK;
  });
}

dsrw_status dsrw_redirect(const dsrw_graph* host, const char* from,
                          const char* to, dsrw_graph** out) {
  if (host == nullptr) return bad_argument("host");
  if (from == nullptr) return bad_argument("from");
  if (to == nullptr) return bad_argument("to");
  if (out == nullptr) return bad_argument("out");
  *out = nullptr;
  return guarded([&] {
    dsrw::StepResult step = dsrw::gr_step(host->doc.graph, dsrw::NodeId(from),
                                          dsrw::NodeId(to));
    *out = new dsrw_graph{{host->doc.name, std::move(step.result)}};
    return DSRW_OK;
  });
}

dsrw_status dsrw_normalize(const dsrw_system* s, const dsrw_graph* start,
                           long fuel, const char* trim_roots, dsrw_graph** out,
                           size_t* steps) {
  if (s == nullptr) return bad_argument("system");
  if (start == nullptr) return bad_argument("start");
  if (out == nullptr) return bad_argument("out");
  *out = nullptr;
  dsrw::NormalizeStats stats;
  int rc = guarded([&] {
    dsrw::RewriteSystem sys = s->sys;
    if (fuel >= 0) sys.fuel = static_cast<std::size_t>(fuel);
    if (trim_roots != nullptr) sys.trim_roots = parse_id_list(trim_roots);
    try {
      dsrw::Graph result = dsrw::normalize(sys, start->doc.graph, &stats);
      *out = new dsrw_graph{{start->doc.name, std::move(result)}};
      return DSRW_OK;
    } catch (const dsrw::FuelExhaustedError& e) {
      *out = new dsrw_graph{{start->doc.name, e.last()}};
      throw;
    }
  });
  if (steps != nullptr) *steps = stats.steps;
  return rc;
}

void dsrw_string_free(char* s) { std::free(s); }

}  // extern "C"
