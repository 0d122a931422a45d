// dsrw — check, match, rewrite and render graphs from the command line.
// A thin client of the C interface in dsrw.h; all engine work happens
// behind that boundary.
#include "dsrw.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const char* kUsage =
    "usage:\n"
    "  dsrw check [--dot] <graph-file>\n"
    "  dsrw dot <graph-file>\n"
    "  dsrw match --rules <file> --rule <name> <graph-file>\n"
    "  dsrw apply --rules <file> --rule <name> [--match K] [--dot] "
    "<graph-file>\n"
    "  dsrw redirect --from <id> --to <id> [--dot] <graph-file>\n"
    "  dsrw normalize --rules <file> [--fuel N] [--trim <id,...>] [--dot] "
    "<graph-file>\n";

int usage(const std::string& msg) {
  if (!msg.empty()) std::fprintf(stderr, "error: %s\n", msg.c_str());
  std::fputs(kUsage, stderr);
  return 2;
}

// Exit status for a failed library call: syntax problems count as input
// errors (2), everything else is a domain error (1).
int report(dsrw_status rc) {
  std::fprintf(stderr, "error: %s\n", dsrw_last_error());
  return rc == DSRW_E_SYNTAX ? 2 : 1;
}

bool read_file(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  *out = ss.str();
  return true;
}

struct Options {
  std::string rules;
  std::string rule;
  std::string from;
  std::string to;
  std::string trim;
  std::string file;
  long fuel = -1;
  long match = 0;
  bool dot = false;
  bool has_file = false;
  bool has_rules = false;
  bool has_rule = false;
  bool has_from = false;
  bool has_to = false;
  bool has_trim = false;
};

bool parse_long(const char* s, long* out) {
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v < 0) return false;
  *out = v;
  return true;
}

// Fills opts from argv[2..]; returns an error message ("" on success).
std::string parse_options(int argc, char** argv, Options* opts) {
  for (int i = 2; i < argc; ++i) {
    std::string arg = argv[i];
    auto value = [&]() -> const char* {
      if (i + 1 >= argc) return nullptr;
      return argv[++i];
    };
    if (arg == "--dot") {
      opts->dot = true;
    } else if (arg == "--rules") {
      const char* v = value();
      if (v == nullptr) return "--rules needs a file";
      opts->rules = v;
      opts->has_rules = true;
    } else if (arg == "--rule") {
      const char* v = value();
      if (v == nullptr) return "--rule needs a name";
      opts->rule = v;
      opts->has_rule = true;
    } else if (arg == "--from") {
      const char* v = value();
      if (v == nullptr) return "--from needs a node id";
      opts->from = v;
      opts->has_from = true;
    } else if (arg == "--to") {
      const char* v = value();
      if (v == nullptr) return "--to needs a node id";
      opts->to = v;
      opts->has_to = true;
    } else if (arg == "--trim") {
      const char* v = value();
      if (v == nullptr) return "--trim needs a comma-separated id list";
      opts->trim = v;
      opts->has_trim = true;
    } else if (arg == "--fuel") {
      const char* v = value();
      if (v == nullptr || !parse_long(v, &opts->fuel)) {
        return "--fuel needs a non-negative number";
      }
    } else if (arg == "--match") {
      const char* v = value();
      if (v == nullptr || !parse_long(v, &opts->match)) {
        return "--match needs a non-negative number";
      }
    } else if (!arg.empty() && arg[0] == '-') {
      return "unknown flag " + arg;
    } else if (opts->has_file) {
      return "more than one graph file given";
    } else {
      opts->file = arg;
      opts->has_file = true;
    }
  }
  if (!opts->has_file) return "no graph file given";
  return "";
}

// Loads and parses the positional graph file. Returns nonzero exit status
// on failure.
int load_graph(const Options& opts, dsrw_graph** out) {
  std::string text;
  if (!read_file(opts.file, &text)) {
    std::fprintf(stderr, "error: cannot read %s\n", opts.file.c_str());
    return 2;
  }
  dsrw_status rc = dsrw_graph_parse(text.c_str(), out);
  if (rc != DSRW_OK) return report(rc);
  return 0;
}

int load_system(const Options& opts, dsrw_system** out) {
  std::string text;
  if (!read_file(opts.rules, &text)) {
    std::fprintf(stderr, "error: cannot read %s\n", opts.rules.c_str());
    return 2;
  }
  dsrw_status rc = dsrw_system_parse(text.c_str(), out);
  if (rc != DSRW_OK) return report(rc);
  return 0;
}

// Prints the graph in the requested form; consumes nothing.
int print_graph(const dsrw_graph* g, bool dot) {
  char* text = nullptr;
  dsrw_status rc = dot ? dsrw_graph_dot(g, &text) : dsrw_graph_serialize(g, &text);
  if (rc != DSRW_OK) return report(rc);
  std::fputs(text, stdout);
  dsrw_string_free(text);
  return 0;
}

int cmd_check(const Options& opts) {
  dsrw_graph* g = nullptr;
  int status = load_graph(opts, &g);
  if (status != 0) return status;
  status = print_graph(g, opts.dot);
  dsrw_graph_free(g);
  return status;
}

int cmd_match(const Options& opts) {
  if (!opts.has_rules) return usage("match needs --rules");
  if (!opts.has_rule) return usage("match needs --rule");
  dsrw_system* sys = nullptr;
  int status = load_system(opts, &sys);
  if (status != 0) return status;
  dsrw_graph* g = nullptr;
  status = load_graph(opts, &g);
  if (status != 0) {
    dsrw_system_free(sys);
    return status;
  }
  char* text = nullptr;
  size_t count = 0;
  dsrw_status rc = dsrw_match(sys, opts.rule.c_str(), g, &text, &count);
  if (rc != DSRW_OK) {
    status = report(rc);
  } else {
    std::fputs(text, stdout);
    dsrw_string_free(text);
  }
  dsrw_graph_free(g);
  dsrw_system_free(sys);
  return status;
}

int cmd_apply(const Options& opts) {
  if (!opts.has_rules) return usage("apply needs --rules");
  if (!opts.has_rule) return usage("apply needs --rule");
  dsrw_system* sys = nullptr;
  int status = load_system(opts, &sys);
  if (status != 0) return status;
  dsrw_graph* g = nullptr;
  status = load_graph(opts, &g);
  if (status != 0) {
    dsrw_system_free(sys);
    return status;
  }
  dsrw_graph* result = nullptr;
  dsrw_status rc = dsrw_apply(sys, opts.rule.c_str(), g,
                              static_cast<size_t>(opts.match), &result);
  if (rc != DSRW_OK) {
    status = report(rc);
  } else {
    status = print_graph(result, opts.dot);
  }
  dsrw_graph_free(result);
  dsrw_graph_free(g);
  dsrw_system_free(sys);
  return status;
}

int cmd_redirect(const Options& opts) {
  if (!opts.has_from) return usage("redirect needs --from");
  if (!opts.has_to) return usage("redirect needs --to");
  dsrw_graph* g = nullptr;
  int status = load_graph(opts, &g);
  if (status != 0) return status;
  dsrw_graph* result = nullptr;
  dsrw_status rc =
      dsrw_redirect(g, opts.from.c_str(), opts.to.c_str(), &result);
  if (rc != DSRW_OK) {
    status = report(rc);
  } else {
    status = print_graph(result, opts.dot);
  }
  dsrw_graph_free(result);
  dsrw_graph_free(g);
  return status;
}

int cmd_normalize(const Options& opts) {
  if (!opts.has_rules) return usage("normalize needs --rules");
  dsrw_system* sys = nullptr;
  int status = load_system(opts, &sys);
  if (status != 0) return status;
  dsrw_graph* g = nullptr;
  status = load_graph(opts, &g);
  if (status != 0) {
    dsrw_system_free(sys);
    return status;
  }
  dsrw_graph* result = nullptr;
  dsrw_status rc =
      dsrw_normalize(sys, g, opts.fuel,
                     opts.has_trim ? opts.trim.c_str() : nullptr, &result,
                     nullptr);
  if (rc != DSRW_OK) {
    status = report(rc);
  } else {
    status = print_graph(result, opts.dot);
  }
  dsrw_graph_free(result);
  dsrw_graph_free(g);
  dsrw_system_free(sys);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) return usage("");
  std::string cmd = argv[1];
  Options opts;
  std::string err = parse_options(argc, argv, &opts);
  if (!err.empty()) return usage(err);

  if (cmd == "check") return cmd_check(opts);
  if (cmd == "dot") {
    Options with_dot = opts;
    with_dot.dot = true;
    return cmd_check(with_dot);
  }
  if (cmd == "match") return cmd_match(opts);
  if (cmd == "apply") return cmd_apply(opts);
  if (cmd == "redirect") return cmd_redirect(opts);
  if (cmd == "normalize") return cmd_normalize(opts);
  return usage("unknown command " + cmd);
}
