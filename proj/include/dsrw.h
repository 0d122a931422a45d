/* dsrw — double-pushout rewriting of ordered, partially labeled graphs.
 *
 * C interface over the engine. All objects are opaque handles; every
 * fallible call returns a status code and leaves a human-readable
 * description in dsrw_last_error() (thread-local). Strings returned
 * through char** out-parameters are malloc'd; release them with
 * dsrw_string_free.
 */
#ifndef DSRW_H
#define DSRW_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct dsrw_graph dsrw_graph;   /* a named graph document */
typedef struct dsrw_system dsrw_system; /* a parsed rule file */

/* Status codes. Zero is success. The values are stable; new codes are only
 * ever appended. */
enum {
  DSRW_OK = 0,
  DSRW_E_SYNTAX = 1,
  DSRW_E_DUPLICATE_NODE = 2,
  DSRW_E_UNKNOWN_NODE = 3,
  DSRW_E_ARITY_MISMATCH = 4,
  DSRW_E_INCONSISTENT_ARITY = 5,
  DSRW_E_UNLABELED_WITH_SUCCESSORS = 6,
  DSRW_E_NO_SUCH_NODE = 7,
  DSRW_E_NO_SUCH_EDGE = 8,
  DSRW_E_FRESH_ID_COLLISION = 9,
  DSRW_E_NOT_TOTAL = 10,
  DSRW_E_LABEL_NOT_PRESERVED = 11,
  DSRW_E_SUCCESSOR_NOT_PRESERVED = 12,
  DSRW_E_UNLABELED_IMAGE_OF_LABELED = 13,
  DSRW_E_DOMAIN_MISMATCH = 14,
  DSRW_E_INVALID_HOM = 15,
  DSRW_E_NOT_STRONGLY_LABELED = 16,
  DSRW_E_INVALID_SQUARE = 17,
  DSRW_E_RHO_NOT_HOM = 18,
  DSRW_E_UNLABELED_MAPPED_TO_LABELED = 19,
  DSRW_E_UNLABELED_MERGED_BY_RHO = 20,
  DSRW_E_BAD_REDIRECT_TARGET = 21,
  DSRW_E_MATCH_INVALID = 22,
  DSRW_E_DUPLICATE_RULE = 23,
  DSRW_E_NO_SUCH_RULE = 24,
  DSRW_E_NO_MATCH = 25,
  DSRW_E_FUEL_EXHAUSTED = 26,
  DSRW_E_INTERNAL = 27
};

typedef int dsrw_status;

/* Description of the most recent failure on this thread, formatted
 * "Name: message" with "line L, column C: " inserted for positioned parse
 * errors. Valid until the next failing call on the same thread. */
const char* dsrw_last_error(void);

/* Machine-readable name for a status code, e.g. "ArityMismatch". */
const char* dsrw_status_name(dsrw_status status);

/* --- graphs --------------------------------------------------------------- */

/* Parse a `graph <name> { ... }` document. */
dsrw_status dsrw_graph_parse(const char* text, dsrw_graph** out);

/* Canonical text form; parse(serialize(g)) == g. */
dsrw_status dsrw_graph_serialize(const dsrw_graph* g, char** out);

/* Graphviz form, deterministic (sorted) so equal graphs give equal bytes. */
dsrw_status dsrw_graph_dot(const dsrw_graph* g, char** out);

const char* dsrw_graph_name(const dsrw_graph* g);
size_t dsrw_graph_node_count(const dsrw_graph* g);

void dsrw_graph_free(dsrw_graph* g);

/* --- rule systems --------------------------------------------------------- */

/* Parse a rule file: `rule <name> { lhs{...} disconnect{...} rhs{...}
 * rho{...} redirect{...} }` blocks plus optional `fuel` / `trim`
 * directives. Every rule is validated. */
dsrw_status dsrw_system_parse(const char* text, dsrw_system** out);

size_t dsrw_system_rule_count(const dsrw_system* s);

/* Name of rule number i (in file order), or NULL if out of range. The
 * string lives as long as the system. */
const char* dsrw_system_rule_name(const dsrw_system* s, size_t i);

void dsrw_system_free(dsrw_system* s);

/* --- rewriting ------------------------------------------------------------ */

/* Count and render the matches of the named rule in the host, in the
 * engine's deterministic order. The text is one block of "l -> u" lines per
 * match, blocks separated by blank lines. Either out-parameter may be NULL
 * if not wanted. */
dsrw_status dsrw_match(const dsrw_system* s, const char* rule,
                       const dsrw_graph* host, char** out, size_t* count);

/* One rewrite step of the named rule at match number `index` (as ordered by
 * dsrw_match). DSRW_E_NO_MATCH if the rule has no such match. */
dsrw_status dsrw_apply(const dsrw_system* s, const char* rule,
                       const dsrw_graph* host, size_t index, dsrw_graph** out);

/* One global redirection step: every edge into `from` is redirected to
 * `to`. Both nodes must exist; redirecting a node onto itself is a no-op. */
dsrw_status dsrw_redirect(const dsrw_graph* host, const char* from,
                          const char* to, dsrw_graph** out);

/* Rewrite to normal form: apply the first matching rule at its first match
 * until nothing matches. fuel < 0 keeps the system's budget; trim_roots
 * NULL keeps the system's roots (a comma-separated id list overrides them,
 * and the roots follow the redirections as rewriting proceeds). On
 * DSRW_E_FUEL_EXHAUSTED *out still receives the last graph reached. *steps
 * (optional) receives the number of steps performed. */
dsrw_status dsrw_normalize(const dsrw_system* s, const dsrw_graph* start,
                           long fuel, const char* trim_roots, dsrw_graph** out,
                           size_t* steps);

/* Release a string returned by any dsrw_* call. */
void dsrw_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
