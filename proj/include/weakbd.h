/* weakbd - weak backdoor set detection for CNF formulas.
 *
 * C interface to the weakbd core. All objects are opaque handles created
 * and destroyed through this API; every fallible call returns a wb_status
 * code and reports details through wb_last_error() (thread-local).
 *
 * Conventions:
 *   - Variables are positive integers (DIMACS ids).
 *   - Assignments and models are arrays of signed literals: +v means
 *     variable v is true, -v means v is false.
 *   - Arrays returned through `const int**` stay owned by the handle they
 *     came from and are valid until that handle is freed.
 *   - Strings returned through `char**` are heap-allocated; release them
 *     with wb_string_free().
 */

#ifndef WEAKBD_H
#define WEAKBD_H

#ifdef __cplusplus
extern "C" {
#endif

/* status codes */
enum {
  WB_OK = 0,
  WB_ERR_PARSE = 1,    /* malformed input text */
  WB_ERR_CONTRACT = 2, /* operation precondition violated */
  WB_ERR_TIMEOUT = 3,  /* search deadline exceeded */
  WB_ERR_INVALID = 4,  /* bad argument (null handle, unknown enum, ...) */
  WB_ERR_INTERNAL = 5
};

/* base classes */
enum {
  WB_HORN = 0,
  WB_ANTIHORN = 1,
  WB_KROM = 2,
  WB_ZEROVAL = 3,
  WB_ONEVAL = 4,
  WB_FOREST = 5,
  WB_MATCH = 6,
  WB_CHAINS = 7,
  WB_NUM_CLASSES = 8
};

/* detection algorithms */
enum {
  WB_ALGO_AUTO = 0,
  WB_ALGO_BRANCH = 1,  /* bounded search tree; Horn only */
  WB_ALGO_HS = 2,      /* hitting-set based; Krom only */
  WB_ALGO_GENERIC = 3, /* clause-defined classes */
  WB_ALGO_BRUTE = 4    /* exhaustive; any class */
};

typedef struct wb_formula wb_formula;
typedef struct wb_result wb_result;
typedef struct wb_hs wb_hs;
typedef struct wb_graph wb_graph;
typedef struct wb_reduction wb_reduction;

const char* wb_version(void);
/* Message for the last failing call on this thread; empty if none. */
const char* wb_last_error(void);

/* Class id <-> CLI token ("horn", "antihorn", "krom", "0val", "1val",
 * "forest", "match", "chains"). wb_class_from_token returns -1 if unknown. */
int wb_class_from_token(const char* token);
const char* wb_class_token(int cls);

void wb_string_free(char* s);
void wb_ints_free(int* p);

/* ---- formulas ---- */

int wb_formula_parse(const char* dimacs_text, wb_formula** out);
int wb_formula_write(const wb_formula* f, char** out_text);
void wb_formula_free(wb_formula* f);
int wb_formula_vars(const wb_formula* f);
int wb_formula_clauses(const wb_formula* f);
int wb_formula_width(const wb_formula* f);

int wb_formula_member(const wb_formula* f, int cls, int* out_member);
/* Membership report over all classes plus certificates, as a JSON object. */
int wb_formula_classify_json(const wb_formula* f, char** out_json);
/* Polynomial-time satisfiability inside a class the formula belongs to.
 * On success *out_sat is 0/1; when sat, out_model and out_len receive a
 * total model as signed literals (free with wb_ints_free). */
int wb_formula_solve(const wb_formula* f, int cls, int* out_sat,
                     int** out_model, int* out_len);

/* ---- backdoor detection ---- */

/* timeout_s <= 0 means no deadline. On WB_ERR_TIMEOUT *out is still set and
 * carries the partial statistics. */
int wb_detect(const wb_formula* f, int cls, int k, int algo, double timeout_s,
              wb_result** out);
int wb_result_found(const wb_result* r);
int wb_result_backdoor(const wb_result* r, const int** out, int* out_len);
int wb_result_witness(const wb_result* r, const int** out, int* out_len);
int wb_result_model(const wb_result* r, const int** out, int* out_len);
long long wb_result_nodes(const wb_result* r);
long long wb_result_leaves(const wb_result* r);
int wb_result_max_depth(const wb_result* r);
double wb_result_elapsed(const wb_result* r);
int wb_result_json(const wb_result* r, char** out_json);
void wb_result_free(wb_result* r);

/* witness given as signed literals over the claimed backdoor set */
int wb_verify_witness(const wb_formula* f, const int* witness, int len,
                      int cls, int k, int* out_ok);

/* Positive root of x^2 = a*x + b. */
int wb_branching_factor(int a, int b, double* out_root);

/* ---- hitting set ---- */

/* Text format: "p hs <nelems> <nsets>" then one set per line. */
int wb_hs_parse(const char* text, wb_hs** out);
void wb_hs_free(wb_hs* h);
int wb_hs_elems(const wb_hs* h);
int wb_hs_sets(const wb_hs* h);
int wb_hs_solve3(const wb_hs* h, int k, int* out_found, int** out_set,
                 int* out_len, long long* out_nodes);
int wb_hs_verify(const wb_hs* h, const int* set, int len, int* out_ok);
/* Remove singleton sets (their elements must be in any hitting set) and
 * every set they hit. out_forced and out_forced_len report the removed
 * elements (free with wb_ints_free); lower the budget by that count. */
int wb_hs_fold_singletons(const wb_hs* h, wb_hs** out, int** out_forced,
                          int* out_forced_len);

/* ---- graphs (DIMACS edge format) ---- */

int wb_graph_parse(const char* text, wb_graph** out);
void wb_graph_free(wb_graph* g);
int wb_graph_vertices(const wb_graph* g);
int wb_graph_edges(const wb_graph* g);

/* ---- reductions ---- */

int wb_reduce_sat_to_chains(const wb_formula* f, wb_reduction** out);
int wb_reduce_hs_to_match(const wb_hs* h, int k, wb_reduction** out);
int wb_reduce_vc_to_zeroval(const wb_graph* g, int k, wb_reduction** out);
int wb_reduction_formula(const wb_reduction* r, wb_formula** out);
int wb_reduction_k(const wb_reduction* r);
int wb_reduction_sidecar_json(const wb_reduction* r, char** out_json);
void wb_reduction_free(wb_reduction* r);

/* ---- instance generation ---- */

/* n_clauses distinct clauses of exactly `width` literals over n_vars
 * variables, sampled uniformly without replacement; deterministic per seed. */
int wb_generate(int n_vars, int n_clauses, int width, unsigned long long seed,
                wb_formula** out);

#ifdef __cplusplus
}
#endif

#endif /* WEAKBD_H */
