#include "weakbd.h"

#include <cstring>
#include <string>

#include "classes.hpp"
#include "cnf.hpp"
#include "generate.hpp"
#include "hitting_set.hpp"
#include "reductions.hpp"
#include "search.hpp"

using namespace weakbd;

struct wb_formula {
  Formula f;
};

struct wb_result {
  BackdoorResult r;
  std::vector<int> backdoor;      // cached arrays handed out by pointer
  std::vector<int> witness_lits;
  std::vector<int> model_lits;
};

struct wb_hs {
  HsInstance inst;
};

struct wb_graph {
  Graph g;
};

struct wb_reduction {
  ReductionOutput out;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    return fail(WB_ERR_PARSE, e.what());
  } catch (const ContractError& e) {
    return fail(WB_ERR_CONTRACT, e.what());
  } catch (const std::exception& e) {
    return fail(WB_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int* dup_ints(const std::vector<int>& v) {
  int* out = new int[v.size() ? v.size() : 1];
  std::memcpy(out, v.data(), v.size() * sizeof(int));
  return out;
}

bool class_ok(int cls) { return cls >= 0 && cls < WB_NUM_CLASSES; }

BaseClass to_class(int cls) {
  if (!class_ok(cls)) throw ContractError("unknown class id");
  return kAllClasses[(std::size_t)cls];
}

wb_result* make_result(BackdoorResult&& r) {
  auto* out = new wb_result{std::move(r), {}, {}, {}};
  out->backdoor = out->r.backdoor;
  out->witness_lits = out->r.witness.to_lits();
  if (out->r.model) out->model_lits = out->r.model->to_lits();
  return out;
}

}  // namespace

extern "C" {

const char* wb_version(void) { return "0.1.0"; }

const char* wb_last_error(void) { return g_last_error.c_str(); }

int wb_class_from_token(const char* token) {
  if (!token) return -1;
  auto cls = class_from_token(token);
  if (!cls) return -1;
  for (std::size_t i = 0; i < kAllClasses.size(); ++i)
    if (kAllClasses[i] == *cls) return (int)i;
  return -1;
}

const char* wb_class_token(int cls) {
  if (!class_ok(cls)) return nullptr;
  return class_token(kAllClasses[(std::size_t)cls]).data();
}

void wb_string_free(char* s) { delete[] s; }
void wb_ints_free(int* p) { delete[] p; }

int wb_formula_parse(const char* dimacs_text, wb_formula** out) {
  if (!dimacs_text || !out) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new wb_formula{parse_dimacs(dimacs_text)};
    return WB_OK;
  });
}

int wb_formula_write(const wb_formula* f, char** out_text) {
  if (!f || !out_text) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out_text = dup_string(write_dimacs(f->f));
    return WB_OK;
  });
}

void wb_formula_free(wb_formula* f) { delete f; }

int wb_formula_vars(const wb_formula* f) {
  return f ? (int)f->f.num_vars() : -1;
}

int wb_formula_clauses(const wb_formula* f) {
  return f ? (int)f->f.num_clauses() : -1;
}

int wb_formula_width(const wb_formula* f) {
  return f ? (int)f->f.width() : -1;
}

int wb_formula_member(const wb_formula* f, int cls, int* out_member) {
  if (!f || !out_member) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out_member = is_member(f->f, to_class(cls)) ? 1 : 0;
    return WB_OK;
  });
}

int wb_formula_classify_json(const wb_formula* f, char** out_json) {
  if (!f || !out_json) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out_json = dup_string(classify_json(f->f));
    return WB_OK;
  });
}

int wb_formula_solve(const wb_formula* f, int cls, int* out_sat,
                     int** out_model, int* out_len) {
  if (!f || !out_sat) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    auto model = solve_in_class(f->f, to_class(cls));
    *out_sat = model.has_value() ? 1 : 0;
    if (out_model && out_len) {
      if (model) {
        std::vector<int> lits = model->to_lits();
        *out_model = dup_ints(lits);
        *out_len = (int)lits.size();
      } else {
        *out_model = nullptr;
        *out_len = 0;
      }
    }
    return WB_OK;
  });
}

int wb_detect(const wb_formula* f, int cls, int k, int algo, double timeout_s,
              wb_result** out) {
  if (!f || !out) return fail(WB_ERR_INVALID, "null argument");
  if (k < 0) return fail(WB_ERR_INVALID, "budget must be non-negative");
  return guarded([&]() -> int {
    BaseClass bc = to_class(cls);
    int chosen = algo;
    if (chosen == WB_ALGO_AUTO) {
      if (bc == BaseClass::Horn)
        chosen = WB_ALGO_BRANCH;
      else if (bc == BaseClass::Krom)
        chosen = WB_ALGO_HS;
      else if (clause_defined(bc))
        chosen = WB_ALGO_GENERIC;
      else
        chosen = WB_ALGO_BRUTE;
    }
    if (chosen == WB_ALGO_BRANCH && bc != BaseClass::Horn)
      return fail(WB_ERR_INVALID, "algo 'branch' requires class horn");
    if (chosen == WB_ALGO_HS && bc != BaseClass::Krom)
      return fail(WB_ERR_INVALID, "algo 'hs' requires class krom");
    if (chosen == WB_ALGO_GENERIC && !clause_defined(bc))
      return fail(WB_ERR_INVALID,
                  "algo 'generic' requires a clause-defined class");
    SearchLimits limits = SearchLimits::with_timeout(timeout_s);
    try {
      BackdoorResult r;
      switch (chosen) {
        case WB_ALGO_BRANCH: r = detect_horn(f->f, k, limits); break;
        case WB_ALGO_HS: r = detect_krom(f->f, k, limits); break;
        case WB_ALGO_GENERIC: r = detect_generic(f->f, k, bc, limits); break;
        case WB_ALGO_BRUTE: r = detect_bruteforce(f->f, k, bc, limits); break;
        default: return fail(WB_ERR_INVALID, "unknown algorithm id");
      }
      *out = make_result(std::move(r));
      return WB_OK;
    } catch (const DetectTimeout& e) {
      BackdoorResult r;
      r.stats = e.partial;
      *out = make_result(std::move(r));
      return fail(WB_ERR_TIMEOUT, e.what());
    }
  });
}

int wb_result_found(const wb_result* r) { return r && r->r.found ? 1 : 0; }

int wb_result_backdoor(const wb_result* r, const int** out, int* out_len) {
  if (!r || !out || !out_len) return fail(WB_ERR_INVALID, "null argument");
  *out = r->backdoor.data();
  *out_len = (int)r->backdoor.size();
  return WB_OK;
}

int wb_result_witness(const wb_result* r, const int** out, int* out_len) {
  if (!r || !out || !out_len) return fail(WB_ERR_INVALID, "null argument");
  *out = r->witness_lits.data();
  *out_len = (int)r->witness_lits.size();
  return WB_OK;
}

int wb_result_model(const wb_result* r, const int** out, int* out_len) {
  if (!r || !out || !out_len) return fail(WB_ERR_INVALID, "null argument");
  *out = r->model_lits.data();
  *out_len = (int)r->model_lits.size();
  return WB_OK;
}

long long wb_result_nodes(const wb_result* r) { return r ? r->r.stats.nodes : -1; }
long long wb_result_leaves(const wb_result* r) {
  return r ? r->r.stats.leaves : -1;
}
int wb_result_max_depth(const wb_result* r) {
  return r ? r->r.stats.max_depth : -1;
}
double wb_result_elapsed(const wb_result* r) {
  return r ? r->r.stats.elapsed_s : -1.0;
}

int wb_result_json(const wb_result* r, char** out_json) {
  if (!r || !out_json) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out_json = dup_string(result_to_json(r->r));
    return WB_OK;
  });
}

void wb_result_free(wb_result* r) { delete r; }

int wb_verify_witness(const wb_formula* f, const int* witness, int len,
                      int cls, int k, int* out_ok) {
  if (!f || !out_ok || (len > 0 && !witness))
    return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    Assignment tau =
        Assignment::from_lits(std::vector<int>(witness, witness + len));
    *out_ok = verify_witness(f->f, tau.domain(), tau, to_class(cls), k) ? 1 : 0;
    return WB_OK;
  });
}

int wb_branching_factor(int a, int b, double* out_root) {
  if (!out_root) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out_root = branching_factor(a, b);
    return WB_OK;
  });
}

int wb_hs_parse(const char* text, wb_hs** out) {
  if (!text || !out) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new wb_hs{parse_hs(text)};
    return WB_OK;
  });
}

void wb_hs_free(wb_hs* h) { delete h; }

int wb_hs_elems(const wb_hs* h) { return h ? (int)h->inst.elements.size() : -1; }
int wb_hs_sets(const wb_hs* h) { return h ? (int)h->inst.sets.size() : -1; }

int wb_hs_solve3(const wb_hs* h, int k, int* out_found, int** out_set,
                 int* out_len, long long* out_nodes) {
  if (!h || !out_found) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    HsResult r = hs3_solve(h->inst, k);
    *out_found = r.found ? 1 : 0;
    if (out_nodes) *out_nodes = r.nodes;
    if (out_set && out_len) {
      *out_set = dup_ints(r.hitting_set);
      *out_len = (int)r.hitting_set.size();
    }
    return WB_OK;
  });
}

int wb_hs_verify(const wb_hs* h, const int* set, int len, int* out_ok) {
  if (!h || !out_ok || (len > 0 && !set))
    return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out_ok = hs_verify(h->inst, std::vector<int>(set, set + len)) ? 1 : 0;
    return WB_OK;
  });
}

int wb_hs_fold_singletons(const wb_hs* h, wb_hs** out, int** out_forced,
                          int* out_forced_len) {
  if (!h || !out) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    FoldedHs folded = fold_singletons(h->inst);
    *out = new wb_hs{std::move(folded.instance)};
    if (out_forced && out_forced_len) {
      *out_forced = dup_ints(folded.forced);
      *out_forced_len = (int)folded.forced.size();
    }
    return WB_OK;
  });
}

int wb_graph_parse(const char* text, wb_graph** out) {
  if (!text || !out) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new wb_graph{parse_dimacs_edge(text)};
    return WB_OK;
  });
}

void wb_graph_free(wb_graph* g) { delete g; }

int wb_graph_vertices(const wb_graph* g) {
  return g ? (int)g->g.vertices.size() : -1;
}
int wb_graph_edges(const wb_graph* g) { return g ? (int)g->g.edges.size() : -1; }

int wb_reduce_sat_to_chains(const wb_formula* f, wb_reduction** out) {
  if (!f || !out) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new wb_reduction{sat_to_chains(f->f)};
    return WB_OK;
  });
}

int wb_reduce_hs_to_match(const wb_hs* h, int k, wb_reduction** out) {
  if (!h || !out) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new wb_reduction{hs_to_match(h->inst, k)};
    return WB_OK;
  });
}

int wb_reduce_vc_to_zeroval(const wb_graph* g, int k, wb_reduction** out) {
  if (!g || !out) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new wb_reduction{vc_to_zeroval(g->g, k)};
    return WB_OK;
  });
}

int wb_reduction_formula(const wb_reduction* r, wb_formula** out) {
  if (!r || !out) return fail(WB_ERR_INVALID, "null argument");
  *out = new wb_formula{r->out.formula};
  return WB_OK;
}

int wb_reduction_k(const wb_reduction* r) { return r ? r->out.k : -1; }

int wb_reduction_sidecar_json(const wb_reduction* r, char** out_json) {
  if (!r || !out_json) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out_json = dup_string(sidecar_json(r->out));
    return WB_OK;
  });
}

void wb_reduction_free(wb_reduction* r) { delete r; }

int wb_generate(int n_vars, int n_clauses, int width, unsigned long long seed,
                wb_formula** out) {
  if (!out) return fail(WB_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new wb_formula{generate_random(n_vars, n_clauses, width, seed)};
    return WB_OK;
  });
}

}  // extern "C"
