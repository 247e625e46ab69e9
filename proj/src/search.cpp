#include "search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hitting_set.hpp"
#include "json.hpp"

namespace weakbd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int clamp_budget(const Formula& f, int k) {
  if (k < 0) throw ContractError("budget must be non-negative");
  return std::min<long long>(k, (long long)f.num_vars());
}

void fill_success(BackdoorResult& res, const Formula& f, const Assignment& tau,
                  const Assignment& reduct_model) {
  res.found = true;
  res.backdoor = tau.domain();
  res.witness = tau;
  Assignment model = tau;
  model.extend(reduct_model);
  for (int v : f.variables())
    if (!model.contains(v)) model.bind(v, false);
  res.model = std::move(model);
}

void canonicalize(std::vector<Branch>& branches) {
  for (Branch& b : branches) std::sort(b.begin(), b.end());
  std::sort(branches.begin(), branches.end(),
            [](const Branch& a, const Branch& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  branches.erase(std::unique(branches.begin(), branches.end()),
                 branches.end());
}

// nullopt when the branch satisfies the clause, else the reduced clause
std::optional<Clause> clause_under(const Clause& c, const Branch& b) {
  std::vector<Lit> kept;
  for (const Lit& l : c) {
    auto it = std::find_if(b.begin(), b.end(),
                           [&](const auto& p) { return p.first == l.var(); });
    if (it == b.end())
      kept.push_back(l);
    else if (it->second == l.positive())
      return std::nullopt;
  }
  return Clause(std::move(kept));
}

std::vector<int> positive_vars(const Clause& c) {
  std::vector<int> out;
  for (const Lit& l : c)
    if (l.positive()) out.push_back(l.var());
  return out;
}

int negative_var(const Clause& c) {
  for (const Lit& l : c)
    if (!l.positive()) return l.var();
  throw ContractError("clause has no negative literal");
}

int other_positive(const Clause& c, int not_this) {
  for (const Lit& l : c)
    if (l.positive() && l.var() != not_this) return l.var();
  throw ContractError("clause has no other positive literal");
}

std::vector<int> shared_variables(const Clause& c, const Clause& d) {
  std::vector<int> cv = c.vars(), dv = d.vars(), out;
  std::set_intersection(cv.begin(), cv.end(), dv.begin(), dv.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace

HornClauseKind classify_horn_clause(const Clause& c) {
  int pos = c.positive_count();
  if (pos <= 1) return HornClauseKind::HornOk;
  if (pos == (int)c.size()) return HornClauseKind::AllPositive;
  if (pos == 2 && c.size() == 3) return HornClauseKind::TwoPosOneNeg;
  throw ContractError("clause of width > 3 in Horn classification");
}

std::vector<Branch> r1_branches(const Clause& c) {
  if (classify_horn_clause(c) != HornClauseKind::AllPositive)
    throw ContractError("R1 applies to all-positive clauses only");
  std::vector<int> v = c.vars();
  std::vector<Branch> out;
  if (v.size() == 3) {
    int x = v[0], y = v[1], z = v[2];
    out = {{{x, true}},
           {{y, true}},
           {{z, true}},
           {{x, false}, {y, false}},
           {{x, false}, {z, false}},
           {{y, false}, {z, false}}};
  } else if (v.size() == 2) {
    int x = v[0], y = v[1];
    out = {{{x, false}}, {{x, true}}, {{y, false}}, {{y, true}}};
  } else {
    throw ContractError("all-positive clause of unexpected width");
  }
  canonicalize(out);
  return out;
}

std::vector<Branch> r2_branches(const Clause& c_in, const Clause& d_in) {
  if (classify_horn_clause(c_in) != HornClauseKind::TwoPosOneNeg ||
      classify_horn_clause(d_in) != HornClauseKind::TwoPosOneNeg)
    throw ContractError("R2 applies to two-positive-one-negative clauses");
  if (c_in == d_in) throw ContractError("R2 needs two distinct clauses");
  std::vector<int> shared = shared_variables(c_in, d_in);
  if (shared.empty())
    throw ContractError("R2 needs clauses sharing a variable");

  const Clause* c = &c_in;
  const Clause* d = &d_in;
  std::vector<Branch> out;
  auto add1 = [&](int v, bool b) { out.push_back({{v, b}}); };
  auto add2 = [&](int v1, bool b1, int v2, bool b2) {
    out.push_back({{v1, b1}, {v2, b2}});
  };
  const bool F = false, T = true;

  if (shared.size() == 1) {
    int x = shared[0];
    bool in_c = *c->polarity(x), in_d = *d->polarity(x);
    if (in_c && in_d) {
      // x positive in both: c = {x,y,~z}, d = {x,y2,~z2}
      int y = other_positive(*c, x), z = negative_var(*c);
      int y2 = other_positive(*d, x), z2 = negative_var(*d);
      add1(x, F);
      add1(x, T);
      for (bool by : {F, T})
        for (bool by2 : {F, T}) add2(y, by, y2, by2);
      for (bool by : {F, T}) add2(y, by, z2, F);
      for (bool by2 : {F, T}) add2(z, F, y2, by2);
      add2(z, F, z2, F);
    } else if (!in_c && !in_d) {
      // x negative in both: c = {~x,y,z}, d = {~x,y2,z2}
      std::vector<int> pc = positive_vars(*c), pd = positive_vars(*d);
      add1(x, F);
      for (int u : pc)
        for (int u2 : pd)
          for (bool bu : {F, T})
            for (bool bu2 : {F, T}) add2(u, bu, u2, bu2);
    } else {
      // mixed: orient so x is negative in c and positive in d
      if (in_c) std::swap(c, d);
      std::vector<int> pc = positive_vars(*c);
      int y2 = other_positive(*d, x), z2 = negative_var(*d);
      add1(x, F);
      for (int u : pc)
        for (bool bu : {F, T}) add2(x, T, u, bu);
      for (int u : pc)
        for (bool bu : {F, T}) {
          for (bool b2 : {F, T}) add2(u, bu, y2, b2);
          add2(u, bu, z2, F);
        }
    }
  } else if (shared.size() == 2) {
    int s1 = shared[0], s2 = shared[1];
    bool p1c = *c->polarity(s1), p1d = *d->polarity(s1);
    bool p2c = *c->polarity(s2), p2d = *d->polarity(s2);
    bool pp1 = p1c && p1d, pp2 = p2c && p2d;
    bool nn1 = !p1c && !p1d, nn2 = !p2c && !p2d;
    if (pp1 && pp2) {
      // both shared positive in both: c = {s1,s2,~z}, d = {s1,s2,~z2}
      add1(s1, F);
      add1(s1, T);
      add1(s2, F);
      add1(s2, T);
      add2(negative_var(*c), F, negative_var(*d), F);
    } else if ((pp1 && nn2) || (pp2 && nn1)) {
      // c = {x,~y,z}, d = {x,~y,z2}
      int x = pp1 ? s1 : s2, y = pp1 ? s2 : s1;
      int z = other_positive(*c, x), z2 = other_positive(*d, x);
      add1(x, F);
      add1(x, T);
      add1(y, F);
      for (bool bz : {F, T})
        for (bool bz2 : {F, T}) add2(z, bz, z2, bz2);
    } else if (pp1 || pp2) {
      // one shared positive in both, the other mixed; orient the mixed
      // variable positive in c: c = {x,y,~z}, d = {x,~y,z2}
      int x = pp1 ? s1 : s2, y = pp1 ? s2 : s1;
      if (!*c->polarity(y)) std::swap(c, d);
      int z = negative_var(*c), z2 = other_positive(*d, x);
      add1(x, F);
      add1(x, T);
      add1(y, F);
      add2(y, T, z2, F);
      add2(y, T, z2, T);
      add2(z, F, z2, F);
      add2(z, F, z2, T);
    } else {
      // both shared mixed-sign: c = {x,~y,z}, d = {~x,y,z2}
      int x = p1c ? s1 : s2, y = p1c ? s2 : s1;
      int z = other_positive(*c, x), z2 = other_positive(*d, y);
      add1(x, F);
      add1(y, F);
      add2(x, T, y, T);
      add2(x, T, z2, F);
      add2(x, T, z2, T);
      add2(y, T, z, F);
      add2(y, T, z, T);
      for (bool bz : {F, T})
        for (bool bz2 : {F, T}) add2(z, bz, z2, bz2);
    }
  } else {
    // all three variables shared; the clauses differ in their negative
    // variable: c = {x,y,~z}, d = {x,~y,z}
    int x = -1, y = -1, z = -1;
    for (int v : shared) {
      bool pc = *c->polarity(v), pd = *d->polarity(v);
      if (pc && pd)
        x = v;
      else if (pc && !pd)
        y = v;
      else if (!pc && pd)
        z = v;
    }
    if (x < 0 || y < 0 || z < 0)
      throw ContractError("malformed fully-shared clause pair");
    add1(x, F);
    add1(x, T);
    add1(y, F);
    add1(z, F);
    add2(y, T, z, T);
  }
  canonicalize(out);
  return out;
}

std::vector<Branch> r3_branches(const Clause& c) {
  if (classify_horn_clause(c) != HornClauseKind::TwoPosOneNeg)
    throw ContractError("R3 applies to two-positive-one-negative clauses");
  int x = positive_vars(c).front();
  return {{{x, false}}, {{x, true}}};
}

std::vector<Branch> minimal_class_assignments(const Clause& c, BaseClass cls) {
  if (!clause_defined(cls))
    throw ContractError("minimal assignments need a clause-defined class");
  std::vector<int> vars = c.vars();
  std::size_t n = vars.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  std::vector<Branch> passing;
  for (std::size_t code = 0; code < total; ++code) {
    Branch b;
    std::size_t rest = code;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t digit = rest % 3;
      rest /= 3;
      if (digit == 1) b.push_back({vars[i], false});
      if (digit == 2) b.push_back({vars[i], true});
    }
    auto red = clause_under(c, b);
    if (!red || clause_in_class(*red, cls)) passing.push_back(std::move(b));
  }
  auto subset_of = [](const Branch& small, const Branch& big) {
    return std::all_of(small.begin(), small.end(), [&](const auto& p) {
      return std::find(big.begin(), big.end(), p) != big.end();
    });
  };
  std::vector<Branch> minimal;
  for (const Branch& b : passing) {
    bool is_min = std::none_of(passing.begin(), passing.end(),
                               [&](const Branch& other) {
                                 return other.size() < b.size() &&
                                        subset_of(other, b);
                               });
    if (is_min) minimal.push_back(b);
  }
  canonicalize(minimal);
  return minimal;
}

std::vector<RecurrencePair> implemented_recurrences() {
  return {
      {3, 3},   // R1, ternary all-positive clause
      {4, 0},   // R1, binary all-positive clause
      {2, 9},   // R2, one shared variable, positive in both
      {1, 16},  // R2, one shared variable, negative in both
      {1, 16},  // R2, one shared variable, mixed signs
      {4, 1},   // R2, two shared variables, both positive in both
      {3, 4},   // R2, two shared variables, positive/positive + negative/negative
      {3, 4},   // R2, two shared variables, positive/positive + mixed
      {2, 9},   // R2, two shared variables, both mixed
      {4, 1},   // R2, three shared variables
      {2, 0},   // R3
  };
}

double branching_factor(int a, int b) {
  if (a < 0 || b < 0 || a + b < 1)
    throw ContractError("recurrence needs a,b >= 0 and a+b >= 1");
  return (a + std::sqrt((double)a * a + 4.0 * b)) / 2.0;
}

namespace {

struct TreeSearch {
  const Formula& f;
  BaseClass cls;
  bool horn_rules;
  const SearchLimits& limits;
  SearchStats st;
  BackdoorResult result;

  void note_node(std::size_t depth) {
    ++st.nodes;
    st.max_depth = std::max(st.max_depth, (int)depth);
    if (limits.deadline && st.nodes % limits.check_interval == 0 &&
        limits.expired())
      throw TimeoutError(st.nodes);
  }

  bool leaf(const Assignment& tau, const Formula& red) {
    ++st.leaves;
    auto m = solve_in_class(red, cls);
    if (!m) return false;
    fill_success(result, f, tau, *m);
    return true;
  }

  bool recurse(const Assignment& tau, int budget) {
    note_node(tau.size());
    Formula red = reduct(f, tau);
    std::vector<Branch> branches;
    if (horn_rules) {
      const Clause* first_all_pos = nullptr;
      std::vector<const Clause*> mixed;
      for (const Clause& c : red) {
        switch (classify_horn_clause(c)) {
          case HornClauseKind::HornOk:
            break;
          case HornClauseKind::AllPositive:
            if (!first_all_pos) first_all_pos = &c;
            break;
          case HornClauseKind::TwoPosOneNeg:
            mixed.push_back(&c);
            break;
        }
      }
      if (!first_all_pos && mixed.empty()) return leaf(tau, red);
      if (budget == 0) return false;
      if (first_all_pos) {
        branches = r1_branches(*first_all_pos);
      } else {
        const Clause* a = nullptr;
        const Clause* b = nullptr;
        for (std::size_t i = 0; i < mixed.size() && !a; ++i)
          for (std::size_t j = i + 1; j < mixed.size() && !a; ++j)
            if (!shared_variables(*mixed[i], *mixed[j]).empty()) {
              a = mixed[i];
              b = mixed[j];
            }
        branches = a ? r2_branches(*a, *b) : r3_branches(*mixed.front());
      }
    } else {
      std::vector<Clause> bad = nonmember_clauses(red, cls);
      if (bad.empty()) return leaf(tau, red);
      if (budget == 0) return false;
      branches = minimal_class_assignments(bad.front(), cls);
    }
    for (const Branch& br : branches) {
      if ((int)br.size() > budget) continue;
      Assignment next = tau;
      for (auto [v, val] : br) next.bind(v, val);
      if (recurse(next, budget - (int)br.size())) return true;
    }
    return false;
  }
};

BackdoorResult run_tree_search(const Formula& f, int k, BaseClass cls,
                               bool horn_rules, const SearchLimits& limits) {
  if (f.width() > 3)
    throw ContractError("branching detection requires width <= 3");
  auto t0 = Clock::now();
  TreeSearch search{f, cls, horn_rules, limits};
  try {
    search.recurse(Assignment{}, clamp_budget(f, k));
  } catch (TimeoutError&) {
    search.st.elapsed_s = seconds_since(t0);
    search.result.stats = search.st;
    throw DetectTimeout(search.result.stats);
  }
  search.st.elapsed_s = seconds_since(t0);
  search.result.stats = search.st;
  return search.result;
}

}  // namespace

BackdoorResult detect_horn(const Formula& f, int k,
                           const SearchLimits& limits) {
  return run_tree_search(f, k, BaseClass::Horn, true, limits);
}

BackdoorResult detect_generic(const Formula& f, int k, BaseClass cls,
                              const SearchLimits& limits) {
  if (!clause_defined(cls))
    throw ContractError("generic detection needs a clause-defined class");
  return run_tree_search(f, k, cls, false, limits);
}

BackdoorResult detect_krom(const Formula& f, int k,
                           const SearchLimits& limits) {
  if (f.width() > 3) throw ContractError("detect_krom requires width <= 3");
  auto t0 = Clock::now();
  int budget = clamp_budget(f, k);
  BackdoorResult res;

  std::vector<std::vector<int>> sets;
  for (const Clause& c : f)
    if (c.size() == 3) sets.push_back(c.vars());
  HsInstance inst = HsInstance::make(f.variables(), std::move(sets));
  HsResult hs;
  try {
    hs = hs3_solve(inst, budget, limits);
  } catch (TimeoutError& e) {
    res.stats.hs_calls = 1;
    res.stats.hs_nodes = e.nodes_so_far;
    res.stats.nodes = e.nodes_so_far;
    res.stats.elapsed_s = seconds_since(t0);
    throw DetectTimeout(res.stats);
  }
  res.stats.hs_calls = 1;
  res.stats.hs_nodes = hs.nodes;
  res.stats.nodes = hs.nodes;
  if (hs.found) {
    const std::vector<int>& h = hs.hitting_set;
    res.stats.max_depth = (int)h.size();
    for (unsigned long mask = 0; mask < (1ul << h.size()); ++mask) {
      ++res.stats.nodes;
      ++res.stats.leaves;
      if (limits.deadline && res.stats.leaves % limits.check_interval == 0 &&
          limits.expired()) {
        res.stats.elapsed_s = seconds_since(t0);
        throw DetectTimeout(res.stats);
      }
      Assignment tau;
      for (std::size_t i = 0; i < h.size(); ++i)
        tau.bind(h[i], (mask >> i) & 1u);
      Formula red = reduct(f, tau);
      if (auto m = solve_in_class(red, BaseClass::Krom)) {
        fill_success(res, f, tau, *m);
        break;
      }
    }
  }
  res.stats.elapsed_s = seconds_since(t0);
  return res;
}

BackdoorResult detect_bruteforce(const Formula& f, int k, BaseClass cls,
                                 const SearchLimits& limits) {
  auto t0 = Clock::now();
  int budget = clamp_budget(f, k);
  const std::vector<int>& vars = f.variables();
  BackdoorResult res;
  for (int s = 0; s <= budget; ++s) {
    // subsets of size s in lexicographic index order
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      ++res.stats.nodes;
      res.stats.max_depth = std::max(res.stats.max_depth, s);
      for (unsigned long mask = 0; mask < (1ul << s); ++mask) {
        ++res.stats.leaves;
        if (limits.deadline && res.stats.leaves % limits.check_interval == 0 &&
            limits.expired()) {
          res.stats.elapsed_s = seconds_since(t0);
          throw DetectTimeout(res.stats);
        }
        Assignment tau;
        for (int i = 0; i < s; ++i)
          tau.bind(vars[(std::size_t)idx[i]], (mask >> i) & 1u);
        Formula red = reduct(f, tau);
        if (!is_member(red, cls)) continue;
        if (auto m = solve_in_class(red, cls)) {
          fill_success(res, f, tau, *m);
          res.stats.elapsed_s = seconds_since(t0);
          return res;
        }
      }
      // next combination
      int i = s - 1;
      while (i >= 0 && idx[i] == (int)vars.size() - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  res.stats.elapsed_s = seconds_since(t0);
  return res;
}

bool verify_witness(const Formula& f, const std::vector<int>& backdoor,
                    const Assignment& witness, BaseClass cls, int k) {
  std::vector<int> sorted = backdoor;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() != backdoor.size()) return false;
  if ((int)sorted.size() > k) return false;
  if (witness.domain() != sorted) return false;
  for (int v : sorted)
    if (!f.has_var(v)) return false;
  Formula red = reduct(f, witness);
  if (!is_member(red, cls)) return false;
  return solve_in_class(red, cls).has_value();
}

std::string result_to_json(const BackdoorResult& r) {
  nlohmann::json out;
  out["found"] = r.found;
  out["backdoor"] = r.backdoor;
  nlohmann::json wit = nlohmann::json::object();
  for (auto [var, val] : r.witness.bindings())
    wit[std::to_string(var)] = val ? 1 : 0;
  out["witness"] = std::move(wit);
  if (r.found && r.model) {
    nlohmann::json mod = nlohmann::json::object();
    for (auto [var, val] : r.model->bindings())
      mod[std::to_string(var)] = val ? 1 : 0;
    out["model"] = std::move(mod);
  }
  out["stats"] = {{"nodes", r.stats.nodes},
                  {"leaves", r.stats.leaves},
                  {"max_depth", r.stats.max_depth},
                  {"elapsed_s", r.stats.elapsed_s}};
  return out.dump();
}

}  // namespace weakbd
