#include "classes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "json.hpp"

namespace weakbd {

std::string_view class_token(BaseClass cls) {
  switch (cls) {
    case BaseClass::Horn: return "horn";
    case BaseClass::AntiHorn: return "antihorn";
    case BaseClass::Krom: return "krom";
    case BaseClass::ZeroVal: return "0val";
    case BaseClass::OneVal: return "1val";
    case BaseClass::Forest: return "forest";
    case BaseClass::Match: return "match";
    case BaseClass::Chains: return "chains";
  }
  throw ContractError("unknown class id");
}

std::optional<BaseClass> class_from_token(std::string_view token) {
  for (BaseClass cls : kAllClasses)
    if (class_token(cls) == token) return cls;
  return std::nullopt;
}

bool clause_defined(BaseClass cls) {
  switch (cls) {
    case BaseClass::Horn:
    case BaseClass::AntiHorn:
    case BaseClass::Krom:
    case BaseClass::ZeroVal:
    case BaseClass::OneVal:
      return true;
    default:
      return false;
  }
}

bool clause_in_class(const Clause& c, BaseClass cls) {
  switch (cls) {
    case BaseClass::Horn: return c.positive_count() <= 1;
    case BaseClass::AntiHorn: return c.negative_count() <= 1;
    case BaseClass::Krom: return c.size() <= 2;
    case BaseClass::ZeroVal: return c.negative_count() >= 1;
    case BaseClass::OneVal: return c.positive_count() >= 1;
    default:
      throw ContractError("class " + std::string(class_token(cls)) +
                          " is not clause-defined");
  }
}

namespace {

// Kuhn augmenting paths, clauses on the left. Deterministic: clauses in
// canonical order, variables ascending within each clause.
std::optional<MatchingCertificate> clause_matching(const Formula& f) {
  const std::vector<int>& vars = f.variables();
  auto var_index = [&](int v) {
    return (std::size_t)(std::lower_bound(vars.begin(), vars.end(), v) -
                         vars.begin());
  };
  std::vector<int> match_of_var(vars.size(), -1);  // var index -> clause index
  std::vector<char> visited(vars.size(), 0);
  std::function<bool(std::size_t)> augment = [&](std::size_t ci) {
    for (int v : f[ci].vars()) {
      std::size_t vi = var_index(v);
      if (visited[vi]) continue;
      visited[vi] = 1;
      if (match_of_var[vi] < 0 || augment((std::size_t)match_of_var[vi])) {
        match_of_var[vi] = (int)ci;
        return true;
      }
    }
    return false;
  };
  for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
    if (f[ci].empty()) return std::nullopt;
    std::fill(visited.begin(), visited.end(), 0);
    if (!augment(ci)) return std::nullopt;
  }
  MatchingCertificate cert;
  for (std::size_t vi = 0; vi < vars.size(); ++vi)
    if (match_of_var[vi] >= 0)
      cert.clause_to_var[(std::size_t)match_of_var[vi]] = vars[vi];
  return cert;
}

std::optional<ChainDecomposition> chain_decomposition(const Formula& f) {
  if (f.width() > 2 || f.has_empty_clause()) return std::nullopt;

  // components of variables connected through shared clauses
  const std::vector<int>& vars = f.variables();
  std::map<int, int> parent;
  for (int v : vars) parent[v] = v;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Clause& c : f) {
    auto vs = c.vars();
    for (std::size_t i = 1; i < vs.size(); ++i) {
      int a = find(vs[0]), b = find(vs[i]);
      if (a != b) parent[a] = b;
    }
  }
  std::map<int, std::vector<std::size_t>> groups;  // root -> clause indices
  for (std::size_t ci = 0; ci < f.num_clauses(); ++ci)
    groups[find(f[ci].vars().front())].push_back(ci);

  ChainDecomposition deco;
  std::vector<std::pair<std::size_t, std::vector<Clause>>> ordered;
  for (auto& [root, cls] : groups) {
    std::optional<std::pair<int, Lit>> pos_unit, neg_unit;  // (var, lit)
    std::map<int, int> next;  // implication edge tail -> head
    std::map<int, int> indeg, outdeg;
    std::vector<int> comp_vars;
    std::map<Lit, std::size_t> unit_clause;
    std::map<std::pair<int, int>, std::size_t> edge_clause;
    for (std::size_t ci : cls)
      for (int v : f[ci].vars()) comp_vars.push_back(v);
    std::sort(comp_vars.begin(), comp_vars.end());
    comp_vars.erase(std::unique(comp_vars.begin(), comp_vars.end()),
                    comp_vars.end());
    std::size_t n_edges = 0;
    for (std::size_t ci : cls) {
      const Clause& c = f[ci];
      if (c.size() == 1) {
        Lit l = c[0];
        auto& slot = l.positive() ? pos_unit : neg_unit;
        if (slot) return std::nullopt;
        slot = {l.var(), l};
        unit_clause[l] = ci;
      } else {  // binary: must be an implication {~a, b}
        if (c.positive_count() != 1) return std::nullopt;
        int from = c[0].positive() ? c[1].var() : c[0].var();
        int to = c[0].positive() ? c[0].var() : c[1].var();
        if (next.count(from)) return std::nullopt;
        next[from] = to;
        if (++outdeg[from] > 1 || ++indeg[to] > 1) return std::nullopt;
        edge_clause[{from, to}] = ci;
        ++n_edges;
      }
    }
    std::vector<Clause> chain;
    if (n_edges == 0) {
      // degenerate chain: a lone unit clause
      if (comp_vars.size() != 1 || cls.size() != 1) return std::nullopt;
      chain.push_back(f[cls.front()]);
    } else {
      if (n_edges != comp_vars.size() - 1) return std::nullopt;  // cycle
      int head = -1;
      for (int v : comp_vars)
        if (indeg.find(v) == indeg.end()) {
          if (head != -1) return std::nullopt;
          head = v;
        }
      if (head == -1) return std::nullopt;
      // walk the path and confirm it covers the whole component
      std::vector<int> order = {head};
      for (int v = head; next.count(v); v = next[v]) order.push_back(next[v]);
      if (order.size() != comp_vars.size()) return std::nullopt;
      if (pos_unit && pos_unit->first != head) return std::nullopt;
      if (neg_unit && neg_unit->first != order.back()) return std::nullopt;
      if (pos_unit) chain.push_back(f[unit_clause[pos_unit->second]]);
      for (std::size_t i = 0; i + 1 < order.size(); ++i)
        chain.push_back(f[edge_clause[{order[i], order[i + 1]}]]);
      if (neg_unit) chain.push_back(f[unit_clause[neg_unit->second]]);
    }
    ordered.push_back({*std::min_element(cls.begin(), cls.end()),
                       std::move(chain)});
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [idx, chain] : ordered) deco.components.push_back(std::move(chain));
  return deco;
}

}  // namespace

MembershipResult check_membership(const Formula& f, BaseClass cls) {
  MembershipResult res;
  if (clause_defined(cls)) {
    res.member = std::all_of(f.begin(), f.end(), [&](const Clause& c) {
      return clause_in_class(c, cls);
    });
    return res;
  }
  switch (cls) {
    case BaseClass::Forest:
      res.member = incidence_graph(f).acyclic();
      return res;
    case BaseClass::Match: {
      auto cert = clause_matching(f);
      res.member = cert.has_value();
      res.matching = std::move(cert);
      return res;
    }
    case BaseClass::Chains: {
      auto deco = chain_decomposition(f);
      res.member = deco.has_value();
      res.chains = std::move(deco);
      return res;
    }
    default:
      throw ContractError("unknown class id");
  }
}

bool is_member(const Formula& f, BaseClass cls) {
  return check_membership(f, cls).member;
}

std::vector<Clause> nonmember_clauses(const Formula& f, BaseClass cls) {
  if (!clause_defined(cls))
    throw ContractError("nonmember_clauses requires a clause-defined class, "
                        "got " +
                        std::string(class_token(cls)));
  std::vector<Clause> out;
  for (const Clause& c : f)
    if (!clause_in_class(c, cls)) out.push_back(c);
  return out;
}

namespace {

// positive-unit propagation to the minimal model; the dual for anti-Horn
std::optional<Assignment> solve_horn_like(const Formula& f, bool anti) {
  Assignment forced;
  Formula cur = f;
  for (;;) {
    if (cur.has_empty_clause()) return std::nullopt;
    bool progressed = false;
    for (const Clause& c : cur) {
      if (c.size() == 1 && c[0].positive() != anti) {
        forced.bind(c[0].var(), !anti);
        progressed = true;
        break;
      }
    }
    if (!progressed) break;
    cur = reduct(f, forced);
  }
  Assignment model = forced;
  for (int v : f.variables())
    if (!model.contains(v)) model.bind(v, anti);
  return model;
}

// implication graph + Tarjan SCC
std::optional<Assignment> solve_krom(const Formula& f) {
  if (f.has_empty_clause()) return std::nullopt;
  const std::vector<int>& vars = f.variables();
  auto var_index = [&](int v) {
    return (std::size_t)(std::lower_bound(vars.begin(), vars.end(), v) -
                         vars.begin());
  };
  auto node = [&](Lit l) {
    return 2 * var_index(l.var()) + (l.positive() ? 1 : 0);
  };
  std::size_t n = 2 * vars.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Clause& c : f) {
    if (c.size() == 1) {
      adj[node(c[0].complement())].push_back(node(c[0]));
    } else {  // {a, b}: ~a -> b and ~b -> a
      adj[node(c[0].complement())].push_back(node(c[1]));
      adj[node(c[1].complement())].push_back(node(c[0]));
    }
  }
  // iterative Tarjan
  std::vector<int> comp(n, -1), low(n), num(n, -1);
  std::vector<std::size_t> stk;
  std::vector<char> on_stack(n, 0);
  int counter = 0, ncomp = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (num[s] != -1) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, edge pos)
    call.push_back({s, 0});
    num[s] = low[s] = counter++;
    stk.push_back(s);
    on_stack[s] = 1;
    while (!call.empty()) {
      auto& [u, ei] = call.back();
      if (ei < adj[u].size()) {
        std::size_t w = adj[u][ei++];
        if (num[w] == -1) {
          num[w] = low[w] = counter++;
          stk.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[u] = std::min(low[u], num[w]);
        }
      } else {
        if (low[u] == num[u]) {
          for (;;) {
            std::size_t w = stk.back();
            stk.pop_back();
            on_stack[w] = 0;
            comp[w] = ncomp;
            if (w == u) break;
          }
          ++ncomp;
        }
        call.pop_back();
        if (!call.empty())
          low[call.back().first] = std::min(low[call.back().first], low[u]);
      }
    }
  }
  Assignment model;
  for (std::size_t vi = 0; vi < vars.size(); ++vi) {
    if (comp[2 * vi] == comp[2 * vi + 1]) return std::nullopt;
    // components complete in reverse topological order, so the literal whose
    // component finished earlier (smaller id) is the one to set true
    model.bind(vars[vi], comp[2 * vi + 1] < comp[2 * vi]);
  }
  return model;
}

std::optional<Assignment> solve_match(const Formula& f) {
  auto cert = clause_matching(f);
  if (!cert) return std::nullopt;  // unreachable under the membership precondition
  Assignment model;
  for (auto [ci, var] : cert->clause_to_var)
    model.bind(var, *f[ci].polarity(var));
  for (int v : f.variables())
    if (!model.contains(v)) model.bind(v, false);
  return model;
}

// two passes over each incidence tree: satisfiability per subtree and
// parent value, then a top-down model extraction
std::optional<Assignment> solve_forest(const Formula& f) {
  if (f.has_empty_clause()) return std::nullopt;
  IncidenceGraph g = incidence_graph(f);
  auto var_index = [&](int v) {
    return (std::size_t)(std::lower_bound(g.vars.begin(), g.vars.end(), v) -
                         g.vars.begin());
  };
  std::map<int, std::array<bool, 2>> var_sat;  // subtree satisfiability

  std::function<std::array<bool, 2>(int, long)> eval_var =
      [&](int x, long parent_clause) {
        std::array<bool, 2> res = {true, true};
        for (std::size_t ci : g.var_adj[var_index(x)]) {
          if ((long)ci == parent_clause) continue;
          const Clause& c = f[ci];
          bool x_pos = *c.polarity(x);
          bool all_any = true, exists_sat = false;
          for (int y : c.vars()) {
            if (y == x) continue;
            auto sy = eval_var(y, (long)ci);
            all_any = all_any && (sy[0] || sy[1]);
            exists_sat = exists_sat || sy[*c.polarity(y) ? 1 : 0];
          }
          for (int b = 0; b < 2; ++b) {
            bool lit_sat = (b == 1) == x_pos;
            res[b] = res[b] && all_any && (lit_sat || exists_sat);
          }
        }
        var_sat[x] = res;
        return res;
      };

  Assignment model;
  std::function<void(int, bool, long)> assign_var = [&](int x, bool val,
                                                        long parent_clause) {
    model.bind(x, val);
    for (std::size_t ci : g.var_adj[var_index(x)]) {
      if ((long)ci == parent_clause) continue;
      const Clause& c = f[ci];
      bool lit_sat = val == *c.polarity(x);
      bool covered = lit_sat;
      for (int y : c.vars()) {
        if (y == x) continue;
        bool want = *c.polarity(y);
        if (!covered && var_sat[y][want ? 1 : 0]) {
          assign_var(y, want, (long)ci);
          covered = true;
        } else {
          assign_var(y, var_sat[y][0] ? false : true, (long)ci);
        }
      }
    }
  };

  for (int root : g.vars) {
    if (model.contains(root)) continue;
    auto s = eval_var(root, -1);
    if (!s[0] && !s[1]) return std::nullopt;
    assign_var(root, s[0] ? false : true, -1);
  }
  return model;
}

}  // namespace

std::optional<Assignment> solve_in_class(const Formula& f, BaseClass cls) {
  if (!is_member(f, cls))
    throw ContractError("formula is not in class " +
                        std::string(class_token(cls)));
  switch (cls) {
    case BaseClass::Horn:
    case BaseClass::Chains:
      return solve_horn_like(f, false);
    case BaseClass::AntiHorn:
      return solve_horn_like(f, true);
    case BaseClass::Krom:
      return solve_krom(f);
    case BaseClass::ZeroVal:
    case BaseClass::OneVal: {
      Assignment model;
      for (int v : f.variables()) model.bind(v, cls == BaseClass::OneVal);
      return model;
    }
    case BaseClass::Match:
      return solve_match(f);
    case BaseClass::Forest:
      return solve_forest(f);
  }
  throw ContractError("unknown class id");
}

std::string classify_json(const Formula& f) {
  nlohmann::json out;
  nlohmann::json certs = nlohmann::json::object();
  for (BaseClass cls : kAllClasses) {
    MembershipResult r = check_membership(f, cls);
    out["classes"][std::string(class_token(cls))] = r.member;
    if (r.member && r.matching) {
      nlohmann::json m = nlohmann::json::object();
      for (auto [ci, var] : r.matching->clause_to_var)
        m[std::to_string(ci)] = var;
      certs["match"] = std::move(m);
    }
    if (r.member && r.chains) {
      nlohmann::json comps = nlohmann::json::array();
      for (const auto& chain : r.chains->components) {
        nlohmann::json cj = nlohmann::json::array();
        for (const Clause& c : chain) {
          nlohmann::json lits = nlohmann::json::array();
          for (const Lit& l : c) lits.push_back(l.dimacs());
          cj.push_back(std::move(lits));
        }
        comps.push_back(std::move(cj));
      }
      certs["chains"] = std::move(comps);
    }
  }
  out["certificates"] = std::move(certs);
  return out.dump();
}

}  // namespace weakbd
