#include "cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace weakbd {

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (std::size_t i = 1; i < lits_.size(); ++i) {
    if (lits_[i].var() == lits_[i - 1].var())
      throw ContractError("clause contains complementary pair on variable " +
                          std::to_string(lits_[i].var()));
  }
}

Clause Clause::from_dimacs(const std::vector<int>& codes) {
  std::vector<Lit> lits;
  lits.reserve(codes.size());
  for (int c : codes) lits.push_back(Lit(c));
  return Clause(std::move(lits));
}

bool Clause::contains(Lit l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

bool Clause::contains_var(int var) const { return polarity(var).has_value(); }

std::optional<bool> Clause::polarity(int var) const {
  for (const Lit& l : lits_)
    if (l.var() == var) return l.positive();
  return std::nullopt;
}

int Clause::positive_count() const {
  return (int)std::count_if(lits_.begin(), lits_.end(),
                            [](Lit l) { return l.positive(); });
}

int Clause::negative_count() const {
  return (int)lits_.size() - positive_count();
}

std::vector<int> Clause::vars() const {
  std::vector<int> v;
  v.reserve(lits_.size());
  for (const Lit& l : lits_) v.push_back(l.var());
  return v;  // already sorted by canonical literal order
}

Formula::Formula(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
  std::sort(clauses_.begin(), clauses_.end());
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end()),
                 clauses_.end());
  for (const Clause& c : clauses_)
    for (const Lit& l : c) vars_.push_back(l.var());
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

bool Formula::has_var(int var) const {
  return std::binary_search(vars_.begin(), vars_.end(), var);
}

std::size_t Formula::width() const {
  std::size_t w = 0;
  for (const Clause& c : clauses_) w = std::max(w, c.size());
  return w;
}

bool Formula::has_empty_clause() const {
  // canonical order puts the empty clause first
  return !clauses_.empty() && clauses_.front().empty();
}

std::optional<bool> Assignment::value(int var) const {
  auto it = vals_.find(var);
  if (it == vals_.end()) return std::nullopt;
  return it->second;
}

void Assignment::bind(int var, bool value) {
  if (var < 1) throw ContractError("variable id must be >= 1");
  auto [it, inserted] = vals_.emplace(var, value);
  if (!inserted && it->second != value)
    throw ContractError("conflicting binding for variable " +
                        std::to_string(var));
}

Assignment& Assignment::extend(const Assignment& other) {
  for (auto [var, val] : other.vals_) bind(var, val);
  return *this;
}

std::vector<int> Assignment::domain() const {
  std::vector<int> d;
  d.reserve(vals_.size());
  for (auto& [var, val] : vals_) d.push_back(var);
  return d;
}

std::vector<int> Assignment::to_lits() const {
  std::vector<int> out;
  out.reserve(vals_.size());
  for (auto& [var, val] : vals_) out.push_back(val ? var : -var);
  return out;
}

Assignment Assignment::from_lits(const std::vector<int>& lits) {
  Assignment a;
  for (int l : lits) {
    if (l == 0) throw ContractError("assignment literal must be nonzero");
    a.bind(std::abs(l), l > 0);
  }
  return a;
}

namespace {

bool parse_int(const std::string& tok, long& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  long v = std::strtol(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size()) return false;
  out = v;
  return true;
}

std::string clause_text(const std::vector<int>& codes) {
  std::string s = "{";
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(codes[i]);
  }
  return s + "}";
}

}  // namespace

Formula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  long declared_vars = 0;
  std::vector<Clause> clauses;
  std::vector<int> pending;  // current clause, waiting for terminating 0

  auto finish_clause = [&](int at_line) {
    std::vector<int> codes = pending;
    pending.clear();
    std::sort(codes.begin(), codes.end(),
              [](int a, int b) { return Lit(a) < Lit(b); });
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    for (std::size_t i = 1; i < codes.size(); ++i)
      if (std::abs(codes[i]) == std::abs(codes[i - 1]))
        throw ParseError("clause " + clause_text(codes) +
                             " contains a complementary pair",
                         at_line);
    clauses.push_back(Clause::from_dimacs(codes));
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line
    if (tok[0] == 'c') continue;
    if (tok == "p") {
      if (header_seen) throw ParseError("duplicate header", line_no);
      std::string fmt, extra;
      long nv = -1, nc = -1;
      std::string nvs, ncs;
      if (!(ls >> fmt >> nvs >> ncs) || fmt != "cnf" || !parse_int(nvs, nv) ||
          !parse_int(ncs, nc) || nv < 0 || nc < 0 || (ls >> extra))
        throw ParseError("malformed header '" + line + "'", line_no);
      declared_vars = nv;
      header_seen = true;
      continue;
    }
    if (!header_seen)
      throw ParseError("clause data before 'p cnf' header", line_no);
    // clause tokens; a clause may span lines and ends at 0
    ls.clear();
    ls.seekg(0);
    while (ls >> tok) {
      long v;
      if (!parse_int(tok, v))
        throw ParseError("bad token '" + tok + "'", line_no);
      if (v == 0) {
        finish_clause(line_no);
        continue;
      }
      if (std::labs(v) > declared_vars)
        throw ParseError("variable " + std::to_string(std::labs(v)) +
                             " exceeds declared maximum " +
                             std::to_string(declared_vars),
                         line_no);
      pending.push_back((int)v);
    }
  }
  if (!header_seen) throw ParseError("missing 'p cnf' header", line_no);
  if (!pending.empty())
    throw ParseError("unterminated clause at end of input", line_no);
  return Formula(std::move(clauses));
}

std::string write_dimacs(const Formula& f) {
  int max_var = f.variables().empty() ? 0 : f.variables().back();
  std::ostringstream out;
  out << "p cnf " << max_var << ' ' << f.num_clauses() << '\n';
  for (const Clause& c : f) {
    for (const Lit& l : c) out << l.dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

Formula reduct(const Formula& f, const Assignment& tau) {
  std::vector<Clause> out;
  out.reserve(f.num_clauses());
  for (const Clause& c : f) {
    bool satisfied = false;
    std::vector<Lit> kept;
    for (const Lit& l : c) {
      auto v = tau.value(l.var());
      if (!v) {
        kept.push_back(l);
      } else if (*v == l.positive()) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) out.push_back(Clause(std::move(kept)));
  }
  return Formula(std::move(out));
}

Eval evaluate(const Formula& f, const Assignment& tau) {
  Formula r = reduct(f, tau);
  if (r.empty()) return Eval::Satisfied;
  if (r.has_empty_clause()) return Eval::Falsified;
  return Eval::Undetermined;
}

IncidenceGraph incidence_graph(const Formula& f) {
  IncidenceGraph g;
  g.vars = f.variables();
  g.var_adj.assign(g.vars.size(), {});
  g.clause_vars.reserve(f.num_clauses());
  for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
    g.clause_vars.push_back(f[ci].vars());
    for (int v : g.clause_vars.back()) {
      auto it = std::lower_bound(g.vars.begin(), g.vars.end(), v);
      g.var_adj[(std::size_t)(it - g.vars.begin())].push_back(ci);
    }
  }
  return g;
}

std::size_t IncidenceGraph::num_edges() const {
  std::size_t e = 0;
  for (const auto& vs : clause_vars) e += vs.size();
  return e;
}

bool IncidenceGraph::acyclic() const {
  // union-find over variable vertices [0, V) and clause vertices [V, V+C)
  std::vector<std::size_t> parent(vars.size() + clause_vars.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t ci = 0; ci < clause_vars.size(); ++ci) {
    for (int v : clause_vars[ci]) {
      auto it = std::lower_bound(vars.begin(), vars.end(), v);
      std::size_t vi = (std::size_t)(it - vars.begin());
      std::size_t a = find(vi), b = find(vars.size() + ci);
      if (a == b) return false;
      parent[a] = b;
    }
  }
  return true;
}

}  // namespace weakbd
