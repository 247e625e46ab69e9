#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace weakbd {

struct ParseError : std::runtime_error {
  int line;
  ParseError(const std::string& msg, int line_no)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
        line(line_no) {}
};

struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

// A positive or negated variable, DIMACS-encoded: nonzero int whose sign is
// the polarity. Canonical order is by variable id, negative before positive.
class Lit {
 public:
  explicit Lit(int dimacs_code) : code_(dimacs_code) {
    if (code_ == 0) throw ContractError("literal code must be nonzero");
  }
  static Lit make(int var, bool positive) {
    if (var < 1) throw ContractError("variable id must be >= 1");
    return Lit(positive ? var : -var);
  }
  int var() const { return code_ < 0 ? -code_ : code_; }
  bool positive() const { return code_ > 0; }
  Lit complement() const { return Lit(-code_); }
  int dimacs() const { return code_; }

  friend bool operator==(Lit a, Lit b) { return a.code_ == b.code_; }
  friend bool operator!=(Lit a, Lit b) { return a.code_ != b.code_; }
  friend bool operator<(Lit a, Lit b) {
    if (a.var() != b.var()) return a.var() < b.var();
    return a.code_ < b.code_;
  }

 private:
  int code_;
};

// A set of literals in canonical order, without duplicates or a
// complementary pair. May be empty (the unsatisfiable empty clause).
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Lit> lits);
  static Clause from_dimacs(const std::vector<int>& codes);

  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  const Lit& operator[](std::size_t i) const { return lits_[i]; }

  bool contains(Lit l) const;
  bool contains_var(int var) const;
  // polarity of `var` in this clause; nullopt if absent
  std::optional<bool> polarity(int var) const;
  int positive_count() const;
  int negative_count() const;
  std::vector<int> vars() const;

  friend bool operator==(const Clause& a, const Clause& b) {
    return a.lits_ == b.lits_;
  }
  friend bool operator<(const Clause& a, const Clause& b) {
    return a.lits_ < b.lits_;
  }

 private:
  std::vector<Lit> lits_;
};

// A set of clauses in canonical order with duplicates merged.
class Formula {
 public:
  Formula() = default;
  explicit Formula(std::vector<Clause> clauses);

  std::size_t num_clauses() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  auto begin() const { return clauses_.begin(); }
  auto end() const { return clauses_.end(); }
  const Clause& operator[](std::size_t i) const { return clauses_[i]; }

  // var(F), sorted ascending
  const std::vector<int>& variables() const { return vars_; }
  std::size_t num_vars() const { return vars_.size(); }
  bool has_var(int var) const;
  std::size_t width() const;
  bool has_empty_clause() const;

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.clauses_ == b.clauses_;
  }

 private:
  std::vector<Clause> clauses_;
  std::vector<int> vars_;
};

// Partial map variable -> {0,1}. Binding a variable twice with different
// values is an error; rebinding with the same value is a no-op.
class Assignment {
 public:
  Assignment() = default;

  bool contains(int var) const { return vals_.count(var) != 0; }
  std::optional<bool> value(int var) const;
  void bind(int var, bool value);
  Assignment& extend(const Assignment& other);
  std::size_t size() const { return vals_.size(); }
  bool empty() const { return vals_.empty(); }
  std::vector<int> domain() const;
  const std::map<int, bool>& bindings() const { return vals_; }

  // signed-literal view: +v if true, -v if false, sorted by variable
  std::vector<int> to_lits() const;
  static Assignment from_lits(const std::vector<int>& lits);

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.vals_ == b.vals_;
  }

 private:
  std::map<int, bool> vals_;
};

enum class Eval { Satisfied, Falsified, Undetermined };

// Bipartite variable/clause incidence structure.
struct IncidenceGraph {
  std::vector<int> vars;                          // sorted variable ids
  std::vector<std::vector<std::size_t>> var_adj;  // var index -> clause indices
  std::vector<std::vector<int>> clause_vars;      // clause index -> var ids

  std::size_t num_vertices() const { return vars.size() + clause_vars.size(); }
  std::size_t num_edges() const;
  bool acyclic() const;
};

Formula parse_dimacs(const std::string& text);
std::string write_dimacs(const Formula& f);

// F[tau]: drop satisfied clauses, delete assigned literals from the rest.
Formula reduct(const Formula& f, const Assignment& tau);
Eval evaluate(const Formula& f, const Assignment& tau);
IncidenceGraph incidence_graph(const Formula& f);

}  // namespace weakbd
