#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cnf.hpp"
#include "oracles.hpp"

using namespace weakbd;

namespace {

Clause cl(std::vector<int> codes) { return Clause::from_dimacs(codes); }

Formula fo(std::vector<std::vector<int>> clauses) {
  std::vector<Clause> cs;
  for (auto& c : clauses) cs.push_back(cl(c));
  return Formula(std::move(cs));
}

Assignment asg(std::vector<int> lits) { return Assignment::from_lits(lits); }

}  // namespace

TEST_CASE("literal basics") {
  Lit a = Lit::make(3, true);
  CHECK(a.var() == 3);
  CHECK(a.positive());
  CHECK(a.complement().complement() == a);
  CHECK(Lit(-2) < Lit(2));  // negative before positive on the same variable
  CHECK(Lit(1) < Lit(-2));
  CHECK_THROWS_AS(Lit(0), ContractError);
  CHECK_THROWS_AS(Lit::make(0, true), ContractError);
}

TEST_CASE("clause canonicalization") {
  Clause c = cl({2, -1, 2});
  CHECK(c.size() == 2);
  CHECK(c[0] == Lit(-1));
  CHECK(c[1] == Lit(2));
  CHECK(c.positive_count() == 1);
  CHECK(c.negative_count() == 1);
  CHECK(c.polarity(1) == false);
  CHECK(c.polarity(2) == true);
  CHECK(!c.polarity(3).has_value());
  CHECK_THROWS_AS(cl({1, -1}), ContractError);
  CHECK(Clause().empty());
}

TEST_CASE("formula set semantics") {
  Formula f = fo({{1, 2}, {2, 1}, {3}});
  CHECK(f.num_clauses() == 2);
  CHECK(f.variables() == std::vector<int>{1, 2, 3});
  CHECK(f.width() == 2);
  CHECK(!f.has_empty_clause());
  CHECK(fo({{}}).has_empty_clause());
}

TEST_CASE("assignment binding rules") {
  Assignment a;
  a.bind(1, true);
  a.bind(1, true);  // same value is fine
  CHECK_THROWS_AS(a.bind(1, false), ContractError);
  a.bind(2, false);
  CHECK(a.domain() == std::vector<int>{1, 2});
  CHECK(a.to_lits() == std::vector<int>{1, -2});
  CHECK(Assignment::from_lits({1, -2}) == a);
}

TEST_CASE("parse_dimacs basics") {
  Formula f = parse_dimacs("p cnf 3 1\n1 2 -3 0\n");
  CHECK(f == fo({{1, 2, -3}}));

  // duplicate clauses merge
  CHECK(parse_dimacs("p cnf 2 2\n1 0\n1 0\n") == fo({{1}}));
  // duplicate literals within a clause merge
  CHECK(parse_dimacs("p cnf 1 1\n1 1 0\n") == fo({{1}}));
  // comments, blank lines, clause spanning lines
  CHECK(parse_dimacs("c hi\np cnf 2 1\n\n1\n2 0\n") == fo({{1, 2}}));
  // empty formula and empty clause
  CHECK(parse_dimacs("p cnf 0 0\n").num_clauses() == 0);
  CHECK(parse_dimacs("p cnf 0 1\n0\n") == fo({{}}));
}

TEST_CASE("parse_dimacs errors") {
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1 -1 0\n"), ParseError);  // tautology
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);  // var beyond header
  CHECK_THROWS_AS(parse_dimacs("p cnf x 1\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("1 0\n"), ParseError);             // no header
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);  // unterminated
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 two 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs(""), ParseError);
  try {
    parse_dimacs("p cnf 2 1\nbad 0\n");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("write_dimacs") {
  CHECK(write_dimacs(fo({{1, -2}})) == "p cnf 2 1\n1 -2 0\n");
  CHECK(write_dimacs(Formula()) == "p cnf 0 0\n");
  CHECK(write_dimacs(fo({{}})) == "p cnf 0 1\n0\n");
}

TEST_CASE("reduct per the definition") {
  Formula f = fo({{1, 2, -3}});
  CHECK(reduct(f, asg({3})) == fo({{1, 2}}));
  CHECK(reduct(f, asg({1})) == Formula());
  CHECK(reduct(fo({{1}}), asg({-1})) == fo({{}}));
  // assignments outside var(F) have no effect
  CHECK(reduct(f, asg({9})) == f);
}

TEST_CASE("evaluate") {
  CHECK(evaluate(fo({{1, -2}}), asg({1})) == Eval::Satisfied);
  CHECK(evaluate(fo({{1}, {-1}}), asg({-1})) == Eval::Falsified);
  CHECK(evaluate(fo({{1, 2}}), Assignment()) == Eval::Undetermined);
}

TEST_CASE("incidence graph") {
  IncidenceGraph g = incidence_graph(fo({{1, 2}}));
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 2);
  CHECK(incidence_graph(Formula()).num_vertices() == 0);
  IncidenceGraph g2 = incidence_graph(fo({{1}, {-1}}));
  CHECK(g2.num_vertices() == 3);
  CHECK(g2.num_edges() == 2);
  CHECK(g2.acyclic());
  CHECK(!incidence_graph(fo({{1, 2}, {-1, -2}})).acyclic());
}

TEST_CASE("reduct properties on random formulas") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    Formula f = oracle::random_mixed_formula(6, 8, seed);
    const auto& vars = f.variables();
    Assignment t1, t2;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (i % 3 == 0) t1.bind(vars[i], (seed >> i) & 1);
      if (i % 3 == 1) t2.bind(vars[i], (seed >> i) & 1);
    }
    Formula r1 = reduct(f, t1);
    CHECK(reduct(r1, t1) == r1);  // idempotence
    Assignment both = t1;
    both.extend(t2);
    CHECK(reduct(r1, t2) == reduct(f, both));  // composition
    for (int v : t1.domain()) CHECK(!r1.has_var(v));
    CHECK(incidence_graph(f).num_edges() == [&] {
      std::size_t s = 0;
      for (const Clause& c : f) s += c.size();
      return s;
    }());
  }
}

TEST_CASE("dimacs round trip on random formulas") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    Formula f = oracle::random_mixed_formula(7, 10, seed);
    CHECK(parse_dimacs(write_dimacs(f)) == f);
  }
}
