#pragma once

#include <array>
#include <map>
#include <optional>
#include <string_view>

#include "cnf.hpp"

namespace weakbd {

enum class BaseClass {
  Horn,      // every clause has at most 1 positive literal
  AntiHorn,  // at most 1 negative literal
  Krom,      // at most 2 literals
  ZeroVal,   // at least 1 negative literal (all-zeros satisfies)
  OneVal,    // at least 1 positive literal (all-ones satisfies)
  Forest,    // acyclic incidence graph
  Match,     // clause-saturating incidence matching
  Chains,    // variable-disjoint union of implication chains
};

constexpr std::array<BaseClass, 8> kAllClasses = {
    BaseClass::Horn,   BaseClass::AntiHorn, BaseClass::Krom,
    BaseClass::ZeroVal, BaseClass::OneVal,  BaseClass::Forest,
    BaseClass::Match,  BaseClass::Chains};

std::string_view class_token(BaseClass cls);
std::optional<BaseClass> class_from_token(std::string_view token);

// classes defined by a per-clause predicate
bool clause_defined(BaseClass cls);
bool clause_in_class(const Clause& c, BaseClass cls);

// injective clause -> variable map; each clause is matched to one of its own
// variables
struct MatchingCertificate {
  std::map<std::size_t, int> clause_to_var;
};

// per component: [optional head unit, implication clauses in path order,
// optional tail unit]
struct ChainDecomposition {
  std::vector<std::vector<Clause>> components;
};

struct MembershipResult {
  bool member = false;
  std::optional<MatchingCertificate> matching;  // Match only
  std::optional<ChainDecomposition> chains;     // Chains only
};

bool is_member(const Formula& f, BaseClass cls);
MembershipResult check_membership(const Formula& f, BaseClass cls);

// clauses violating the class predicate; contract error unless clause-defined
std::vector<Clause> nonmember_clauses(const Formula& f, BaseClass cls);

// Total satisfying assignment over var(F), or nullopt when unsatisfiable.
// Precondition: is_member(f, cls).
std::optional<Assignment> solve_in_class(const Formula& f, BaseClass cls);

std::string classify_json(const Formula& f);

}  // namespace weakbd
