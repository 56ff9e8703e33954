#pragma once

#include <string>

#include "lpn/analysis.hpp"
#include "lpn/contract_net.hpp"
#include "lpn/pcl.hpp"

namespace lpn {

struct CompileOptions {
  /// Drop places with no incident arcs and no initial tokens.
  bool prune = false;
};

/// Transition id for a clause, e.g. "[a&b->>c]"; facts are "[->a]".
std::string transition_name(const HornClause& clause);
/// "(a,*)" for the mutual-exclusion place of head a.
std::string head_place_name(const Atom& a);
/// "(a,t)" for the delivery place of atom a towards transition t.
std::string delivery_place_name(const Atom& a, const std::string& transition);

/// Translates a Horn contract into a contract net.
///
/// Every clause X o a becomes a transition labeled a that consumes the marked
/// place (a,*) and one token from (x,t) for each x in X, and produces into
/// (a,t') for every transition t'. Delivery places (x,t) are labeled x and are
/// lending exactly when t is contractual with a non-empty body. Duplicate
/// clauses get a "@k" suffix on their transition ids.
///
/// Throws ContractError when the contract is not well formed.
ContractNet compile(const PclContract& c, CompileOptions options = {});

/// Whether compile(c1 | c2) and compile(c1) ⊕ compile(c2) have the same traces.
Verdict compile_compose_commutes(const PclContract& c1, const PclContract& c2,
                                 Budget budget = {});

}  // namespace lpn
