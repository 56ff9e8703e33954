#pragma once

#include <compare>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpn/contract_net.hpp"
#include "lpn/net.hpp"

namespace lpn {

enum class Implication { intuitionistic, contractual };

/// A Horn clause of contract logic: the conjunction of `body` implies `head`,
/// either intuitionistically (->) or contractually (->>). A fact is an
/// intuitionistic clause with an empty body.
struct HornClause {
  AtomSet body;
  Atom head;
  Implication kind = Implication::intuitionistic;

  static HornClause fact(Atom a) { return {{}, std::move(a), Implication::intuitionistic}; }
  bool is_fact() const { return body.empty() && kind == Implication::intuitionistic; }

  auto operator<=>(const HornClause&) const = default;
  bool operator==(const HornClause&) const = default;
};

using Theory = std::vector<HornClause>;

struct PclContract {
  Theory theory;
  std::set<Participant> participants;
  std::map<Atom, Participant> owner;
  GoalFamily goals{AtomSet{}};

  bool operator==(const PclContract&) const = default;
};

struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Atoms of the theory, the goals and the ownership map.
AtomSet alphabet_of(const PclContract& c);
AtomSet atoms_of(const Theory& theory);

/// Problems with the contract: heads owned outside the bound participants, or
/// atoms without an owner. Empty when the contract is well formed.
std::vector<std::string> check_contract(const PclContract& c);

/// Atoms provable from the theory extended with `assumed` as facts.
///
/// Least set closed under: an intuitionistic clause whose body is provable adds
/// its head; a contractual clause X ->> a adds a when X is provable from the
/// theory with a assumed as an extra fact.
AtomSet provable_atoms(std::span<const HornClause> theory, const AtomSet& assumed = {});

bool admits_agreement(const PclContract& c);

/// Throws ContractError when the contracts bind a common participant or
/// disagree on who owns what.
PclContract compose_contracts(const PclContract& c1, const PclContract& c2);

using ProofTrace = std::vector<Atom>;

/// Keeps the first occurrence of every atom.
ProofTrace normalize(const ProofTrace& trace);
ProofTrace concat(const ProofTrace& s1, const ProofTrace& s2);
/// All shuffles of the two traces, each normalized.
std::set<ProofTrace> interleave(const ProofTrace& s1, const ProofTrace& s2);

/// Proof traces of the theory extended with `assumed` as facts.
std::set<ProofTrace> proof_traces(std::span<const HornClause> theory, const AtomSet& assumed = {});

/// Atoms that may be proved right after the atoms in `done`, following some
/// proof trace of the theory extended with `done` as facts.
AtomSet urgent_logic(const PclContract& c, const AtomSet& done);

std::string format_clause(const HornClause& clause);

}  // namespace lpn
