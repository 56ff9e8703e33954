#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lpn/analysis.hpp"
#include "lpn/net.hpp"

namespace lpn {

using Participant = std::string;
using GoalFamily = std::set<AtomSet>;

/// An occurrence lending net together with the participants it binds, the
/// ownership of actions and the goals under which everybody is satisfied.
struct ContractNet {
  LendingNet net;
  std::set<Participant> participants;
  std::map<Atom, Participant> owner;
  GoalFamily goals;

  bool operator==(const ContractNet&) const = default;
};

struct Violation {
  /// "a".."d" for the contract-net conditions, or "occurrence", "labeling", "ownership".
  std::string condition;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate(const ContractNet& cn, Budget budget = {});

/// Actions performed so far and actions whose credit is outstanding.
struct Configuration {
  AtomSet done;
  AtomSet credits;

  bool operator==(const Configuration&) const = default;
};

/// done = labels of the fired transitions, credits = labels of negative places.
Configuration configuration(const LendingNet& net, const ReachNode& node);
Configuration configuration(const ContractNet& cn, const ReachNode& node);

/// Place-based reading of the done set: a is done when some place s is the
/// only place shared by the presets of all a-labeled transitions and m(s) = 0.
AtomSet done_by_places(const LendingNet& net, const Marking& m);

/// Composition of compatible contract nets. Goals compose by pairwise union.
/// Throws CompositionError on participant overlap, ownership disagreement or
/// incompatible nets.
ContractNet compose_contract_nets(const ContractNet& d1, const ContractNet& d2);

GoalFamily product_union(const GoalFamily& g1, const GoalFamily& g2);

/// Goal nodes: honored configurations whose done set is one of the goals.
GoalSpec goal_of(const ContractNet& cn);

WeakTermination weakly_terminates_in(const ContractNet& cn, Budget budget = {});

/// Union of the urgent actions over every reachable node whose done set is
/// `done`. nullopt when the state space exceeds the budget.
std::optional<AtomSet> urgent(const ContractNet& cn, const AtomSet& done, Budget budget = {});

}  // namespace lpn
