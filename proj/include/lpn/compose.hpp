#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "lpn/analysis.hpp"
#include "lpn/net.hpp"

namespace lpn {

struct CompositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reason two nets cannot be composed, or nullopt when they can.
std::optional<std::string> incompatibility(const LendingNet& n1, const LendingNet& n2);
bool compatible(const LendingNet& n1, const LendingNet& n2);

/// Composition of two compatible lending nets.
///
/// Sink places of one net labeled with an action of the other are dropped;
/// every labeled transition of one net gains an arc to each place of the other
/// net bearing its label. Everything else is the union of the two nets.
/// Throws CompositionError naming the violated condition.
LendingNet oplus(const LendingNet& n1, const LendingNet& n2);

/// Prefixes every place and transition id with `prefix`.
LendingNet with_namespace(const LendingNet& net, const std::string& prefix);
MarkingGoal with_namespace(const MarkingGoal& goal, const std::string& prefix);

using TraceSet = std::set<Trace>;

/// Traces of all firing sequences from m0. nullopt when the state space or the
/// trace set exceeds the budget (always the case for nets with infinitely many traces).
std::optional<TraceSet> traces(const LendingNet& net, Budget budget = {});

/// Traces(n1) ⊆ Traces(n2).
Verdict approximates(const LendingNet& n1, const LendingNet& n2, Budget budget = {});
Verdict trace_equivalent(const LendingNet& n1, const LendingNet& n2, Budget budget = {});

}  // namespace lpn
