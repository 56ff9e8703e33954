#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpn/net.hpp"

namespace lpn {

/// Three-valued outcome of a decision procedure bounded by a Budget.
enum class Verdict { holds, fails, inconclusive };

std::string_view to_string(Verdict v);

struct Budget {
  std::size_t max_nodes = 100000;
  std::size_t max_traces = 1000000;
};

struct ReachNode {
  Marking marking;
  StateMultiset state;

  auto operator<=>(const ReachNode&) const = default;
  bool operator==(const ReachNode&) const = default;
};

struct ReachEdge {
  std::size_t source;
  std::size_t transition;
  std::size_t target;

  bool operator==(const ReachEdge&) const = default;
};

enum class NodeIdentity {
  /// Nodes are (marking, fired multiset) pairs. The graph is acyclic.
  marking_and_state,
  /// Nodes are bare markings; the state recorded is the first one found.
  marking_only,
};

/// Explored state space. Node 0 is the root (m0, empty multiset). Nodes and
/// edges are numbered in breadth-first discovery order.
class ReachGraph {
 public:
  std::span<const ReachNode> nodes() const { return nodes_; }
  std::span<const ReachEdge> edges() const { return edges_; }
  const ReachNode& node(std::size_t i) const { return nodes_[i]; }
  /// Indices into edges() leaving node `i`.
  const std::vector<std::size_t>& out_edges(std::size_t i) const { return out_[i]; }
  bool complete() const { return complete_; }
  std::size_t root() const { return 0; }

  /// Nodes from which some node satisfying `target` is reachable (reflexively).
  std::vector<bool> backward_closure(const std::function<bool(const ReachNode&)>& target) const;

 private:
  friend ReachGraph explore(const LendingNet&, Budget, NodeIdentity);

  std::vector<ReachNode> nodes_;
  std::vector<ReachEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  bool complete_ = true;
};

/// Breadth-first closure of single-transition steps from the initial marking.
/// Stops with complete() == false once more than budget.max_nodes nodes would exist.
ReachGraph explore(const LendingNet& net, Budget budget = {},
                   NodeIdentity identity = NodeIdentity::marking_and_state);

/// holds: every reached state is a set. fails: some state fires a transition twice.
Verdict is_occurrence_net(const LendingNet& net, Budget budget = {});
/// holds: every reachable marking has m(s) <= 1 for all places.
Verdict is_safe(const LendingNet& net, Budget budget = {});

using GoalSpec = std::function<bool(const ReachNode&)>;

GoalSpec any_marking();
GoalSpec honored_marking();

/// Marking predicate over place ids: a disjunction of conjunctive clauses.
struct PlaceConstraint {
  enum class Op { eq, ge, le };
  std::string place;
  Op op = Op::eq;
  std::int64_t value = 0;

  auto operator<=>(const PlaceConstraint&) const = default;
  bool operator==(const PlaceConstraint&) const = default;
};

struct GoalClause {
  std::vector<PlaceConstraint> constraints;
  /// Additionally requires every place of the net to be non-negative.
  bool honored = false;

  auto operator<=>(const GoalClause&) const = default;
  bool operator==(const GoalClause&) const = default;
};

struct MarkingGoal {
  std::vector<GoalClause> clauses;

  bool operator==(const MarkingGoal&) const = default;
};

/// Resolves place ids against `net`; throws StructuralError on unknown places.
GoalSpec to_goal(const LendingNet& net, const MarkingGoal& goal);

/// The compound goal of two components: each clause pair is conjoined,
/// `honored` is expanded to the component's own places, and constraints on
/// places that do not survive in `composed` are dropped.
MarkingGoal compose_goals(const LendingNet& n1, const MarkingGoal& g1, const LendingNet& n2,
                          const MarkingGoal& g2, const LendingNet& composed);

std::string format_goal(const MarkingGoal& goal);

struct WeakTermination {
  Verdict verdict = Verdict::inconclusive;
  /// For fails: a reachable node from which no goal node is reachable.
  std::optional<ReachNode> witness;
};

WeakTermination weakly_terminates(const ReachGraph& graph, const GoalSpec& goal);
WeakTermination weakly_terminates(const LendingNet& net, const GoalSpec& goal,
                                  Budget budget = {});

/// Urgent atoms for every node of a complete graph; nullopt when incomplete.
std::optional<std::vector<AtomSet>> urgent_sets(const LendingNet& net, const ReachGraph& graph);
std::optional<AtomSet> urgent_at(const LendingNet& net, const ReachGraph& graph,
                                 std::size_t node);

/// Whether `candidate` is a strategy for `net`: net ⊕ candidate weakly
/// terminates in the compound goal. Throws CompositionError when incompatible.
WeakTermination is_strategy(const LendingNet& candidate, const MarkingGoal& candidate_goal,
                            const LendingNet& net, const MarkingGoal& net_goal,
                            Budget budget = {});

}  // namespace lpn
