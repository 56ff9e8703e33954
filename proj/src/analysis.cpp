#include "lpn/analysis.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "lpn/compose.hpp"

namespace lpn {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

struct NodeHash {
  std::size_t operator()(const ReachNode& n) const noexcept {
    std::size_t h = MarkingHash{}(n.marking);
    for (auto c : n.state.counts()) h = h * 1099511628211ULL + c;
    return h;
  }
};

}  // namespace

ReachGraph explore(const LendingNet& net, Budget budget, NodeIdentity identity) {
  ReachGraph g;
  std::unordered_map<ReachNode, std::size_t, NodeHash> seen_full;
  std::unordered_map<Marking, std::size_t, MarkingHash> seen_marking;

  auto intern = [&](ReachNode node) -> std::optional<std::size_t> {
    if (identity == NodeIdentity::marking_only) {
      if (auto it = seen_marking.find(node.marking); it != seen_marking.end()) return it->second;
    } else {
      if (auto it = seen_full.find(node); it != seen_full.end()) return it->second;
    }
    if (g.nodes_.size() >= budget.max_nodes) return std::nullopt;
    const auto id = g.nodes_.size();
    if (identity == NodeIdentity::marking_only) {
      seen_marking.emplace(node.marking, id);
    } else {
      seen_full.emplace(node, id);
    }
    g.nodes_.push_back(std::move(node));
    g.out_.emplace_back();
    return id;
  };

  if (!intern({net.initial_marking(), StateMultiset(net.transitions().size())})) {
    g.complete_ = false;
    return g;
  }
  for (std::size_t cur = 0; cur < g.nodes_.size(); ++cur) {
    for (std::size_t t = 0; t < net.transitions().size(); ++t) {
      if (!enabled(net, g.nodes_[cur].marking, t)) continue;
      ReachNode next{fire(net, g.nodes_[cur].marking, t), g.nodes_[cur].state};
      next.state.add(t);
      auto target = intern(std::move(next));
      if (!target) {
        g.complete_ = false;
        continue;
      }
      g.out_[cur].push_back(g.edges_.size());
      g.edges_.push_back({cur, t, *target});
    }
  }
  return g;
}

std::vector<bool> ReachGraph::backward_closure(
    const std::function<bool(const ReachNode&)>& target) const {
  std::vector<std::vector<std::size_t>> in(nodes_.size());
  for (const auto& e : edges_) in[e.target].push_back(e.source);
  std::vector<bool> reach(nodes_.size(), false);
  std::deque<std::size_t> work;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (target(nodes_[i])) {
      reach[i] = true;
      work.push_back(i);
    }
  }
  while (!work.empty()) {
    auto n = work.front();
    work.pop_front();
    for (auto p : in[n]) {
      if (!reach[p]) {
        reach[p] = true;
        work.push_back(p);
      }
    }
  }
  return reach;
}

Verdict is_occurrence_net(const LendingNet& net, Budget budget) {
  auto g = explore(net, budget);
  for (const auto& n : g.nodes()) {
    if (!n.state.is_set()) return Verdict::fails;
  }
  return g.complete() ? Verdict::holds : Verdict::inconclusive;
}

Verdict is_safe(const LendingNet& net, Budget budget) {
  auto g = explore(net, budget, NodeIdentity::marking_only);
  for (const auto& n : g.nodes()) {
    const auto tokens = n.marking.tokens();
    if (std::any_of(tokens.begin(), tokens.end(), [](std::int64_t v) { return v > 1; }))
      return Verdict::fails;
  }
  return g.complete() ? Verdict::holds : Verdict::inconclusive;
}

GoalSpec any_marking() {
  return [](const ReachNode&) { return true; };
}

GoalSpec honored_marking() {
  return [](const ReachNode& n) { return is_honored(n.marking); };
}

GoalSpec to_goal(const LendingNet& net, const MarkingGoal& goal) {
  struct Resolved {
    std::vector<std::pair<std::size_t, PlaceConstraint>> constraints;
    bool honored;
  };
  std::vector<Resolved> clauses;
  for (const auto& c : goal.clauses) {
    Resolved r{{}, c.honored};
    for (const auto& pc : c.constraints) r.constraints.emplace_back(net.require_place(pc.place), pc);
    clauses.push_back(std::move(r));
  }
  return [clauses = std::move(clauses)](const ReachNode& n) {
    for (const auto& c : clauses) {
      if (c.honored && !is_honored(n.marking)) continue;
      bool ok = true;
      for (const auto& [s, pc] : c.constraints) {
        const auto v = n.marking[s];
        switch (pc.op) {
          case PlaceConstraint::Op::eq: ok = v == pc.value; break;
          case PlaceConstraint::Op::ge: ok = v >= pc.value; break;
          case PlaceConstraint::Op::le: ok = v <= pc.value; break;
        }
        if (!ok) break;
      }
      if (ok) return true;
    }
    return false;
  };
}

namespace {

std::vector<PlaceConstraint> expand(const LendingNet& net, const GoalClause& clause) {
  auto out = clause.constraints;
  if (clause.honored) {
    for (const auto& p : net.places()) out.push_back({p.id, PlaceConstraint::Op::ge, 0});
  }
  return out;
}

}  // namespace

MarkingGoal compose_goals(const LendingNet& n1, const MarkingGoal& g1, const LendingNet& n2,
                          const MarkingGoal& g2, const LendingNet& composed) {
  MarkingGoal out;
  for (const auto& c1 : g1.clauses) {
    for (const auto& c2 : g2.clauses) {
      GoalClause c;
      for (auto pc : expand(n1, c1)) {
        if (composed.place_index(pc.place)) c.constraints.push_back(std::move(pc));
      }
      for (auto pc : expand(n2, c2)) {
        if (composed.place_index(pc.place)) c.constraints.push_back(std::move(pc));
      }
      std::sort(c.constraints.begin(), c.constraints.end());
      c.constraints.erase(std::unique(c.constraints.begin(), c.constraints.end()),
                          c.constraints.end());
      out.clauses.push_back(std::move(c));
    }
  }
  return out;
}

std::string format_goal(const MarkingGoal& goal) {
  std::ostringstream os;
  for (std::size_t i = 0; i < goal.clauses.size(); ++i) {
    if (i) os << " | ";
    const auto& c = goal.clauses[i];
    bool first = true;
    for (const auto& pc : c.constraints) {
      if (!first) os << ' ';
      first = false;
      os << pc.place
         << (pc.op == PlaceConstraint::Op::eq ? "=" : pc.op == PlaceConstraint::Op::ge ? ">=" : "<=")
         << pc.value;
    }
    if (c.honored) os << (first ? "" : " ") << "honored";
  }
  return os.str();
}

WeakTermination weakly_terminates(const ReachGraph& graph, const GoalSpec& goal) {
  if (!graph.complete()) return {Verdict::inconclusive, std::nullopt};
  auto reach = graph.backward_closure(goal);
  for (std::size_t i = 0; i < reach.size(); ++i) {
    if (!reach[i]) return {Verdict::fails, graph.node(i)};
  }
  return {Verdict::holds, std::nullopt};
}

WeakTermination weakly_terminates(const LendingNet& net, const GoalSpec& goal, Budget budget) {
  return weakly_terminates(explore(net, budget), goal);
}

std::optional<std::vector<AtomSet>> urgent_sets(const LendingNet& net, const ReachGraph& graph) {
  if (!graph.complete()) return std::nullopt;
  auto reach = graph.backward_closure(honored_marking());
  std::vector<AtomSet> out(graph.nodes().size());
  for (const auto& e : graph.edges()) {
    const auto& label = net.transition(e.transition).label;
    if (label && reach[e.target]) out[e.source].insert(*label);
  }
  return out;
}

std::optional<AtomSet> urgent_at(const LendingNet& net, const ReachGraph& graph,
                                 std::size_t node) {
  auto all = urgent_sets(net, graph);
  if (!all) return std::nullopt;
  return (*all)[node];
}

WeakTermination is_strategy(const LendingNet& candidate, const MarkingGoal& candidate_goal,
                            const LendingNet& net, const MarkingGoal& net_goal, Budget budget) {
  auto composed = oplus(net, candidate);
  auto goal = compose_goals(net, net_goal, candidate, candidate_goal, composed);
  return weakly_terminates(composed, to_goal(composed, goal), budget);
}

}  // namespace lpn
