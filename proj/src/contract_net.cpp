#include "lpn/contract_net.hpp"

#include <algorithm>
#include <iterator>

#include "lpn/compose.hpp"

namespace lpn {

namespace {

bool has_shared_marked_preplace(const LendingNet& net, std::size_t t1, std::size_t t2) {
  const auto& a = net.transition(t1).pre;
  const auto& b = net.transition(t2).pre;
  std::vector<std::size_t> shared;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
  return std::any_of(shared.begin(), shared.end(),
                     [&](std::size_t s) { return net.place(s).initial > 0; });
}

}  // namespace

std::vector<Violation> validate(const ContractNet& cn, Budget budget) {
  std::vector<Violation> out;
  const auto& net = cn.net;

  for (std::size_t s = 0; s < net.places().size(); ++s) {
    const auto& p = net.place(s);
    if (p.initial > 0 && !net.producers(s).empty())
      out.push_back({"a", "marked place '" + p.id + "' has a non-empty preset"});
    if (p.initial > 0 && p.label)
      out.push_back({"a", "marked place '" + p.id + "' is labeled"});
    if (p.lending && !p.label)
      out.push_back({"a", "lending place '" + p.id + "' is unlabeled"});
  }

  for (const auto& t : net.transitions()) {
    for (auto s : t.post) {
      if (net.place(s).label != t.label)
        out.push_back({"b", "transition '" + t.id + "' produces into place '" +
                                net.place(s).id + "' with a different label"});
    }
    if (std::all_of(t.pre.begin(), t.pre.end(), [&](std::size_t s) { return net.place(s).lending; }))
      out.push_back({"b", "transition '" + t.id + "' has no non-lending pre-place"});
  }

  const auto transitions = net.transitions();
  for (std::size_t t1 = 0; t1 < transitions.size(); ++t1) {
    for (std::size_t t2 = t1 + 1; t2 < transitions.size(); ++t2) {
      if (!transitions[t1].label || transitions[t1].label != transitions[t2].label) continue;
      if (!has_shared_marked_preplace(net, t1, t2))
        out.push_back({"c", "transitions '" + transitions[t1].id + "' and '" +
                                transitions[t2].id + "' share a label but no marked pre-place"});
    }
  }

  AtomSet used;
  for (const auto& t : transitions) {
    if (t.label) used.insert(*t.label);
  }
  for (const auto& a : used) {
    auto it = cn.owner.find(a);
    if (it == cn.owner.end()) {
      out.push_back({"ownership", "action '" + a + "' has no owner"});
    } else if (!cn.participants.count(it->second)) {
      out.push_back({"d", "action '" + a + "' is owned by '" + it->second +
                              "', who is not bound by the contract"});
    }
  }
  for (const auto& goal : cn.goals) {
    for (const auto& a : goal) {
      if (!net.alphabet().count(a)) out.push_back({"ownership", "goal atom '" + a + "' is not an action"});
    }
  }

  switch (is_occurrence_net(net, budget)) {
    case Verdict::holds: break;
    case Verdict::fails: out.push_back({"occurrence", "some transition can fire twice"}); break;
    case Verdict::inconclusive:
      out.push_back({"occurrence", "state space exceeds the exploration budget"});
      break;
  }
  if (!is_correctly_labeled(net))
    out.push_back({"labeling", "a labeled place receives tokens from a differently labeled transition"});
  return out;
}

Configuration configuration(const LendingNet& net, const ReachNode& node) {
  Configuration c;
  for (std::size_t t = 0; t < node.state.size(); ++t) {
    const auto& label = net.transition(t).label;
    if (node.state.count(t) > 0 && label) c.done.insert(*label);
  }
  for (std::size_t s = 0; s < node.marking.size(); ++s) {
    const auto& label = net.place(s).label;
    if (node.marking[s] < 0 && label) c.credits.insert(*label);
  }
  return c;
}

Configuration configuration(const ContractNet& cn, const ReachNode& node) {
  return configuration(cn.net, node);
}

AtomSet done_by_places(const LendingNet& net, const Marking& m) {
  std::map<Atom, std::vector<std::size_t>> shared;
  std::map<Atom, bool> seen;
  for (const auto& t : net.transitions()) {
    if (!t.label) continue;
    auto& acc = shared[*t.label];
    if (!seen[*t.label]) {
      acc = t.pre;
      seen[*t.label] = true;
    } else {
      std::vector<std::size_t> next;
      std::set_intersection(acc.begin(), acc.end(), t.pre.begin(), t.pre.end(),
                            std::back_inserter(next));
      acc = std::move(next);
    }
  }
  AtomSet out;
  for (const auto& [a, places] : shared) {
    if (places.size() == 1 && m[places.front()] == 0) out.insert(a);
  }
  return out;
}

GoalFamily product_union(const GoalFamily& g1, const GoalFamily& g2) {
  GoalFamily out;
  for (const auto& x : g1) {
    for (const auto& y : g2) {
      AtomSet u = x;
      u.insert(y.begin(), y.end());
      out.insert(std::move(u));
    }
  }
  return out;
}

ContractNet compose_contract_nets(const ContractNet& d1, const ContractNet& d2) {
  for (const auto& p : d1.participants) {
    if (d2.participants.count(p))
      throw CompositionError("participant '" + p + "' is bound by both contract nets");
  }
  ContractNet out;
  out.net = oplus(d1.net, d2.net);
  out.participants = d1.participants;
  out.participants.insert(d2.participants.begin(), d2.participants.end());
  out.owner = d1.owner;
  for (const auto& [a, p] : d2.owner) {
    auto [it, inserted] = out.owner.emplace(a, p);
    if (!inserted && it->second != p)
      throw CompositionError("action '" + a + "' has owners '" + it->second + "' and '" + p + "'");
  }
  out.goals = product_union(d1.goals, d2.goals);
  return out;
}

GoalSpec goal_of(const ContractNet& cn) {
  return [net = cn.net, goals = cn.goals](const ReachNode& n) {
    if (!is_honored(n.marking)) return false;
    return goals.count(configuration(net, n).done) > 0;
  };
}

WeakTermination weakly_terminates_in(const ContractNet& cn, Budget budget) {
  return weakly_terminates(cn.net, goal_of(cn), budget);
}

std::optional<AtomSet> urgent(const ContractNet& cn, const AtomSet& done, Budget budget) {
  const auto g = explore(cn.net, budget);
  auto per_node = urgent_sets(cn.net, g);
  if (!per_node) return std::nullopt;
  AtomSet out;
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    if (configuration(cn.net, g.node(i)).done == done) out.insert((*per_node)[i].begin(), (*per_node)[i].end());
  }
  return out;
}

}  // namespace lpn
