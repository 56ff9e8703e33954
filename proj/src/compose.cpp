#include "lpn/compose.hpp"

#include <algorithm>

namespace lpn {

std::optional<std::string> incompatibility(const LendingNet& n1, const LendingNet& n2) {
  if (n1.alphabet() != n2.alphabet()) return "(a) the nets have different label sets";
  for (const auto& p : n1.places()) {
    if (n2.place_index(p.id)) return "(b) place '" + p.id + "' occurs in both nets";
    if (n2.transition_index(p.id)) return "(b) id '" + p.id + "' is used by both nets";
  }
  for (const auto& t : n1.transitions()) {
    if (n2.transition_index(t.id)) return "(c) transition '" + t.id + "' occurs in both nets";
    if (n2.place_index(t.id)) return "(c) id '" + t.id + "' is used by both nets";
  }
  for (const auto& p : n1.places()) {
    if (p.initial > 0 && p.label) return "(d) marked place '" + p.id + "' is labeled";
  }
  for (const auto& p : n2.places()) {
    if (p.initial > 0 && p.label) return "(e) marked place '" + p.id + "' is labeled";
  }
  return std::nullopt;
}

bool compatible(const LendingNet& n1, const LendingNet& n2) {
  return !incompatibility(n1, n2).has_value();
}

namespace {

AtomSet transition_labels(const LendingNet& net) {
  AtomSet out;
  for (const auto& t : net.transitions()) {
    if (t.label) out.insert(*t.label);
  }
  return out;
}

// Places of `net` kept in the composition with a partner whose transitions carry `partner_labels`.
std::vector<bool> surviving_places(const LendingNet& net, const AtomSet& partner_labels) {
  std::vector<bool> keep(net.places().size(), true);
  for (std::size_t s = 0; s < net.places().size(); ++s) {
    const auto& label = net.place(s).label;
    if (label && partner_labels.count(*label) && net.consumers(s).empty()) keep[s] = false;
  }
  return keep;
}

void add_component(NetBuilder& b, const LendingNet& net, const std::vector<bool>& keep) {
  for (std::size_t s = 0; s < net.places().size(); ++s) {
    if (!keep[s]) continue;
    const auto& p = net.place(s);
    b.place(p.id, {p.label, p.lending, p.initial});
  }
  for (const auto& t : net.transitions()) {
    b.transition(t.id, t.label);
    for (auto s : t.pre) b.arc(net.place(s).id, t.id);
    for (auto s : t.post) {
      if (keep[s]) b.arc(t.id, net.place(s).id);
    }
  }
}

void add_cross_arcs(NetBuilder& b, const LendingNet& from, const LendingNet& to,
                    const std::vector<bool>& keep_to) {
  for (const auto& t : from.transitions()) {
    if (!t.label) continue;
    for (std::size_t s = 0; s < to.places().size(); ++s) {
      if (keep_to[s] && to.place(s).label == t.label) b.arc(t.id, to.place(s).id);
    }
  }
}

}  // namespace

LendingNet oplus(const LendingNet& n1, const LendingNet& n2) {
  if (auto why = incompatibility(n1, n2)) throw CompositionError("incompatible nets: " + *why);
  const auto keep1 = surviving_places(n1, transition_labels(n2));
  const auto keep2 = surviving_places(n2, transition_labels(n1));
  NetBuilder b;
  b.alphabet(n1.alphabet());
  add_component(b, n1, keep1);
  add_component(b, n2, keep2);
  add_cross_arcs(b, n2, n1, keep1);
  add_cross_arcs(b, n1, n2, keep2);
  return b.build();
}

LendingNet with_namespace(const LendingNet& net, const std::string& prefix) {
  NetBuilder b;
  b.alphabet(net.alphabet());
  for (const auto& p : net.places()) b.place(prefix + p.id, {p.label, p.lending, p.initial});
  for (const auto& t : net.transitions()) {
    b.transition(prefix + t.id, t.label);
    for (auto s : t.pre) b.arc(prefix + net.place(s).id, prefix + t.id);
    for (auto s : t.post) b.arc(prefix + t.id, prefix + net.place(s).id);
  }
  return b.build();
}

MarkingGoal with_namespace(const MarkingGoal& goal, const std::string& prefix) {
  MarkingGoal out = goal;
  for (auto& c : out.clauses) {
    for (auto& pc : c.constraints) pc.place = prefix + pc.place;
  }
  return out;
}

std::optional<TraceSet> traces(const LendingNet& net, Budget budget) {
  const auto g = explore(net, budget);
  if (!g.complete()) return std::nullopt;
  // Edges always point to a larger state, hence to a later node: reverse index order is topological.
  std::vector<TraceSet> from(g.nodes().size());
  std::size_t total = 0;
  for (std::size_t i = g.nodes().size(); i-- > 0;) {
    auto& out = from[i];
    out.insert(Trace{});
    for (auto e : g.out_edges(i)) {
      const auto& edge = g.edges()[e];
      const auto& label = net.transition(edge.transition).label;
      for (const auto& tail : from[edge.target]) {
        if (!label) {
          out.insert(tail);
          continue;
        }
        Trace t;
        t.reserve(tail.size() + 1);
        t.push_back(*label);
        t.insert(t.end(), tail.begin(), tail.end());
        out.insert(std::move(t));
      }
    }
    total += out.size();
    if (total > budget.max_traces) return std::nullopt;
  }
  return std::move(from[g.root()]);
}

Verdict approximates(const LendingNet& n1, const LendingNet& n2, Budget budget) {
  auto t1 = traces(n1, budget);
  auto t2 = traces(n2, budget);
  if (!t1 || !t2) return Verdict::inconclusive;
  return std::includes(t2->begin(), t2->end(), t1->begin(), t1->end()) ? Verdict::holds
                                                                        : Verdict::fails;
}

Verdict trace_equivalent(const LendingNet& n1, const LendingNet& n2, Budget budget) {
  auto t1 = traces(n1, budget);
  auto t2 = traces(n2, budget);
  if (!t1 || !t2) return Verdict::inconclusive;
  return *t1 == *t2 ? Verdict::holds : Verdict::fails;
}

}  // namespace lpn
