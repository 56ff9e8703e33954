#include "lpn/compiler.hpp"

#include <map>

#include "lpn/compose.hpp"

namespace lpn {

std::string transition_name(const HornClause& clause) {
  std::string out = "[";
  bool first = true;
  for (const auto& a : clause.body) {
    if (!first) out += '&';
    first = false;
    out += a;
  }
  out += clause.kind == Implication::contractual ? "->>" : "->";
  out += clause.head;
  out += ']';
  return out;
}

std::string head_place_name(const Atom& a) { return "(" + a + ",*)"; }

std::string delivery_place_name(const Atom& a, const std::string& transition) {
  return "(" + a + "," + transition + ")";
}

ContractNet compile(const PclContract& c, CompileOptions options) {
  if (auto problems = check_contract(c); !problems.empty())
    throw ContractError("ill-formed contract: " + problems.front());

  const AtomSet alphabet = alphabet_of(c);

  struct Compiled {
    std::string id;
    const HornClause* clause;
  };
  std::vector<Compiled> transitions;
  std::map<std::string, int> occurrences;
  for (const auto& clause : c.theory) {
    auto id = transition_name(clause);
    const int n = ++occurrences[id];
    if (n > 1) id += "@" + std::to_string(n);
    transitions.push_back({std::move(id), &clause});
  }

  AtomSet heads;
  for (const auto& clause : c.theory) heads.insert(clause.head);

  struct PendingPlace {
    std::string id;
    PlaceSpec spec;
    bool has_arcs = false;
  };
  std::map<std::string, PendingPlace> places;
  std::vector<std::pair<std::string, std::string>> arcs;

  for (const auto& a : heads) places[head_place_name(a)] = {head_place_name(a), {std::nullopt, false, 1}};
  for (const auto& x : alphabet) {
    for (const auto& t : transitions) {
      const bool lending =
          t.clause->kind == Implication::contractual && !t.clause->body.empty();
      auto id = delivery_place_name(x, t.id);
      places[id] = {id, {x, lending, 0}};
    }
  }
  for (const auto& t : transitions) {
    arcs.emplace_back(head_place_name(t.clause->head), t.id);
    for (const auto& x : t.clause->body) arcs.emplace_back(delivery_place_name(x, t.id), t.id);
    for (const auto& target : transitions)
      arcs.emplace_back(t.id, delivery_place_name(t.clause->head, target.id));
  }
  for (const auto& [from, to] : arcs) {
    if (auto it = places.find(from); it != places.end()) it->second.has_arcs = true;
    if (auto it = places.find(to); it != places.end()) it->second.has_arcs = true;
  }

  NetBuilder b;
  b.alphabet(alphabet);
  for (const auto& [id, p] : places) {
    if (options.prune && !p.has_arcs && p.spec.tokens == 0) continue;
    b.place(id, p.spec);
  }
  for (const auto& t : transitions) b.transition(t.id, t.clause->head);
  for (const auto& [from, to] : arcs) b.arc(from, to);

  return {b.build(), c.participants, c.owner, c.goals};
}

Verdict compile_compose_commutes(const PclContract& c1, const PclContract& c2, Budget budget) {
  const auto whole = compile(compose_contracts(c1, c2));
  const auto parts = oplus(compile(c1).net, compile(c2).net);
  return trace_equivalent(whole.net, parts, budget);
}

}  // namespace lpn
