#pragma once

#include <random>
#include <string>
#include <vector>

#include "lpn/compiler.hpp"
#include "lpn/compose.hpp"
#include "lpn/formats.hpp"

namespace lpn::testing {

inline std::string data_path(const std::string& name) { return std::string(LPN_TEST_DATA_DIR) + "/" + name; }

inline NetDocument load_net(const std::string& name) { return parse_net(read_file(data_path(name))); }
inline PclContract load_contract(const std::string& name) {
  return parse_contract(read_file(data_path(name)));
}

// The three-kids net, built by hand rather than parsed.
inline LendingNet carl_net() {
  return NetBuilder()
      .alphabet({"a", "b", "c"})
      .place("p0", {std::nullopt, false, 1})
      .place("p1", {"c", false, 0})
      .place("p2", {"a", true, 0})
      .place("p3", {"b", false, 0})
      .place("p4", {"b", true, 0})
      .transition("a", "a")
      .transition("b", "b")
      .transition("c", "c")
      .arc("c", "p1")
      .arc("b", "p4")
      .arc("b", "p3")
      .arc("p1", "b")
      .arc("a", "p2")
      .arc("p2", "c")
      .arc("p3", "a")
      .arc("p4", "c")
      .arc("p0", "c")
      .build();
}

inline LendingNet fix_n() { return load_net("fix_n.lpn").net; }
inline LendingNet fix_np() { return load_net("fix_np.lpn").net; }
inline LendingNet fix_npp() { return load_net("fix_npp.lpn").net; }

// "a & b ->> c", "b -> a", "a" (fact), "->> a".
inline HornClause clause(const std::string& text) {
  PclContract c = parse_contract([&] {
    std::string doc;
    for (char ch = 'a'; ch <= 'z'; ++ch) doc += std::string("owner ") + ch + " P\n";
    doc += "participant P\n";
    if (text.find("->") == std::string::npos) return doc + "fact " + text + "\n";
    return doc + "clause " + text + "\n";
  }());
  return c.theory.front();
}

inline Theory theory(std::initializer_list<const char*> clauses) {
  Theory t;
  for (const auto* c : clauses) t.push_back(clause(c));
  return t;
}

// Every atom owned by one participant bound by the contract.
inline PclContract contract_of(Theory t, GoalFamily goals = {AtomSet{}}) {
  PclContract c;
  c.theory = std::move(t);
  c.goals = std::move(goals);
  c.participants = {"P"};
  for (const auto& a : alphabet_of(c)) c.owner[a] = "P";
  return c;
}

inline AtomSet atoms(std::initializer_list<const char*> xs) {
  AtomSet out;
  for (const auto* x : xs) out.insert(x);
  return out;
}

inline std::string traces_str(const std::set<Trace>& ts) {
  std::string out;
  for (const auto& t : ts) out += "[" + format_trace(t) + "]";
  return out;
}

// ---- random generators ----

inline const std::vector<std::string>& letters() {
  static const std::vector<std::string> v{"a", "b", "c", "d"};
  return v;
}

inline bool coin(std::mt19937& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }
inline int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// A random lending net over {a,b,c}. Marked places are unlabeled so that any
// two such nets with distinct prefixes are compatible.
inline LendingNet random_net(std::mt19937& rng, const std::string& prefix) {
  const AtomSet alpha{"a", "b", "c"};
  auto pick = [&]() { return letters()[uniform(rng, 0, 2)]; };
  NetBuilder b;
  b.alphabet(alpha);
  const int np = uniform(rng, 1, 4);
  const int nt = uniform(rng, 1, 3);
  std::vector<std::string> places, transitions;
  for (int i = 0; i < np; ++i) {
    PlaceSpec spec;
    if (i == 0 || coin(rng, 0.25)) {
      spec.tokens = 1;
    } else {
      spec.label = pick();
      spec.lending = coin(rng, 0.3);
    }
    places.push_back(prefix + "p" + std::to_string(i));
    b.place(places.back(), spec);
  }
  for (int i = 0; i < nt; ++i) {
    transitions.push_back(prefix + "t" + std::to_string(i));
    b.transition(transitions.back(), coin(rng, 0.9) ? std::optional<Atom>(pick()) : std::nullopt);
    b.arc(places[uniform(rng, 0, np - 1)], transitions.back());
    for (const auto& p : places) {
      if (coin(rng, 0.25)) b.arc(p, transitions.back());
      if (coin(rng, 0.3)) b.arc(transitions.back(), p);
    }
  }
  return b.build();
}

// Random occurrence net, found by rejection.
inline LendingNet random_occurrence_net(std::mt19937& rng, const std::string& prefix) {
  for (;;) {
    auto n = random_net(rng, prefix);
    if (is_occurrence_net(n, Budget{2000, 100000}) == Verdict::holds) return n;
  }
}

inline Theory random_theory(std::mt19937& rng, int max_atoms = 4, int max_clauses = 5) {
  const int na = uniform(rng, 1, max_atoms);
  const int nc = uniform(rng, 0, max_clauses);
  auto pick = [&]() { return letters()[uniform(rng, 0, na - 1)]; };
  Theory t;
  for (int i = 0; i < nc; ++i) {
    HornClause c;
    const int body = uniform(rng, 0, 2);
    for (int k = 0; k < body; ++k) c.body.insert(pick());
    c.head = pick();
    c.kind = coin(rng) ? Implication::contractual : Implication::intuitionistic;
    if (std::find(t.begin(), t.end(), c) == t.end()) t.push_back(std::move(c));
  }
  return t;
}

inline GoalFamily random_goals(std::mt19937& rng, const AtomSet& alpha) {
  GoalFamily g;
  const int n = uniform(rng, 1, 2);
  for (int i = 0; i < n; ++i) {
    AtomSet s;
    for (const auto& a : alpha) {
      if (coin(rng, 0.4)) s.insert(a);
    }
    g.insert(s);
  }
  return g;
}

inline PclContract random_contract(std::mt19937& rng) {
  auto t = random_theory(rng);
  auto alpha = atoms_of(t);
  if (alpha.empty()) alpha.insert("a");
  return contract_of(std::move(t), random_goals(rng, alpha));
}

// Two composable contracts: a shared ownership map over {a,b,c}, heads of the
// first owned by A, heads of the second by B.
inline std::pair<PclContract, PclContract> random_contract_pair(std::mt19937& rng) {
  const std::vector<std::string> alpha{"a", "b", "c"};
  std::map<Atom, Participant> owner;
  for (const auto& a : alpha) owner[a] = coin(rng) ? "A" : "B";
  auto make = [&](const Participant& p) {
    PclContract c;
    c.participants = {p};
    c.owner = owner;
    const int nc = uniform(rng, 0, 3);
    for (int i = 0; i < nc; ++i) {
      HornClause cl;
      cl.head = alpha[uniform(rng, 0, 2)];
      if (owner[cl.head] != p) continue;
      const int body = uniform(rng, 0, 2);
      for (int k = 0; k < body; ++k) cl.body.insert(alpha[uniform(rng, 0, 2)]);
      cl.kind = coin(rng) ? Implication::contractual : Implication::intuitionistic;
      if (std::find(c.theory.begin(), c.theory.end(), cl) == c.theory.end()) c.theory.push_back(cl);
    }
    c.goals = random_goals(rng, AtomSet(alpha.begin(), alpha.end()));
    return c;
  };
  auto c1 = make("A");
  auto c2 = make("B");
  return {c1, c2};
}

}  // namespace lpn::testing
