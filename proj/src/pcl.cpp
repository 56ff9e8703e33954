#include "lpn/pcl.hpp"

#include <algorithm>

namespace lpn {

AtomSet atoms_of(const Theory& theory) {
  AtomSet out;
  for (const auto& c : theory) {
    out.insert(c.body.begin(), c.body.end());
    out.insert(c.head);
  }
  return out;
}

AtomSet alphabet_of(const PclContract& c) {
  AtomSet out = atoms_of(c.theory);
  for (const auto& g : c.goals) out.insert(g.begin(), g.end());
  for (const auto& [a, p] : c.owner) out.insert(a);
  return out;
}

std::vector<std::string> check_contract(const PclContract& c) {
  std::vector<std::string> out;
  AtomSet used = atoms_of(c.theory);
  for (const auto& g : c.goals) used.insert(g.begin(), g.end());
  for (const auto& a : used) {
    if (!c.owner.count(a)) out.push_back("atom '" + a + "' has no owner");
  }
  AtomSet heads;
  for (const auto& clause : c.theory) heads.insert(clause.head);
  for (const auto& h : heads) {
    auto it = c.owner.find(h);
    if (it != c.owner.end() && !c.participants.count(it->second))
      out.push_back("head '" + h + "' is owned by '" + it->second +
                    "', who is not bound by the contract");
  }
  return out;
}

namespace {

bool subset(const AtomSet& a, const AtomSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

class Saturation {
 public:
  explicit Saturation(std::span<const HornClause> theory) : theory_(theory) {}

  const AtomSet& provable(const AtomSet& facts) {
    if (auto it = memo_.find(facts); it != memo_.end()) return it->second;
    AtomSet p = facts;
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& c : theory_) {
        if (p.count(c.head)) continue;
        bool fires = subset(c.body, p);
        if (!fires && c.kind == Implication::contractual) {
          AtomSet extended = p;
          extended.insert(c.head);
          fires = subset(c.body, provable(extended));
        }
        if (fires) {
          p.insert(c.head);
          changed = true;
        }
      }
    }
    return memo_.emplace(facts, std::move(p)).first->second;
  }

 private:
  std::span<const HornClause> theory_;
  std::map<AtomSet, AtomSet> memo_;
};

AtomSet atom_set(const ProofTrace& t) { return AtomSet(t.begin(), t.end()); }

class TraceEnumerator {
 public:
  explicit TraceEnumerator(std::span<const HornClause> theory) : theory_(theory) {}

  std::set<ProofTrace> traces(const AtomSet& facts) {
    if (auto it = memo_.find(facts); it != memo_.end()) return it->second;
    std::set<ProofTrace> s{ProofTrace{}};
    for (std::size_t before = 0; before != s.size();) {
      before = s.size();
      const std::vector<ProofTrace> snapshot(s.begin(), s.end());
      for (const auto& sigma : snapshot) {
        const auto atoms = atom_set(sigma);
        for (const auto& a : facts) s.insert(concat(sigma, {a}));
        for (const auto& c : theory_) {
          if (c.kind == Implication::intuitionistic && subset(c.body, atoms))
            s.insert(concat(sigma, {c.head}));
        }
      }
      for (const auto& c : theory_) {
        if (c.kind != Implication::contractual) continue;
        std::set<ProofTrace> source;
        if (facts.count(c.head)) {
          source = s;
        } else {
          AtomSet extended = facts;
          extended.insert(c.head);
          source = traces(extended);
        }
        for (const auto& sigma : source) {
          if (!subset(c.body, atom_set(sigma))) continue;
          for (auto& t : interleave(sigma, {c.head})) s.insert(std::move(t));
        }
      }
    }
    memo_.emplace(facts, s);
    return s;
  }

 private:
  std::span<const HornClause> theory_;
  std::map<AtomSet, std::set<ProofTrace>> memo_;
};

void shuffle(const ProofTrace& a, std::size_t i, const ProofTrace& b, std::size_t j,
             ProofTrace& acc, std::set<ProofTrace>& out) {
  if (i == a.size() && j == b.size()) {
    out.insert(normalize(acc));
    return;
  }
  if (i < a.size()) {
    acc.push_back(a[i]);
    shuffle(a, i + 1, b, j, acc, out);
    acc.pop_back();
  }
  if (j < b.size()) {
    acc.push_back(b[j]);
    shuffle(a, i, b, j + 1, acc, out);
    acc.pop_back();
  }
}

}  // namespace

AtomSet provable_atoms(std::span<const HornClause> theory, const AtomSet& assumed) {
  Saturation sat(theory);
  return sat.provable(assumed);
}

bool admits_agreement(const PclContract& c) {
  const auto p = provable_atoms(c.theory);
  return std::any_of(c.goals.begin(), c.goals.end(),
                     [&](const AtomSet& g) { return subset(g, p); });
}

PclContract compose_contracts(const PclContract& c1, const PclContract& c2) {
  for (const auto& p : c1.participants) {
    if (c2.participants.count(p))
      throw ContractError("participant '" + p + "' is bound by both contracts");
  }
  auto preimage = [](const PclContract& c, const Participant& p) {
    AtomSet out;
    for (const auto& [a, q] : c.owner) {
      if (q == p) out.insert(a);
    }
    return out;
  };
  std::set<Participant> all = c1.participants;
  all.insert(c2.participants.begin(), c2.participants.end());
  for (const auto& p : all) {
    if (preimage(c1, p) != preimage(c2, p))
      throw ContractError("the contracts disagree on the actions of '" + p + "'");
  }

  PclContract out;
  out.theory = c1.theory;
  for (const auto& clause : c2.theory) {
    if (std::find(out.theory.begin(), out.theory.end(), clause) == out.theory.end())
      out.theory.push_back(clause);
  }
  out.participants = std::move(all);
  out.owner = c1.owner;
  for (const auto& [a, p] : c2.owner) {
    auto [it, inserted] = out.owner.emplace(a, p);
    if (!inserted && it->second != p)
      throw ContractError("atom '" + a + "' has owners '" + it->second + "' and '" + p + "'");
  }
  out.goals = product_union(c1.goals, c2.goals);
  return out;
}

ProofTrace normalize(const ProofTrace& trace) {
  ProofTrace out;
  for (const auto& a : trace) {
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  return out;
}

ProofTrace concat(const ProofTrace& s1, const ProofTrace& s2) {
  ProofTrace joined = s1;
  joined.insert(joined.end(), s2.begin(), s2.end());
  return normalize(joined);
}

std::set<ProofTrace> interleave(const ProofTrace& s1, const ProofTrace& s2) {
  std::set<ProofTrace> out;
  ProofTrace acc;
  shuffle(s1, 0, s2, 0, acc, out);
  return out;
}

std::set<ProofTrace> proof_traces(std::span<const HornClause> theory, const AtomSet& assumed) {
  TraceEnumerator e(theory);
  return e.traces(assumed);
}

AtomSet urgent_logic(const PclContract& c, const AtomSet& done) {
  AtomSet out;
  for (const auto& t : proof_traces(c.theory, done)) {
    if (t.size() <= done.size()) continue;
    if (AtomSet(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(done.size())) != done) continue;
    out.insert(t[done.size()]);
  }
  return out;
}

std::string format_clause(const HornClause& clause) {
  if (clause.is_fact()) return clause.head;
  std::string out;
  for (const auto& a : clause.body) {
    if (!out.empty()) out += " & ";
    out += a;
  }
  if (!out.empty()) out += ' ';
  out += clause.kind == Implication::contractual ? "->> " : "-> ";
  out += clause.head;
  return out;
}

}  // namespace lpn
