// Acceptance suite: one line per criterion, non-zero exit when any fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "lpn/cli.hpp"
#include "support.hpp"

using namespace lpn;
using namespace lpn::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void info(const std::string& what) { notes.push_back("info: " + what); }
};

std::string show(const AtomSet& s) {
  std::string out = "{";
  for (const auto& a : s) out += (out.size() > 1 ? "," : "") + a;
  return out + "}";
}

std::string show_theory(const Theory& t) {
  std::string out;
  for (const auto& c : t) out += (out.empty() ? "" : "; ") + format_clause(c);
  return "{" + out + "}";
}

std::vector<AtomSet> subsets(const AtomSet& s) {
  std::vector<Atom> v(s.begin(), s.end());
  std::vector<AtomSet> out;
  for (unsigned mask = 0; mask < (1u << v.size()); ++mask) {
    AtomSet x;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mask & (1u << i)) x.insert(v[i]);
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<std::size_t> node_with(const ReachGraph& g, const Marking& m) {
  for (std::size_t i = 0; i < g.nodes().size(); ++i)
    if (g.nodes()[i].marking == m) return i;
  return std::nullopt;
}

MarkingGoal drained_goal(const std::string& suffix) {
  return {{GoalClause{{{"p3" + suffix, PlaceConstraint::Op::eq, 0}}, true}}};
}

std::set<std::string> transition_ids(const LendingNet& n) {
  std::set<std::string> out;
  for (const auto& t : n.transitions()) out.insert(t.id);
  return out;
}

// ---------------------------------------------------------------------------

Outcome carl_net_run() {
  Outcome o;
  const auto n = load_net("fix_n1.lpn").net;
  const auto g = explore(n);
  o.require(g.complete() && g.nodes().size() == 4 && g.edges().size() == 3, "reachability graph is a 4-node chain");
  for (std::size_t i = 0; i < g.nodes().size(); ++i)
    o.require(g.out_edges(i).size() <= 1, "at most one transition enabled at every node");
  o.require(traces(n).value() == TraceSet{{}, {"c"}, {"c", "b"}, {"c", "b", "a"}}, "firing order c, b, a");
  const auto fs = run(n, {"c", "b", "a"});
  o.require(!is_honored(fs.steps[0].after), "marking after c is not honored");
  o.require(is_honored(fs.final_marking()), "final marking is honored");
  o.require(is_occurrence_net(n) == Verdict::holds, "occurrence net");
  o.require(is_correctly_labeled(n), "correctly labeled");
  return o;
}

Outcome mutual_implication() {
  Outcome o;
  const auto n = fix_n(), np = fix_np(), npp = fix_npp();
  const auto bad = oplus(n, np);
  const auto gb = explore(bad);
  o.require(gb.nodes().size() == 1, "N + N' has exactly one reachable node");
  const auto bad_goal = compose_goals(n, drained_goal(""), np, drained_goal("'"), bad);
  o.require(weakly_terminates(bad, to_goal(bad, bad_goal)).verdict == Verdict::fails, "N + N' fails weak termination");

  const auto good = oplus(npp, np);
  const auto good_goal = compose_goals(npp, drained_goal("''"), np, drained_goal("'"), good);
  o.require(weakly_terminates(good, to_goal(good, good_goal)).verdict == Verdict::holds, "N'' + N' weakly terminates");

  const auto gg = explore(good);
  o.require(urgent_at(good, gg, gg.root()) == atoms({"a"}), "urgent {a} at the initial node of N'' + N'");
  const auto after = node_with(gg, fire(good, good.initial_marking(), good.require_transition("ta")));
  o.require(after && urgent_at(good, gg, *after) == atoms({"b"}), "urgent {b} after a");
  for (const auto& [name, net] : std::vector<std::pair<std::string, LendingNet>>{{"N", n}, {"N'", np}, {"N''", npp}, {"N + N'", bad}}) {
    const auto g = explore(net);
    o.require(urgent_at(net, g, g.root()) == AtomSet{}, "no urgent action in " + name);
  }
  return o;
}

Outcome self_loan() {
  Outcome o;
  const auto c = load_contract("aa.pcl");
  const auto cn = compile(c);
  const auto en = enabled_transitions(cn.net, cn.net.initial_marking());
  o.require(en.size() == 1, "one transition enabled initially");
  if (en.size() == 1) o.require(is_honored(fire(cn.net, cn.net.initial_marking(), en[0])), "one step reaches an honored marking");
  o.require(provable_atoms(c.theory) == atoms({"a"}), "a ->> a proves a");
  o.require(admits_agreement(c), "agreement via logic");
  o.require(weakly_terminates_in(cn).verdict == Verdict::holds, "agreement via net");
  return o;
}

Outcome unprotected_a() {
  Outcome o;
  const auto c = load_contract("anp.pcl");
  o.require(provable_atoms(c.theory) == atoms({"a", "b", "c"}), "provable atoms {a,b,c}");
  const auto cn = compile(c);
  const auto& net = cn.net;
  const auto t1 = net.require_transition("[b->>a]");
  const auto t2 = net.require_transition("[a->c]");
  const auto t3 = net.require_transition("[a->b]");
  o.require(enabled_transitions(net, net.initial_marking()) == std::vector<std::size_t>{t1}, "only t1 enabled initially");
  const auto m1 = fire(net, net.initial_marking(), t1);
  o.require(enabled(net, m1, t2) && enabled(net, m1, t3), "t2 and t3 enabled after t1");
  o.require(!is_honored(fire(net, m1, t2)), "t1 t2 is not honored");
  o.require(is_honored(fire(net, m1, t3)), "t1 t3 is honored");
  o.info("t1 t2 t3 honored: " + std::string(is_honored(fire(net, fire(net, m1, t2), t3)) ? "yes" : "no"));
  return o;
}

Outcome toys() {
  Outcome o;
  const auto kids = compose_contracts(compose_contracts(load_contract("alice.pcl"), load_contract("bob.pcl")),
                                      load_contract("carl.pcl"));
  o.require(kids == load_contract("toys.pcl"), "the kids' contracts compose to the toys contract");
  o.require(admits_agreement(kids), "admits an agreement");
  const auto cn = compile(kids);
  o.require(cn.goals == GoalFamily{atoms({"a", "b", "c"})}, "goals {{a,b,c}}");
  o.require(weakly_terminates_in(cn).verdict == Verdict::holds, "compiled composite weakly terminates");
  const auto nets = compose_contract_nets(compose_contract_nets(compile(load_contract("alice.pcl")), compile(load_contract("bob.pcl"))),
                                          compile(load_contract("carl.pcl")));
  o.require(weakly_terminates_in(nets).verdict == Verdict::holds, "composed compiled nets weakly terminate");
  return o;
}

Outcome urgent_uab() {
  Outcome o;
  const auto c = load_contract("uab.pcl");
  o.require(proof_traces(c.theory) == std::set<ProofTrace>{{}, {"a", "b"}}, "proof traces {ε, ab}");
  const auto cn = compile(c);
  for (const auto& x : subsets(atoms({"a", "b"}))) {
    const auto logic = urgent_logic(c, x);
    const auto net = urgent(cn, x);
    o.require(net && *net == logic, "X=" + show(x) + ": logic " + show(logic) + " vs net " + (net ? show(*net) : "?"));
  }
  // the net has no node whose done set is {b}; with b assumed as a fact it does
  auto assumed = c;
  assumed.theory.push_back(HornClause::fact("b"));
  const auto with_b = urgent(compile(assumed), atoms({"b"}));
  o.info("net of theory plus fact b at X={b}: " + (with_b ? show(*with_b) : "?"));
  return o;
}

Outcome interleaving() {
  Outcome o;
  const auto got = interleave({"a", "b", "a"}, {"c", "a"});
  o.require(got == std::set<ProofTrace>{{"a", "b", "c"}, {"a", "c", "b"}, {"c", "a", "b"}}, "aba | ca = {abc, acb, cab}, got " + traces_str(got));
  return o;
}

Outcome cross_validation() {
  Outcome o;
  std::mt19937 rng(20240601);
  int counts[4] = {0, 0, 0, 0};
  std::string first[4];
  auto record = [&](int i, const std::string& what) {
    if (counts[i]++ == 0) first[i] = what;
  };
  const int theories = 200;
  for (int iter = 0; iter < theories; ++iter) {
    const auto c = random_contract(rng);
    const auto p = provable_atoms(c.theory);
    const auto traces = proof_traces(c.theory);
    AtomSet occurring;
    for (const auto& s : traces) occurring.insert(s.begin(), s.end());
    if (p != occurring) record(0, show_theory(c.theory) + ": provable " + show(p) + ", in traces " + show(occurring));

    const auto cn = compile(c);
    const auto g = explore(cn.net);
    std::set<AtomSet> honored_done, reachable_done;
    for (const auto& n : g.nodes()) {
      const auto conf = configuration(cn, n);
      reachable_done.insert(conf.done);
      if (conf.credits.empty()) honored_done.insert(conf.done);
    }
    for (const auto& x : subsets(alphabet_of(c))) {
      const bool provable = std::includes(p.begin(), p.end(), x.begin(), x.end());
      if (provable != honored_done.count(x) > 0) {
        record(1, show_theory(c.theory) + ", C=" + show(x) + ": provable=" + (provable ? "yes" : "no") +
                      ", configuration (C,{}) reachable=" + (honored_done.count(x) ? "yes" : "no"));
        break;
      }
    }
    const bool agreement = admits_agreement(c);
    const auto wt = weakly_terminates_in(cn).verdict;
    if (agreement != (wt == Verdict::holds)) {
      std::string goals;
      for (const auto& gset : c.goals) goals += show(gset);
      record(2, show_theory(c.theory) + ", goals {" + goals + "}: agreement=" + (agreement ? "yes" : "no") +
                    ", weak termination=" + std::string(to_string(wt)));
    }
    for (const auto& x : reachable_done) {
      const auto logic = urgent_logic(c, x);
      const auto net = urgent(cn, x).value();
      if (logic != net) {
        record(3, show_theory(c.theory) + ", X=" + show(x) + ": logic " + show(logic) + ", net " + show(net));
        break;
      }
    }
  }
  const char* names[4] = {"(i) provable atoms vs proof traces", "(ii) provable sets vs configurations (C,{})",
                          "(iii) agreement vs weak termination", "(iv) logic vs net urgency"};
  for (int i = 0; i < 4; ++i) {
    const auto summary = std::string(names[i]) + ": " + std::to_string(counts[i]) + " of " + std::to_string(theories) +
                         " theories disagree" + (counts[i] ? ", e.g. " + first[i] : "");
    if (counts[i]) {
      o.require(false, summary);
    } else {
      o.info(summary);
    }
  }
  return o;
}

Outcome composition_algebra() {
  Outcome o;
  std::mt19937 rng(424242);
  int samples = 0, occ = 0, contracts = 0;
  for (int iter = 0; iter < 120; ++iter) {
    const auto n1 = random_net(rng, "x");
    const auto n2 = random_net(rng, "y");
    const auto n3 = random_net(rng, "z");
    ++samples;
    if (oplus(n1, n2) != oplus(n2, n1)) {
      o.require(false, "commutativity:\n" + serialize_net(n1) + "--\n" + serialize_net(n2));
      break;
    }
    if (oplus(n1, oplus(n2, n3)) != oplus(oplus(n1, n2), n3)) {
      o.require(false, "associativity:\n" + serialize_net(n1) + "--\n" + serialize_net(n2) + "--\n" + serialize_net(n3));
      break;
    }
  }
  for (int iter = 0; iter < 400 && occ < 100; ++iter) {
    const auto n1 = random_occurrence_net(rng, "x");
    const auto n2 = random_occurrence_net(rng, "y");
    const auto c = oplus(n1, n2);
    if (is_occurrence_net(c, Budget{5000, 100000}) != Verdict::holds) continue;
    ++occ;
    for (const auto* n : {&n1, &n2}) {
      if (trace_equivalent(*n, subnet(c, transition_ids(*n))) != Verdict::holds) {
        o.require(false, "projection:\n" + serialize_net(n1) + "--\n" + serialize_net(n2));
        iter = 400;
        break;
      }
    }
  }
  for (int iter = 0; iter < 100; ++iter) {
    const auto [c1, c2] = random_contract_pair(rng);
    ++contracts;
    if (compile_compose_commutes(c1, c2) != Verdict::holds) {
      o.require(false, "compilation vs composition:\n" + serialize_contract(c1) + "--\n" + serialize_contract(c2));
      break;
    }
  }
  o.require(occ >= 100, "at least 100 occurrence-net pairs sampled (got " + std::to_string(occ) + ")");
  o.info(std::to_string(samples) + " net triples, " + std::to_string(occ) + " occurrence pairs, " +
         std::to_string(contracts) + " contract pairs");
  return o;
}

Outcome occurrence_by_construction() {
  Outcome o;
  std::mt19937 rng(777);
  std::vector<PclContract> contracts;
  for (const auto* name : {"aa.pcl", "anp.pcl", "toys.pcl", "uab.pcl", "alice.pcl", "bob.pcl", "carl.pcl"})
    contracts.push_back(load_contract(name));
  for (int i = 0; i < 200; ++i) contracts.push_back(random_contract(rng));
  for (const auto& c : contracts) {
    const auto cn = compile(c);
    const auto violations = validate(cn);
    if (!violations.empty()) {
      o.require(false, show_theory(c.theory) + ": (" + violations.front().condition + ") " + violations.front().detail);
      break;
    }
    const auto g = explore(cn.net);
    const bool sets = g.complete() && std::all_of(g.nodes().begin(), g.nodes().end(),
                                                  [](const ReachNode& n) { return n.state.is_set(); });
    if (!sets) {
      o.require(false, show_theory(c.theory) + ": a transition fires twice");
      break;
    }
  }
  o.info(std::to_string(contracts.size()) + " compiled contracts");
  return o;
}

Outcome determinism() {
  Outcome o;
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(LPN_TEST_DATA_DIR)) files.push_back(e.path().filename().string());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const auto text = read_file(data_path(f));
    const auto doc = parse_document(f, text);
    if (const auto* c = std::get_if<PclContract>(&doc)) {
      o.require(parse_contract(serialize_contract(*c)) == *c, "round trip of " + f);
    } else {
      const auto& nd = std::get<NetDocument>(doc);
      o.require(parse_net(serialize_net(nd)) == nd, "round trip of " + f);
    }
  }
  auto cli = [](std::vector<std::string> args) {
    args.insert(args.begin(), "lpn");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::to_string(code) + "\n" + out.str() + "\n" + err.str();
  };
  const std::vector<std::vector<std::string>> commands{
      {"parse", data_path("toys.pcl")},
      {"compile", data_path("toys.pcl")},
      {"compose", data_path("fix_npp.lpn"), data_path("fix_np.lpn")},
      {"compose", data_path("fix_n.lpn"), data_path("fix_n.lpn")},
      {"check", "wt", data_path("n_np.lpn")},
      {"check", "agreement", data_path("toys.pcl")},
      {"urgent", data_path("uab.pcl"), "--done", "a"},
      {"traces", data_path("fix_n1.lpn")},
      {"dot", data_path("fix_n1.lpn")},
  };
  for (const auto& c : commands) {
    const auto first = cli(c);
    for (int i = 0; i < 3; ++i) o.require(cli(c) == first, "repeated run of " + c.front() + " " + c.back());
  }
  o.info(std::to_string(files.size()) + " fixture files, " + std::to_string(commands.size()) + " commands");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"carl net: order c b a, credit then honored, occurrence, labeling", carl_net_run},
      {"mutual implication nets: deadlock, weak termination, urgency", mutual_implication},
      {"a ->> a: one step to honored, agreement by logic and by net", self_loan},
      {"unprotected a: provability, enabled transitions, honored continuation", unprotected_a},
      {"three kids: composition, agreement, weak termination", toys},
      {"a -> b, b ->> a: proof traces and urgency in logic and net", urgent_uab},
      {"interleaving aba | ca", interleaving},
      {"randomized logic/net cross-validation", cross_validation},
      {"algebra of composition", composition_algebra},
      {"compiled nets are valid occurrence nets", occurrence_by_construction},
      {"round trips and deterministic CLI output", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (ms > 5000) o.require(false, "took " + std::to_string(ms) + " ms");
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << ms << " ms)\n";
    for (const auto& n : o.notes) std::cout << "    " << n << '\n';
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - failed) << " of " << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
