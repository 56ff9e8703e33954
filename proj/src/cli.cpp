#include "lpn/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "lpn/compiler.hpp"
#include "lpn/compose.hpp"
#include "lpn/formats.hpp"

namespace lpn {

namespace {

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kError = 2;
constexpr int kInconclusive = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::holds: return kOk;
    case Verdict::fails: return kFails;
    case Verdict::inconclusive: return kInconclusive;
  }
  return kError;
}

Document load(const std::string& path) { return parse_document(path, read_file(path)); }

void emit(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + output + "'");
  f << text;
}

std::string serialize(const Document& doc) {
  if (const auto* c = std::get_if<PclContract>(&doc)) return serialize_contract(*c);
  return serialize_net(std::get<NetDocument>(doc));
}

bool is_id_clash(const std::optional<std::string>& reason) {
  return reason && (reason->rfind("(b)", 0) == 0 || reason->rfind("(c)", 0) == 0);
}

NetDocument namespaced(const NetDocument& doc, const std::string& prefix) {
  NetDocument out = doc;
  out.net = with_namespace(doc.net, prefix);
  if (doc.goal) out.goal = with_namespace(*doc.goal, prefix);
  return out;
}

NetDocument compose_two(const NetDocument& d1, const NetDocument& d2) {
  NetDocument out;
  if (d1.contract && d2.contract) {
    out = NetDocument::from(compose_contract_nets(d1.contract_net(), d2.contract_net()));
  } else if (!d1.contract && !d2.contract) {
    out.net = oplus(d1.net, d2.net);
  } else {
    throw UsageError("cannot compose a contract net with a plain net");
  }
  if (d1.goal || d2.goal) {
    const MarkingGoal honored{{GoalClause{{}, true}}};
    out.goal = compose_goals(d1.net, d1.goal.value_or(honored), d2.net, d2.goal.value_or(honored),
                             out.net);
  }
  return out;
}

NetDocument compose_nets(std::vector<NetDocument> docs) {
  // Tag every document when two of them share ids.
  bool clash = false;
  for (std::size_t i = 0; i < docs.size() && !clash; ++i)
    for (std::size_t j = i + 1; j < docs.size() && !clash; ++j)
      clash = is_id_clash(incompatibility(docs[i].net, docs[j].net));
  if (clash) {
    for (std::size_t i = 0; i < docs.size(); ++i)
      docs[i] = namespaced(docs[i], std::to_string(i + 1) + ".");
  }
  NetDocument acc = docs.front();
  for (std::size_t i = 1; i < docs.size(); ++i) acc = compose_two(acc, docs[i]);
  return acc;
}

AtomSet parse_atom_list(const std::string& text) {
  AtomSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    out.insert(item.substr(b, e - b + 1));
  }
  return out;
}

std::string join_atoms(const AtomSet& atoms) {
  std::string out;
  for (const auto& a : atoms) {
    if (!out.empty()) out += ' ';
    out += a;
  }
  return out;
}

ContractNet as_contract_net(const Document& doc, bool prune = false) {
  if (const auto* c = std::get_if<PclContract>(&doc)) return compile(*c, {prune});
  return std::get<NetDocument>(doc).contract_net();
}

int report_wt(const WeakTermination& wt, const LendingNet& net, std::ostream& out) {
  out << "weak termination: " << to_string(wt.verdict) << '\n';
  if (wt.witness) {
    out << "witness marking: " << format_marking(net, wt.witness->marking) << '\n';
    Trace fired;
    const auto counts = wt.witness->state.counts();
    for (std::size_t t = 0; t < counts.size(); ++t) {
      for (unsigned k = 0; k < counts[t]; ++k)
        fired.push_back(net.transitions()[t].id);
    }
    out << "witness fired: " << (fired.empty() ? std::string("(none)") : format_trace(fired)) << '\n';
  }
  return exit_code(wt.verdict);
}

int check_wt(const Document& doc, Budget budget, std::ostream& out) {
  if (const auto* nd = std::get_if<NetDocument>(&doc); nd && !nd->contract) {
    const auto goal = nd->goal ? to_goal(nd->net, *nd->goal) : honored_marking();
    return report_wt(weakly_terminates(nd->net, goal, budget), nd->net, out);
  }
  const auto cn = as_contract_net(doc);
  return report_wt(weakly_terminates_in(cn, budget), cn.net, out);
}

int check_agreement(const Document& doc, const std::string& via, Budget budget,
                    std::ostream& out, std::ostream& err) {
  const auto* contract = std::get_if<PclContract>(&doc);
  if (!contract && via != "net")
    throw UsageError("agreement via logic needs a contract document");

  std::optional<bool> logic;
  if (via != "net") logic = admits_agreement(*contract);

  std::optional<bool> net;
  if (via != "logic") {
    const auto wt = weakly_terminates_in(as_contract_net(doc), budget);
    if (wt.verdict == Verdict::inconclusive) {
      out << "net=inconclusive\n";
      return kInconclusive;
    }
    net = wt.verdict == Verdict::holds;
  }

  auto word = [](bool b) { return b ? "true" : "false"; };
  if (logic && net) {
    if (*logic == *net) {
      out << "logic=net=" << word(*logic) << '\n';
      return *logic ? kOk : kFails;
    }
    out << "logic=" << word(*logic) << " net=" << word(*net) << '\n';
    err << "error: the two procedures disagree\n";
    return kError;
  }
  if (logic) {
    out << "logic=" << word(*logic) << '\n';
    return *logic ? kOk : kFails;
  }
  out << "net=" << word(*net) << '\n';
  return *net ? kOk : kFails;
}

int urgent_cmd(const Document& doc, const AtomSet& done, const std::string& via, Budget budget,
               std::ostream& out) {
  const auto* contract = std::get_if<PclContract>(&doc);
  if (contract && via == "logic") {
    out << join_atoms(urgent_logic(*contract, done)) << '\n';
    return kOk;
  }
  if (!contract && via == "logic") throw UsageError("urgency via logic needs a contract document");
  const auto u = urgent(as_contract_net(doc), done, budget);
  if (!u) {
    out << "inconclusive\n";
    return kInconclusive;
  }
  out << join_atoms(*u) << '\n';
  return kOk;
}

int traces_cmd(const Document& doc, Budget budget, std::ostream& out) {
  if (const auto* c = std::get_if<PclContract>(&doc)) {
    for (const auto& t : proof_traces(c->theory)) out << format_trace(t) << '\n';
    return kOk;
  }
  const auto ts = traces(std::get<NetDocument>(doc).net, budget);
  if (!ts) {
    out << "inconclusive\n";
    return kInconclusive;
  }
  for (const auto& t : *ts) out << format_trace(t) << '\n';
  return kOk;
}

std::string dot_cmd(const Document& doc) {
  if (std::holds_alternative<PclContract>(doc)) return export_dot(as_contract_net(doc));
  const auto& nd = std::get<NetDocument>(doc);
  return nd.contract ? export_dot(nd.contract_net()) : export_dot(nd.net);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lending Petri nets and propositional contract logic"};
  app.require_subcommand(1);

  std::string file, output, agree_via, urgent_via, done;
  std::vector<std::string> files;
  bool prune = false;
  std::size_t max_nodes = Budget{}.max_nodes;

  auto* parse = app.add_subcommand("parse", "validate a document and print its normal form");
  parse->add_option("FILE", file)->required();

  auto* comp = app.add_subcommand("compile", "translate a contract into a contract net");
  comp->add_option("FILE", file)->required();
  comp->add_option("-o,--output", output);
  comp->add_flag("--prune", prune, "drop isolated unmarked places");

  auto* compose = app.add_subcommand("compose", "compose net documents or contract documents");
  compose->add_option("FILE", files)->required()->expected(1, -1);
  compose->add_option("-o,--output", output);

  auto* check = app.add_subcommand("check", "decide a property");
  check->require_subcommand(1);
  auto* wt = check->add_subcommand("wt", "weak termination in the embedded goal");
  wt->add_option("FILE", file)->required();
  wt->add_option("--budget", max_nodes, "maximum number of explored nodes");
  auto* agree = check->add_subcommand("agreement", "whether the contract admits an agreement");
  agree->add_option("FILE", file)->required();
  agree->add_option("--via", agree_via)->check(CLI::IsMember({"logic", "net", "both"}))->default_val("both");
  agree->add_option("--budget", max_nodes, "maximum number of explored nodes");

  auto* urg = app.add_subcommand("urgent", "urgent actions once a set of actions is done");
  urg->add_option("FILE", file)->required();
  urg->add_option("--done", done, "comma separated atoms");
  urg->add_option("--via", urgent_via)->check(CLI::IsMember({"logic", "net"}))->default_val("net");
  urg->add_option("--budget", max_nodes, "maximum number of explored nodes");

  auto* tr = app.add_subcommand("traces", "enumerate traces (proof traces for contracts)");
  tr->add_option("FILE", file)->required();
  tr->add_option("--budget", max_nodes, "maximum number of explored nodes");

  auto* dot = app.add_subcommand("dot", "Graphviz export");
  dot->add_option("FILE", file)->required();
  dot->add_option("-o,--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }

  Budget budget;
  budget.max_nodes = max_nodes;

  try {
    if (parse->parsed()) {
      out << serialize(load(file));
      return kOk;
    }
    if (comp->parsed()) {
      const auto doc = load(file);
      const auto* c = std::get_if<PclContract>(&doc);
      if (!c) throw UsageError("compile expects a contract document");
      emit(serialize_net(NetDocument::from(compile(*c, {prune}))), output, out);
      return kOk;
    }
    if (compose->parsed()) {
      std::vector<Document> docs;
      for (const auto& f : files) docs.push_back(load(f));
      const bool contracts = std::holds_alternative<PclContract>(docs.front());
      for (const auto& d : docs) {
        if (std::holds_alternative<PclContract>(d) != contracts)
          throw UsageError("cannot mix contract and net documents");
      }
      if (contracts) {
        auto acc = std::get<PclContract>(docs.front());
        for (std::size_t i = 1; i < docs.size(); ++i)
          acc = compose_contracts(acc, std::get<PclContract>(docs[i]));
        emit(serialize_contract(acc), output, out);
      } else {
        std::vector<NetDocument> nets;
        for (auto& d : docs) nets.push_back(std::get<NetDocument>(std::move(d)));
        emit(serialize_net(compose_nets(std::move(nets))), output, out);
      }
      return kOk;
    }
    if (wt->parsed()) return check_wt(load(file), budget, out);
    if (agree->parsed()) return check_agreement(load(file), agree_via, budget, out, err);
    if (urg->parsed()) return urgent_cmd(load(file), parse_atom_list(done), urgent_via, budget, out);
    if (tr->parsed()) return traces_cmd(load(file), budget, out);
    if (dot->parsed()) {
      emit(dot_cmd(load(file)), output, out);
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace lpn
