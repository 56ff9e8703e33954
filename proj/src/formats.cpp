#include "lpn/formats.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace lpn {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line(line),
      column(column) {}

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
  std::string_view body;  // without comment
  std::size_t body_offset = 0;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    Line line{number, {}, raw};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      const auto start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back({std::string(raw.substr(start, i - start)), start + 1});
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

bool is_ident(std::string_view s, bool upper) {
  if (s.empty()) return false;
  const auto c0 = static_cast<unsigned char>(s[0]);
  if (upper ? !std::isupper(c0) : !std::islower(c0)) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

const Token& expect_atom(const Line& line, std::size_t i) {
  if (i >= line.tokens.size())
    throw ParseError(line.number, line.body.size() + 1, "expected an atom");
  const auto& tok = line.tokens[i];
  if (!is_ident(tok.text, false))
    throw ParseError(line.number, tok.column, "expected a lowercase atom, got '" + tok.text + "'");
  return tok;
}

const Token& expect_participant(const Line& line, std::size_t i) {
  if (i >= line.tokens.size())
    throw ParseError(line.number, line.body.size() + 1, "expected a participant");
  const auto& tok = line.tokens[i];
  if (!is_ident(tok.text, true))
    throw ParseError(line.number, tok.column,
                     "expected a capitalized participant, got '" + tok.text + "'");
  return tok;
}

void expect_end(const Line& line, std::size_t i) {
  if (i < line.tokens.size())
    throw ParseError(line.number, line.tokens[i].column,
                     "unexpected '" + line.tokens[i].text + "'");
}

// clause ATOM ("&" ATOM)* ("->" | "->>") ATOM, with or without spaces.
HornClause parse_clause(const Line& line, std::size_t from_column) {
  const auto body = line.body;
  std::size_t i = from_column - 1;
  auto skip = [&] {
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
  };
  auto atom = [&]() -> Atom {
    skip();
    const auto start = i;
    while (i < body.size() && (std::isalnum(static_cast<unsigned char>(body[i])) || body[i] == '_')) ++i;
    std::string a(body.substr(start, i - start));
    if (!is_ident(a, false))
      throw ParseError(line.number, start + 1, a.empty() ? "expected an atom" : "expected a lowercase atom, got '" + a + "'");
    return a;
  };

  HornClause clause;
  skip();
  if (!(i < body.size() && body[i] == '-')) {
    clause.body.insert(atom());
    for (;;) {
      skip();
      if (i < body.size() && body[i] == '&') {
        ++i;
        clause.body.insert(atom());
      } else {
        break;
      }
    }
  }
  skip();
  if (body.substr(i, 3) == "->>") {
    clause.kind = Implication::contractual;
    i += 3;
  } else if (body.substr(i, 2) == "->") {
    clause.kind = Implication::intuitionistic;
    i += 2;
  } else {
    throw ParseError(line.number, i + 1, "expected '->' or '->>'");
  }
  clause.head = atom();
  skip();
  if (i < body.size()) throw ParseError(line.number, i + 1, "unexpected trailing text");
  return clause;
}

}  // namespace

PclContract parse_contract(std::string_view text) {
  PclContract c;
  c.goals.clear();
  bool any_goal = false;
  for (const auto& line : split_lines(text)) {
    const auto& kw = line.tokens[0].text;
    if (kw == "participant") {
      if (line.tokens.size() < 2) throw ParseError(line.number, line.body.size() + 1, "expected a participant");
      for (std::size_t i = 1; i < line.tokens.size(); ++i)
        c.participants.insert(expect_participant(line, i).text);
    } else if (kw == "owner") {
      const auto& a = expect_atom(line, 1);
      const auto& p = expect_participant(line, 2);
      expect_end(line, 3);
      auto [it, inserted] = c.owner.emplace(a.text, p.text);
      if (!inserted && it->second != p.text)
        throw SemanticError("line " + std::to_string(line.number) + ": atom '" + a.text +
                            "' already owned by '" + it->second + "'");
    } else if (kw == "clause") {
      if (line.tokens.size() < 2)
        throw ParseError(line.number, line.body.size() + 1, "expected a clause");
      auto clause = parse_clause(line, line.tokens[1].column);
      if (std::find(c.theory.begin(), c.theory.end(), clause) == c.theory.end())
        c.theory.push_back(std::move(clause));
    } else if (kw == "fact") {
      auto clause = HornClause::fact(expect_atom(line, 1).text);
      expect_end(line, 2);
      if (std::find(c.theory.begin(), c.theory.end(), clause) == c.theory.end())
        c.theory.push_back(std::move(clause));
    } else if (kw == "goal") {
      AtomSet g;
      for (std::size_t i = 1; i < line.tokens.size(); ++i) g.insert(expect_atom(line, i).text);
      c.goals.insert(std::move(g));
      any_goal = true;
    } else {
      throw ParseError(line.number, line.tokens[0].column, "unknown statement '" + kw + "'");
    }
  }
  if (!any_goal) c.goals.insert(AtomSet{});
  if (auto problems = check_contract(c); !problems.empty()) throw SemanticError(problems.front());
  return c;
}

namespace {

std::string join(const AtomSet& atoms) {
  std::string out;
  for (const auto& a : atoms) {
    out += ' ';
    out += a;
  }
  return out;
}

}  // namespace

std::string serialize_contract(const PclContract& c) {
  std::ostringstream os;
  if (!c.participants.empty()) os << "participant" << join(AtomSet(c.participants.begin(), c.participants.end())) << '\n';
  for (const auto& [a, p] : c.owner) os << "owner " << a << ' ' << p << '\n';
  for (const auto& clause : c.theory) {
    if (clause.is_fact()) {
      os << "fact " << clause.head << '\n';
    } else {
      os << "clause " << format_clause(clause) << '\n';
    }
  }
  if (c.goals != GoalFamily{AtomSet{}}) {
    for (const auto& g : c.goals) os << "goal" << join(g) << '\n';
  }
  return os.str();
}

ContractNet NetDocument::contract_net() const {
  if (!contract) return {net, {}, {}, {}};
  return {net, contract->participants, contract->owner, contract->goals};
}

NetDocument NetDocument::from(const ContractNet& cn) {
  return {cn.net, std::nullopt, ContractInfo{cn.participants, cn.owner, cn.goals}};
}

namespace {

std::int64_t parse_int(const Line& line, const Token& tok, std::string_view digits) {
  std::int64_t v = 0;
  bool neg = false;
  std::size_t i = 0;
  if (!digits.empty() && digits[0] == '-') {
    neg = true;
    i = 1;
  }
  if (i >= digits.size()) throw ParseError(line.number, tok.column, "expected an integer in '" + tok.text + "'");
  for (; i < digits.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(digits[i])))
      throw ParseError(line.number, tok.column, "expected an integer in '" + tok.text + "'");
    v = v * 10 + (digits[i] - '0');
  }
  return neg ? -v : v;
}

const std::string& expect_id(const Line& line, std::size_t i, const char* what) {
  if (i >= line.tokens.size())
    throw ParseError(line.number, line.body.size() + 1, std::string("expected ") + what);
  const auto& tok = line.tokens[i];
  if (!is_valid_id(tok.text))
    throw ParseError(line.number, tok.column, std::string("invalid ") + what + " '" + tok.text + "'");
  return tok.text;
}

PlaceConstraint parse_constraint(const Line& line, const Token& tok) {
  const auto eq = tok.text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ParseError(line.number, tok.column, "expected a constraint like p=0, p>=1 or p<=1");
  PlaceConstraint pc;
  std::size_t id_end = eq;
  pc.op = PlaceConstraint::Op::eq;
  if (tok.text[eq - 1] == '>') {
    pc.op = PlaceConstraint::Op::ge;
    id_end = eq - 1;
  } else if (tok.text[eq - 1] == '<') {
    pc.op = PlaceConstraint::Op::le;
    id_end = eq - 1;
  }
  pc.place = tok.text.substr(0, id_end);
  if (!is_valid_id(pc.place)) throw ParseError(line.number, tok.column, "invalid place id in '" + tok.text + "'");
  pc.value = parse_int(line, tok, std::string_view(tok.text).substr(eq + 1));
  return pc;
}

}  // namespace

NetDocument parse_net(std::string_view text) {
  NetBuilder b;
  NetDocument doc;
  std::map<std::string, std::size_t> declared;  // id -> line
  std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> arcs;
  std::vector<std::pair<std::size_t, PlaceConstraint>> constraint_lines;
  bool in_contract = false;

  auto declare = [&](const Line& line, const std::string& id) {
    if (!declared.emplace(id, line.number).second)
      throw SemanticError("line " + std::to_string(line.number) + ": id '" + id + "' declared twice");
  };

  for (const auto& line : split_lines(text)) {
    const auto& kw = line.tokens[0].text;
    if (kw == "alphabet") {
      AtomSet atoms;
      for (std::size_t i = 1; i < line.tokens.size(); ++i) atoms.insert(expect_id(line, i, "atom"));
      b.alphabet(std::move(atoms));
    } else if (kw == "place") {
      const auto& id = expect_id(line, 1, "place id");
      declare(line, id);
      PlaceSpec spec;
      for (std::size_t i = 2; i < line.tokens.size(); ++i) {
        const auto& tok = line.tokens[i];
        if (tok.text == "lending") {
          spec.lending = true;
        } else if (tok.text.rfind("label=", 0) == 0) {
          spec.label = tok.text.substr(6);
          if (spec.label->empty()) throw ParseError(line.number, tok.column, "empty label");
        } else if (tok.text.rfind("tokens=", 0) == 0) {
          spec.tokens = parse_int(line, tok, std::string_view(tok.text).substr(7));
          if (spec.tokens < 0)
            throw SemanticError("line " + std::to_string(line.number) +
                                ": negative initial tokens at place '" + id + "'");
        } else {
          throw ParseError(line.number, tok.column, "unknown place attribute '" + tok.text + "'");
        }
      }
      b.place(id, spec);
    } else if (kw == "transition") {
      const auto& id = expect_id(line, 1, "transition id");
      declare(line, id);
      std::optional<Atom> label;
      for (std::size_t i = 2; i < line.tokens.size(); ++i) {
        const auto& tok = line.tokens[i];
        if (tok.text.rfind("label=", 0) == 0 && tok.text.size() > 6) {
          label = tok.text.substr(6);
        } else {
          throw ParseError(line.number, tok.column, "unknown transition attribute '" + tok.text + "'");
        }
      }
      b.transition(id, label);
    } else if (kw == "arc") {
      const auto& from = expect_id(line, 1, "arc source");
      if (line.tokens.size() < 3 || line.tokens[2].text != "->")
        throw ParseError(line.number, line.tokens.size() < 3 ? line.body.size() + 1 : line.tokens[2].column,
                         "expected '->'");
      const auto& to = expect_id(line, 3, "arc target");
      expect_end(line, 4);
      arcs.push_back({line.number, {from, to}});
    } else if (kw == "goal") {
      GoalClause clause;
      for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        const auto& tok = line.tokens[i];
        if (tok.text == "honored") {
          clause.honored = true;
        } else {
          auto pc = parse_constraint(line, tok);
          constraint_lines.emplace_back(line.number, pc);
          clause.constraints.push_back(std::move(pc));
        }
      }
      if (!doc.goal) doc.goal.emplace();
      doc.goal->clauses.push_back(std::move(clause));
    } else if (kw == "contract") {
      expect_end(line, 1);
      in_contract = true;
      if (!doc.contract) doc.contract.emplace();
    } else if (in_contract && kw == "participant") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i)
        doc.contract->participants.insert(expect_id(line, i, "participant"));
    } else if (in_contract && kw == "owner") {
      const auto& a = expect_id(line, 1, "atom");
      const auto& p = expect_id(line, 2, "participant");
      expect_end(line, 3);
      doc.contract->owner[a] = p;
    } else if (in_contract && kw == "omega") {
      AtomSet g;
      for (std::size_t i = 1; i < line.tokens.size(); ++i) g.insert(expect_id(line, i, "atom"));
      doc.contract->goals.insert(std::move(g));
    } else {
      throw ParseError(line.number, line.tokens[0].column, "unknown statement '" + kw + "'");
    }
  }

  for (const auto& [number, arc] : arcs) {
    for (const auto* id : {&arc.first, &arc.second}) {
      if (!declared.count(*id))
        throw SemanticError("line " + std::to_string(number) + ": arc endpoint '" + *id +
                            "' is not declared");
    }
    b.arc(arc.first, arc.second);
  }
  try {
    doc.net = b.build();
  } catch (const StructuralError& e) {
    throw SemanticError(e.what());
  }
  for (const auto& [number, pc] : constraint_lines) {
    if (!doc.net.place_index(pc.place))
      throw SemanticError("line " + std::to_string(number) + ": goal refers to unknown place '" +
                          pc.place + "'");
  }
  return doc;
}

std::string serialize_net(const NetDocument& doc) {
  const auto& net = doc.net;
  std::ostringstream os;
  os << "alphabet" << join(net.alphabet()) << '\n';
  for (const auto& p : net.places()) {
    os << "place " << p.id;
    if (p.label) os << " label=" << *p.label;
    if (p.lending) os << " lending";
    if (p.initial != 0) os << " tokens=" << p.initial;
    os << '\n';
  }
  for (const auto& t : net.transitions()) {
    os << "transition " << t.id;
    if (t.label) os << " label=" << *t.label;
    os << '\n';
  }
  for (const auto& t : net.transitions()) {
    for (auto s : t.pre) os << "arc " << net.place(s).id << " -> " << t.id << '\n';
    for (auto s : t.post) os << "arc " << t.id << " -> " << net.place(s).id << '\n';
  }
  if (doc.goal) {
    for (const auto& clause : doc.goal->clauses) os << "goal " << format_goal({{clause}}) << '\n';
  }
  if (doc.contract) {
    os << "contract\n";
    if (!doc.contract->participants.empty())
      os << "participant" << join(AtomSet(doc.contract->participants.begin(), doc.contract->participants.end())) << '\n';
    for (const auto& [a, p] : doc.contract->owner) os << "owner " << a << ' ' << p << '\n';
    for (const auto& g : doc.contract->goals) os << "omega" << join(g) << '\n';
  }
  return os.str();
}

std::string serialize_net(const LendingNet& net) { return serialize_net(NetDocument{net, {}, {}}); }

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

void dot_body(std::ostringstream& os, const LendingNet& net) {
  for (const auto& p : net.places()) {
    std::string caption = p.id;
    if (p.label) caption += "\\n" + *p.label;
    if (p.initial != 0) caption += "\\n(" + std::to_string(p.initial) + ")";
    os << "  " << quote("p:" + p.id) << " [shape=" << (p.lending ? "doublecircle" : "circle")
       << ", label=\"" << caption << "\"];\n";
  }
  for (const auto& t : net.transitions()) {
    std::string caption = t.id;
    if (t.label) caption += "\\n" + *t.label;
    os << "  " << quote("t:" + t.id) << " [shape=box, label=\"" << caption << "\"];\n";
  }
  for (const auto& t : net.transitions()) {
    for (auto s : t.pre) os << "  " << quote("p:" + net.place(s).id) << " -> " << quote("t:" + t.id) << ";\n";
    for (auto s : t.post) os << "  " << quote("t:" + t.id) << " -> " << quote("p:" + net.place(s).id) << ";\n";
  }
}

}  // namespace

std::string export_dot(const LendingNet& net) {
  std::ostringstream os;
  os << "digraph lpn {\n  rankdir=LR;\n";
  dot_body(os, net);
  os << "}\n";
  return os.str();
}

std::string export_dot(const ContractNet& cn) {
  std::ostringstream os;
  os << "digraph lpn {\n  rankdir=LR;\n";
  std::string caption = "participants:";
  for (const auto& p : cn.participants) caption += " " + p;
  caption += "\\ngoals:";
  for (const auto& g : cn.goals) {
    caption += " {";
    bool first = true;
    for (const auto& a : g) {
      caption += (first ? "" : ",") + a;
      first = false;
    }
    caption += "}";
  }
  os << "  label=\"" << caption << "\";\n";
  dot_body(os, cn.net);
  os << "}\n";
  return os.str();
}

DocumentKind detect_kind(std::string_view path, std::string_view text) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
  };
  if (ends_with(".pcl")) return DocumentKind::contract;
  if (ends_with(".lpn")) return DocumentKind::net;
  for (const auto& line : split_lines(text)) {
    const auto& kw = line.tokens[0].text;
    if (kw == "place" || kw == "transition" || kw == "arc" || kw == "alphabet" || kw == "contract")
      return DocumentKind::net;
    if (kw == "clause" || kw == "fact") return DocumentKind::contract;
  }
  return DocumentKind::contract;
}

Document parse_document(std::string_view path, std::string_view text) {
  if (detect_kind(path, text) == DocumentKind::net) return parse_net(text);
  return parse_contract(text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace lpn
