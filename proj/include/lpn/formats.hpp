#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "lpn/analysis.hpp"
#include "lpn/contract_net.hpp"
#include "lpn/net.hpp"
#include "lpn/pcl.hpp"

namespace lpn {

/// Syntax error at a 1-based line and column.
struct ParseError : std::runtime_error {
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line;
  std::size_t column;
};

/// Well-formed text describing an ill-formed object (undeclared owners,
/// dangling arc endpoints, ...).
struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Contract text, one statement per line, '#' starts a comment:
///
///   participant A B
///   owner a A
///   clause a & b ->> c
///   fact a
///   goal a b c
///
/// Every goal line adds one set to the goal family; without goal lines the
/// family is {∅}. Repeated clauses are kept once.
PclContract parse_contract(std::string_view text);
std::string serialize_contract(const PclContract& c);

struct ContractInfo {
  std::set<Participant> participants;
  std::map<Atom, Participant> owner;
  GoalFamily goals;

  bool operator==(const ContractInfo&) const = default;
};

/// A lending net plus an optional marking goal and optional contract data.
struct NetDocument {
  LendingNet net;
  std::optional<MarkingGoal> goal;
  std::optional<ContractInfo> contract;

  bool operator==(const NetDocument&) const = default;

  ContractNet contract_net() const;
  static NetDocument from(const ContractNet& cn);
};

/// Net text:
///
///   alphabet a b
///   place p1 label=b lending tokens=0
///   transition t label=a
///   arc p1 -> t
///   goal p3=0 honored          # one conjunctive clause per goal line
///   contract                   # the lines below make it a contract net
///   participant A
///   owner a A
///   omega a b                  # one goal set per omega line
NetDocument parse_net(std::string_view text);
std::string serialize_net(const NetDocument& doc);
std::string serialize_net(const LendingNet& net);

/// Graphviz rendering: places are circles, lending places double circles,
/// transitions boxes; tokens and labels are printed in the node captions.
std::string export_dot(const LendingNet& net);
std::string export_dot(const ContractNet& cn);

using Document = std::variant<PclContract, NetDocument>;

enum class DocumentKind { contract, net };

/// By extension (.pcl / .lpn), else by looking at the statements used.
DocumentKind detect_kind(std::string_view path, std::string_view text);
Document parse_document(std::string_view path, std::string_view text);
/// Throws std::runtime_error when the file cannot be read.
std::string read_file(const std::string& path);

}  // namespace lpn
