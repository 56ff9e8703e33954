#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lpn {

using Atom = std::string;
using AtomSet = std::set<Atom>;
using Trace = std::vector<Atom>;

/// Malformed net: dangling ids, bad arcs, duplicate ids, negative initial tokens.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Firing a transition that is not enabled.
struct SemanticsError : std::runtime_error {
  SemanticsError(const std::string& what, std::string place)
      : std::runtime_error(what), place(std::move(place)) {}
  std::string place;
};

struct Place {
  std::string id;
  std::optional<Atom> label;
  bool lending = false;
  std::int64_t initial = 0;

  bool operator==(const Place&) const = default;
};

struct Transition {
  std::string id;
  std::optional<Atom> label;
  std::vector<std::size_t> pre;   // place indices, ascending
  std::vector<std::size_t> post;  // place indices, ascending

  bool operator==(const Transition&) const = default;
};

/// Token counts indexed by place index. Entries may be negative at lending places.
class Marking {
 public:
  Marking() = default;
  explicit Marking(std::vector<std::int64_t> tokens) : tokens_(std::move(tokens)) {}

  std::int64_t operator[](std::size_t place) const { return tokens_[place]; }
  std::int64_t& operator[](std::size_t place) { return tokens_[place]; }
  std::size_t size() const { return tokens_.size(); }
  std::span<const std::int64_t> tokens() const { return tokens_; }

  auto operator<=>(const Marking&) const = default;
  bool operator==(const Marking&) const = default;

 private:
  std::vector<std::int64_t> tokens_;
};

/// Multiset of fired transitions, indexed by transition index.
class StateMultiset {
 public:
  StateMultiset() = default;
  explicit StateMultiset(std::size_t transitions) : counts_(transitions, 0) {}
  explicit StateMultiset(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {}

  std::uint32_t count(std::size_t t) const { return counts_[t]; }
  void add(std::size_t t) { ++counts_[t]; }
  std::size_t size() const { return counts_.size(); }
  std::span<const std::uint32_t> counts() const { return counts_; }

  /// True iff no transition occurs more than once.
  bool is_set() const;
  std::size_t total() const;

  auto operator<=>(const StateMultiset&) const = default;
  bool operator==(const StateMultiset&) const = default;

 private:
  std::vector<std::uint32_t> counts_;
};

/// A labeled Petri net with an initial marking and a set of lending places.
///
/// Places and transitions are stored sorted by id, so two nets built from the
/// same components compare equal regardless of insertion order. Instances are
/// immutable once built; use NetBuilder to construct one.
class LendingNet {
 public:
  LendingNet() = default;

  const AtomSet& alphabet() const { return alphabet_; }
  std::span<const Place> places() const { return places_; }
  std::span<const Transition> transitions() const { return transitions_; }
  const Place& place(std::size_t s) const { return places_[s]; }
  const Transition& transition(std::size_t t) const { return transitions_[t]; }

  std::optional<std::size_t> place_index(std::string_view id) const;
  std::optional<std::size_t> transition_index(std::string_view id) const;
  std::size_t require_place(std::string_view id) const;
  std::size_t require_transition(std::string_view id) const;

  /// Transitions producing into place `s`.
  const std::vector<std::size_t>& producers(std::size_t s) const { return producers_[s]; }
  /// Transitions consuming from place `s`.
  const std::vector<std::size_t>& consumers(std::size_t s) const { return consumers_[s]; }

  Marking initial_marking() const;

  bool operator==(const LendingNet& other) const {
    return alphabet_ == other.alphabet_ && places_ == other.places_ &&
           transitions_ == other.transitions_;
  }

 private:
  friend class NetBuilder;

  AtomSet alphabet_;
  std::vector<Place> places_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::size_t>> producers_;
  std::vector<std::vector<std::size_t>> consumers_;
  std::map<std::string, std::size_t, std::less<>> place_ids_;
  std::map<std::string, std::size_t, std::less<>> transition_ids_;
};

struct PlaceSpec {
  std::optional<Atom> label;
  bool lending = false;
  std::int64_t tokens = 0;
};

class NetBuilder {
 public:
  /// Sets the label universe. When never called, the universe is the set of
  /// labels used by places and transitions.
  NetBuilder& alphabet(AtomSet atoms);
  NetBuilder& place(std::string id, PlaceSpec spec = {});
  NetBuilder& transition(std::string id, std::optional<Atom> label = std::nullopt);
  /// Adds an arc between a place and a transition, in either direction.
  NetBuilder& arc(const std::string& from, const std::string& to);

  LendingNet build() const;

 private:
  struct PendingPlace {
    std::string id;
    PlaceSpec spec;
  };
  struct PendingTransition {
    std::string id;
    std::optional<Atom> label;
  };

  std::optional<AtomSet> alphabet_;
  std::vector<PendingPlace> places_;
  std::vector<PendingTransition> transitions_;
  std::vector<std::pair<std::string, std::string>> arcs_;
};

/// Ids are non-empty, contain no whitespace, '#' or '=', and do not end in '<' or '>'.
bool is_valid_id(std::string_view id);

struct FiringStep {
  std::size_t transition;
  Marking after;
};

struct FiringSequence {
  Marking start;
  std::vector<FiringStep> steps;

  const Marking& final_marking() const { return steps.empty() ? start : steps.back().after; }
};

bool enabled(const LendingNet& net, const Marking& m, std::size_t t);
/// Throws SemanticsError naming the first pre-place that blocks `t`.
Marking fire(const LendingNet& net, const Marking& m, std::size_t t);
std::vector<std::size_t> enabled_transitions(const LendingNet& net, const Marking& m);

/// Fires the named transitions in order from the initial marking.
FiringSequence run(const LendingNet& net, std::span<const std::string> transition_ids);
FiringSequence run(const LendingNet& net, std::initializer_list<std::string> transition_ids);

/// Checks that every step is enabled and produces its recorded marking.
bool is_valid_sequence(const LendingNet& net, const FiringSequence& fs);

Trace trace_of(const LendingNet& net, const FiringSequence& fs);
StateMultiset state_of(const LendingNet& net, const FiringSequence& fs);
/// m0(s) + sum over t of X(t) * (F(t,s) - F(s,t)).
Marking marking_of_state(const LendingNet& net, const StateMultiset& state);

bool is_honored(const Marking& m);
bool is_correctly_labeled(const LendingNet& net);

/// The subnet generated by the given transitions: those transitions, every place
/// adjacent to them and every initially marked place.
LendingNet subnet(const LendingNet& net, const std::set<std::string>& transition_ids);

std::string format_marking(const LendingNet& net, const Marking& m);
std::string format_trace(const Trace& trace);

struct MarkingHash {
  std::size_t operator()(const Marking& m) const noexcept;
};

}  // namespace lpn
