#include "lpn/net.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lpn {

bool StateMultiset::is_set() const {
  return std::all_of(counts_.begin(), counts_.end(), [](std::uint32_t c) { return c <= 1; });
}

std::size_t StateMultiset::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

std::optional<std::size_t> LendingNet::place_index(std::string_view id) const {
  auto it = place_ids_.find(id);
  if (it == place_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> LendingNet::transition_index(std::string_view id) const {
  auto it = transition_ids_.find(id);
  if (it == transition_ids_.end()) return std::nullopt;
  return it->second;
}

std::size_t LendingNet::require_place(std::string_view id) const {
  if (auto s = place_index(id)) return *s;
  throw StructuralError("unknown place '" + std::string(id) + "'");
}

std::size_t LendingNet::require_transition(std::string_view id) const {
  if (auto t = transition_index(id)) return *t;
  throw StructuralError("unknown transition '" + std::string(id) + "'");
}

Marking LendingNet::initial_marking() const {
  std::vector<std::int64_t> tokens;
  tokens.reserve(places_.size());
  for (const auto& p : places_) tokens.push_back(p.initial);
  return Marking(std::move(tokens));
}

bool is_valid_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '#' || c == '=') return false;
  }
  return id.back() != '<' && id.back() != '>';
}

NetBuilder& NetBuilder::alphabet(AtomSet atoms) {
  alphabet_ = std::move(atoms);
  return *this;
}

NetBuilder& NetBuilder::place(std::string id, PlaceSpec spec) {
  places_.push_back({std::move(id), std::move(spec)});
  return *this;
}

NetBuilder& NetBuilder::transition(std::string id, std::optional<Atom> label) {
  transitions_.push_back({std::move(id), std::move(label)});
  return *this;
}

NetBuilder& NetBuilder::arc(const std::string& from, const std::string& to) {
  arcs_.emplace_back(from, to);
  return *this;
}

LendingNet NetBuilder::build() const {
  LendingNet net;

  auto places = places_;
  std::sort(places.begin(), places.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  auto transitions = transitions_;
  std::sort(transitions.begin(), transitions.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  AtomSet used;
  for (const auto& p : places) {
    if (!is_valid_id(p.id)) throw StructuralError("invalid place id '" + p.id + "'");
    if (p.spec.tokens < 0)
      throw StructuralError("negative initial tokens at place '" + p.id + "'");
    if (p.spec.label && p.spec.label->empty())
      throw StructuralError("empty label at place '" + p.id + "'");
    if (!net.place_ids_.emplace(p.id, net.places_.size()).second)
      throw StructuralError("duplicate place id '" + p.id + "'");
    if (p.spec.label) used.insert(*p.spec.label);
    net.places_.push_back({p.id, p.spec.label, p.spec.lending, p.spec.tokens});
  }
  for (const auto& t : transitions) {
    if (!is_valid_id(t.id)) throw StructuralError("invalid transition id '" + t.id + "'");
    if (net.place_ids_.count(t.id))
      throw StructuralError("id '" + t.id + "' names both a place and a transition");
    if (t.label && t.label->empty())
      throw StructuralError("empty label at transition '" + t.id + "'");
    if (!net.transition_ids_.emplace(t.id, net.transitions_.size()).second)
      throw StructuralError("duplicate transition id '" + t.id + "'");
    if (t.label) used.insert(*t.label);
    net.transitions_.push_back({t.id, t.label, {}, {}});
  }

  if (alphabet_) {
    for (const auto& a : used) {
      if (!alphabet_->count(a))
        throw StructuralError("label '" + a + "' is not in the alphabet");
    }
    net.alphabet_ = *alphabet_;
  } else {
    net.alphabet_ = used;
  }

  for (const auto& [from, to] : arcs_) {
    auto ps = net.place_index(from);
    auto pt = net.transition_index(from);
    auto qs = net.place_index(to);
    auto qt = net.transition_index(to);
    if (!ps && !pt) throw StructuralError("arc from unknown id '" + from + "'");
    if (!qs && !qt) throw StructuralError("arc to unknown id '" + to + "'");
    if (ps && qt) {
      net.transitions_[*qt].pre.push_back(*ps);
    } else if (pt && qs) {
      net.transitions_[*pt].post.push_back(*qs);
    } else {
      throw StructuralError("arc " + from + " -> " + to +
                            " must connect a place and a transition");
    }
  }

  net.producers_.assign(net.places_.size(), {});
  net.consumers_.assign(net.places_.size(), {});
  for (std::size_t t = 0; t < net.transitions_.size(); ++t) {
    auto& tr = net.transitions_[t];
    for (auto* v : {&tr.pre, &tr.post}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    if (tr.pre.empty())
      throw StructuralError("transition '" + tr.id + "' has an empty preset");
    for (auto s : tr.pre) net.consumers_[s].push_back(t);
    for (auto s : tr.post) net.producers_[s].push_back(t);
  }
  return net;
}

bool enabled(const LendingNet& net, const Marking& m, std::size_t t) {
  for (auto s : net.transition(t).pre) {
    if (m[s] <= 0 && !net.place(s).lending) return false;
  }
  return true;
}

Marking fire(const LendingNet& net, const Marking& m, std::size_t t) {
  const auto& tr = net.transition(t);
  for (auto s : tr.pre) {
    if (m[s] <= 0 && !net.place(s).lending) {
      throw SemanticsError("transition '" + tr.id + "' is not enabled: place '" +
                               net.place(s).id + "' is empty and not lending",
                           net.place(s).id);
    }
  }
  Marking next = m;
  for (auto s : tr.pre) --next[s];
  for (auto s : tr.post) ++next[s];
  return next;
}

std::vector<std::size_t> enabled_transitions(const LendingNet& net, const Marking& m) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < net.transitions().size(); ++t) {
    if (enabled(net, m, t)) out.push_back(t);
  }
  return out;
}

FiringSequence run(const LendingNet& net, std::span<const std::string> transition_ids) {
  FiringSequence fs{net.initial_marking(), {}};
  Marking m = fs.start;
  for (const auto& id : transition_ids) {
    auto t = net.require_transition(id);
    m = fire(net, m, t);
    fs.steps.push_back({t, m});
  }
  return fs;
}

FiringSequence run(const LendingNet& net, std::initializer_list<std::string> transition_ids) {
  return run(net, std::span<const std::string>(transition_ids.begin(), transition_ids.size()));
}

bool is_valid_sequence(const LendingNet& net, const FiringSequence& fs) {
  if (fs.start.size() != net.places().size()) return false;
  const Marking* m = &fs.start;
  for (const auto& step : fs.steps) {
    if (step.transition >= net.transitions().size() || !enabled(net, *m, step.transition))
      return false;
    if (fire(net, *m, step.transition) != step.after) return false;
    m = &step.after;
  }
  return true;
}

Trace trace_of(const LendingNet& net, const FiringSequence& fs) {
  Trace out;
  for (const auto& step : fs.steps) {
    if (const auto& label = net.transition(step.transition).label) out.push_back(*label);
  }
  return out;
}

StateMultiset state_of(const LendingNet& net, const FiringSequence& fs) {
  StateMultiset x(net.transitions().size());
  for (const auto& step : fs.steps) x.add(step.transition);
  return x;
}

Marking marking_of_state(const LendingNet& net, const StateMultiset& state) {
  Marking m = net.initial_marking();
  for (std::size_t t = 0; t < net.transitions().size(); ++t) {
    const auto n = static_cast<std::int64_t>(state.count(t));
    if (n == 0) continue;
    for (auto s : net.transition(t).pre) m[s] -= n;
    for (auto s : net.transition(t).post) m[s] += n;
  }
  return m;
}

bool is_honored(const Marking& m) {
  const auto tokens = m.tokens();
  return std::all_of(tokens.begin(), tokens.end(), [](std::int64_t v) { return v >= 0; });
}

bool is_correctly_labeled(const LendingNet& net) {
  for (std::size_t s = 0; s < net.places().size(); ++s) {
    const auto& label = net.place(s).label;
    if (!label) continue;
    for (auto t : net.producers(s)) {
      if (net.transition(t).label != label) return false;
    }
  }
  return true;
}

LendingNet subnet(const LendingNet& net, const std::set<std::string>& transition_ids) {
  std::vector<bool> keep_place(net.places().size(), false);
  std::vector<std::size_t> kept;
  for (const auto& id : transition_ids) kept.push_back(net.require_transition(id));
  for (auto t : kept) {
    for (auto s : net.transition(t).pre) keep_place[s] = true;
    for (auto s : net.transition(t).post) keep_place[s] = true;
  }
  NetBuilder b;
  b.alphabet(net.alphabet());
  for (std::size_t s = 0; s < net.places().size(); ++s) {
    const auto& p = net.place(s);
    if (keep_place[s] || p.initial > 0) b.place(p.id, {p.label, p.lending, p.initial});
  }
  for (auto t : kept) {
    const auto& tr = net.transition(t);
    b.transition(tr.id, tr.label);
    for (auto s : tr.pre) b.arc(net.place(s).id, tr.id);
    for (auto s : tr.post) b.arc(tr.id, net.place(s).id);
  }
  return b.build();
}

std::string format_marking(const LendingNet& net, const Marking& m) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t s = 0; s < m.size(); ++s) {
    if (m[s] == 0) continue;
    if (!first) os << ", ";
    first = false;
    os << net.place(s).id << ':' << m[s];
  }
  os << '}';
  return os.str();
}

std::string format_trace(const Trace& trace) {
  if (trace.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) out += ' ';
    out += trace[i];
  }
  return out;
}

std::size_t MarkingHash::operator()(const Marking& m) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto v : m.tokens()) {
    h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace lpn
