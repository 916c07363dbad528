#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fsmgrade/alphabet.hpp"
#include "fsmgrade/error.hpp"

namespace fsmgrade {

using StateId = std::uint32_t;

/// A labelled edge `from --symbol--> to` given by state names. An empty
/// symbol denotes an epsilon move (NFA only).
struct NamedTransition {
  std::string from;
  std::string symbol;
  std::string to;
};

namespace detail {

inline std::unordered_map<std::string, StateId> index_names(const std::vector<std::string>& names) {
  if (names.empty()) throw InvalidAutomaton("automaton must have at least one state");
  std::unordered_map<std::string, StateId> index;
  index.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw InvalidAutomaton("state names must be nonempty");
    if (!index.emplace(names[i], static_cast<StateId>(i)).second) {
      throw InvalidAutomaton("duplicate state name '" + names[i] + "'");
    }
  }
  return index;
}

inline StateId lookup(const std::unordered_map<std::string, StateId>& index, const std::string& name) {
  auto it = index.find(name);
  if (it == index.end()) throw UnknownState(name);
  return it->second;
}

}  // namespace detail

/// Deterministic finite automaton with a total transition function.
///
/// States are dense ids `0..size()-1` carrying unique names; the transition
/// table is stored row-major, one row per state, one column per symbol id.
class Dfa {
 public:
  Dfa(Alphabet alphabet, std::vector<std::string> names, std::vector<StateId> table,
      StateId initial, std::vector<bool> final_states)
      : alphabet_(std::move(alphabet)),
        names_(std::move(names)),
        table_(std::move(table)),
        initial_(initial),
        final_(std::move(final_states)) {
    index_ = detail::index_names(names_);
    const std::size_t n = names_.size();
    if (table_.size() != n * alphabet_.size()) {
      throw InvalidAutomaton("transition table must have one entry per (state, symbol)");
    }
    if (final_.size() != n) throw InvalidAutomaton("final-state flags must cover every state");
    if (initial_ >= n) throw InvalidAutomaton("initial state out of range");
    for (auto t : table_) {
      if (t >= n) throw InvalidAutomaton("transition target out of range");
    }
  }

  /// Builds a DFA from named parts. The transitions must be total and
  /// deterministic.
  static Dfa from_transitions(Alphabet alphabet, std::vector<std::string> states,
                              const std::vector<NamedTransition>& transitions,
                              const std::string& initial,
                              const std::vector<std::string>& final_states) {
    const auto index = detail::index_names(states);
    const std::size_t k = alphabet.size();
    constexpr StateId kUnset = static_cast<StateId>(-1);
    std::vector<StateId> table(states.size() * k, kUnset);
    for (const auto& t : transitions) {
      const StateId from = detail::lookup(index, t.from);
      const StateId to = detail::lookup(index, t.to);
      auto sym = alphabet.find(t.symbol);
      if (!sym) throw UnknownSymbol(t.symbol);
      auto& cell = table[from * k + *sym];
      if (cell != kUnset && cell != to) {
        throw InvalidAutomaton("nondeterministic transition from '" + t.from + "' on '" +
                               t.symbol + "'");
      }
      cell = to;
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (table[i] == kUnset) {
        throw InvalidAutomaton("missing transition from '" + states[i / k] + "' on '" +
                               alphabet[static_cast<SymbolId>(i % k)] + "'");
      }
    }
    std::vector<bool> finals(states.size(), false);
    for (const auto& f : final_states) finals[detail::lookup(index, f)] = true;
    const StateId init = detail::lookup(index, initial);
    return Dfa(std::move(alphabet), std::move(states), std::move(table), init, std::move(finals));
  }

  /// Single-state DFA accepting every word.
  static Dfa universal(const Alphabet& alphabet) {
    return Dfa(alphabet, {"0"}, std::vector<StateId>(alphabet.size(), 0), 0, {true});
  }

  /// Single-state DFA accepting nothing.
  static Dfa empty_language(const Alphabet& alphabet) {
    return Dfa(alphabet, {"0"}, std::vector<StateId>(alphabet.size(), 0), 0, {false});
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(StateId s) const { return names_.at(s); }
  std::optional<StateId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  StateId id(const std::string& name) const { return detail::lookup(index_, name); }

  StateId initial() const noexcept { return initial_; }
  bool is_final(StateId s) const { return final_.at(s); }
  StateId next(StateId s, SymbolId a) const { return table_[s * alphabet_.size() + a]; }
  std::span<const StateId> row(StateId s) const {
    return std::span<const StateId>(table_).subspan(s * alphabet_.size(), alphabet_.size());
  }
  const std::vector<StateId>& table() const noexcept { return table_; }
  const std::vector<bool>& final_flags() const noexcept { return final_; }

  /// Structural equality: same alphabet, names, order, and transitions.
  friend bool operator==(const Dfa& a, const Dfa& b) {
    return a.alphabet_ == b.alphabet_ && a.names_ == b.names_ && a.table_ == b.table_ &&
           a.initial_ == b.initial_ && a.final_ == b.final_;
  }

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<StateId> table_;
  StateId initial_;
  std::vector<bool> final_;
  std::unordered_map<std::string, StateId> index_;
};

/// Nondeterministic finite automaton with epsilon moves.
///
/// Successor sets are kept sorted and duplicate-free. Column `alphabet.size()`
/// of each row holds the epsilon successors.
class Nfa {
 public:
  Nfa(Alphabet alphabet, std::vector<std::string> states,
      const std::vector<NamedTransition>& transitions, const std::string& initial,
      const std::vector<std::string>& final_states)
      : alphabet_(std::move(alphabet)), names_(std::move(states)) {
    index_ = detail::index_names(names_);
    const std::size_t width = alphabet_.size() + 1;
    successors_.assign(names_.size() * width, {});
    for (const auto& t : transitions) {
      const StateId from = detail::lookup(index_, t.from);
      const StateId to = detail::lookup(index_, t.to);
      std::size_t column = alphabet_.size();
      if (!t.symbol.empty()) {
        auto sym = alphabet_.find(t.symbol);
        if (!sym) throw UnknownSymbol(t.symbol);
        column = *sym;
      }
      successors_[from * width + column].push_back(to);
    }
    for (auto& cell : successors_) {
      std::sort(cell.begin(), cell.end());
      cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
    }
    final_.assign(names_.size(), false);
    for (const auto& f : final_states) final_[detail::lookup(index_, f)] = true;
    initial_ = detail::lookup(index_, initial);
  }

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(StateId s) const { return names_.at(s); }
  StateId id(const std::string& name) const { return detail::lookup(index_, name); }
  StateId initial() const noexcept { return initial_; }
  bool is_final(StateId s) const { return final_.at(s); }

  std::span<const StateId> successors(StateId s, SymbolId a) const {
    return successors_[s * (alphabet_.size() + 1) + a];
  }
  std::span<const StateId> epsilon_successors(StateId s) const {
    return successors_[s * (alphabet_.size() + 1) + alphabet_.size()];
  }

  friend bool operator==(const Nfa& a, const Nfa& b) {
    return a.alphabet_ == b.alphabet_ && a.names_ == b.names_ &&
           a.successors_ == b.successors_ && a.initial_ == b.initial_ && a.final_ == b.final_;
  }

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<std::vector<StateId>> successors_;
  StateId initial_ = 0;
  std::vector<bool> final_;
  std::unordered_map<std::string, StateId> index_;
};

}  // namespace fsmgrade
