#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "fsmgrade/automaton.hpp"
#include "fsmgrade/constructions.hpp"

namespace fsmgrade {

inline bool accepts(const Dfa& dfa, std::string_view word) {
  StateId s = dfa.initial();
  for (auto a : dfa.alphabet().encode(word)) s = dfa.next(s, a);
  return dfa.is_final(s);
}

inline bool accepts(const Nfa& nfa, std::string_view word) {
  auto current = detail::closure(nfa, {nfa.initial()});
  for (auto a : nfa.alphabet().encode(word)) {
    std::vector<StateId> step;
    for (auto s : current) {
      auto succ = nfa.successors(s, a);
      step.insert(step.end(), succ.begin(), succ.end());
    }
    current = detail::closure(nfa, std::move(step));
  }
  return std::any_of(current.begin(), current.end(), [&](StateId s) { return nfa.is_final(s); });
}

/// States visited while reading `word`, starting with the initial state:
/// always `|word| + 1` names, whether or not the word is accepted.
inline std::vector<std::string> trace(const Dfa& dfa, std::string_view word) {
  StateId s = dfa.initial();
  std::vector<std::string> out{dfa.name(s)};
  for (auto a : dfa.alphabet().encode(word)) {
    s = dfa.next(s, a);
    out.push_back(dfa.name(s));
  }
  return out;
}

/// One accepting run of the NFA on `word`, with epsilon moves shown as
/// repeated steps. Among accepting runs the one with the fewest moves is
/// returned; ties go to the run found first when successors are explored in
/// state-declaration order. Throws Error if the word is rejected.
inline std::vector<std::string> trace(const Nfa& nfa, std::string_view word) {
  const auto symbols = nfa.alphabet().encode(word);
  const std::size_t len = symbols.size();
  const std::size_t n = nfa.size();
  // Configuration (position, state) -> dense index position * n + state.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent((len + 1) * n, kNone);
  std::vector<bool> seen((len + 1) * n, false);
  std::vector<std::size_t> queue{nfa.initial()};
  seen[nfa.initial()] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t config = queue[head];
    const std::size_t pos = config / n;
    const auto state = static_cast<StateId>(config % n);
    if (pos == len && nfa.is_final(state)) {
      std::vector<std::string> run;
      for (std::size_t c = config; c != kNone; c = parent[c]) {
        run.push_back(nfa.name(static_cast<StateId>(c % n)));
      }
      std::reverse(run.begin(), run.end());
      return run;
    }
    auto visit = [&](std::size_t next) {
      if (!seen[next]) {
        seen[next] = true;
        parent[next] = config;
        queue.push_back(next);
      }
    };
    for (auto t : nfa.epsilon_successors(state)) visit(pos * n + t);
    if (pos < len) {
      for (auto t : nfa.successors(state, symbols[pos])) visit((pos + 1) * n + t);
    }
  }
  throw Error("cannot trace a word the NFA rejects");
}

}  // namespace fsmgrade
