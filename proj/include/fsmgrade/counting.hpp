#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fsmgrade/automaton.hpp"

namespace fsmgrade {

using BigInt = boost::multiprecision::cpp_int;

/// `counts[n]` is the number of accepted words of length exactly n.
struct WordCountTable {
  std::vector<BigInt> counts;

  friend bool operator==(const WordCountTable&, const WordCountTable&) = default;
};

/// Exact per-length counts for n = 0..max_len, by dynamic programming over
/// (state, length).
inline WordCountTable count_words(const Dfa& dfa, std::size_t max_len) {
  const std::size_t k = dfa.alphabet().size();
  std::vector<BigInt> paths(dfa.size());
  std::vector<BigInt> next(dfa.size());
  paths[dfa.initial()] = 1;
  WordCountTable table;
  table.counts.reserve(max_len + 1);
  for (std::size_t n = 0;; ++n) {
    BigInt accepted = 0;
    for (StateId s = 0; s < dfa.size(); ++s) {
      if (dfa.is_final(s)) accepted += paths[s];
    }
    table.counts.push_back(std::move(accepted));
    if (n == max_len) break;
    for (auto& v : next) v = 0;
    for (StateId s = 0; s < dfa.size(); ++s) {
      if (paths[s].is_zero()) continue;
      for (SymbolId c = 0; c < k; ++c) next[dfa.next(s, c)] += paths[s];
    }
    std::swap(paths, next);
  }
  return table;
}

/// The first `limit` accepted words of length <= max_len in shortlex order.
///
/// Walks the automaton depth-first in symbol order, pruning every branch
/// that cannot reach acceptance in exactly the remaining number of steps, so
/// each word costs O(length * |Σ|) to produce.
inline std::vector<std::string> enumerate_shortlex(const Dfa& dfa, std::size_t max_len,
                                                   std::size_t limit) {
  const std::size_t n = dfa.size();
  const std::size_t k = dfa.alphabet().size();
  // live[r * n + q]: some word of length exactly r leads from q to acceptance.
  std::vector<bool> live((max_len + 1) * n, false);
  for (StateId q = 0; q < n; ++q) live[q] = dfa.is_final(q);
  for (std::size_t r = 1; r <= max_len; ++r) {
    for (StateId q = 0; q < n; ++q) {
      for (SymbolId c = 0; c < k; ++c) {
        if (live[(r - 1) * n + dfa.next(q, c)]) {
          live[r * n + q] = true;
          break;
        }
      }
    }
  }

  std::vector<std::string> out;
  if (limit == 0) return out;
  struct Frame {
    StateId state;
    SymbolId next_symbol;
  };
  std::vector<Frame> stack;
  std::vector<SymbolId> word;
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (!live[len * n + dfa.initial()]) continue;
    stack.assign(1, {dfa.initial(), 0});
    word.clear();
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (word.size() == len) {
        out.push_back(dfa.alphabet().decode(word));
        if (out.size() == limit) return out;
        stack.pop_back();
        if (!word.empty()) word.pop_back();
        continue;
      }
      const std::size_t remaining = len - word.size() - 1;
      bool descended = false;
      while (top.next_symbol < k) {
        const SymbolId c = top.next_symbol++;
        const StateId t = dfa.next(top.state, c);
        if (live[remaining * n + t]) {
          word.push_back(c);
          stack.push_back({t, 0});
          descended = true;
          break;
        }
      }
      if (!descended) {
        stack.pop_back();
        if (!word.empty()) word.pop_back();
      }
    }
  }
  return out;
}

}  // namespace fsmgrade
