#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "fsmgrade/automaton.hpp"

namespace fsmgrade {

namespace detail {

/// Epsilon closure over state ids. `seed` need not be sorted; the result is.
inline std::vector<StateId> closure(const Nfa& nfa, std::vector<StateId> seed) {
  std::vector<bool> seen(nfa.size(), false);
  std::vector<StateId> stack;
  std::vector<StateId> out;
  for (auto s : seed) {
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    out.push_back(s);
    for (auto t : nfa.epsilon_successors(s)) {
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// States reachable from the initial state, in breadth-first order with
/// symbols expanded in sorted order.
inline std::vector<StateId> accessible_order(const Dfa& dfa) {
  std::vector<bool> seen(dfa.size(), false);
  std::vector<StateId> order{dfa.initial()};
  seen[dfa.initial()] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (auto t : dfa.row(order[head])) {
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return order;
}

/// Appends apostrophes to repeated names until every name is unique. Derived
/// names can collide when user state names contain ',' or brackets.
inline void make_unique_names(std::vector<std::string>& names) {
  std::set<std::string> used;
  for (auto& name : names) {
    while (!used.insert(name).second) name += '\'';
  }
}

inline void require_same_alphabet(const Dfa& a, const Dfa& b) {
  if (!(a.alphabet() == b.alphabet())) throw AlphabetMismatch();
}

}  // namespace detail

/// Smallest superset of `states` closed under epsilon moves.
inline std::set<std::string> epsilon_closure(const Nfa& nfa, const std::set<std::string>& states) {
  std::vector<StateId> seed;
  for (const auto& s : states) seed.push_back(nfa.id(s));
  std::set<std::string> out;
  for (auto s : detail::closure(nfa, std::move(seed))) out.insert(nfa.name(s));
  return out;
}

/// Subset construction. Only accessible subsets are materialized, in
/// breadth-first discovery order; each subset is named by its members'
/// names, sorted and comma-joined inside braces. The empty subset (if
/// reachable) is named "{}" and acts as the dump state.
inline Dfa nfa_to_dfa(const Nfa& nfa) {
  const std::size_t k = nfa.alphabet().size();
  std::map<std::vector<StateId>, StateId> ids;
  std::vector<std::vector<StateId>> subsets;
  std::vector<StateId> table;

  auto intern = [&](std::vector<StateId> subset) {
    auto [it, inserted] = ids.emplace(subset, static_cast<StateId>(subsets.size()));
    if (inserted) subsets.push_back(std::move(subset));
    return it->second;
  };

  intern(detail::closure(nfa, {nfa.initial()}));
  for (std::size_t head = 0; head < subsets.size(); ++head) {
    for (SymbolId a = 0; a < k; ++a) {
      std::vector<StateId> step;
      for (auto s : subsets[head]) {
        auto succ = nfa.successors(s, a);
        step.insert(step.end(), succ.begin(), succ.end());
      }
      const StateId target = intern(detail::closure(nfa, std::move(step)));
      table.push_back(target);
    }
  }

  std::vector<std::string> names;
  std::vector<bool> finals;
  names.reserve(subsets.size());
  for (const auto& subset : subsets) {
    std::vector<std::string> members;
    bool accepting = false;
    for (auto s : subset) {
      members.push_back(nfa.name(s));
      accepting = accepting || nfa.is_final(s);
    }
    std::sort(members.begin(), members.end());
    std::string name = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) name += ',';
      name += members[i];
    }
    name += '}';
    names.push_back(std::move(name));
    finals.push_back(accepting);
  }
  detail::make_unique_names(names);
  return Dfa(nfa.alphabet(), std::move(names), std::move(table), 0, std::move(finals));
}

namespace detail {

/// Refinable partition of `0..n-1` (Valmari & Lehtinen style). Elements of a
/// block occupy a contiguous range of `elems`; marked elements are swapped to
/// the front of their block.
class RefinablePartition {
 public:
  explicit RefinablePartition(std::size_t n) : elems_(n), loc_(n), block_of_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) {
      elems_[i] = static_cast<StateId>(i);
      loc_[i] = i;
    }
    blocks_.push_back({0, n, 0});
  }

  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::size_t block_of(StateId e) const { return block_of_[e]; }
  std::size_t block_size(std::size_t b) const { return blocks_[b].end - blocks_[b].begin; }
  std::span<const StateId> members(std::size_t b) const {
    return std::span<const StateId>(elems_).subspan(blocks_[b].begin, block_size(b));
  }

  void mark(StateId e) {
    const std::size_t b = block_of_[e];
    auto& blk = blocks_[b];
    const std::size_t pos = loc_[e];
    if (pos < blk.marked_end) return;
    if (blk.marked_end == blk.begin) touched_.push_back(b);
    swap_positions(pos, blk.marked_end);
    ++blk.marked_end;
  }

  /// Splits every touched block into marked and unmarked parts. For each
  /// split, `on_split(old_block, new_block)` is called; the new block is the
  /// smaller of the two parts.
  template <typename OnSplit>
  void split(OnSplit&& on_split) {
    for (auto b : touched_) {
      auto& blk = blocks_[b];
      const std::size_t mid = blk.marked_end;
      blk.marked_end = blk.begin;
      if (mid == blk.end) continue;
      const std::size_t marked = mid - blk.begin;
      const std::size_t unmarked = blk.end - mid;
      Block fresh;
      if (marked <= unmarked) {
        fresh = {blk.begin, mid, blk.begin};
        blk.begin = mid;
      } else {
        fresh = {mid, blk.end, mid};
        blk.end = mid;
      }
      blk.marked_end = blk.begin;
      const std::size_t nb = blocks_.size();
      for (std::size_t i = fresh.begin; i < fresh.end; ++i) block_of_[elems_[i]] = nb;
      blocks_.push_back(fresh);
      on_split(b, nb);
    }
    touched_.clear();
  }

 private:
  struct Block {
    std::size_t begin;
    std::size_t end;
    std::size_t marked_end;
  };

  void swap_positions(std::size_t i, std::size_t j) {
    std::swap(elems_[i], elems_[j]);
    loc_[elems_[i]] = i;
    loc_[elems_[j]] = j;
  }

  std::vector<StateId> elems_;
  std::vector<std::size_t> loc_;
  std::vector<std::size_t> block_of_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> touched_;
};

}  // namespace detail

/// Minimal DFA for the same language: inaccessible states are dropped and
/// indistinguishable states merged by Hopcroft partition refinement.
///
/// The result's states are named "0", "1", ... in breadth-first order from
/// the initial state (symbols in sorted order), so equal languages produce
/// structurally equal outputs.
inline Dfa minimize(const Dfa& dfa) {
  const std::size_t k = dfa.alphabet().size();
  const auto order = detail::accessible_order(dfa);
  const std::size_t n = order.size();

  // Renumber accessible states densely.
  std::vector<StateId> dense(dfa.size(), static_cast<StateId>(-1));
  for (std::size_t i = 0; i < n; ++i) dense[order[i]] = static_cast<StateId>(i);

  // Inverse transitions in CSR form, per symbol.
  std::vector<std::size_t> offsets(n * k + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (SymbolId a = 0; a < k; ++a) ++offsets[dense[dfa.next(order[i], a)] * k + a + 1];
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  std::vector<StateId> preds(n * k);
  {
    auto fill = offsets;
    for (std::size_t i = 0; i < n; ++i) {
      for (SymbolId a = 0; a < k; ++a) {
        preds[fill[dense[dfa.next(order[i], a)] * k + a]++] = static_cast<StateId>(i);
      }
    }
  }

  detail::RefinablePartition partition(n);
  std::vector<std::vector<bool>> pending;  // pending[block][symbol]
  std::vector<std::pair<std::size_t, SymbolId>> work;

  auto enqueue = [&](std::size_t block, SymbolId a) {
    if (pending.size() <= block) pending.resize(block + 1, std::vector<bool>(k, false));
    if (!pending[block][a]) {
      pending[block][a] = true;
      work.emplace_back(block, a);
    }
  };

  // Initial split into accepting and rejecting states.
  for (std::size_t i = 0; i < n; ++i) {
    if (dfa.is_final(order[i])) partition.mark(static_cast<StateId>(i));
  }
  partition.split([](std::size_t, std::size_t) {});
  for (std::size_t b = 0; b < partition.block_count(); ++b) {
    for (SymbolId a = 0; a < k; ++a) enqueue(b, a);
  }

  std::vector<StateId> splitter;
  while (!work.empty()) {
    const auto [block, a] = work.back();
    work.pop_back();
    pending[block][a] = false;
    auto members = partition.members(block);
    splitter.assign(members.begin(), members.end());
    for (auto s : splitter) {
      for (std::size_t p = offsets[s * k + a]; p < offsets[s * k + a + 1]; ++p) {
        partition.mark(preds[p]);
      }
    }
    partition.split([&](std::size_t old_block, std::size_t new_block) {
      // The new block is the smaller half. Whether or not (old, c) is still
      // pending, (new, c) has to be.
      (void)old_block;
      for (SymbolId c = 0; c < k; ++c) enqueue(new_block, c);
    });
  }

  // Canonical numbering of blocks: breadth-first from the initial block.
  const std::size_t m = partition.block_count();
  std::vector<StateId> canon(m, static_cast<StateId>(-1));
  std::vector<std::size_t> queue{partition.block_of(0)};
  canon[queue[0]] = 0;
  std::vector<StateId> table;
  std::vector<bool> finals;
  table.reserve(m * k);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const StateId rep = partition.members(queue[head])[0];
    finals.push_back(dfa.is_final(order[rep]));
    for (SymbolId a = 0; a < k; ++a) {
      const std::size_t target = partition.block_of(dense[dfa.next(order[rep], a)]);
      if (canon[target] == static_cast<StateId>(-1)) {
        canon[target] = static_cast<StateId>(queue.size());
        queue.push_back(target);
      }
      table.push_back(canon[target]);
    }
  }
  std::vector<std::string> names;
  names.reserve(m);
  for (std::size_t i = 0; i < m; ++i) names.push_back(std::to_string(i));
  return Dfa(dfa.alphabet(), std::move(names), std::move(table), 0, std::move(finals));
}

/// Same machine with accepting and rejecting states swapped.
inline Dfa complement(const Dfa& dfa) {
  auto finals = dfa.final_flags();
  finals.flip();
  return Dfa(dfa.alphabet(), dfa.names(), dfa.table(), dfa.initial(), std::move(finals));
}

enum class ProductMode { intersection, union_, symmetric_difference };

/// Runs both machines in lockstep. Only accessible pairs are built, in
/// breadth-first order; pair states are named "(p,q)".
inline Dfa product(const Dfa& a, const Dfa& b, ProductMode mode) {
  detail::require_same_alphabet(a, b);
  const std::size_t k = a.alphabet().size();
  auto key = [&](StateId p, StateId q) { return std::uint64_t{p} * b.size() + q; };
  std::unordered_map<std::uint64_t, StateId> ids;
  std::vector<std::pair<StateId, StateId>> pairs;
  std::vector<StateId> table;

  auto intern = [&](StateId p, StateId q) {
    auto [it, inserted] = ids.emplace(key(p, q), static_cast<StateId>(pairs.size()));
    if (inserted) pairs.emplace_back(p, q);
    return it->second;
  };

  intern(a.initial(), b.initial());
  for (std::size_t head = 0; head < pairs.size(); ++head) {
    const auto [p, q] = pairs[head];
    for (SymbolId c = 0; c < k; ++c) table.push_back(intern(a.next(p, c), b.next(q, c)));
  }

  std::vector<std::string> names;
  std::vector<bool> finals;
  names.reserve(pairs.size());
  for (const auto& [p, q] : pairs) {
    names.push_back("(" + a.name(p) + "," + b.name(q) + ")");
    const bool fa = a.is_final(p);
    const bool fb = b.is_final(q);
    switch (mode) {
      case ProductMode::intersection: finals.push_back(fa && fb); break;
      case ProductMode::union_: finals.push_back(fa || fb); break;
      case ProductMode::symmetric_difference: finals.push_back(fa != fb); break;
    }
  }
  detail::make_unique_names(names);
  return Dfa(a.alphabet(), std::move(names), std::move(table), 0, std::move(finals));
}

inline Dfa symmetric_difference(const Dfa& a, const Dfa& b) {
  return product(a, b, ProductMode::symmetric_difference);
}

}  // namespace fsmgrade
