#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fsmgrade/automaton.hpp"
#include "fsmgrade/constructions.hpp"

namespace fsmgrade {

namespace detail {

/// Union-find with path halving and union by rank.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Merges the classes of two roots.
  void link(std::uint32_t ra, std::uint32_t rb) {
    if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

}  // namespace detail

/// Language equality by Hopcroft-Karp: union-find over the disjoint union of
/// both state sets, seeded with the two initial states. Every merge of a
/// pair pushes it for successor checking; a merge that would mix accepting
/// and rejecting states proves the languages differ. Runs in
/// O(|Σ| (|a| + |b|) α) time.
inline bool equivalent(const Dfa& a, const Dfa& b) {
  detail::require_same_alphabet(a, b);
  const std::size_t offset = a.size();
  const std::size_t k = a.alphabet().size();
  if (a.is_final(a.initial()) != b.is_final(b.initial())) return false;

  detail::DisjointSets sets(a.size() + b.size());
  std::vector<std::pair<StateId, StateId>> stack;
  sets.link(sets.find(a.initial()), sets.find(static_cast<std::uint32_t>(offset + b.initial())));
  stack.emplace_back(a.initial(), b.initial());
  while (!stack.empty()) {
    const auto [p, q] = stack.back();
    stack.pop_back();
    for (SymbolId c = 0; c < k; ++c) {
      const StateId pn = a.next(p, c);
      const StateId qn = b.next(q, c);
      const std::uint32_t rp = sets.find(pn);
      const std::uint32_t rq = sets.find(static_cast<std::uint32_t>(offset + qn));
      if (rp == rq) continue;
      // Merged classes are homogeneous in finality, so comparing the two
      // representatives' states is enough.
      if (a.is_final(pn) != b.is_final(qn)) return false;
      sets.link(rp, rq);
      stack.emplace_back(pn, qn);
    }
  }
  return true;
}

enum class Misclassification { incorrectly_accepted, incorrectly_rejected };

inline const char* to_string(Misclassification m) noexcept {
  return m == Misclassification::incorrectly_accepted ? "incorrectly_accepted"
                                                      : "incorrectly_rejected";
}

/// A word on which two machines disagree, classified relative to the
/// reference machine: "incorrectly accepted" means the other machine accepts
/// a word the reference rejects.
struct WitnessString {
  std::string word;
  Misclassification classification;

  friend bool operator==(const WitnessString&, const WitnessString&) = default;
};

/// Which argument of a binary check is the reference solution.
enum class Reference { first, second };

/// Shortlex-minimal word in the symmetric difference of the two languages,
/// or nothing if they are equal.
inline std::optional<std::string> shortest_distinguishing_word(const Dfa& a, const Dfa& b) {
  if (equivalent(a, b)) return std::nullopt;

  // Breadth-first search of the product from the initial pair, expanding
  // symbols in sorted order: the first pair reached is reached by its
  // shortlex-least word, so the first mismatched pair popped gives the
  // answer. The equivalence check above guarantees one exists.
  const std::size_t k = a.alphabet().size();
  struct Node {
    StateId p;
    StateId q;
    std::size_t parent;
    SymbolId symbol;
  };
  constexpr std::size_t kRoot = static_cast<std::size_t>(-1);
  std::vector<Node> nodes{{a.initial(), b.initial(), kRoot, 0}};
  std::unordered_map<std::uint64_t, std::size_t> seen;
  auto key = [&](StateId p, StateId q) { return std::uint64_t{p} * b.size() + q; };
  seen.emplace(key(a.initial(), b.initial()), 0);
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const Node node = nodes[head];
    if (a.is_final(node.p) != b.is_final(node.q)) {
      std::vector<SymbolId> word;
      for (std::size_t i = head; nodes[i].parent != kRoot; i = nodes[i].parent) {
        word.push_back(nodes[i].symbol);
      }
      std::reverse(word.begin(), word.end());
      return a.alphabet().decode(word);
    }
    for (SymbolId c = 0; c < k; ++c) {
      const StateId pn = a.next(node.p, c);
      const StateId qn = b.next(node.q, c);
      if (seen.emplace(key(pn, qn), nodes.size()).second) nodes.push_back({pn, qn, head, c});
    }
  }
  throw Error("internal error: inequivalent machines without a distinguishing word");
}

/// Shortlex-minimal misclassified word, labelled against `reference`.
inline std::optional<WitnessString> shortest_witness(const Dfa& a, const Dfa& b,
                                                     Reference reference) {
  auto word = shortest_distinguishing_word(a, b);
  if (!word) return std::nullopt;
  const Dfa& other = reference == Reference::first ? b : a;
  StateId s = other.initial();
  for (auto c : other.alphabet().encode(*word)) s = other.next(s, c);
  return WitnessString{std::move(*word), other.is_final(s) ? Misclassification::incorrectly_accepted
                                                           : Misclassification::incorrectly_rejected};
}

}  // namespace fsmgrade
