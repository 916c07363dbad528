#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fsmgrade/automaton.hpp"
#include "fsmgrade/error.hpp"

namespace fsmgrade {

/// Regular expressions over an alphabet: `|` union, juxtaposition for
/// concatenation, postfix `*`, parentheses, and `ε` for the empty word. An
/// empty pattern (or empty alternative) also denotes the empty word.
namespace regex_detail {

struct Fragment {
  StateId start;
  StateId accept;
};

class ThompsonBuilder {
 public:
  ThompsonBuilder(std::string_view pattern, const Alphabet& alphabet) : alphabet_(alphabet) {
    try {
      tokens_ = utf8::split(pattern);
    } catch (const Error&) {
      throw RegexSyntaxError("malformed UTF-8", 0);
    }
  }

  Nfa build() {
    const Fragment whole = alternation();
    if (pos_ < tokens_.size()) {
      // Only an unmatched ')' can stop the top-level alternation early.
      throw RegexSyntaxError("unmatched ')'", pos_);
    }
    std::vector<std::string> names;
    names.reserve(state_count_);
    for (StateId s = 0; s < state_count_; ++s) names.push_back(std::to_string(s));
    return Nfa(alphabet_, std::move(names), edges_, std::to_string(whole.start),
               {std::to_string(whole.accept)});
  }

 private:
  bool at(std::string_view token) const { return pos_ < tokens_.size() && tokens_[pos_] == token; }

  StateId fresh() { return state_count_++; }

  void edge(StateId from, std::string symbol, StateId to) {
    edges_.push_back({std::to_string(from), std::move(symbol), std::to_string(to)});
  }

  Fragment epsilon() {
    const Fragment f{fresh(), fresh()};
    edge(f.start, "", f.accept);
    return f;
  }

  Fragment alternation() {
    Fragment left = concatenation();
    while (at("|")) {
      ++pos_;
      const Fragment right = concatenation();
      const Fragment f{fresh(), fresh()};
      edge(f.start, "", left.start);
      edge(f.start, "", right.start);
      edge(left.accept, "", f.accept);
      edge(right.accept, "", f.accept);
      left = f;
    }
    return left;
  }

  Fragment concatenation() {
    std::vector<Fragment> parts;
    while (pos_ < tokens_.size() && !at("|") && !at(")")) parts.push_back(repetition());
    if (parts.empty()) return epsilon();
    for (std::size_t i = 1; i < parts.size(); ++i) edge(parts[i - 1].accept, "", parts[i].start);
    return {parts.front().start, parts.back().accept};
  }

  Fragment repetition() {
    Fragment inner = atom();
    while (at("*")) {
      ++pos_;
      const Fragment f{fresh(), fresh()};
      edge(f.start, "", inner.start);
      edge(f.start, "", f.accept);
      edge(inner.accept, "", inner.start);
      edge(inner.accept, "", f.accept);
      inner = f;
    }
    return inner;
  }

  Fragment atom() {
    const std::size_t here = pos_;
    const std::string_view token = tokens_[pos_++];
    if (token == "(") {
      const Fragment inner = alternation();
      if (!at(")")) throw RegexSyntaxError("missing ')' for '(' opened here", here);
      ++pos_;
      return inner;
    }
    if (token == "*") throw RegexSyntaxError("'*' has nothing to repeat", here);
    if (token == "ε") return epsilon();
    if (!alphabet_.contains(token)) {
      throw RegexSyntaxError("symbol '" + std::string(token) + "' is not in the alphabet", here);
    }
    const Fragment f{fresh(), fresh()};
    edge(f.start, std::string(token), f.accept);
    return f;
  }

  const Alphabet& alphabet_;
  std::vector<std::string_view> tokens_;
  std::size_t pos_ = 0;
  StateId state_count_ = 0;
  std::vector<NamedTransition> edges_;
};

}  // namespace regex_detail

/// Thompson construction. States are named "0", "1", ... in creation order.
/// Throws RegexSyntaxError with the offending character position.
inline Nfa regex_to_nfa(std::string_view pattern, const Alphabet& alphabet) {
  return regex_detail::ThompsonBuilder(pattern, alphabet).build();
}

}  // namespace fsmgrade
