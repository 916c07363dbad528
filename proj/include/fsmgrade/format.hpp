#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "fsmgrade/alphabet.hpp"
#include "fsmgrade/error.hpp"

namespace fsmgrade {

using Json = nlohmann::ordered_json;

enum class FsmKind { dfa, nfa };

inline const char* to_string(FsmKind kind) noexcept { return kind == FsmKind::dfa ? "dfa" : "nfa"; }

/// Malformed input document. PARSE_ERROR carries a line/column; SCHEMA_ERROR
/// carries the path of the offending key (e.g. "transitions.q0.ab").
class FormatError : public Error {
 public:
  enum class Code { parse_error, schema_error };

  static FormatError parse(const std::string& message, std::size_t line, std::size_t column) {
    return FormatError(Code::parse_error, "PARSE_ERROR at line " + std::to_string(line) +
                                              ", column " + std::to_string(column) + ": " + message,
                       "", line, column);
  }
  static FormatError schema(const std::string& key, const std::string& message) {
    return FormatError(Code::schema_error, "SCHEMA_ERROR(" + key + "): " + message, key, 0, 0);
  }

  Code code() const noexcept { return code_; }
  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  FormatError(Code code, const std::string& what, std::string key, std::size_t line,
              std::size_t column)
      : Error(what), code_(code), key_(std::move(key)), line_(line), column_(column) {}

  Code code_;
  std::string key_;
  std::size_t line_;
  std::size_t column_;
};

/// Outgoing edges of one state on one symbol. The symbol "" is epsilon.
struct TransitionEntry {
  std::string symbol;
  std::vector<std::string> targets;

  friend bool operator==(const TransitionEntry&, const TransitionEntry&) = default;
};

struct TransitionRow {
  std::string state;
  std::vector<TransitionEntry> entries;

  friend bool operator==(const TransitionRow&, const TransitionRow&) = default;
};

/// A drawn automaton exactly as submitted, before any convention checks.
///
/// It may be ill-formed as an automaton (duplicate names, several start
/// states, missing or nondeterministic transitions); those problems are
/// reported by validation, not by the parser. `kind` selects the JSON shape of
/// transition targets and is not itself serialized.
struct FsmDocument {
  FsmKind kind = FsmKind::dfa;
  std::vector<std::string> states;
  std::vector<std::string> input_symbols;
  std::vector<TransitionRow> transitions;
  std::vector<std::string> initial_states;
  std::vector<std::string> final_states;

  friend bool operator==(const FsmDocument&, const FsmDocument&) = default;
};

namespace format_detail {

inline void position_of(std::string_view text, std::size_t byte, std::size_t& line,
                        std::size_t& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 0;
    std::size_t column = 0;
    position_of(text, e.byte == 0 ? 0 : e.byte - 1, line, column);
    throw FormatError::parse(e.what(), line, column);
  }
}

inline bool has_outer_whitespace(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  return !s.empty() && (ws(s.front()) || ws(s.back()));
}

inline bool is_visible_symbol(std::string_view s) {
  if (!utf8::is_single_code_point(s)) return false;
  const auto lead = static_cast<unsigned char>(s[0]);
  return lead > 0x20 && lead != 0x7F;
}

inline std::string expect_string(const Json& j, const std::string& key) {
  if (!j.is_string()) throw FormatError::schema(key, "expected a string");
  return j.get<std::string>();
}

inline std::vector<std::string> expect_string_array(const Json& j, const std::string& key) {
  if (!j.is_array()) throw FormatError::schema(key, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(expect_string(j[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace format_detail

/// Reads an FSM document from an already-parsed JSON value. `where` prefixes
/// key paths in schema errors.
inline FsmDocument fsm_from_json(const Json& j, FsmKind kind, const std::string& where = "") {
  using namespace format_detail;
  static constexpr std::string_view kKeys[] = {"states", "input_symbols", "transitions",
                                               "initial_state", "final_states"};
  if (!j.is_object()) throw FormatError::schema(where.empty() ? "$" : where, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw FormatError::schema(where + key, "unknown key");
    }
  }
  for (auto key : kKeys) {
    if (!j.contains(key)) throw FormatError::schema(where + std::string(key), "missing required key");
  }

  FsmDocument doc;
  doc.kind = kind;
  doc.states = expect_string_array(j["states"], where + "states");
  for (std::size_t i = 0; i < doc.states.size(); ++i) {
    if (has_outer_whitespace(doc.states[i])) {
      throw FormatError::schema(where + "states[" + std::to_string(i) + "]",
                                "state names must not start or end with whitespace");
    }
  }
  doc.input_symbols = expect_string_array(j["input_symbols"], where + "input_symbols");
  for (std::size_t i = 0; i < doc.input_symbols.size(); ++i) {
    if (!is_visible_symbol(doc.input_symbols[i])) {
      throw FormatError::schema(where + "input_symbols[" + std::to_string(i) + "]",
                                "symbols must be single visible characters");
    }
  }

  const Json& transitions = j["transitions"];
  if (!transitions.is_object()) throw FormatError::schema(where + "transitions", "expected an object");
  for (const auto& [state, row_json] : transitions.items()) {
    const std::string row_key = where + "transitions." + state;
    if (!contains(doc.states, state)) throw FormatError::schema(row_key, "undeclared state");
    if (!row_json.is_object()) throw FormatError::schema(row_key, "expected an object");
    TransitionRow row{state, {}};
    for (const auto& [symbol, target_json] : row_json.items()) {
      const std::string key = row_key + "." + symbol;
      if (!symbol.empty() && !is_visible_symbol(symbol)) {
        throw FormatError::schema(key, "symbols must be single visible characters");
      }
      TransitionEntry entry{symbol, {}};
      if (target_json.is_string()) {
        entry.targets.push_back(target_json.get<std::string>());
      } else {
        entry.targets = expect_string_array(target_json, key);
      }
      for (const auto& t : entry.targets) {
        if (!contains(doc.states, t)) throw FormatError::schema(key, "undeclared target state '" + t + "'");
      }
      row.entries.push_back(std::move(entry));
    }
    doc.transitions.push_back(std::move(row));
  }

  const Json& initial = j["initial_state"];
  if (initial.is_string()) {
    doc.initial_states.push_back(initial.get<std::string>());
  } else if (!initial.is_null()) {
    doc.initial_states = expect_string_array(initial, where + "initial_state");
  }
  for (const auto& s : doc.initial_states) {
    if (!contains(doc.states, s)) throw FormatError::schema(where + "initial_state", "undeclared state");
  }

  doc.final_states = expect_string_array(j["final_states"], where + "final_states");
  for (const auto& s : doc.final_states) {
    if (!contains(doc.states, s)) throw FormatError::schema(where + "final_states", "undeclared state");
  }
  return doc;
}

/// Parses the FSM JSON format:
///
///   {"states": [...], "input_symbols": [...],
///    "transitions": {state: {symbol: target}}, "initial_state": state,
///    "final_states": [...]}
///
/// Targets may be a single state name or a list of names; the empty symbol
/// key is an epsilon move. `initial_state` may also be a list (or null) so a
/// drawing with zero or several start states survives until validation.
inline FsmDocument parse_fsm(std::string_view text, FsmKind kind) {
  return fsm_from_json(format_detail::parse_json(text), kind);
}

inline Json fsm_to_json(const FsmDocument& doc) {
  Json j = Json::object();
  j["states"] = doc.states;
  j["input_symbols"] = doc.input_symbols;
  Json transitions = Json::object();
  for (const auto& row : doc.transitions) {
    Json row_json = Json::object();
    for (const auto& entry : row.entries) {
      if (doc.kind == FsmKind::dfa && entry.targets.size() == 1) {
        row_json[entry.symbol] = entry.targets.front();
      } else {
        row_json[entry.symbol] = entry.targets;
      }
    }
    transitions[row.state] = std::move(row_json);
  }
  j["transitions"] = std::move(transitions);
  if (doc.initial_states.size() == 1) {
    j["initial_state"] = doc.initial_states.front();
  } else {
    j["initial_state"] = doc.initial_states;
  }
  j["final_states"] = doc.final_states;
  return j;
}

inline std::string serialize_fsm(const FsmDocument& doc, int indent = 2) {
  return fsm_to_json(doc).dump(indent);
}

/// One graded question: a prompt plus a hidden reference solution given as
/// an FSM document or a regular expression.
struct QuestionConfig {
  std::string question_id;
  FsmKind fsm_type = FsmKind::dfa;
  std::vector<std::string> alphabet;
  std::variant<FsmDocument, std::string> reference;
  bool implicit_dump_state = false;
  std::size_t feedback_length_bound = 8;
  std::size_t max_feedback_strings = 10;
  std::string prompt;

  Alphabet question_alphabet() const { return Alphabet(alphabet); }
  bool reference_is_regex() const noexcept { return std::holds_alternative<std::string>(reference); }
};

inline QuestionConfig question_from_json(const Json& j) {
  using namespace format_detail;
  static constexpr std::string_view kKeys[] = {"question_id",        "fsm_type",
                                               "alphabet",           "reference",
                                               "implicit_dump_state", "feedback_length_bound",
                                               "max_feedback_strings", "prompt"};
  if (!j.is_object()) throw FormatError::schema("$", "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw FormatError::schema(key, "unknown key");
    }
  }
  for (auto key : {"question_id", "fsm_type", "alphabet", "reference"}) {
    if (!j.contains(key)) throw FormatError::schema(key, "missing required key");
  }

  QuestionConfig q;
  q.question_id = expect_string(j["question_id"], "question_id");
  if (q.question_id.empty()) throw FormatError::schema("question_id", "must be nonempty");
  const auto type = expect_string(j["fsm_type"], "fsm_type");
  if (type == "dfa") {
    q.fsm_type = FsmKind::dfa;
  } else if (type == "nfa") {
    q.fsm_type = FsmKind::nfa;
  } else {
    throw FormatError::schema("fsm_type", "expected \"dfa\" or \"nfa\"");
  }
  q.alphabet = expect_string_array(j["alphabet"], "alphabet");
  try {
    (void)Alphabet(q.alphabet);
  } catch (const Error& e) {
    throw FormatError::schema("alphabet", e.what());
  }

  const Json& ref = j["reference"];
  if (ref.is_string()) {
    q.reference = ref.get<std::string>();
  } else if (ref.is_object()) {
    q.reference = fsm_from_json(ref, q.fsm_type, "reference.");
  } else {
    throw FormatError::schema("reference", "expected an FSM object or a regular expression string");
  }

  if (j.contains("implicit_dump_state")) {
    if (!j["implicit_dump_state"].is_boolean()) {
      throw FormatError::schema("implicit_dump_state", "expected a boolean");
    }
    q.implicit_dump_state = j["implicit_dump_state"].get<bool>();
  }
  if (j.contains("feedback_length_bound")) {
    if (!j["feedback_length_bound"].is_number_unsigned()) {
      throw FormatError::schema("feedback_length_bound", "expected a nonnegative integer");
    }
    q.feedback_length_bound = j["feedback_length_bound"].get<std::size_t>();
  }
  if (j.contains("max_feedback_strings")) {
    if (!j["max_feedback_strings"].is_number_unsigned() ||
        j["max_feedback_strings"].get<std::size_t>() == 0) {
      throw FormatError::schema("max_feedback_strings", "expected a positive integer");
    }
    q.max_feedback_strings = j["max_feedback_strings"].get<std::size_t>();
  }
  if (j.contains("prompt")) q.prompt = expect_string(j["prompt"], "prompt");
  return q;
}

inline QuestionConfig parse_question(std::string_view text) {
  return question_from_json(format_detail::parse_json(text));
}

inline Json question_to_json(const QuestionConfig& q) {
  Json j = Json::object();
  j["question_id"] = q.question_id;
  j["fsm_type"] = to_string(q.fsm_type);
  j["alphabet"] = q.alphabet;
  if (const auto* regex = std::get_if<std::string>(&q.reference)) {
    j["reference"] = *regex;
  } else {
    j["reference"] = fsm_to_json(std::get<FsmDocument>(q.reference));
  }
  j["implicit_dump_state"] = q.implicit_dump_state;
  j["feedback_length_bound"] = q.feedback_length_bound;
  j["max_feedback_strings"] = q.max_feedback_strings;
  j["prompt"] = q.prompt;
  return j;
}

}  // namespace fsmgrade
