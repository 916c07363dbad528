#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fsmgrade/automaton.hpp"
#include "fsmgrade/constructions.hpp"
#include "fsmgrade/counting.hpp"
#include "fsmgrade/equivalence.hpp"
#include "fsmgrade/format.hpp"
#include "fsmgrade/regex.hpp"
#include "fsmgrade/run.hpp"

namespace fsmgrade {

// ---------------------------------------------------------------------------
// Convention checks
// ---------------------------------------------------------------------------

/// One code per drawing convention, in the order the conventions are checked.
enum class ErrorCode {
  empty_or_duplicate_state_name,
  start_state_count,
  non_accessible_state,
  invalid_transition_symbol,
  missing_transition,
  dfa_nondeterminism,
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::empty_or_duplicate_state_name: return "EMPTY_OR_DUPLICATE_STATE_NAME";
    case ErrorCode::start_state_count: return "START_STATE_COUNT";
    case ErrorCode::non_accessible_state: return "NON_ACCESSIBLE_STATE";
    case ErrorCode::invalid_transition_symbol: return "INVALID_TRANSITION_SYMBOL";
    case ErrorCode::missing_transition: return "MISSING_TRANSITION";
    case ErrorCode::dfa_nondeterminism: return "DFA_NONDETERMINISM";
  }
  return "UNKNOWN";
}

struct TransitionRef {
  std::string from;
  std::string symbol;
  std::string to;

  friend bool operator==(const TransitionRef&, const TransitionRef&) = default;
  friend auto operator<=>(const TransitionRef&, const TransitionRef&) = default;
};

/// A drawing element to highlight: a state name or a transition.
using ElementRef = std::variant<std::string, TransitionRef>;

struct ValidationError {
  ErrorCode code;
  std::string message;
  std::vector<ElementRef> element_refs;

  friend bool operator==(const ValidationError&, const ValidationError&) = default;
};

struct ValidationReport {
  std::vector<ValidationError> errors;

  bool ok() const noexcept { return errors.empty(); }
  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

namespace grading_detail {

inline std::string quoted(const std::string& s) { return "'" + s + "'"; }

inline std::string display_symbol(const std::string& symbol) { return symbol.empty() ? "ε" : symbol; }

}  // namespace grading_detail

/// Checks a submission against the drawing conventions of its question.
/// Every violation is reported, ordered by rule and then by element name.
inline ValidationReport validate(const FsmDocument& doc, const QuestionConfig& config) {
  using grading_detail::quoted;
  const Alphabet alphabet = config.question_alphabet();
  const bool is_dfa = config.fsm_type == FsmKind::dfa;
  ValidationReport report;

  // Rule 1: nonempty, unique state names.
  std::map<std::string, std::size_t> name_counts;
  for (const auto& s : doc.states) ++name_counts[s];
  for (const auto& [name, count] : name_counts) {
    if (name.empty()) {
      report.errors.push_back({ErrorCode::empty_or_duplicate_state_name,
                               "state names must be nonempty", {name}});
    } else if (count > 1) {
      report.errors.push_back({ErrorCode::empty_or_duplicate_state_name,
                               "state name " + quoted(name) + " is used " +
                                   std::to_string(count) + " times",
                               {name}});
    }
  }

  // Rule 2: exactly one start state.
  if (doc.initial_states.size() != 1) {
    std::vector<ElementRef> refs;
    auto starts = doc.initial_states;
    std::sort(starts.begin(), starts.end());
    for (auto& s : starts) refs.emplace_back(std::move(s));
    report.errors.push_back({ErrorCode::start_state_count,
                             "exactly one start state must be marked, found " +
                                 std::to_string(doc.initial_states.size()),
                             std::move(refs)});
  }

  // Rule 3: every state reachable from a start state. Any drawn edge counts
  // for reachability, so a mislabelled edge is reported once, under rule 4.
  if (!doc.initial_states.empty()) {
    std::map<std::string, std::vector<std::string>> adjacency;
    for (const auto& row : doc.transitions) {
      for (const auto& entry : row.entries) {
        auto& out = adjacency[row.state];
        out.insert(out.end(), entry.targets.begin(), entry.targets.end());
      }
    }
    std::set<std::string> reached(doc.initial_states.begin(), doc.initial_states.end());
    std::vector<std::string> frontier(reached.begin(), reached.end());
    while (!frontier.empty()) {
      const std::string s = frontier.back();
      frontier.pop_back();
      for (const auto& t : adjacency[s]) {
        if (reached.insert(t).second) frontier.push_back(t);
      }
    }
    for (const auto& [name, _] : name_counts) {
      if (!reached.count(name)) {
        report.errors.push_back({ErrorCode::non_accessible_state,
                                 "state " + quoted(name) + " cannot be reached from the start state",
                                 {name}});
      }
    }
  }

  // Rows sorted by state then symbol, for rules 4 to 6.
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> cells;
  for (const auto& row : doc.transitions) {
    for (const auto& entry : row.entries) {
      auto& targets = cells[{row.state, entry.symbol}];
      targets.insert(targets.end(), entry.targets.begin(), entry.targets.end());
    }
  }

  // Rule 4: transitions only on alphabet symbols (epsilon only for NFAs).
  for (const auto& [cell, targets] : cells) {
    const auto& [state, symbol] = cell;
    const bool valid = symbol.empty() ? !is_dfa : alphabet.contains(symbol);
    if (valid || targets.empty()) continue;
    std::vector<ElementRef> refs;
    for (const auto& t : targets) refs.emplace_back(TransitionRef{state, symbol, t});
    report.errors.push_back({ErrorCode::invalid_transition_symbol,
                             symbol.empty()
                                 ? "epsilon transitions are not allowed in a DFA (from state " +
                                       quoted(state) + ")"
                                 : "symbol " + quoted(symbol) + " on a transition from state " +
                                       quoted(state) + " is not in the alphabet",
                             std::move(refs)});
  }

  // Rule 5: totality. NFAs treat a missing move as the empty set of
  // successors, so only DFA questions are checked.
  if (is_dfa && !config.implicit_dump_state) {
    for (const auto& [name, _] : name_counts) {
      for (const auto& symbol : alphabet.symbols()) {
        auto it = cells.find({name, symbol});
        if (it == cells.end() || it->second.empty()) {
          report.errors.push_back({ErrorCode::missing_transition,
                                   "state " + quoted(name) + " has no transition on " +
                                       quoted(symbol),
                                   {name}});
        }
      }
    }
  }

  // Rule 6: at most one transition per (state, symbol) in a DFA.
  if (is_dfa) {
    for (const auto& [cell, targets] : cells) {
      if (targets.size() < 2) continue;
      const auto& [state, symbol] = cell;
      std::vector<ElementRef> refs;
      for (const auto& t : targets) refs.emplace_back(TransitionRef{state, symbol, t});
      report.errors.push_back({ErrorCode::dfa_nondeterminism,
                               "state " + quoted(state) + " has " + std::to_string(targets.size()) +
                                   " transitions on " + quoted(grading_detail::display_symbol(symbol)),
                               std::move(refs)});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Building automata from documents
// ---------------------------------------------------------------------------

/// A validated submission as a total DFA, plus the drawn NFA when the
/// question asks for one (traces are shown on the student's own states).
struct CompiledSubmission {
  Dfa dfa;
  std::optional<Nfa> nfa;
};

/// Name for the implicit dump state: "__dump", with apostrophes appended
/// until it differs from every drawn state.
inline std::string fresh_dump_name(const std::vector<std::string>& states) {
  std::string name = "__dump";
  while (std::find(states.begin(), states.end(), name) != states.end()) name += '\'';
  return name;
}

inline CompiledSubmission compile_submission(const FsmDocument& doc, const QuestionConfig& config) {
  if (!validate(doc, config).ok()) throw Error("submission violates the drawing conventions");
  Alphabet alphabet = config.question_alphabet();
  std::vector<NamedTransition> edges;
  for (const auto& row : doc.transitions) {
    for (const auto& entry : row.entries) {
      for (const auto& t : entry.targets) edges.push_back({row.state, entry.symbol, t});
    }
  }
  const std::string& initial = doc.initial_states.front();

  if (config.fsm_type == FsmKind::nfa) {
    Nfa nfa(std::move(alphabet), doc.states, edges, initial, doc.final_states);
    Dfa dfa = nfa_to_dfa(nfa);
    return {std::move(dfa), std::move(nfa)};
  }

  auto states = doc.states;
  if (config.implicit_dump_state) {
    std::set<std::pair<std::string, std::string>> defined;
    for (const auto& e : edges) defined.emplace(e.from, e.symbol);
    const std::string dump = fresh_dump_name(doc.states);
    bool needed = false;
    for (const auto& s : doc.states) {
      for (const auto& symbol : alphabet.symbols()) {
        if (!defined.count({s, symbol})) {
          edges.push_back({s, symbol, dump});
          needed = true;
        }
      }
    }
    if (needed) {
      states.push_back(dump);
      for (const auto& symbol : alphabet.symbols()) edges.push_back({dump, symbol, dump});
    }
  }
  return {Dfa::from_transitions(std::move(alphabet), std::move(states), edges, initial,
                                doc.final_states),
          std::nullopt};
}

/// The submission as a total DFA over the question alphabet. NFAs are
/// determinized; with an implicit dump state, missing transitions go to a
/// fresh rejecting sink. Requires a submission that passes validation.
inline Dfa canonicalize(const FsmDocument& doc, const QuestionConfig& config) {
  return compile_submission(doc, config).dfa;
}

/// The question's reference solution as a total DFA.
inline Dfa reference_dfa(const QuestionConfig& config) {
  if (const auto* regex = std::get_if<std::string>(&config.reference)) {
    return nfa_to_dfa(regex_to_nfa(*regex, config.question_alphabet()));
  }
  const auto& doc = std::get<FsmDocument>(config.reference);
  const auto report = validate(doc, config);
  if (!report.ok()) {
    throw Error("reference solution violates the drawing conventions: " +
                std::string(to_string(report.errors.front().code)) + " (" +
                report.errors.front().message + ")");
  }
  return canonicalize(doc, config);
}

// ---------------------------------------------------------------------------
// Partial credit
// ---------------------------------------------------------------------------

using Rational = boost::multiprecision::cpp_rational;

struct LengthRatio {
  std::size_t n;
  BigInt mismatched;
  BigInt reference;
  double ratio;
};

/// Approximated density difference of a student language against the
/// reference language, and the score derived from it.
struct PartialCreditResult {
  double density_difference;
  Rational density_difference_exact;
  std::size_t k;  // states of the minimal (total) reference DFA
  std::vector<LengthRatio> per_length;
  double score;
};

/// For n = 0..2k, the number of words of length n that the student
/// misclassifies divided by max(1, number of reference words of length n);
/// the density difference is the mean of those ratios. Not symmetric: the
/// reference supplies both k and the denominators.
inline PartialCreditResult partial_credit(const Dfa& student, const Dfa& reference) {
  detail::require_same_alphabet(student, reference);
  const std::size_t k = minimize(reference).size();
  const std::size_t max_len = 2 * k;
  const auto mismatched = count_words(symmetric_difference(student, reference), max_len);
  const auto accepted = count_words(reference, max_len);

  PartialCreditResult result{0.0, Rational(0), k, {}, 0.0};
  for (std::size_t n = 0; n <= max_len; ++n) {
    const BigInt& denominator = accepted.counts[n] > 0 ? accepted.counts[n] : BigInt(1);
    const Rational ratio(mismatched.counts[n], denominator);
    result.density_difference_exact += ratio;
    result.per_length.push_back(
        {n, mismatched.counts[n], accepted.counts[n], ratio.convert_to<double>()});
  }
  result.density_difference_exact /= Rational(max_len + 1);
  result.density_difference = result.density_difference_exact.convert_to<double>();
  if (result.density_difference_exact == 0) {
    result.score = 1.0;
  } else {
    result.score = std::max(0.0, 1.0 - result.density_difference);
    // Keep "score 1 exactly when the languages agree" even when the
    // difference is below double resolution.
    if (result.score == 1.0) result.score = std::nextafter(1.0, 0.0);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Feedback
// ---------------------------------------------------------------------------

struct FeedbackReport {
  std::vector<WitnessString> witnesses;
  std::optional<std::vector<std::string>> accepted_trace;
  ValidationReport validation;
};

using TraceFunction = std::function<std::vector<std::string>(const std::string&)>;

/// Misclassified strings for an inequivalent submission: the shortlex-first
/// `max_feedback_strings` words of length <= `feedback_length_bound` in the
/// symmetric difference, or the single shortest one if none is that short.
/// `student_trace` renders the accepting run shown for the first incorrectly
/// accepted word.
inline FeedbackReport build_feedback(const Dfa& student, const Dfa& reference,
                                     const QuestionConfig& config,
                                     const TraceFunction& student_trace) {
  detail::require_same_alphabet(student, reference);
  FeedbackReport report;
  const Dfa difference = symmetric_difference(student, reference);
  const auto words =
      enumerate_shortlex(difference, config.feedback_length_bound, config.max_feedback_strings);
  for (const auto& w : words) {
    report.witnesses.push_back({w, accepts(student, w) ? Misclassification::incorrectly_accepted
                                                       : Misclassification::incorrectly_rejected});
  }
  if (report.witnesses.empty()) {
    auto w = shortest_witness(student, reference, Reference::second);
    if (!w) throw Error("feedback requested for equivalent machines");
    report.witnesses.push_back(std::move(*w));
  }
  for (const auto& w : report.witnesses) {
    if (w.classification == Misclassification::incorrectly_accepted) {
      report.accepted_trace = student_trace(w.word);
      break;
    }
  }
  return report;
}

inline FeedbackReport build_feedback(const Dfa& student, const Dfa& reference,
                                     const QuestionConfig& config) {
  return build_feedback(student, reference, config,
                        [&](const std::string& w) { return trace(student, w); });
}

// ---------------------------------------------------------------------------
// Whole pipeline
// ---------------------------------------------------------------------------

struct GradeResult {
  bool valid = false;
  double score = 0.0;
  bool equivalent = false;
  std::optional<PartialCreditResult> partial_credit;
  FeedbackReport feedback;
};

/// A question with its reference solution already compiled.
struct PreparedQuestion {
  QuestionConfig config;
  Dfa reference;

  explicit PreparedQuestion(QuestionConfig q) : config(std::move(q)), reference(reference_dfa(config)) {}
};

inline GradeResult grade(const FsmDocument& submission, const PreparedQuestion& question) {
  GradeResult result;
  result.feedback.validation = validate(submission, question.config);
  if (!result.feedback.validation.ok()) return result;
  result.valid = true;

  const auto compiled = compile_submission(submission, question.config);
  if (equivalent(compiled.dfa, question.reference)) {
    result.equivalent = true;
    result.score = 1.0;
    return result;
  }
  result.partial_credit = partial_credit(compiled.dfa, question.reference);
  // The density difference only looks at words up to length 2k, so an
  // inequivalent submission can still have difference 0.
  result.score = std::min(result.partial_credit->score, std::nextafter(1.0, 0.0));
  TraceFunction student_trace;
  if (compiled.nfa) {
    student_trace = [&](const std::string& w) { return trace(*compiled.nfa, w); };
  } else {
    student_trace = [&](const std::string& w) { return trace(compiled.dfa, w); };
  }
  auto feedback = build_feedback(compiled.dfa, question.reference, question.config, student_trace);
  feedback.validation = std::move(result.feedback.validation);
  result.feedback = std::move(feedback);
  return result;
}

inline GradeResult grade(const FsmDocument& submission, const QuestionConfig& config) {
  return grade(submission, PreparedQuestion(config));
}

/// Parses and grades a submission document. Malformed documents raise
/// FormatError; convention violations are reported in the result.
inline GradeResult grade(std::string_view submission_text, const PreparedQuestion& question) {
  return grade(parse_fsm(submission_text, question.config.fsm_type), question);
}

}  // namespace fsmgrade

namespace fsmgrade {

/// Builds a total DFA from a standalone FSM document (no question), using
/// its own input_symbols as the alphabet. Deterministic total documents keep
/// their state names; anything else is read as an NFA and determinized.
inline Dfa automaton_from_document(const FsmDocument& doc) {
  if (doc.initial_states.size() != 1) throw Error("document must have exactly one initial state");
  Alphabet alphabet(doc.input_symbols);
  std::vector<NamedTransition> edges;
  bool deterministic = true;
  std::set<std::pair<std::string, std::string>> cells;
  for (const auto& row : doc.transitions) {
    for (const auto& entry : row.entries) {
      if (entry.symbol.empty() || entry.targets.size() != 1) deterministic = false;
      if (!cells.emplace(row.state, entry.symbol).second) deterministic = false;
      for (const auto& t : entry.targets) edges.push_back({row.state, entry.symbol, t});
    }
  }
  if (deterministic && cells.size() == doc.states.size() * alphabet.size()) {
    return Dfa::from_transitions(std::move(alphabet), doc.states, edges, doc.initial_states.front(),
                                 doc.final_states);
  }
  return nfa_to_dfa(Nfa(std::move(alphabet), doc.states, edges, doc.initial_states.front(),
                        doc.final_states));
}

}  // namespace fsmgrade
