#pragma once

#include <sstream>
#include <string>

#include "fsmgrade/format.hpp"
#include "fsmgrade/grading.hpp"

namespace fsmgrade {

inline Json element_ref_to_json(const ElementRef& ref) {
  if (const auto* state = std::get_if<std::string>(&ref)) return *state;
  const auto& t = std::get<TransitionRef>(ref);
  Json j = Json::object();
  j["from"] = t.from;
  j["symbol"] = t.symbol;
  j["to"] = t.to;
  return j;
}

inline Json validation_to_json(const ValidationReport& report) {
  Json errors = Json::array();
  for (const auto& e : report.errors) {
    Json j = Json::object();
    j["code"] = to_string(e.code);
    j["message"] = e.message;
    Json refs = Json::array();
    for (const auto& r : e.element_refs) refs.push_back(element_ref_to_json(r));
    j["element_refs"] = std::move(refs);
    errors.push_back(std::move(j));
  }
  return errors;
}

/// Machine-readable grade. Word counts are decimal strings since they can
/// exceed 64 bits; the empty word is "".
inline Json grade_result_to_json(const GradeResult& r) {
  Json j = Json::object();
  j["valid"] = r.valid;
  j["score"] = r.score;
  j["equivalent"] = r.equivalent;
  if (r.partial_credit) {
    const auto& pc = *r.partial_credit;
    j["density_difference"] = pc.density_difference;
    Json p = Json::object();
    p["k"] = pc.k;
    p["density_difference_exact"] = pc.density_difference_exact.str();
    Json rows = Json::array();
    for (const auto& row : pc.per_length) {
      Json e = Json::object();
      e["n"] = row.n;
      e["mismatched_count"] = row.mismatched.str();
      e["reference_count"] = row.reference.str();
      e["ratio"] = row.ratio;
      rows.push_back(std::move(e));
    }
    p["per_length"] = std::move(rows);
    j["partial_credit"] = std::move(p);
  } else {
    j["density_difference"] = r.valid ? Json(0.0) : Json(nullptr);
    j["partial_credit"] = nullptr;
  }
  Json witnesses = Json::array();
  for (const auto& w : r.feedback.witnesses) {
    Json e = Json::object();
    e["word"] = w.word;
    e["classification"] = to_string(w.classification);
    witnesses.push_back(std::move(e));
  }
  j["witnesses"] = std::move(witnesses);
  j["accepted_trace"] = r.feedback.accepted_trace ? Json(*r.feedback.accepted_trace) : Json(nullptr);
  j["validation_errors"] = validation_to_json(r.feedback.validation);
  return j;
}

inline std::string display_word(const std::string& w) { return w.empty() ? "ε" : w; }

inline std::string render_element_ref(const ElementRef& ref) {
  if (const auto* state = std::get_if<std::string>(&ref)) return "\"" + *state + "\"";
  const auto& t = std::get<TransitionRef>(ref);
  return "\"" + t.from + "\" --" + display_word(t.symbol) + "--> \"" + t.to + "\"";
}

inline std::string render_validation(const ValidationReport& report) {
  std::ostringstream out;
  for (const auto& e : report.errors) {
    out << to_string(e.code) << ": " << e.message;
    if (!e.element_refs.empty()) {
      out << " [";
      for (std::size_t i = 0; i < e.element_refs.size(); ++i) {
        if (i) out << ", ";
        out << render_element_ref(e.element_refs[i]);
      }
      out << "]";
    }
    out << "\n";
  }
  return out.str();
}

inline std::string render_trace(const std::vector<std::string>& states) {
  std::string out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) out += " → ";
    out += states[i];
  }
  return out;
}

/// Human-readable grade, as shown to a student.
inline std::string render_grade(const GradeResult& r) {
  std::ostringstream out;
  out << "Score: " << r.score << "\n";
  if (!r.valid) {
    out << "The submission does not follow the drawing conventions:\n"
        << render_validation(r.feedback.validation);
    return out.str();
  }
  if (r.equivalent) {
    out << "Correct: the machine accepts exactly the target language.\n";
    return out.str();
  }
  if (r.partial_credit) {
    out << "Density difference: " << r.partial_credit->density_difference
        << " (lengths 0.." << 2 * r.partial_credit->k << ")\n";
  }
  std::vector<std::string> accepted;
  std::vector<std::string> rejected;
  for (const auto& w : r.feedback.witnesses) {
    (w.classification == Misclassification::incorrectly_accepted ? accepted : rejected)
        .push_back(display_word(w.word));
  }
  if (!accepted.empty()) {
    out << "Incorrectly accepted:";
    for (const auto& w : accepted) out << " " << w;
    out << "\n";
  }
  if (!rejected.empty()) {
    out << "Incorrectly rejected:";
    for (const auto& w : rejected) out << " " << w;
    out << "\n";
  }
  if (r.feedback.accepted_trace) {
    for (const auto& w : r.feedback.witnesses) {
      if (w.classification == Misclassification::incorrectly_accepted) {
        out << "Run on " << display_word(w.word) << ": " << render_trace(*r.feedback.accepted_trace)
            << "\n";
        break;
      }
    }
  }
  return out.str();
}

}  // namespace fsmgrade
