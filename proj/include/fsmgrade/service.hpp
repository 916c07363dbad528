#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "fsmgrade/format.hpp"
#include "fsmgrade/grading.hpp"
#include "fsmgrade/report.hpp"

namespace fsmgrade {

struct HttpResponse {
  int status = 200;
  std::string body;
};

/// Transport-independent request handling for the grading service. Holds
/// the question bank read-only; every method is safe to call concurrently.
/// No response ever contains a reference solution.
class GradingService {
 public:
  explicit GradingService(const std::map<std::string, QuestionConfig>& bank) {
    for (const auto& [id, config] : bank) questions_.emplace(id, PreparedQuestion(config));
  }

  /// GET /questions
  HttpResponse list_questions() const {
    Json list = Json::array();
    for (const auto& [id, q] : questions_) {
      Json e = Json::object();
      e["question_id"] = id;
      e["prompt"] = q.config.prompt;
      list.push_back(std::move(e));
    }
    return {200, list.dump()};
  }

  /// GET /questions/{id}
  HttpResponse question(const std::string& id) const {
    auto it = questions_.find(id);
    if (it == questions_.end()) return not_found(id);
    const auto& c = it->second.config;
    Json j = Json::object();
    j["question_id"] = c.question_id;
    j["prompt"] = c.prompt;
    j["alphabet"] = c.alphabet;
    j["fsm_type"] = to_string(c.fsm_type);
    j["implicit_dump_state"] = c.implicit_dump_state;
    return {200, j.dump()};
  }

  /// POST /questions/{id}/grade with an FSM document body.
  HttpResponse grade(const std::string& id, std::string_view body) const {
    auto it = questions_.find(id);
    if (it == questions_.end()) return not_found(id);
    try {
      const auto submission = parse_fsm(body, it->second.config.fsm_type);
      return {200, grade_result_to_json(fsmgrade::grade(submission, it->second)).dump()};
    } catch (const FormatError& e) {
      Json j = Json::object();
      j["error"] = e.code() == FormatError::Code::parse_error ? "PARSE_ERROR" : "SCHEMA_ERROR";
      j["message"] = e.what();
      if (e.code() == FormatError::Code::parse_error) {
        j["line"] = e.line();
        j["column"] = e.column();
      } else {
        j["key"] = e.key();
      }
      return {400, j.dump()};
    }
  }

 private:
  static HttpResponse not_found(const std::string& id) {
    Json j = Json::object();
    j["error"] = "NOT_FOUND";
    j["message"] = "no question with id '" + id + "'";
    return {404, j.dump()};
  }

  std::map<std::string, PreparedQuestion> questions_;
};

}  // namespace fsmgrade
