// Command-line front end: validate, grade, equiv, witness, count, serve.
//
// Exit codes: 0 success (valid / full credit / equivalent), 1 convention
// violations or inequivalent machines, 2 unreadable or malformed input,
// 3 graded below full credit.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fsmgrade/bank.hpp"
#include "fsmgrade/fsmgrade.hpp"
#include "fsmgrade/http_server.hpp"

namespace {

using namespace fsmgrade;

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kInputError = 2;
constexpr int kPartialCredit = 3;

Dfa load_machine(const std::string& path) {
  return automaton_from_document(parse_fsm(read_file(path), FsmKind::nfa));
}

int run_validate(const std::string& fsm_path, const std::string& question_path, bool json) {
  const auto question = parse_question(read_file(question_path));
  const auto doc = parse_fsm(read_file(fsm_path), question.fsm_type);
  const auto report = validate(doc, question);
  if (json) {
    Json j = Json::object();
    j["valid"] = report.ok();
    j["validation_errors"] = validation_to_json(report);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render_validation(report);
  }
  return report.ok() ? kOk : kRejected;
}

int run_grade(const std::string& submission_path, const std::string& question_path, bool json) {
  const PreparedQuestion question(parse_question(read_file(question_path)));
  const auto result = grade(read_file(submission_path), question);
  if (json) {
    std::cout << grade_result_to_json(result).dump(2) << "\n";
  } else {
    std::cout << render_grade(result);
  }
  return result.score == 1.0 ? kOk : kPartialCredit;
}

int run_equiv(const std::string& a_path, const std::string& b_path, bool json) {
  const bool same = equivalent(load_machine(a_path), load_machine(b_path));
  if (json) {
    Json j = Json::object();
    j["equivalent"] = same;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (same ? "true" : "false") << "\n";
  }
  return same ? kOk : kRejected;
}

int run_witness(const std::string& a_path, const std::string& b_path, bool json) {
  const auto w = shortest_witness(load_machine(a_path), load_machine(b_path), Reference::first);
  if (json) {
    Json j = Json::object();
    if (w) {
      j["word"] = w->word;
      j["classification"] = to_string(w->classification);
    } else {
      j["word"] = nullptr;
    }
    std::cout << j.dump() << "\n";
  } else if (w) {
    std::cout << display_word(w->word) << " " << to_string(w->classification) << "\n";
  } else {
    std::cout << "none\n";
  }
  return kOk;
}

int run_count(const std::string& path, std::size_t max_len, bool json) {
  const auto table = count_words(load_machine(path), max_len);
  if (json) {
    Json counts = Json::array();
    for (const auto& c : table.counts) counts.push_back(c.str());
    Json j = Json::object();
    j["counts"] = std::move(counts);
    std::cout << j.dump() << "\n";
  } else {
    for (std::size_t n = 0; n < table.counts.size(); ++n) {
      std::cout << (n ? "," : "") << table.counts[n];
    }
    std::cout << "\n";
  }
  return kOk;
}

int run_serve(const std::string& bank_path, const std::string& bind,
              const std::optional<std::string>& cors_origin) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw Error("bind address must be HOST:PORT");
  const std::string host = bind.substr(0, colon);
  const int port = std::stoi(bind.substr(colon + 1));
  const GradingService service(load_question_bank(bank_path));
  httplib::Server server;
  bind_routes(server, service, cors_origin);
  std::cerr << "serving " << bank_path << " on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot listen on " << bind << "\n";
    return kInputError;
  }
  return kOk;
}

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite automaton grader"};
  app.require_subcommand(1);

  std::string fsm_path;
  std::string other_path;
  std::string question_path;
  bool json = false;
  bool human = false;
  std::size_t max_len = 8;

  auto* validate_cmd = app.add_subcommand("validate", "Check a drawing against the question's conventions");
  validate_cmd->add_option("fsm", fsm_path, "FSM document")->required();
  validate_cmd->add_option("question", question_path, "question.json")->required();
  validate_cmd->add_flag("--json", json, "Machine-readable output");

  auto* grade_cmd = app.add_subcommand("grade", "Grade a submission against a question");
  grade_cmd->add_option("submission", fsm_path, "FSM document")->required();
  grade_cmd->add_option("question", question_path, "question.json")->required();
  auto* json_flag = grade_cmd->add_flag("--json", json, "Machine-readable output");
  grade_cmd->add_flag("--human", human, "Human-readable output (default)")->excludes(json_flag);

  auto* equiv_cmd = app.add_subcommand("equiv", "Decide whether two machines accept the same language");
  equiv_cmd->add_option("a", fsm_path)->required();
  equiv_cmd->add_option("b", other_path)->required();
  equiv_cmd->add_flag("--json", json);

  auto* witness_cmd = app.add_subcommand("witness", "Shortlex-least word on which two machines differ (first is the reference)");
  witness_cmd->add_option("reference", fsm_path)->required();
  witness_cmd->add_option("other", other_path)->required();
  witness_cmd->add_flag("--json", json);

  auto* count_cmd = app.add_subcommand("count", "Accepted words per length");
  count_cmd->add_option("fsm", fsm_path)->required();
  count_cmd->add_option("max_len", max_len)->required();
  count_cmd->add_flag("--json", json);

  std::string bank_path = env_or("FSMGRADE_BANK", "questions");
  std::string bind = env_or("FSMGRADE_BIND", "127.0.0.1:8080");
  std::string cors_origin;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP grading service");
  serve_cmd->add_option("--bank", bank_path, "Question bank directory (env FSMGRADE_BANK)");
  serve_cmd->add_option("--bind", bind, "HOST:PORT (env FSMGRADE_BIND)");
  serve_cmd->add_option("--cors-origin", cors_origin, "Allowed browser origin for the editor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*validate_cmd) return run_validate(fsm_path, question_path, json);
    if (*grade_cmd) return run_grade(fsm_path, question_path, json);
    if (*equiv_cmd) return run_equiv(fsm_path, other_path, json);
    if (*witness_cmd) return run_witness(fsm_path, other_path, json);
    if (*count_cmd) return run_count(fsm_path, max_len, json);
    if (*serve_cmd) {
      return run_serve(bank_path, bind,
                       cors_origin.empty() ? std::nullopt : std::optional<std::string>(cors_origin));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
