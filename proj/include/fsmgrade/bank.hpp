#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "fsmgrade/format.hpp"
#include "fsmgrade/grading.hpp"

namespace fsmgrade {

/// Question bank loading failed. The message names the offending file.
class BankError : public Error {
 public:
  using Error::Error;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Cross-field checks for one question: the reference must compile over the
/// question alphabet and grade itself to full credit.
inline void check_question(const QuestionConfig& q) {
  if (const auto* doc = std::get_if<FsmDocument>(&q.reference)) {
    auto declared = doc->input_symbols;
    auto expected = q.alphabet;
    std::sort(declared.begin(), declared.end());
    std::sort(expected.begin(), expected.end());
    if (declared != expected) {
      throw Error("reference input_symbols differ from the question alphabet");
    }
  }
  const PreparedQuestion prepared(q);
  if (const auto* doc = std::get_if<FsmDocument>(&q.reference)) {
    const auto self = grade(*doc, prepared);
    if (self.score != 1.0) throw Error("reference solution does not grade itself to 1.0");
  }
}

/// Loads every `<dir>/<question>/question.json` below `directory`. Any
/// invalid question or duplicate id aborts loading.
inline std::map<std::string, QuestionConfig> load_question_bank(const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) throw BankError("question bank " + directory.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_directory() && fs::is_regular_file(entry.path() / "question.json")) {
      files.push_back(entry.path() / "question.json");
    }
  }
  std::sort(files.begin(), files.end());

  std::map<std::string, QuestionConfig> bank;
  std::map<std::string, fs::path> origin;
  for (const auto& file : files) {
    try {
      QuestionConfig q = parse_question(read_file(file));
      check_question(q);
      if (auto it = origin.find(q.question_id); it != origin.end()) {
        throw Error("duplicate question_id '" + q.question_id + "' (also in " + it->second.string() + ")");
      }
      origin.emplace(q.question_id, file);
      bank.emplace(q.question_id, std::move(q));
    } catch (const BankError&) {
      throw;
    } catch (const std::exception& e) {
      throw BankError(file.string() + ": " + e.what());
    }
  }
  return bank;
}

}  // namespace fsmgrade
