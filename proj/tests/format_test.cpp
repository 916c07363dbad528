#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "test_support.hpp"

namespace fsmgrade {
namespace {

namespace fs = std::filesystem;

std::string schema_key(std::string_view text, FsmKind kind = FsmKind::dfa) {
  try {
    parse_fsm(text, kind);
  } catch (const FormatError& e) {
    EXPECT_EQ(e.code(), FormatError::Code::schema_error) << e.what();
    return e.key();
  }
  return "<no error>";
}

TEST(ParseFsmTest, ThreeZerosListing) {
  const auto doc = parse_fsm(testing::kThreeZerosJson, FsmKind::dfa);
  EXPECT_EQ(doc.states, (std::vector<std::string>{"0", "1", "2", "3"}));
  EXPECT_EQ(doc.input_symbols, (std::vector<std::string>{"0", "1"}));
  EXPECT_EQ(doc.initial_states, (std::vector<std::string>{"0"}));
  EXPECT_EQ(doc.final_states, (std::vector<std::string>{"3"}));
  ASSERT_EQ(doc.transitions.size(), 4u);
  EXPECT_EQ(doc.transitions[1].state, "1");
  EXPECT_EQ(doc.transitions[1].entries[0], (TransitionEntry{"0", {"2"}}));
}

TEST(ParseFsmTest, SerializesInListingOrder) {
  const auto doc = parse_fsm(testing::kThreeZerosJson, FsmKind::dfa);
  EXPECT_EQ(serialize_fsm(doc, -1),
            R"({"states":["0","1","2","3"],"input_symbols":["0","1"],"transitions":{"0":{"0":"1","1":"0"},"1":{"0":"2","1":"1"},"2":{"0":"3","1":"2"},"3":{"0":"3","1":"3"}},"initial_state":"0","final_states":["3"]})");
}

TEST(ParseFsmTest, PreservesDrawnOrder) {
  const auto doc = parse_fsm(
      R"({"states":["z","a"],"input_symbols":["1","0"],"transitions":{"z":{"1":"a","0":"z"}},)"
      R"("initial_state":"z","final_states":[]})",
      FsmKind::dfa);
  EXPECT_EQ(doc.states, (std::vector<std::string>{"z", "a"}));
  EXPECT_EQ(doc.input_symbols, (std::vector<std::string>{"1", "0"}));
  EXPECT_EQ(doc.transitions[0].entries[0].symbol, "1");
  EXPECT_EQ(parse_fsm(serialize_fsm(doc), FsmKind::dfa), doc);
}

TEST(ParseFsmTest, EpsilonKeyInNfa) {
  const auto doc = parse_fsm(
      R"({"states":["q0","q1"],"input_symbols":["a"],"transitions":{"q0":{"":["q1"]}},)"
      R"("initial_state":"q0","final_states":["q1"]})",
      FsmKind::nfa);
  ASSERT_EQ(doc.transitions.size(), 1u);
  EXPECT_EQ(doc.transitions[0].entries[0], (TransitionEntry{"", {"q1"}}));
  EXPECT_NE(serialize_fsm(doc).find(R"("": [)"), std::string::npos);
}

TEST(ParseFsmTest, SchemaErrorsNameTheKey) {
  EXPECT_EQ(schema_key(R"({"states":["0"],"input_symbols":["0"],"transitions":{},"final_states":[]})"),
            "initial_state");
  EXPECT_EQ(schema_key(R"({"states":["0"],"input_symbols":["0"],"transitions":{},"initial_state":"0","final_states":[],"extra":1})"),
            "extra");
  EXPECT_EQ(schema_key(R"({"states":["0",7],"input_symbols":["0"],"transitions":{},"initial_state":"0","final_states":[]})"),
            "states[1]");
  EXPECT_EQ(schema_key(R"({"states":["0"],"input_symbols":["01"],"transitions":{},"initial_state":"0","final_states":[]})"),
            "input_symbols[0]");
  EXPECT_EQ(schema_key(R"({"states":["0"],"input_symbols":["0"],"transitions":{"0":{"ab":"0"}},"initial_state":"0","final_states":[]})"),
            "transitions.0.ab");
  EXPECT_EQ(schema_key(R"({"states":["0"],"input_symbols":["0"],"transitions":{"0":{"0":"9"}},"initial_state":"0","final_states":[]})"),
            "transitions.0.0");
  EXPECT_EQ(schema_key(R"({"states":[" 0"],"input_symbols":["0"],"transitions":{},"initial_state":" 0","final_states":[]})"),
            "states[0]");
  EXPECT_EQ(schema_key(R"({"states":["0"],"input_symbols":["0"],"transitions":{},"initial_state":"0","final_states":["x"]})"),
            "final_states");
  EXPECT_EQ(schema_key(R"([1,2])"), "$");
}

TEST(ParseFsmTest, SyntaxErrorsCarryLineAndColumn) {
  try {
    parse_fsm("{\n  \"states\": [\"0\",\n", FsmKind::dfa);
    FAIL() << "expected a parse error";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.code(), FormatError::Code::parse_error);
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseFsmTest, StartStateListAndNull) {
  const auto many = parse_fsm(
      R"({"states":["a","b"],"input_symbols":["0"],"transitions":{},"initial_state":["a","b"],"final_states":[]})",
      FsmKind::dfa);
  EXPECT_EQ(many.initial_states.size(), 2u);
  EXPECT_EQ(parse_fsm(serialize_fsm(many), FsmKind::dfa), many);
  const auto none = parse_fsm(
      R"({"states":["a"],"input_symbols":["0"],"transitions":{},"initial_state":null,"final_states":[]})",
      FsmKind::dfa);
  EXPECT_TRUE(none.initial_states.empty());
}

FsmDocument random_document(std::mt19937_64& rng) {
  static const std::vector<std::string> kNames = {"q0", "q1", "A", "state 3", "λ", "{x}", "9"};
  static const std::vector<std::string> kSymbols = {"0", "1", "a", "b", "é"};
  std::uniform_int_distribution<std::size_t> small(0, 4);
  std::bernoulli_distribution coin(0.5);
  FsmDocument doc;
  doc.kind = coin(rng) ? FsmKind::dfa : FsmKind::nfa;
  auto names = kNames;
  std::shuffle(names.begin(), names.end(), rng);
  names.resize(1 + small(rng));
  doc.states = names;
  auto symbols = kSymbols;
  std::shuffle(symbols.begin(), symbols.end(), rng);
  symbols.resize(1 + small(rng));
  doc.input_symbols = symbols;
  std::uniform_int_distribution<std::size_t> pick_state(0, names.size() - 1);
  for (const auto& s : names) {
    if (!coin(rng)) continue;
    TransitionRow row{s, {}};
    auto row_symbols = symbols;
    if (doc.kind == FsmKind::nfa) row_symbols.push_back("");
    for (const auto& sym : row_symbols) {
      if (!coin(rng)) continue;
      TransitionEntry e{sym, {}};
      const std::size_t targets = doc.kind == FsmKind::dfa && coin(rng) ? 1 : small(rng);
      for (std::size_t i = 0; i < targets; ++i) e.targets.push_back(names[pick_state(rng)]);
      row.entries.push_back(std::move(e));
    }
    doc.transitions.push_back(std::move(row));
  }
  const std::size_t starts = small(rng) % 3;
  for (std::size_t i = 0; i < starts; ++i) doc.initial_states.push_back(names[pick_state(rng)]);
  for (const auto& s : names) {
    if (coin(rng)) doc.final_states.push_back(s);
  }
  return doc;
}

TEST(ParseFsmProperty, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    const auto doc = random_document(rng);
    ASSERT_EQ(parse_fsm(serialize_fsm(doc), doc.kind), doc) << serialize_fsm(doc);
  }
}

TEST(QuestionConfigTest, DefaultsAndRoundTrip) {
  const auto q = parse_question(R"({"question_id":"q","fsm_type":"nfa","alphabet":["a","b"],"reference":"(a|b)*a"})");
  EXPECT_EQ(q.fsm_type, FsmKind::nfa);
  EXPECT_TRUE(q.reference_is_regex());
  EXPECT_FALSE(q.implicit_dump_state);
  EXPECT_EQ(q.feedback_length_bound, 8u);
  EXPECT_EQ(q.max_feedback_strings, 10u);
  const auto again = question_from_json(question_to_json(q));
  EXPECT_EQ(question_to_json(again), question_to_json(q));
}

TEST(QuestionConfigTest, RejectsBadFields) {
  EXPECT_THROW(parse_question(R"({"question_id":"q","fsm_type":"pda","alphabet":["a"],"reference":"a"})"), FormatError);
  EXPECT_THROW(parse_question(R"({"question_id":"q","fsm_type":"dfa","alphabet":["a","a"],"reference":"a"})"), FormatError);
  EXPECT_THROW(parse_question(R"({"question_id":"q","fsm_type":"dfa","alphabet":["a"],"reference":3})"), FormatError);
  EXPECT_THROW(parse_question(R"({"question_id":"q","fsm_type":"dfa","alphabet":["a"],"reference":"a","max_feedback_strings":0})"), FormatError);
  EXPECT_THROW(parse_question(R"({"fsm_type":"dfa","alphabet":["a"],"reference":"a"})"), FormatError);
}

class BankTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("fsmgrade_bank_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  void write(const std::string& dir, const std::string& content) {
    fs::create_directories(root_ / dir);
    std::ofstream(root_ / dir / "question.json") << content;
  }

  fs::path root_;
};

TEST_F(BankTest, LoadsThreeZerosQuestion) {
  write("three-zeros", question_to_json(testing::three_zeros_question()).dump(2));
  const auto bank = load_question_bank(root_);
  ASSERT_EQ(bank.size(), 1u);
  const auto& q = bank.at("at-least-three-zeros");
  EXPECT_EQ(grade(std::get<FsmDocument>(q.reference), q).score, 1.0);
}

TEST_F(BankTest, DuplicateIdsAbort) {
  write("a", question_to_json(testing::three_zeros_question()).dump());
  write("b", question_to_json(testing::three_zeros_question()).dump());
  EXPECT_THROW(load_question_bank(root_), BankError);
}

TEST_F(BankTest, RegexOutsideAlphabetAborts) {
  write("bad", R"({"question_id":"bad","fsm_type":"dfa","alphabet":["0","1"],"reference":"(0|1)*2"})");
  try {
    load_question_bank(root_);
    FAIL() << "expected BankError";
  } catch (const BankError& e) {
    EXPECT_NE(std::string(e.what()).find("question.json"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("'2'"), std::string::npos);
  }
}

TEST_F(BankTest, InvalidReferenceAborts) {
  auto q = testing::three_zeros_question();
  std::get<FsmDocument>(q.reference).states.push_back("4");
  write("bad", question_to_json(q).dump());
  EXPECT_THROW(load_question_bank(root_), BankError);
}

TEST(ShippedBankTest, EveryQuestionSelfGrades) {
  const auto bank = load_question_bank(FSMGRADE_QUESTION_DIR);
  EXPECT_GE(bank.size(), 3u);
  for (const auto& [id, q] : bank) {
    if (const auto* doc = std::get_if<FsmDocument>(&q.reference)) {
      EXPECT_EQ(grade(*doc, q).score, 1.0) << id;
    }
  }
}

}  // namespace
}  // namespace fsmgrade
