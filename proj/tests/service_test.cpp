#include <gtest/gtest.h>

#include <future>
#include <thread>

#include "fsmgrade/bank.hpp"
#include "fsmgrade/http_server.hpp"
#include "test_support.hpp"

namespace fsmgrade {
namespace {

const std::string kTwoZeros = R"({"states":["0","1","2"],"input_symbols":["0","1"],)"
                              R"("transitions":{"0":{"0":"1","1":"0"},"1":{"0":"2","1":"1"},"2":{"0":"2","1":"2"}},)"
                              R"("initial_state":"0","final_states":["2"]})";

class ServiceTest : public ::testing::Test {
 protected:
  ServiceTest() : service_(load_question_bank(FSMGRADE_QUESTION_DIR)) {}
  GradingService service_;
};

TEST_F(ServiceTest, ListsQuestionsWithoutReferences) {
  const auto r = service_.list_questions();
  EXPECT_EQ(r.status, 200);
  const auto j = Json::parse(r.body);
  ASSERT_TRUE(j.is_array());
  EXPECT_GE(j.size(), 3u);
  EXPECT_EQ(r.body.find("\"transitions\""), std::string::npos);
  EXPECT_EQ(r.body.find("\"reference\""), std::string::npos);
}

TEST_F(ServiceTest, QuestionHidesReference) {
  for (const char* id : {"at-least-three-zeros", "ends-in-01", "third-from-last-is-a", "starts-with-ab"}) {
    const auto r = service_.question(id);
    ASSERT_EQ(r.status, 200) << id;
    const auto j = Json::parse(r.body);
    EXPECT_EQ(j["question_id"], id);
    EXPECT_FALSE(j.contains("reference"));
    EXPECT_EQ(r.body.find("\"transitions\""), std::string::npos);
    EXPECT_EQ(r.body.find("\"final_states\""), std::string::npos);
  }
  EXPECT_EQ(Json::parse(service_.question("starts-with-ab").body)["implicit_dump_state"], true);
}

TEST_F(ServiceTest, GradesThreeZerosReference) {
  const auto r = service_.grade("at-least-three-zeros", testing::kThreeZerosJson);
  ASSERT_EQ(r.status, 200);
  const auto j = Json::parse(r.body);
  EXPECT_EQ(j["valid"], true);
  EXPECT_EQ(j["equivalent"], true);
  EXPECT_EQ(j["score"], 1.0);
  EXPECT_TRUE(j["witnesses"].empty());
}

TEST_F(ServiceTest, GradesTwoZeros) {
  const auto j = Json::parse(service_.grade("at-least-three-zeros", kTwoZeros).body);
  EXPECT_EQ(j["equivalent"], false);
  EXPECT_DOUBLE_EQ(j["score"].get<double>(), 1.0 - 162937.0 / 224840.0);
  ASSERT_EQ(j["witnesses"].size(), 10u);
  EXPECT_EQ(j["witnesses"][0]["word"], "00");
  EXPECT_EQ(j["witnesses"][0]["classification"], "incorrectly_accepted");
  EXPECT_EQ(j["accepted_trace"], (Json{"0", "1", "2"}));
  EXPECT_EQ(j["partial_credit"]["k"], 4);
}

TEST_F(ServiceTest, ValidationErrorsCarryElementRefs) {
  const auto j = Json::parse(service_.grade("at-least-three-zeros", read_file(FSMGRADE_TEST_DATA "/unreachable.json")).body);
  EXPECT_EQ(j["valid"], false);
  EXPECT_EQ(j["score"], 0.0);
  ASSERT_EQ(j["validation_errors"].size(), 1u);
  EXPECT_EQ(j["validation_errors"][0]["code"], "NON_ACCESSIBLE_STATE");
  EXPECT_EQ(j["validation_errors"][0]["element_refs"], (Json{"4"}));
}

TEST_F(ServiceTest, UnknownQuestionIs404) {
  EXPECT_EQ(service_.question("nope").status, 404);
  const auto r = service_.grade("nope", testing::kThreeZerosJson);
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(Json::parse(r.body)["error"], "NOT_FOUND");
}

TEST_F(ServiceTest, MalformedBodiesAre400) {
  const auto parse = service_.grade("at-least-three-zeros", "{\"states\": [");
  EXPECT_EQ(parse.status, 400);
  const auto p = Json::parse(parse.body);
  EXPECT_EQ(p["error"], "PARSE_ERROR");
  EXPECT_EQ(p["line"], 1);

  const auto schema = service_.grade("at-least-three-zeros", R"({"states":[]})");
  EXPECT_EQ(schema.status, 400);
  EXPECT_EQ(Json::parse(schema.body)["error"], "SCHEMA_ERROR");
}

TEST_F(ServiceTest, ConcurrentGradingMatchesSerial) {
  const std::vector<std::pair<std::string, std::string>> requests = {
      {"at-least-three-zeros", testing::kThreeZerosJson},
      {"at-least-three-zeros", kTwoZeros},
      {"ends-in-01", kTwoZeros},
      {"at-least-three-zeros", read_file(FSMGRADE_TEST_DATA "/unreachable.json")},
  };
  std::vector<std::string> serial;
  for (const auto& [id, body] : requests) serial.push_back(service_.grade(id, body).body);

  std::vector<std::future<std::string>> futures;
  for (int i = 0; i < 100; ++i) {
    const auto& [id, body] = requests[i % requests.size()];
    futures.push_back(std::async(std::launch::async, [this, id = id, body = body] { return service_.grade(id, body).body; }));
  }
  for (int i = 0; i < 100; ++i) EXPECT_EQ(futures[i].get(), serial[i % requests.size()]) << i;
}

TEST_F(ServiceTest, OverHttp) {
  httplib::Server server;
  bind_routes(server, service_, std::string("http://localhost:5173"));
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  const auto list = client.Get("/questions");
  ASSERT_TRUE(list);
  EXPECT_EQ(list->status, 200);
  EXPECT_EQ(list->get_header_value("Access-Control-Allow-Origin"), "http://localhost:5173");

  const auto expected = service_.grade("at-least-three-zeros", kTwoZeros).body;
  std::vector<std::future<std::string>> futures;
  for (int i = 0; i < 100; ++i) {
    futures.push_back(std::async(std::launch::async, [port] {
      httplib::Client c("127.0.0.1", port);
      const auto r = c.Post("/questions/at-least-three-zeros/grade", kTwoZeros, "application/json");
      return r ? std::to_string(r->status) + r->body : std::string("no response");
    }));
  }
  for (auto& f : futures) EXPECT_EQ(f.get(), "200" + expected);

  const auto missing = client.Post("/questions/missing/grade", kTwoZeros, "application/json");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  const auto bad = client.Post("/questions/at-least-three-zeros/grade", "not json", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  const auto q = client.Get("/questions/at-least-three-zeros");
  ASSERT_TRUE(q);
  EXPECT_EQ(q->body.find("\"transitions\""), std::string::npos);

  server.stop();
  worker.join();
}

}  // namespace
}  // namespace fsmgrade
