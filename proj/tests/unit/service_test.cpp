#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "fca/service/server.hpp"
#include "fixtures.hpp"

using nlohmann::json;
using fca::testkit::data_path;
using fca::testkit::read_text;

namespace {

class Running {
 public:
  explicit Running(fca::service::ServerOptions options = {}) : server_(std::move(options)) {
    port_ = server_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_.run(); });
    server_.wait_until_ready();
  }
  ~Running() {
    server_.stop();
    thread_.join();
  }
  int port() const { return port_; }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }

 private:
  fca::service::Server server_;
  int port_ = -1;
  std::thread thread_;
};

json body_of(const httplib::Result& r) { return json::parse(r->body); }

std::string upload(httplib::Client& c, const char* fixture) {
  auto r = c.Post("/contexts", read_text(data_path(fixture)), "text/plain");
  EXPECT_TRUE(r);
  EXPECT_EQ(r->status, 201);
  return body_of(r)["id"];
}

httplib::Result answer(httplib::Client& c, const std::string& id, std::uint64_t revision, const json& body) {
  return c.Post("/sessions/" + id + "/answer", {{fca::service::kRevisionHeader, std::to_string(revision)}},
                body.dump(), "application/json");
}

const std::vector<std::string> kNum{"even", "prime", "divided_by_three", "odd", "factorial"};

}  // namespace

TEST(Service, ContextUploadAndFetch) {
  Running srv;
  ASSERT_GT(srv.port(), 0);
  auto c = srv.client();
  const json fig = fca::context_to_json(fca::testkit::fixture("fig.cxt"));
  auto r = c.Post("/contexts", fig.dump(), "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 201);
  const std::string id = body_of(r)["id"];
  auto again = c.Post("/contexts", fig.dump(), "application/json");
  EXPECT_NE(body_of(again)["id"], id);

  auto got = c.Get("/contexts/" + id);
  EXPECT_EQ(got->status, 200);
  EXPECT_EQ(body_of(got)["context"], fig);
  EXPECT_TRUE(body_of(got).contains("createdAt"));

  auto csv = c.Post("/contexts", read_text(data_path("num.csv")), "text/csv");
  EXPECT_EQ(csv->status, 201);
}

TEST(Service, BadUploads) {
  Running srv;
  auto c = srv.client();
  auto r = c.Post("/contexts", R"({"objects":["1"],"attributes":["a"],"rows":["XX"]})", "application/json");
  EXPECT_EQ(r->status, 400);
  EXPECT_TRUE(body_of(r).contains("error"));
  EXPECT_EQ(c.Post("/contexts", "not json", "application/json")->status, 400);
  EXPECT_EQ(c.Post("/contexts", "B\n\n1\n1\n\n1\na\nXX\n", "text/plain")->status, 400);
}

TEST(Service, LatticeAndBase) {
  Running srv;
  auto c = srv.client();
  const auto fig = upload(c, "fig.cxt");
  auto lat = c.Get("/contexts/" + fig + "/lattice");
  ASSERT_EQ(lat->status, 200);
  EXPECT_EQ(body_of(lat)["concepts"].size(), 9u);
  EXPECT_EQ(body_of(lat)["covers"].size(), 13u);
  EXPECT_EQ(body_of(c.Get("/contexts/" + fig + "/lattice?depth=0"))["concepts"].size(), 1u);
  EXPECT_EQ(c.Get("/contexts/" + fig + "/lattice?depth=x")->status, 400);

  const auto num = upload(c, "num.cxt");
  auto base = c.Get("/contexts/" + num + "/base");
  ASSERT_EQ(base->status, 200);
  EXPECT_EQ(body_of(base).size(), 5u);

  EXPECT_EQ(c.Get("/contexts/nope")->status, 404);
  EXPECT_EQ(c.Get("/contexts/nope/lattice")->status, 404);
  EXPECT_EQ(c.Get("/contexts/nope/base")->status, 404);
}

TEST(Service, FailureReports) {
  Running srv;
  auto c = srv.client();
  const auto tst = upload(c, "tst.cxt");
  auto r = c.Post("/reports/failures", json{{"contextId", tst}, {"failureAttr", "failed"}, {"depth", 1}}.dump(),
                  "application/json");
  ASSERT_EQ(r->status, 200);
  const auto clusters = body_of(r)["clusters"];
  ASSERT_EQ(clusters.size(), 2u);
  EXPECT_EQ(clusters[0]["attrs"], json({"login"}));
  EXPECT_EQ(clusters[0]["tests"], json({"1", "3"}));
  EXPECT_EQ(clusters[1]["attrs"], json({"https", "login"}));
  EXPECT_EQ(clusters[1]["tests"], json({"1"}));

  EXPECT_EQ(c.Post("/reports/failures", json{{"contextId", tst}, {"failureAttr", "nope"}}.dump(), "application/json")
                ->status,
            400);
  EXPECT_EQ(c.Post("/reports/failures", json{{"contextId", "c99"}, {"failureAttr", "failed"}}.dump(),
                   "application/json")
                ->status,
            404);

  // no object has "failed" once only the passing tests are uploaded
  const json passing{{"objects", {"2", "4"}}, {"attributes", {"failed", "https"}}, {"rows", {".X", ".."}}};
  const std::string id = body_of(c.Post("/contexts", passing.dump(), "application/json"))["id"];
  auto empty = c.Post("/reports/failures", json{{"contextId", id}, {"failureAttr", "failed"}}.dump(),
                      "application/json");
  EXPECT_EQ(empty->status, 200);
  EXPECT_TRUE(body_of(empty)["clusters"].empty());
}

TEST(Service, SessionFlow) {
  Running srv;
  auto c = srv.client();
  auto created = c.Post("/sessions", json{{"attributes", kNum}}.dump(), "application/json");
  ASSERT_EQ(created->status, 201);
  auto state = body_of(created);
  const std::string id = state["id"];
  EXPECT_EQ(state["revision"], 0);
  EXPECT_EQ(state["phase"], "awaiting_expert");
  EXPECT_EQ(state["question"]["premise"], json::array());
  EXPECT_EQ(state["question"]["conclusion"], json(kNum));

  auto r = answer(c, id, 0, {{"counterexample", {{"name", "2"}, {"attrs", {"even", "factorial", "prime"}}}}});
  ASSERT_EQ(r->status, 200);
  state = body_of(r);
  EXPECT_EQ(state["revision"], 1);
  EXPECT_EQ(state["question"]["text"], "=> even, prime, factorial");

  // stale revision
  auto stale = answer(c, id, 0, {{"accept", true}});
  EXPECT_EQ(stale->status, 409);
  EXPECT_EQ(body_of(stale)["revision"], 1);

  // no revision header
  EXPECT_EQ(c.Post("/sessions/" + id + "/answer", json{{"accept", true}}.dump(), "application/json")->status, 428);

  // counterexample that does not violate ∅ → {even, prime, factorial}
  auto bad = answer(c, id, 1, {{"counterexample", {{"name", "x"}, {"attrs", {"even", "prime", "factorial"}}}}});
  EXPECT_EQ(bad->status, 422);
  EXPECT_EQ(body_of(bad)["reason"], "does_not_violate");
  auto dup = answer(c, id, 1, {{"counterexample", {{"name", "2"}, {"attrs", {"odd"}}}}});
  EXPECT_EQ(dup->status, 422);
  EXPECT_EQ(body_of(dup)["reason"], "duplicate_name");
  EXPECT_EQ(answer(c, id, 1, {{"counterexample", {{"name", "z"}, {"attrs", {"purple"}}}}})->status, 400);
  EXPECT_EQ(answer(c, id, 1, json::object())->status, 400);

  auto fetched = c.Get("/sessions/" + id);
  EXPECT_EQ(body_of(fetched)["revision"], 1);
  EXPECT_EQ(body_of(fetched)["transcriptLength"], 1);
  EXPECT_EQ(c.Get("/sessions/nope")->status, 404);
  EXPECT_EQ(answer(c, "nope", 0, {{"accept", true}})->status, 404);
}

TEST(Service, SessionFromContextRunsToDone) {
  Running srv;
  auto c = srv.client();
  const auto num = upload(c, "num.cxt");
  auto state = body_of(c.Post("/sessions", json{{"contextId", num}}.dump(), "application/json"));
  const std::string id = state["id"];
  while (state["phase"] != "done") {
    auto r = answer(c, id, state["revision"], {{"accept", true}});
    ASSERT_EQ(r->status, 200);
    state = body_of(r);
  }
  EXPECT_TRUE(state["question"].is_null());
  EXPECT_EQ(state["accepted"].size(), 5u);
  auto after = answer(c, id, state["revision"], {{"accept", true}});
  EXPECT_EQ(after->status, 422);
  EXPECT_EQ(body_of(after)["reason"], "session_done");
  EXPECT_EQ(c.Post("/sessions", json{{"contextId", "c99"}}.dump(), "application/json")->status, 404);
  EXPECT_EQ(c.Post("/sessions", "{}", "application/json")->status, 400);
}

// Many clients answer with the same revision at once; exactly one wins.
TEST(Service, ConcurrentAnswersSerialize) {
  Running srv;
  auto c = srv.client();
  const std::string id = body_of(c.Post("/sessions", json{{"attributes", kNum}}.dump(), "application/json"))["id"];
  std::atomic<int> ok{0}, conflict{0}, other{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] {
      auto client = srv.client();
      auto r = answer(client, id, 0,
                      {{"counterexample", {{"name", "n" + std::to_string(t)}, {"attrs", {"even"}}}}});
      if (r && r->status == 200)
        ++ok;
      else if (r && r->status == 409)
        ++conflict;
      else
        ++other;
    });
  for (auto& t : threads) t.join();
  EXPECT_EQ(ok, 1);
  EXPECT_EQ(conflict, 7);
  EXPECT_EQ(other, 0);
  auto state = body_of(c.Get("/sessions/" + id));
  EXPECT_EQ(state["revision"], 1);
  EXPECT_EQ(state["transcriptLength"], 1);
}

TEST(Service, PersistsAcrossRestarts) {
  const auto dir = std::filesystem::temp_directory_path() / "fca_service_test";
  std::filesystem::remove_all(dir);
  std::string ctx_id, session_id;
  json before;
  {
    Running srv({dir});
    auto c = srv.client();
    ctx_id = upload(c, "fig.cxt");
    session_id = body_of(c.Post("/sessions", json{{"attributes", kNum}}.dump(), "application/json"))["id"];
    before = body_of(answer(c, session_id, 0, {{"counterexample", {{"name", "2"}, {"attrs", {"even"}}}}}));
  }
  {
    Running srv({dir});
    auto c = srv.client();
    EXPECT_EQ(c.Get("/contexts/" + ctx_id)->status, 200);
    EXPECT_EQ(body_of(c.Get("/sessions/" + session_id)), before);
    // new ids do not collide with restored ones
    EXPECT_NE(upload(c, "fig.cxt"), ctx_id);
  }
  std::filesystem::remove_all(dir);
}
