#include <gtest/gtest.h>

#include <map>
#include <random>

#include "fca/exploration.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fca;
using fca::testkit::fixture;

namespace {

struct Step {
  std::string question;
  std::string counterexample;  // empty means accept
};

// Expected questions under the fixture's attribute order.
const std::vector<Step> kDialogue = {
    {"=> even, prime, divided_by_three, odd, factorial", "2"},
    {"=> even, prime, factorial", "5"},
    {"=> prime", "6"},
    {"factorial => even", "1"},
    {"odd => prime", "9"},
    {"odd, factorial => prime", ""},
    {"divided_by_three, factorial => even", ""},
    {"prime, divided_by_three => even, odd, factorial", "3"},
    {"prime, divided_by_three => odd", ""},
    {"even => factorial", "8"},
    {"even, odd => prime, divided_by_three, factorial", ""},
    {"even, divided_by_three => factorial", "12"},
    {"even, prime => factorial", ""},
};

ExpertAnswer answer_for(const FormalContext& num, const Step& step) {
  if (step.counterexample.empty()) return Accept{};
  return Counterexample{step.counterexample, num.row(*num.find_object(step.counterexample))};
}

std::map<std::string, std::string> rows_by_name(const FormalContext& ctx) {
  std::map<std::string, std::string> out;
  for (std::size_t g = 0; g < ctx.num_objects(); ++g) out[ctx.object_names()[g]] = ctx.row(g).to_row_string();
  return out;
}

ExplorationSession play(const FormalContext& num, std::size_t steps) {
  auto s = new_session(num.attribute_names());
  for (std::size_t i = 0; i < steps; ++i) s.answer(answer_for(num, kDialogue[i]));
  return s;
}

}  // namespace

TEST(Exploration, NumDialogueReplay) {
  const auto num = fixture("num.cxt");
  auto s = new_session(num.attribute_names());
  for (const auto& step : kDialogue) {
    ASSERT_FALSE(s.done());
    ASSERT_TRUE(s.current_question());
    EXPECT_EQ(s.render(*s.current_question()), step.question);
    s.answer(answer_for(num, step));
    for (const auto& i : s.accepted()) EXPECT_TRUE(holds(s.working_context(), i));
  }
  EXPECT_TRUE(s.done());
  EXPECT_EQ(s.phase(), Phase::Done);
  EXPECT_FALSE(s.current_question());
  EXPECT_TRUE(s.accepted().same_set_as(canonical_base(num)));
  EXPECT_EQ(rows_by_name(s.working_context()), rows_by_name(num));
  EXPECT_EQ(s.transcript().size(), kDialogue.size());
}

TEST(Exploration, FirstQuestions) {
  const auto num = fixture("num.cxt");
  auto s = new_session(num.attribute_names());
  EXPECT_TRUE(s.current_question()->premise().empty());
  EXPECT_TRUE(s.current_question()->conclusion().is_full());
  EXPECT_EQ(play(num, 1).render(*play(num, 1).current_question()), "=> even, prime, factorial");
  const auto after_two = play(num, 2);
  EXPECT_EQ(after_two.current_question()->conclusion(),
            num.attributes_from_names(std::vector<std::string>{"prime"}));
}

TEST(Exploration, AcceptRecordsImplication) {
  const auto num = fixture("num.cxt");
  auto s = play(num, 5);
  const auto q = *s.current_question();
  EXPECT_EQ(s.render(q), "odd, factorial => prime");
  s.answer(Accept{});
  EXPECT_EQ(s.accepted().size(), 1u);
  EXPECT_EQ(s.accepted()[0], q);
}

TEST(Exploration, RejectsCounterexampleThatDoesNotViolate) {
  const auto num = fixture("num.cxt");
  auto s = play(num, 4);
  ASSERT_EQ(s.render(*s.current_question()), "odd => prime");
  const auto before = s;
  try {
    s.answer(Counterexample{"7", num.attributes_from_names(std::vector<std::string>{"odd", "prime"})});
    FAIL();
  } catch (const AnswerRejected& e) {
    EXPECT_EQ(e.reason(), RejectReason::DoesNotViolate);
    EXPECT_EQ(to_string(e.reason()), "does_not_violate");
  }
  EXPECT_EQ(s, before);
}

TEST(Exploration, RejectsOtherBadAnswers) {
  const auto num = fixture("num.cxt");
  auto s = play(num, 6);  // accepted: odd, factorial -> prime
  const auto bad = [&](const Counterexample& c, RejectReason want) {
    const auto before = s;
    try {
      s.answer(c);
      ADD_FAILURE() << "accepted " << c.name;
    } catch (const AnswerRejected& e) {
      EXPECT_EQ(e.reason(), want) << c.name;
    }
    EXPECT_EQ(s, before);
    EXPECT_EQ(s.validate(c).has_value(), true);
  };
  // question: divided_by_three, factorial => even
  bad({"x", num.attributes_from_names(std::vector<std::string>{"divided_by_three", "factorial", "odd"})},
      RejectReason::ViolatesAccepted);
  bad({"2", num.attributes_from_names(std::vector<std::string>{"divided_by_three", "factorial"})},
      RejectReason::DuplicateName);
  bad({"y", AttributeSet(3)}, RejectReason::WidthMismatch);

  auto done = play(num, kDialogue.size());
  try {
    done.answer(Accept{});
    FAIL();
  } catch (const AnswerRejected& e) {
    EXPECT_EQ(e.reason(), RejectReason::SessionDone);
  }
}

TEST(Exploration, NewSessionChecksInitialContext) {
  const auto num = fixture("num.cxt");
  EXPECT_THROW(new_session({"even", "odd"}, num), NamingError);
  auto s = new_session(num.attribute_names(), num);
  // with every example known, each question is accepted
  while (!s.done()) s.answer(Accept{});
  EXPECT_TRUE(s.accepted().same_set_as(canonical_base(num)));
  EXPECT_EQ(s.working_context(), num);
}

TEST(Exploration, SaveLoadMidSession) {
  const auto num = fixture("num.cxt");
  for (std::size_t steps = 0; steps <= kDialogue.size(); ++steps) {
    const auto s = play(num, steps);
    const auto back = load_session(save_session(s));
    EXPECT_EQ(back, s) << steps;
    EXPECT_EQ(back.current_question(), s.current_question());
    EXPECT_EQ(back.done(), s.done());
  }
}

TEST(Exploration, LoadRejectsBadPayloads) {
  const auto num = fixture("num.cxt");
  const auto payload = save_session(play(num, 4));
  EXPECT_THROW(load_session(payload.substr(0, payload.size() / 2)), ParseError);
  EXPECT_THROW(load_session(""), ParseError);
  EXPECT_THROW(load_session("[1,2]"), ParseError);
  auto j = nlohmann::json::parse(payload);
  j["version"] = 2;
  EXPECT_THROW(load_session(j.dump()), ParseError);
  j = nlohmann::json::parse(payload);
  j["cursor"] = nlohmann::json::array({99});
  EXPECT_THROW(load_session(j.dump()), ParseError);
  j = nlohmann::json::parse(payload);
  j["phase"] = "sleeping";
  EXPECT_THROW(load_session(j.dump()), ParseError);
}

TEST(Exploration, TranscriptReplayReproducesQuestions) {
  const auto num = fixture("num.cxt");
  const auto original = play(num, 9);
  auto fresh = new_session(num.attribute_names());
  for (const auto& entry : original.transcript()) {
    ASSERT_EQ(*fresh.current_question(), entry.question);
    fresh.answer(entry.answer);
  }
  EXPECT_EQ(fresh, original);
}

TEST(Oracle, NumFromEmpty) {
  const auto num = fixture("num.cxt");
  auto s = new_session(num.attribute_names());
  const auto result = run_with_oracle(s, num);
  EXPECT_TRUE(result.implications.same_set_as(canonical_base(num)));
  EXPECT_LE(result.examples.num_objects(), 8u);
  EXPECT_TRUE(s.done());
}

TEST(Oracle, FigFromEmpty) {
  const auto fig = fixture("fig.cxt");
  auto s = new_session(fig.attribute_names());
  EXPECT_TRUE(run_with_oracle(s, fig).implications.same_set_as(canonical_base(fig)));
}

TEST(Oracle, GeoFromEmpty) {
  const auto geo = fixture("geo.cxt");
  auto s = new_session(geo.attribute_names());
  const auto result = run_with_oracle(s, geo);
  // 67 objects is past the bitmask oracle, so compare with context closure
  for (testkit::Mask a = 0; a < (testkit::Mask{1} << 10); ++a) {
    const auto set = testkit::attrs_from_mask(a, 10);
    ASSERT_EQ(lin_closure(result.implications, set), geo.close_attrs(set));
  }
}

TEST(Oracle, ExamplesMustAgreeWithHidden) {
  const auto fig = fixture("fig.cxt");
  auto s = new_session(fig.attribute_names(), fig.with_object("ghost", AttributeSet(4, {0, 1})));
  EXPECT_THROW(run_with_oracle(s, fig), Error);
}

TEST(Oracle, RandomContract) {
  std::mt19937 rng(606);
  for (int trial = 0; trial < 150; ++trial) {
    const auto hidden = testkit::random_context(rng, 8, 6);
    auto s = new_session(hidden.attribute_names());
    const auto result = run_with_oracle(s, hidden);
    const auto base = canonical_base(hidden);
    EXPECT_TRUE(result.implications.same_set_as(base));
    EXPECT_TRUE(canonical_base(result.examples).same_set_as(base));
    // the cursor increases lectically across accepted implications
    for (std::size_t i = 1; i < result.implications.size(); ++i)
      EXPECT_TRUE(lectic_less(result.implications[i - 1].premise(), result.implications[i].premise()));
  }
}
