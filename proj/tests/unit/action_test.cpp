#include <gtest/gtest.h>

#include <cctype>

#include "guibench/action.hpp"
#include "guibench/errors.hpp"
#include "test_support.hpp"

namespace guibench {
namespace {

TEST(RenderAction, CanonicalForms) {
  EXPECT_EQ(render_action(Click{{100, 200}}), "CLICK(100,200)");
  EXPECT_EQ(render_action(LongPress{{0, 12.5}}), "LONG_PRESS(0,12.5)");
  EXPECT_EQ(render_action(TaskFinish{}), "FINISH");
  EXPECT_EQ(render_action(Input{"say \"hi\""}), R"(INPUT("say ""hi"""))");
  EXPECT_EQ(render_action(Scroll{{{540, 1800}, {540, 700}}}), "SCROLL((540,1800)->(540,700))");
  EXPECT_EQ(render_action(Drag{{{1, 2}, {3, 4}, {5, 6}}}), "DRAG((1,2)->(3,4)->(5,6))");
  EXPECT_EQ(render_action(Wait{1500}), "WAIT(1500)");
  EXPECT_EQ(render_action(Answer{"3 items"}), R"(ANSWER("3 items"))");
  EXPECT_EQ(render_action(Input{""}), R"(INPUT(""))");
}

TEST(ParseAction, ToleratesCaseAndWhitespace) {
  EXPECT_EQ(parse_action("click( 10 , 20 )"), (Action{Click{{10, 20}}}));
  EXPECT_EQ(parse_action("  FINISH  "), (Action{TaskFinish{}}));
  EXPECT_EQ(parse_action("finish"), (Action{TaskFinish{}}));
  EXPECT_EQ(parse_action("Scroll( ( 1 , 2 ) -> (3,4) )"), (Action{Scroll{{{1, 2}, {3, 4}}}}));
  EXPECT_EQ(parse_action("input(\"  two  spaces \")"), (Action{Input{"  two  spaces "}}));
  EXPECT_EQ(parse_action("wait(250)"), (Action{Wait{250}}));
  EXPECT_EQ(parse_action("long_press(1e2,2.5E1)"), (Action{LongPress{{100, 25}}}));
}

TEST(ParseAction, Rejections) {
  const char* bad[] = {
      "SCROLL((0,0))",      // one point
      "DRAG()",             // no points
      "CLICK(1)",           // arity
      "CLICK(1,2,3)",       // arity
      "CLICK(a,2)",         // non-numeric
      "CLICK(-1,2)",        // negative
      "CLICK(.5,2)",        // no leading digit
      "CLICK(inf,2)",       // not finite
      "CLICK(1,2",          // unclosed
      "CLICK(1,2) extra",   // trailing input
      "INPUT(\"abc)",       // unterminated string
      "INPUT(abc)",         // unquoted
      "ANSWER(\"\")",       // empty answer
      "WAIT(0)",            // zero duration
      "WAIT(1.5)",          // fractional duration
      "TAP(1,2)",           // unknown keyword
      "FINISH()",           // finish takes no arguments
      "",                   // empty
      "SCROLL((1,2)->)",    // dangling arrow
      "SCROLL((1,2),(3,4))" // wrong separator
  };
  for (const char* s : bad) {
    EXPECT_THROW(parse_action(s), MalformedAction) << s;
  }
}

TEST(ParseAction, ErrorCarriesPosition) {
  try {
    parse_action("CLICK(10,x)");
    FAIL();
  } catch (const MalformedAction& e) {
    EXPECT_EQ(e.position(), 9u);
    EXPECT_FALSE(e.reason().empty());
  }
}

TEST(ActionKind, NamesRoundTrip) {
  for (std::size_t i = 0; i < kActionKindCount; ++i) {
    const auto k = static_cast<ActionKind>(i);
    EXPECT_EQ(action_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(action_kind_from_string("swipe"), InvalidConfig);
}

TEST(ActionValidity, Invariants) {
  EXPECT_TRUE(is_valid(Click{{0, 0}}));
  EXPECT_FALSE(is_valid(Click{{-1, 0}}));
  EXPECT_FALSE(is_valid(Scroll{{{1, 1}}}));
  EXPECT_FALSE(is_valid(Wait{0}));
  EXPECT_FALSE(is_valid(Answer{""}));
  EXPECT_TRUE(is_valid(Input{""}));
}

TEST(ActionProperty, RenderParseRoundTrip) {
  testing::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Action a = testing::random_action(rng);
    ASSERT_TRUE(is_valid(a));
    const std::string s = render_action(a);
    ASSERT_EQ(parse_action(s), a) << s;
  }
}

// Whatever the parser accepts re-renders to the input modulo case and
// whitespace outside quoted text.
std::string squash(std::string_view s) {
  std::string out;
  bool quoted = false;
  for (char c : s) {
    if (c == '"') quoted = !quoted;
    if (!quoted && std::isspace(static_cast<unsigned char>(c))) continue;
    out += quoted ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

TEST(ActionProperty, AcceptedStringsAreRenderable) {
  testing::Rng rng(12);
  static constexpr std::string_view kPieces[] = {
      "CLICK", "click", "LONG_PRESS", "INPUT", "SCROLL", "DRAG", "WAIT", "ANSWER", "FINISH",
      "(", ")", ",", "->", "\"", "\"\"", " ", "1", "20", "3.5", "007", "1e3", "-", "x", "."};
  int accepted = 0;
  for (int i = 0; i < 20000; ++i) {
    std::string s;
    const std::size_t n = 1 + rng() % 12;
    for (std::size_t j = 0; j < n; ++j) s += kPieces[rng() % std::size(kPieces)];
    Action a;
    try {
      a = parse_action(s);
    } catch (const MalformedAction&) {
      continue;
    }
    ++accepted;
    ASSERT_TRUE(is_valid(a)) << s;
    // Numbers may be spelled differently ("007", "1e3"); compare values.
    ASSERT_EQ(parse_action(render_action(a)), a) << s;
    if (s.find_first_of("0123456789") == std::string::npos) {
      EXPECT_EQ(squash(render_action(a)), squash(s)) << s;
    }
  }
  EXPECT_GT(accepted, 0);
}

}  // namespace
}  // namespace guibench
