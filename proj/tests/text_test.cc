#include "asrdiff/text.h"

#include <gtest/gtest.h>

#include <random>

#include "asrdiff/errors.h"

namespace asrdiff {
namespace {

TEST(NormalizeText, StripsCaseAndPunctuation) {
  EXPECT_EQ(NormalizeText("The cat, sat!").text.value(), "the cat sat");
  EXPECT_EQ(NormalizeText("hello").text.value(), "hello");
  EXPECT_EQ(NormalizeText("don't   stop").text.value(), "don't stop");
}

TEST(NormalizeText, TrimsAndCollapses) {
  EXPECT_EQ(NormalizeText("  \tHello -- World ...\n").text.value(), "hello world");
  EXPECT_EQ(NormalizeText("well-known").text.value(), "well known");
}

TEST(NormalizeText, DigitsAreDroppedAndFlagged) {
  const auto r = NormalizeText("I have 3 cats");
  EXPECT_EQ(r.text.value(), "i have cats");
  EXPECT_TRUE(r.lossy);
  EXPECT_FALSE(NormalizeText("no digits here").lossy);
}

TEST(NormalizeText, EmptyAfterNormalizationIsUnusable) {
  EXPECT_TRUE(NormalizeText("?!, ...").unusable());
  EXPECT_TRUE(NormalizeText("").unusable());
  const auto digits = NormalizeText("123");
  EXPECT_TRUE(digits.unusable());
  EXPECT_TRUE(digits.lossy);
}

TEST(NormalizeText, NonAsciiBecomesSeparator) {
  EXPECT_EQ(NormalizeText("caf\xc3\xa9 au lait").text.value(), "caf au lait");
}

TEST(NormalizeText, IdempotentOnRandomInput) {
  std::mt19937 rng(1234);
  const std::string alphabet = "abcXYZ ' ,.!?-\t\n09\xc3\xa9";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string raw;
    const int len = static_cast<int>(rng() % 24);
    for (int i = 0; i < len; ++i) raw.push_back(alphabet[rng() % alphabet.size()]);
    const auto once = NormalizeText(raw).text;
    EXPECT_TRUE(IsNormalized(once.value())) << raw;
    EXPECT_EQ(NormalizeText(once.value()).text, once) << raw;
    EXPECT_FALSE(NormalizeText(once.value()).lossy);
  }
}

TEST(NormalizedText, RejectsNonNormalizedInput) {
  EXPECT_THROW(NormalizedText::FromNormalized("The cat"), PreconditionError);
  EXPECT_THROW(NormalizedText::FromNormalized("a  b"), PreconditionError);
  EXPECT_THROW(NormalizedText::FromNormalized(" a"), PreconditionError);
  EXPECT_NO_THROW(NormalizedText::FromNormalized(""));
}

TEST(Tokenize, SplitsOnSpaces) {
  EXPECT_EQ(Tokenize(NormalizedText::FromNormalized("the cat sat")), (std::vector<std::string>{"the", "cat", "sat"}));
  EXPECT_TRUE(Tokenize(NormalizedText::FromNormalized("")).empty());
  EXPECT_EQ(Tokenize(NormalizedText::FromNormalized("don't stop")), (std::vector<std::string>{"don't", "stop"}));
}

TEST(IsCorrect, ExactNormalizedEquality) {
  auto n = [](const char* s) { return NormalizedText::FromNormalized(s); };
  EXPECT_TRUE(IsCorrect(n("the cat sat"), n("the cat sat")));
  EXPECT_FALSE(IsCorrect(n("the cat sat"), n("the bat sat")));
  EXPECT_FALSE(IsCorrect(n("a"), n("")));
}

TEST(JudgeTranscript, NormalizesRawEngineOutput) {
  const auto ref = NormalizedText::FromNormalized("the cat sat");
  const auto v = JudgeTranscript("e1", ref, "The CAT sat.");
  EXPECT_EQ(v.engine_name, "e1");
  EXPECT_EQ(v.transcript.value(), "the cat sat");
  EXPECT_TRUE(v.correct);
  EXPECT_FALSE(v.errored());
  EXPECT_FALSE(JudgeTranscript("e1", ref, "").correct);
}

}  // namespace
}  // namespace asrdiff
