#include "asrdiff/phonetics.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "asrdiff/errors.h"
#include "oracles.h"
#include "test_util.h"

namespace asrdiff {
namespace {

PronouncingDict ParseText(const std::string& text) {
  std::istringstream in(text);
  return PronouncingDict::Parse(in, "test.dict");
}

const PronouncingDict& Bundled() {
  static const PronouncingDict dict = PronouncingDict::Load(testing::BundledDict());
  return dict;
}

TEST(PronouncingDict, StripsStress) {
  const auto dict = ParseText("READ  R IY1 D\n");
  ASSERT_TRUE(dict.Contains("read"));
  EXPECT_EQ(*dict.Find("read"), (std::vector<Pronunciation>{{"R", "IY", "D"}}));
}

TEST(PronouncingDict, SkipsCommentsAndFoldsAlternates) {
  const auto dict = ParseText(";;; comment\nREAD  R IY1 D\nREAD(2)  R EH1 D\n\n");
  EXPECT_EQ(dict.size(), 1u);
  EXPECT_EQ(*dict.Find("READ"), (std::vector<Pronunciation>{{"R", "IY", "D"}, {"R", "EH", "D"}}));
}

TEST(PronouncingDict, ErrorsNameTheLine) {
  try {
    ParseText("CAT  K AE1 T\nBAD  K QQ T\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("test.dict:2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(ParseText("NOPHONES\n"), ParseError);
  EXPECT_THROW(ParseText(";;; only comments\n"), ParseError);
  EXPECT_THROW(ParseText(""), ParseError);
  EXPECT_THROW(PronouncingDict::Load("/nonexistent/dict"), std::exception);
}

TEST(PronouncingDict, BundledSubsetIsValid) {
  const auto& dict = Bundled();
  EXPECT_GT(dict.size(), 1000u);
  for (const auto& w : dict.words()) {
    for (const auto& p : *dict.Find(w)) {
      ASSERT_FALSE(p.empty()) << w;
      for (const auto& ph : p) ASSERT_TRUE(IsArpabetPhoneme(ph)) << w << " " << ph;
    }
  }
  EXPECT_TRUE(std::is_sorted(dict.words().begin(), dict.words().end()));
}

TEST(PhonemesOf, FirstPronunciation) {
  EXPECT_EQ(PhonemesOf(Bundled(), "read"), (Pronunciation{"R", "IY", "D"}));
  EXPECT_EQ(PhonemesOf(Bundled(), "zzzqx"), std::nullopt);
  EXPECT_EQ(PhonemesOf(Bundled(), ""), std::nullopt);
}

TEST(Homophones, AteAndEight) {
  const auto h = HomophonesOf(Bundled(), "ate");
  EXPECT_NE(std::find(h.begin(), h.end(), "eight"), h.end());
  EXPECT_TRUE(std::is_sorted(h.begin(), h.end()));
  EXPECT_THROW(HomophonesOf(Bundled(), "zzzqx"), PreconditionError);
  const auto dict = ParseText("CAT  K AE1 T\nDOG  D AO1 G\n");
  EXPECT_TRUE(dict.Homophones("cat").empty());
}

TEST(Homophones, AlternatePronunciationsCount) {
  const auto dict = ParseText("READ  R IY1 D\nREAD(2)  R EH1 D\nRED  R EH1 D\nREED  R IY1 D\n");
  EXPECT_EQ(dict.Homophones("read"), (std::vector<std::string>{"red", "reed"}));
  EXPECT_EQ(dict.Homophones("red"), (std::vector<std::string>{"read"}));
}

TEST(Homophones, MatchesPairwiseScan) {
  // Brute-force relation over a slice of the dictionary.
  const auto& dict = Bundled();
  const auto& words = dict.words();
  std::vector<std::string> slice(words.begin(), words.begin() + std::min<size_t>(words.size(), 400));
  for (const auto& a : slice) {
    std::set<std::string> expected;
    for (const auto& b : words) {
      if (a == b) continue;
      for (const auto& p : *dict.Find(a)) {
        const auto& qs = *dict.Find(b);
        if (std::find(qs.begin(), qs.end(), p) != qs.end()) expected.insert(b);
      }
    }
    const auto got = dict.Homophones(a);
    ASSERT_EQ(std::set<std::string>(got.begin(), got.end()), expected) << a;
  }
}

TEST(PhonemeEditDistance, Examples) {
  EXPECT_EQ(PhonemeEditDistance({"K", "AE", "T"}, {"K", "AE", "T"}), 0);
  EXPECT_EQ(PhonemeEditDistance({"K", "AE", "T"}, {"B", "AE", "T"}), 1);
  EXPECT_EQ(PhonemeEditDistance({"K", "AE", "T"}, {}), 3);
}

TEST(PhonemeEditDistance, AgreesWithOracle) {
  std::mt19937 rng(5);
  const std::vector<std::string> symbols{"AA", "AE", "K", "T", "S"};
  for (int trial = 0; trial < 300; ++trial) {
    Pronunciation p(rng() % 9), q(rng() % 9);
    for (auto& s : p) s = symbols[rng() % symbols.size()];
    for (auto& s : q) s = symbols[rng() % symbols.size()];
    ASSERT_EQ(PhonemeEditDistance(p, q), testing::RecursiveEditDistance(p, q));
  }
}

TEST(PhonemeFrequency, CountsWithMultiplicity) {
  const auto h = PhonemeFrequency(Bundled(), {"cat", "bat"});
  EXPECT_EQ(h.counts, (std::map<Phoneme, int64_t>{{"AE", 2}, {"T", 2}, {"K", 1}, {"B", 1}}));
  EXPECT_EQ(h.oov_terms, 0);
  EXPECT_EQ(h.Total(), 6);
  const auto ranked = h.Ranked();
  ASSERT_EQ(ranked.size(), 4u);
  EXPECT_EQ(ranked[0].first, "AE");
  EXPECT_EQ(ranked[1].first, "T");
  EXPECT_EQ(ranked[2].first, "B");
  EXPECT_EQ(ranked[3].first, "K");

  const auto empty = PhonemeFrequency(Bundled(), {});
  EXPECT_TRUE(empty.counts.empty());
  EXPECT_EQ(empty.oov_terms, 0);

  const auto oov = PhonemeFrequency(Bundled(), {"zzzqx"});
  EXPECT_TRUE(oov.counts.empty());
  EXPECT_EQ(oov.oov_terms, 1);
}

TEST(PhonemeFrequency, ConservesPronunciationLength) {
  const auto& dict = Bundled();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> terms;
    int64_t expected = 0;
    int64_t oov = 0;
    for (int i = 0; i < 10; ++i) {
      if (rng() % 5 == 0) {
        terms.push_back("qqq" + std::to_string(i));
        ++oov;
        continue;
      }
      const auto& w = dict.words()[rng() % dict.words().size()];
      terms.push_back(w);
      expected += static_cast<int64_t>(dict.Find(w)->front().size());
    }
    const auto h = PhonemeFrequency(dict, terms);
    EXPECT_EQ(h.Total(), expected);
    EXPECT_EQ(h.oov_terms, oov);
    const auto ranked = h.Ranked();
    for (size_t i = 1; i < ranked.size(); ++i) {
      const bool ordered = ranked[i - 1].second > ranked[i].second ||
                           (ranked[i - 1].second == ranked[i].second && ranked[i - 1].first < ranked[i].first);
      EXPECT_TRUE(ordered);
    }
  }
}

TEST(IsArpabetPhoneme, Inventory) {
  const std::vector<std::string> all{"AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH",
                                     "EH", "ER", "EY", "F",  "G",  "HH", "IH", "IY", "JH", "K",
                                     "L",  "M",  "N",  "NG", "OW", "OY", "P",  "R",  "S",  "SH",
                                     "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"};
  ASSERT_EQ(all.size(), 39u);
  for (const auto& s : all) EXPECT_TRUE(IsArpabetPhoneme(s)) << s;
  EXPECT_FALSE(IsArpabetPhoneme("AE1"));
  EXPECT_FALSE(IsArpabetPhoneme("ae"));
  EXPECT_FALSE(IsArpabetPhoneme(""));
}

}  // namespace
}  // namespace asrdiff
