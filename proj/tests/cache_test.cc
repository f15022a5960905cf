#include "asrdiff/cache.h"

#include <gtest/gtest.h>

#include "asrdiff/engine.h"
#include "asrdiff/sim_engine.h"
#include "test_util.h"

namespace asrdiff {
namespace {

using testing::Norm;

TEST(Sha256Hex, StandardVectors) {
  EXPECT_EQ(Sha256Hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(TranscriptCache, MissThenHit) {
  testing::TempDir dir;
  TranscriptCache cache(dir / "cache");
  EXPECT_EQ(cache.Lookup(Norm("the cat sat"), "fp"), std::nullopt);
  cache.Store(Norm("the cat sat"), "fp", "the bat sat");
  EXPECT_EQ(cache.Lookup(Norm("the cat sat"), "fp"), "the bat sat");
  EXPECT_EQ(cache.hits(), 1);
  EXPECT_EQ(cache.misses(), 1);
  // Persisted across instances.
  TranscriptCache again(dir / "cache");
  EXPECT_EQ(again.Lookup(Norm("the cat sat"), "fp"), "the bat sat");
}

TEST(TranscriptCache, FingerprintIncludesSeed) {
  auto a = SpawnEngine(EngineSpec::Parse(EngineKind::kAsr, "x=sim-asr(seed=1)"));
  auto b = SpawnEngine(EngineSpec::Parse(EngineKind::kAsr, "x=sim-asr(seed=2)"));
  testing::TempDir dir;
  TranscriptCache cache(dir.path());
  cache.Store(Norm("hello"), a->Fingerprint(), "hello");
  EXPECT_EQ(cache.Lookup(Norm("hello"), b->Fingerprint()), std::nullopt);
  EXPECT_EQ(cache.Lookup(Norm("hello"), a->Fingerprint()), "hello");
  EXPECT_NE(TranscriptCache::Key(Norm("hello"), a->Fingerprint()), TranscriptCache::Key(Norm("hello"), b->Fingerprint()));
  EXPECT_NE(TranscriptCache::Key(Norm("ab"), "c"), TranscriptCache::Key(Norm("b"), "ca"));
}

TEST(TranscriptCache, CorruptEntryIsEvicted) {
  testing::TempDir dir;
  TranscriptCache cache(dir.path());
  cache.Store(Norm("hello"), "fp", "hello");
  const auto path = dir / (TranscriptCache::Key(Norm("hello"), "fp") + ".json");
  ASSERT_TRUE(std::filesystem::exists(path));
  testing::WriteFile(path, "{\"truncated");
  EXPECT_EQ(cache.Lookup(Norm("hello"), "fp"), std::nullopt);
  EXPECT_FALSE(std::filesystem::exists(path));
  cache.Store(Norm("hello"), "fp", "hello again");
  EXPECT_EQ(cache.Lookup(Norm("hello"), "fp"), "hello again");
}

}  // namespace
}  // namespace asrdiff
