#include "asrdiff/pipeline.h"

#include <gtest/gtest.h>

#include <sstream>

#include "asrdiff/errors.h"
#include "asrdiff/report.h"
#include "test_util.h"

namespace asrdiff {
namespace {

using testing::Case;

std::shared_ptr<const PronouncingDict> Dict() {
  static auto dict = std::make_shared<const PronouncingDict>(PronouncingDict::Load(testing::BundledDict()));
  return dict;
}

std::string Scripted(const std::string& name, const std::string& args) {
  return name + "=" + ASRDIFF_SCRIPTED_ENGINE + " " + args;
}

EngineSet Engines(const std::string& tts, const std::vector<std::string>& asr, int timeout_ms = 10000) {
  EngineSet set;
  auto tts_spec = EngineSpec::Parse(EngineKind::kTts, tts);
  tts_spec.timeout_ms = timeout_ms;
  set.tts = SpawnEngine(tts_spec, {Dict(), 0});
  for (const auto& a : asr) {
    auto spec = EngineSpec::Parse(EngineKind::kAsr, a);
    spec.timeout_ms = timeout_ms;
    set.asr.push_back(SpawnEngine(spec, {Dict(), 0}));
  }
  return set;
}

std::vector<TestCase> Cases(const std::vector<std::string>& texts) {
  std::vector<TestCase> out;
  for (size_t i = 0; i < texts.size(); ++i) out.push_back(Case(CaseId(1, i), texts[i]));
  return out;
}

TEST(CaseId, Format) {
  EXPECT_EQ(CaseId(1, 0), "it1-0001");
  EXPECT_EQ(CaseId(2, 41), "it2-0042");
}

TEST(RunIteration, IdentityEngines) {
  testing::TempDir dir;
  auto engines = Engines("sim-tts", {"a=sim-asr", "b=sim-asr"});
  const auto records = RunIteration(Cases({"the cat sat", "go home", "hello"}), engines, dir.path());
  ASSERT_EQ(records.size(), 3u);
  for (const auto& r : records) {
    EXPECT_EQ(r.status, CaseStatus::kDeterminable);
    EXPECT_FALSE(r.failed_text);
    ASSERT_TRUE(r.audio);
    EXPECT_TRUE(std::filesystem::exists(r.audio->path));
    EXPECT_EQ(r.audio->path, dir / "audio" / (r.test_case.case_id + ".wav"));
  }
  EXPECT_EQ(testing::ReadFile(dir / "transcripts" / "it1-0001.b.txt"), "the cat sat\n");
}

TEST(RunIteration, RuleCorruptsMatchingTexts) {
  testing::TempDir dir;
  auto engines = Engines("sim-tts", {"a=sim-asr", "b=sim-asr(rule=word:cat>sub:bat@1)"});
  const auto records = RunIteration(Cases({"the cat sat", "go home", "a cat and a cat"}), engines, dir.path());
  EXPECT_TRUE(records[0].failed_text);
  EXPECT_FALSE(records[1].failed_text);
  EXPECT_TRUE(records[2].failed_text);
  EXPECT_EQ(records[0].failed_engines, (std::set<std::string>{"b"}));
  EXPECT_EQ(records[2].verdicts[1].transcript.value(), "a bat and a bat");
}

TEST(RunIteration, EmptyCaseListIsAPreconditionError) {
  testing::TempDir dir;
  auto engines = Engines("sim-tts", {"a=sim-asr", "b=sim-asr"});
  EXPECT_THROW(RunIteration({}, engines, dir.path()), PreconditionError);
}

TEST(RunIteration, CrashIsContainedToOneCase) {
  testing::TempDir dir;
  auto engines = Engines("sim-tts", {"a=sim-asr", Scripted("s", "--crash-on it1-0002")});
  const auto records = RunIteration(Cases({"one", "two", "three"}), engines, dir.path());
  EXPECT_EQ(records[0].status, CaseStatus::kDeterminable);
  EXPECT_EQ(records[1].status, CaseStatus::kEngineErrored);
  EXPECT_TRUE(records[1].verdicts[1].errored());
  EXPECT_FALSE(records[1].failed_text);
  EXPECT_EQ(records[2].status, CaseStatus::kDeterminable);
}

TEST(RunIteration, TimeoutIsContainedToOneCase) {
  testing::TempDir dir;
  auto engines = Engines("sim-tts", {"a=sim-asr", "b=sim-asr", Scripted("s", "--sleep-on it1-0001 3000")}, 400);
  const auto records = RunIteration(Cases({"one", "two"}), engines, dir.path());
  EXPECT_TRUE(records[0].verdicts[2].errored());
  EXPECT_NE(records[0].verdicts[2].error->find("timed out"), std::string::npos);
  // Two usable verdicts remain, so the case is still judged.
  EXPECT_EQ(records[0].status, CaseStatus::kDeterminable);
  EXPECT_FALSE(records[1].verdicts[2].errored());
}

TEST(RunIteration, UnavailableEngineAbortsTheIteration) {
  testing::TempDir dir;
  auto engines =
      Engines("sim-tts", {"a=sim-asr", Scripted("s", "--crash-on it1-0001 --once " + (dir / "once").string())});
  EXPECT_THROW(RunIteration(Cases({"one", "two"}), engines, dir.path()), EngineUnavailableError);
}

TEST(RunIteration, TtsFailures) {
  testing::TempDir dir;
  {
    auto engines = Engines(Scripted("t", "--kind tts --fail-on it1-0002"), {"a=sim-asr", "b=sim-asr"});
    const auto records = RunIteration(Cases({"one", "two", "three"}), engines, dir.path());
    EXPECT_EQ(records[1].status, CaseStatus::kEngineErrored);
    EXPECT_TRUE(records[1].tts_error);
    EXPECT_FALSE(records[1].audio);
    EXPECT_EQ(records[0].status, CaseStatus::kDeterminable);
  }
  auto engines = Engines(Scripted("t", "--kind tts --fail-on it1"), {"a=sim-asr", "b=sim-asr"});
  EXPECT_THROW(RunIteration(Cases({"one", "two"}), engines, dir.path()), EngineError);
}

TEST(RunIteration, CacheAvoidsRecomputation) {
  testing::TempDir dir;
  TranscriptCache cache(dir / "cache");
  auto engines = Engines("sim-tts", {"a=sim-asr", "b=sim-asr(rule=word:cat>sub:bat@1)"});
  const auto cases = Cases({"the cat sat", "go home"});
  const auto first = RunIteration(cases, engines, dir.path(), {0, &cache, nullptr});
  EXPECT_EQ(cache.misses(), 4);
  EXPECT_EQ(cache.hits(), 0);
  const auto second = RunIteration(cases, engines, dir.path(), {0, &cache, nullptr});
  EXPECT_EQ(cache.hits(), 4);
  EXPECT_EQ(first, second);
}

TEST(RunIteration, WorkerCountDoesNotChangeResults) {
  const auto cases = Cases({"the cat sat", "go home", "a cat", "read it", "the school bus"});
  std::vector<std::vector<CaseRecord>> results;
  for (int workers : {1, 2, 4}) {
    testing::TempDir dir;
    auto engines =
        Engines("sim-tts", {"a=sim-asr", "b=sim-asr(seed=3,rule=word:cat>drop@0.5)", "c=sim-asr(rule=word:go>sub:no@1)"});
    auto records = RunIteration(cases, engines, dir.path(), {workers, nullptr, nullptr});
    for (auto& r : records) r.audio.reset();
    results.push_back(std::move(records));
  }
  EXPECT_EQ(results[0], results[1]);
  EXPECT_EQ(results[0], results[2]);
}

class RunPipelineTest : public ::testing::Test {
 protected:
  RunConfig Config(const std::string& corpus, std::optional<TransformMethod> transform = std::nullopt,
                   std::vector<std::string> asr = {"clean=sim-asr", "noisy=sim-asr(rule=word:cat>sub:bat@1)"}) {
    testing::WriteFile(dir_ / "corpus.txt", corpus);
    RunConfig c;
    c.corpus_path = dir_ / "corpus.txt";
    c.output_dir = dir_ / "out";
    c.num_texts = 100;
    c.tts = EngineSpec::Parse(EngineKind::kTts, "sim-tts");
    for (const auto& a : asr) c.asr.push_back(EngineSpec::Parse(EngineKind::kAsr, a));
    c.transform = transform;
    c.dict_path = testing::BundledDict();
    c.resources = DefaultResourcePaths();
    return c;
  }
  testing::TempDir dir_;
};

TEST_F(RunPipelineTest, NoTransformMeansOneIteration) {
  const auto report = RunPipeline(Config("the cat sat\ngo home\n"));
  ASSERT_EQ(report.records.size(), 2u);
  for (const auto& r : report.records) EXPECT_EQ(r.test_case.iteration, 1);
  EXPECT_EQ(report.metrics.failed_texts, 1);
  EXPECT_EQ(report.metrics.pct_transformed_failed_text, std::nullopt);
  for (const char* f : {"report.csv", "metrics.csv", "phonemes.csv", "phonemes.svg", "run.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir_ / "out" / f)) << f;
  }
  EXPECT_TRUE(std::filesystem::is_directory(dir_ / "out" / "cache"));
}

TEST_F(RunPipelineTest, CorpusSelection) {
  auto config = Config("the cat sat\n\nroom 101\n!!!\ngo home\nhello there\n");
  config.num_texts = 2;
  auto report = RunPipeline(config);
  ASSERT_EQ(report.records.size(), 2u);
  EXPECT_EQ(report.records[1].test_case.text.value(), "go home");
  EXPECT_EQ(report.skipped_corpus_lines, 3);
  config.num_texts = 1000;
  report = RunPipeline(config);
  EXPECT_EQ(report.metrics.texts_processed, 3);
}

TEST_F(RunPipelineTest, InputErrors) {
  auto config = Config("123\n\n");
  EXPECT_THROW(RunPipeline(config), ParseError);
  config.corpus_path = dir_ / "missing.txt";
  EXPECT_THROW(RunPipeline(config), IoError);
  config = Config("a\n");
  config.asr.pop_back();
  EXPECT_THROW(RunPipeline(config), ConfigError);
  config = Config("a\n");
  config.asr[1].name = "clean";
  EXPECT_THROW(RunPipeline(config), ConfigError);
}

TEST_F(RunPipelineTest, IterationTwoReplaysTheTransformer) {
  const auto config = Config("the cat sat on the mat\nthe big cat sat\nmy cat walks\nthe dog ran\n",
                             TransformMethod::kAdjacentDeletion);
  const auto report = RunPipeline(config);

  std::vector<CaseRecord> failed;
  std::set<NormalizedText> existing;
  for (const auto& r : report.records) {
    if (r.test_case.iteration != 1) continue;
    existing.insert(r.test_case.text);
    if (r.failed_text) failed.push_back(r);
  }
  TransformResources res;
  res.dict = Dict();
  const auto variants = ApplyTransform(TransformMethod::kAdjacentDeletion, failed, res, existing);
  std::vector<const CaseRecord*> second;
  for (const auto& r : report.records) {
    if (r.test_case.iteration == 2) second.push_back(&r);
  }
  ASSERT_EQ(second.size(), variants.size());
  ASSERT_FALSE(second.empty());
  for (size_t i = 0; i < variants.size(); ++i) {
    EXPECT_EQ(second[i]->test_case.text, variants[i].text);
    EXPECT_EQ(second[i]->test_case.case_id, CaseId(2, i));
  }
  // Lineage integrity.
  for (const auto* r : second) {
    EXPECT_EQ(r->test_case.lineage.method, TransformMethod::kAdjacentDeletion);
    const auto parent = std::find_if(report.records.begin(), report.records.end(), [&](const CaseRecord& p) {
      return p.test_case.case_id == r->test_case.lineage.parent_case_id;
    });
    ASSERT_NE(parent, report.records.end());
    EXPECT_EQ(parent->test_case.iteration, 1);
    EXPECT_TRUE(parent->failed_text);
  }
  for (const auto& r : report.records) {
    if (r.test_case.iteration == 1) EXPECT_TRUE(r.test_case.lineage.original());
  }
}

TEST_F(RunPipelineTest, RunJsonRoundTripsAndRunsAreDeterministic) {
  const auto config = Config("the cat sat\nmy cat walks home\nthe dog ran\n", TransformMethod::kTense,
                             {"clean=sim-asr", "noisy=sim-asr(seed=9,rule=word:cat>sub:bat@0.7)",
                              "phon=sim-asr(rule=phoneme:AE>drop@0.5)"});
  const auto report = RunPipeline(config);
  const auto json_text = testing::ReadFile(dir_ / "out" / "run.json");
  EXPECT_EQ(RunReportFromJson(json_text), report);

  const auto first_csv = testing::ReadFile(dir_ / "out" / "report.csv");
  const auto first_metrics = testing::ReadFile(dir_ / "out" / "metrics.csv");
  std::filesystem::remove_all(dir_ / "out");
  RunPipeline(config);
  EXPECT_EQ(testing::ReadFile(dir_ / "out" / "report.csv"), first_csv);
  EXPECT_EQ(testing::ReadFile(dir_ / "out" / "metrics.csv"), first_metrics);
  EXPECT_EQ(testing::ReadFile(dir_ / "out" / "run.json"), json_text);
}

TEST_F(RunPipelineTest, ExternalEnginesInTheLoop) {
  const auto config = Config(
      "the cat sat\ngo home now\n", TransformMethod::kPlurality,
      {"clean=sim-asr", std::string("ext=") + ASRDIFF_SIM_ENGINE_BIN + " --engine 'sim-asr(rule=word:cat>sub:bat@1)'",
       Scripted("echo", "")});
  const auto report = RunPipeline(config);
  EXPECT_EQ(report.metrics.iteration1_failed_texts, 1);
  EXPECT_EQ(report.records[0].failed_engines, (std::set<std::string>{"ext"}));
  ASSERT_GE(report.records.size(), 3u);
  EXPECT_EQ(report.records[2].test_case.text.value(), "the cats sat");
}

}  // namespace
}  // namespace asrdiff
