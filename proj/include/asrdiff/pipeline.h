#ifndef ASRDIFF_PIPELINE_H_
#define ASRDIFF_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "asrdiff/cache.h"
#include "asrdiff/case_record.h"
#include "asrdiff/engine.h"
#include "asrdiff/metrics.h"
#include "asrdiff/phonetics.h"
#include "asrdiff/transforms.h"

namespace asrdiff {

struct ResourcePaths {
  std::filesystem::path verbs_irregular;
  std::filesystem::path verbs_regular;
  std::filesystem::path nouns_irregular;
  std::filesystem::path sentences;
  friend bool operator==(const ResourcePaths&, const ResourcePaths&) = default;
};

// Bundled data shipped with the build.
std::filesystem::path DefaultDataDir();
std::filesystem::path DefaultDictPath();
ResourcePaths DefaultResourcePaths();

struct RunConfig {
  std::filesystem::path corpus_path;
  std::filesystem::path output_dir;
  int64_t num_texts = 0;
  EngineSpec tts;
  std::vector<EngineSpec> asr;
  std::optional<TransformMethod> transform;
  int64_t seed = 0;
  std::filesystem::path dict_path;
  ResourcePaths resources;
  int augmentation_limit = kDefaultAugmentationLimit;
  // 0 means one worker per ASR engine.
  int workers = 0;
  // Defaults to <output_dir>/cache.
  std::optional<std::filesystem::path> cache_dir;

  // Throws ConfigError.
  void Validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct RunReport {
  RunConfig config;
  // Corpus lines passed over because they were empty or contained digits.
  int64_t skipped_corpus_lines = 0;
  std::vector<CaseRecord> records;
  std::vector<ErrorTerm> error_terms;
  MetricsRecord metrics;
  PhonemeHistogram phonemes;
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

struct EngineSet {
  std::unique_ptr<Engine> tts;
  std::vector<std::unique_ptr<Engine>> asr;

  std::vector<std::string> AsrNames() const;
};

EngineSet SpawnEngines(const RunConfig& config, std::shared_ptr<const PronouncingDict> dict);

struct IterationOptions {
  int workers = 0;
  TranscriptCache* cache = nullptr;
  std::ostream* log = nullptr;
};

// Synthesizes every case, transcribes it with every ASR engine and
// cross-references the verdicts. Audio goes to <out_dir>/audio, transcripts
// to <out_dir>/transcripts. A failing engine marks only the affected outputs;
// the run aborts (EngineError) when no case could be synthesized.
std::vector<CaseRecord> RunIteration(const std::vector<TestCase>& cases, EngineSet& engines,
                                     const std::filesystem::path& out_dir, const IterationOptions& options = {});

struct CorpusSelection {
  std::vector<TestCase> cases;
  int64_t skipped_lines = 0;
};

// First `num_texts` usable lines, in file order. Throws IoError.
CorpusSelection ReadCorpus(const std::filesystem::path& path, int64_t num_texts);

std::string CaseId(int iteration, size_t index);

// Both iterations, metrics, phonetic analysis; writes every output file.
RunReport RunPipeline(const RunConfig& config, std::ostream* log = nullptr);

}  // namespace asrdiff

#endif  // ASRDIFF_PIPELINE_H_
