#include "asrdiff/pipeline.h"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "asrdiff/errors.h"
#include "asrdiff/report.h"

#ifndef ASRDIFF_DATA_DIR
#define ASRDIFF_DATA_DIR "data"
#endif

namespace asrdiff {

namespace fs = std::filesystem;

fs::path DefaultDataDir() { return fs::path(ASRDIFF_DATA_DIR); }
fs::path DefaultDictPath() { return DefaultDataDir() / "cmudict-subset.dict"; }

ResourcePaths DefaultResourcePaths() {
  const auto dir = DefaultDataDir();
  return {dir / "verbs_irregular.tsv", dir / "verbs_regular.txt", dir / "nouns_irregular.tsv", dir / "sentences.txt"};
}

void RunConfig::Validate() const {
  if (corpus_path.empty()) throw ConfigError("a corpus file is required");
  if (output_dir.empty()) throw ConfigError("an output directory is required");
  if (num_texts <= 0) throw ConfigError("the number of texts must be positive");
  if (asr.size() < 2) throw ConfigError("at least two ASR engines required for cross-referencing");
  if (tts.kind != EngineKind::kTts) throw ConfigError("engine " + tts.name + " is not configured as TTS");
  std::set<std::string> names{tts.name};
  for (const auto& s : asr) {
    if (s.kind != EngineKind::kAsr) throw ConfigError("engine " + s.name + " is not configured as ASR");
    if (!IsValidEngineName(s.name)) throw ConfigError("invalid engine name \"" + s.name + "\"");
    if (!names.insert(s.name).second) throw ConfigError("duplicate engine name \"" + s.name + "\"");
  }
  if (workers < 0) throw ConfigError("workers must not be negative");
  if (augmentation_limit < 0) throw ConfigError("augmentation limit must not be negative");
}

std::vector<std::string> EngineSet::AsrNames() const {
  std::vector<std::string> names;
  for (const auto& e : asr) names.push_back(e->name());
  return names;
}

EngineSet SpawnEngines(const RunConfig& config, std::shared_ptr<const PronouncingDict> dict) {
  const SpawnContext context{std::move(dict), config.seed};
  EngineSet set;
  set.tts = SpawnEngine(config.tts, context);
  for (const auto& spec : config.asr) set.asr.push_back(SpawnEngine(spec, context));
  return set;
}

std::string CaseId(int iteration, size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "it%d-%04zu", iteration, index + 1);
  return buf;
}

CorpusSelection ReadCorpus(const fs::path& path, int64_t num_texts) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read corpus " + path.string());
  CorpusSelection selection;
  std::string line;
  while (static_cast<int64_t>(selection.cases.size()) < num_texts && std::getline(in, line)) {
    const auto norm = NormalizeText(line);
    if (norm.unusable() || norm.lossy) {
      ++selection.skipped_lines;
      continue;
    }
    TestCase tc;
    tc.case_id = CaseId(1, selection.cases.size());
    tc.text = norm.text;
    tc.iteration = 1;
    selection.cases.push_back(std::move(tc));
  }
  if (in.bad()) throw IoError("error while reading corpus " + path.string());
  return selection;
}

namespace {

void Log(std::ostream* log, const std::string& msg) {
  if (log != nullptr) *log << msg << '\n' << std::flush;
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

}  // namespace

std::vector<CaseRecord> RunIteration(const std::vector<TestCase>& cases, EngineSet& engines, const fs::path& out_dir,
                                     const IterationOptions& options) {
  if (cases.empty()) throw PreconditionError("no test cases to run");
  if (!engines.tts) throw ConfigError("no TTS engine");
  if (engines.asr.size() < 2) throw ConfigError("at least two ASR engines required for cross-referencing");
  const fs::path audio_dir = out_dir / "audio";
  const fs::path transcript_dir = out_dir / "transcripts";
  EnsureDir(audio_dir);
  EnsureDir(transcript_dir);

  std::vector<CaseRecord> records(cases.size());
  size_t synthesized = 0;
  std::string first_tts_error;
  for (size_t i = 0; i < cases.size(); ++i) {
    records[i].test_case = cases[i];
    try {
      records[i].audio = engines.tts->Synthesize(cases[i].case_id, cases[i].text, audio_dir);
      ++synthesized;
    } catch (const EngineUnavailableError&) {
      throw;
    } catch (const PreconditionError&) {
      throw;
    } catch (const std::runtime_error& e) {
      records[i].tts_error = e.what();
      if (first_tts_error.empty()) first_tts_error = e.what();
    }
  }
  if (synthesized == 0) {
    throw EngineError("text-to-speech failed for every case; first error: " + first_tts_error);
  }

  const size_t n_engines = engines.asr.size();
  // verdicts[case][engine]; each engine's worker owns one column.
  std::vector<std::vector<TranscriptionVerdict>> verdicts(cases.size(), std::vector<TranscriptionVerdict>(n_engines));
  std::atomic<size_t> next_engine = 0;
  std::mutex fatal_mu;
  std::exception_ptr fatal;

  auto work = [&] {
    while (true) {
      const size_t e = next_engine.fetch_add(1);
      if (e >= n_engines) return;
      Engine& engine = *engines.asr[e];
      const std::string fingerprint = engine.Fingerprint();
      try {
        for (size_t i = 0; i < cases.size(); ++i) {
          TranscriptionVerdict& v = verdicts[i][e];
          v.engine_name = engine.name();
          if (!records[i].audio) {
            v.error = "no audio: " + *records[i].tts_error;
            continue;
          }
          std::optional<std::string> raw;
          if (options.cache != nullptr) raw = options.cache->Lookup(cases[i].text, fingerprint);
          if (!raw) {
            try {
              raw = engine.Transcribe(cases[i].case_id, *records[i].audio);
            } catch (const EngineUnavailableError&) {
              throw;
            } catch (const PreconditionError&) {
              throw;
            } catch (const std::runtime_error& err) {
              v.error = err.what();
              continue;
            }
            if (options.cache != nullptr) options.cache->Store(cases[i].text, fingerprint, *raw);
          }
          v = JudgeTranscript(engine.name(), cases[i].text, *raw);
          WriteTextFile(transcript_dir / (cases[i].case_id + "." + engine.name() + ".txt"), *raw + "\n");
        }
      } catch (...) {
        std::lock_guard lock(fatal_mu);
        if (!fatal) fatal = std::current_exception();
        return;
      }
    }
  };

  const size_t workers =
      std::min(n_engines, static_cast<size_t>(options.workers > 0 ? options.workers : static_cast<int>(n_engines)));
  {
    std::vector<std::jthread> pool;
    for (size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (fatal) std::rethrow_exception(fatal);

  for (size_t i = 0; i < cases.size(); ++i) {
    CaseRecord& r = records[i];
    r.verdicts = std::move(verdicts[i]);
    if (!r.audio) {
      r.status = CaseStatus::kEngineErrored;
      continue;
    }
    const auto xref = CrossReferenceVerdicts(r.verdicts);
    r.status = xref.status;
    r.failed_text = xref.failed_text;
    r.failed_engines = xref.failed_engines;
  }
  return records;
}

RunReport RunPipeline(const RunConfig& config, std::ostream* log) {
  config.Validate();
  RunReport report;
  report.config = config;

  auto dict = std::make_shared<const PronouncingDict>(PronouncingDict::Load(config.dict_path));

  TransformResources resources;
  resources.dict = dict;
  resources.augmentation_limit = config.augmentation_limit;
  if (config.transform == TransformMethod::kTense) {
    resources.verbs = std::make_shared<const VerbTable>(
        VerbTable::Load(config.resources.verbs_irregular, config.resources.verbs_regular));
  } else if (config.transform == TransformMethod::kPlurality) {
    resources.nouns = std::make_shared<const NounTable>(NounTable::Load(config.resources.nouns_irregular));
  } else if (config.transform == TransformMethod::kHomophone) {
    resources.sentences =
        std::make_shared<const OfflineSentenceProvider>(OfflineSentenceProvider::Load(config.resources.sentences));
  }

  auto selection = ReadCorpus(config.corpus_path, config.num_texts);
  report.skipped_corpus_lines = selection.skipped_lines;
  if (selection.cases.empty()) throw ParseError("corpus " + config.corpus_path.string() + " has no usable lines");
  Log(log, "iteration 1: " + std::to_string(selection.cases.size()) + " texts (" +
               std::to_string(selection.skipped_lines) + " corpus lines skipped)");

  EnsureDir(config.output_dir);
  TranscriptCache cache(config.cache_dir.value_or(config.output_dir / "cache"));
  EngineSet engines = SpawnEngines(config, dict);
  const IterationOptions options{config.workers, &cache, log};

  report.records = RunIteration(selection.cases, engines, config.output_dir, options);

  if (config.transform) {
    std::vector<CaseRecord> failed;
    std::set<NormalizedText> existing;
    for (const auto& r : report.records) {
      existing.insert(r.test_case.text);
      if (r.failed_text) failed.push_back(r);
    }
    const auto variants = ApplyTransform(*config.transform, failed, resources, existing);
    Log(log, "iteration 2: " + std::to_string(variants.size()) + " transformed texts from " +
                 std::to_string(failed.size()) + " failed texts (" + TransformMethodName(*config.transform) + ")");
    if (!variants.empty()) {
      std::vector<TestCase> second;
      for (size_t i = 0; i < variants.size(); ++i) {
        second.push_back({CaseId(2, i), variants[i].text, 2, {variants[i].parent_case_id, variants[i].method}});
      }
      auto more = RunIteration(second, engines, config.output_dir, options);
      report.records.insert(report.records.end(), std::make_move_iterator(more.begin()),
                            std::make_move_iterator(more.end()));
    }
  }

  for (const auto& r : report.records) {
    if (!r.failed_text) continue;
    auto terms = ExtractErrorTerms(r);
    report.error_terms.insert(report.error_terms.end(), terms.begin(), terms.end());
  }
  report.phonemes = PhonemeFrequency(*dict, report.error_terms);
  const auto names = engines.AsrNames();
  report.metrics = ComputeMetrics(report.records, names);

  EmitReport(report.metrics, report.records, report.phonemes, config.output_dir);
  WriteRunJson(report, config.output_dir / "run.json");
  Log(log, "transcript cache: " + std::to_string(cache.hits()) + " hits, " + std::to_string(cache.misses()) +
               " misses");
  return report;
}

}  // namespace asrdiff
