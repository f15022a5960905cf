#include "asrdiff/cli.h"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <set>
#include <nlohmann/json.hpp>

#include "asrdiff/errors.h"
#include "asrdiff/report.h"

namespace asrdiff {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string MethodList() {
  std::string list;
  for (const auto& n : TransformMethodNames()) list += (list.empty() ? "" : ", ") + n;
  return list;
}

fs::path Resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

// Fills fields of `args` the command line left unset.
void MergeConfigFile(const fs::path& path, CliArgs& args, const std::set<std::string>& given) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw UsageError("config file " + path.string() + " is not a JSON object");
  const fs::path base = path.parent_path();
  static const std::set<std::string> kKnown = {"corpus", "out",       "num_texts", "asr",        "tts",
                                               "transform", "seed",   "dict",      "workers",    "resources",
                                               "augmentation_limit", "cache_dir"};
  try {
    for (const auto& [key, value] : j.items()) {
      if (!kKnown.contains(key)) throw UsageError("unknown config key \"" + key + "\"");
    }
    if (!given.contains("corpus") && j.contains("corpus")) args.corpus = Resolve(base, j["corpus"].get<std::string>());
    if (!given.contains("out") && j.contains("out")) args.output_dir = Resolve(base, j["out"].get<std::string>());
    if (!given.contains("num-texts") && j.contains("num_texts")) args.num_texts = j["num_texts"].get<int64_t>();
    if (!given.contains("tts") && j.contains("tts")) args.tts = j["tts"].get<std::string>();
    if (!given.contains("transform") && j.contains("transform") && !j["transform"].is_null()) {
      args.transform = j["transform"].get<std::string>();
    }
    if (!given.contains("seed") && j.contains("seed")) args.seed = j["seed"].get<int64_t>();
    if (!given.contains("dict") && j.contains("dict")) args.dict = Resolve(base, j["dict"].get<std::string>());
    if (!given.contains("workers") && j.contains("workers")) args.workers = j["workers"].get<int>();
    if (!given.contains("asr") && j.contains("asr")) {
      for (const auto& e : j["asr"]) {
        if (e.is_string()) {
          args.asr.push_back(e.get<std::string>());
          continue;
        }
        const auto name = e.at("name").get<std::string>();
        args.asr.push_back(name + "=" + e.at("launch").get<std::string>());
        if (e.contains("timeout_ms")) args.timeout_ms[name] = e["timeout_ms"].get<int>();
      }
    }
    if (j.contains("resources")) {
      const auto& r = j["resources"];
      ResourcePaths paths = DefaultResourcePaths();
      if (r.contains("verbs_irregular")) paths.verbs_irregular = Resolve(base, r["verbs_irregular"].get<std::string>());
      if (r.contains("verbs_regular")) paths.verbs_regular = Resolve(base, r["verbs_regular"].get<std::string>());
      if (r.contains("nouns_irregular")) paths.nouns_irregular = Resolve(base, r["nouns_irregular"].get<std::string>());
      if (r.contains("sentences")) paths.sentences = Resolve(base, r["sentences"].get<std::string>());
      args.resources = paths;
    }
    if (j.contains("augmentation_limit")) args.augmentation_limit = j["augmentation_limit"].get<int>();
    if (j.contains("cache_dir")) args.cache_dir = Resolve(base, j["cache_dir"].get<std::string>());
  } catch (const json::exception& e) {
    throw UsageError("config file " + path.string() + ": " + e.what());
  }
}

}  // namespace

std::optional<CliArgs> ParseArgs(const std::vector<std::string>& argv, std::ostream& out) {
  CliArgs args;
  CLI::App app{"Differential testing of speech recognition engines", argv.empty() ? "asrdiff" : argv[0]};
  app.add_option("--corpus", args.corpus, "Text corpus, one text per line");
  app.add_option("--out", args.output_dir, "Output directory");
  app.add_option("--num-texts", args.num_texts, "Number of usable corpus lines to process");
  app.add_option("--asr", args.asr,
                 "ASR engine under test, repeatable: name=command, or a builtin such as sim-asr(seed=7)");
  app.add_option("--tts", args.tts, "TTS engine (default: sim-tts)");
  std::string transform;
  app.add_option("--transform", transform, "Transformation for failed texts: " + MethodList());
  app.add_option("--seed", args.seed, "Seed for builtin simulated engines (default 0)");
  app.add_option("--dict", args.dict, "CMU-format pronouncing dictionary (default: bundled subset)");
  app.add_option("--workers", args.workers, "Parallel ASR workers (default: number of ASR engines)");
  std::string config;
  app.add_option("--config", config, "JSON file with the same settings plus engine timeouts and resource paths");

  std::vector<const char*> raw;
  for (const auto& a : argv) raw.push_back(a.c_str());
  if (raw.empty()) raw.push_back("asrdiff");
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  std::set<std::string> given;
  for (const char* name : {"corpus", "out", "num-texts", "asr", "tts", "transform", "seed", "dict", "workers"}) {
    if (app.count(std::string("--") + name) > 0) given.insert(name);
  }
  if (!transform.empty()) args.transform = transform;
  if (!config.empty()) {
    args.config = config;
    MergeConfigFile(config, args, given);
  }

  if (args.corpus.empty()) throw UsageError("missing --corpus");
  if (args.output_dir.empty()) throw UsageError("missing --out");
  if (args.num_texts <= 0) throw UsageError("--num-texts must be a positive integer");
  if (args.asr.size() < 2) throw UsageError("at least two ASR engines required (repeat --asr)");
  if (args.workers < 0) throw UsageError("--workers must not be negative");
  if (args.transform) {
    try {
      ParseTransformMethod(*args.transform);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  return args;
}

RunConfig BuildRunConfig(const CliArgs& args) {
  RunConfig config;
  config.corpus_path = args.corpus;
  config.output_dir = args.output_dir;
  config.num_texts = args.num_texts;
  config.seed = args.seed;
  config.workers = args.workers;
  config.dict_path = args.dict.empty() ? DefaultDictPath() : args.dict;
  config.resources = args.resources.value_or(DefaultResourcePaths());
  config.augmentation_limit = args.augmentation_limit;
  if (args.transform) config.transform = ParseTransformMethod(*args.transform);
  try {
    config.tts = EngineSpec::Parse(EngineKind::kTts, args.tts);
    for (const auto& a : args.asr) config.asr.push_back(EngineSpec::Parse(EngineKind::kAsr, a));
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  for (auto& spec : config.asr) {
    if (auto it = args.timeout_ms.find(spec.name); it != args.timeout_ms.end()) spec.timeout_ms = it->second;
  }
  if (const char* env = std::getenv(kCacheDirEnv); env != nullptr && *env != '\0') {
    config.cache_dir = fs::path(env);
  } else if (args.cache_dir) {
    config.cache_dir = args.cache_dir;
  }
  try {
    config.Validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return config;
}

namespace {

void PrintSummary(const RunReport& report, std::ostream& out) {
  const auto& m = report.metrics;
  out << "texts processed:              " << m.texts_processed << "\n"
      << "determinable / indeterminable: " << m.determinable_texts << " / " << m.indeterminable_texts << "\n"
      << "engine-errored texts:         " << m.engine_errored_texts << "\n"
      << "failed texts:                 " << m.failed_texts << " (rate " << FormatRatio(m.failed_text_rate) << ")\n";
  for (const auto& e : m.engines) {
    out << "  " << e.engine << ": failed cases " << e.failed_case_count << ", failure rate "
        << FormatRatio(e.failure_rate) << ", WER " << FormatRatio(e.mean_wer) << "\n";
  }
  out << "transformed failed text:      " << FormatRatio(m.pct_transformed_failed_text) << "\n"
      << "transformed failed cases:     " << FormatRatio(m.pct_transformed_failed_cases) << "\n"
      << "boost:                        " << FormatRatio(m.boost_pct) << "\n";
  const auto ranked = report.phonemes.Ranked();
  out << "top phonemes:";
  for (size_t i = 0; i < ranked.size() && i < 5; ++i) out << " " << ranked[i].first << "(" << ranked[i].second << ")";
  out << "\nresults written to " << report.config.output_dir.string() << "\n";
}

}  // namespace

int RunMain(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    const auto args = ParseArgs(argv, out);
    if (!args) return kExitOk;
    config = BuildRunConfig(*args);
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n(run with --help for options)\n";
    return kExitUsage;
  }
  try {
    const auto report = RunPipeline(config, &out);
    PrintSummary(report, out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace asrdiff
