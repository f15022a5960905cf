#ifndef ASRDIFF_CLI_H_
#define ASRDIFF_CLI_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "asrdiff/errors.h"
#include "asrdiff/pipeline.h"

namespace asrdiff {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// Only environment variable consulted: overrides <out>/cache.
inline constexpr const char* kCacheDirEnv = "ASRDIFF_CACHE_DIR";

struct CliArgs {
  std::filesystem::path corpus;
  std::filesystem::path output_dir;
  int64_t num_texts = 0;
  std::vector<std::string> asr;
  std::string tts = "sim-tts";
  std::optional<std::string> transform;
  int64_t seed = 0;
  std::filesystem::path dict;
  int workers = 0;
  std::optional<std::filesystem::path> config;

  // Settable only through the config file.
  std::map<std::string, int> timeout_ms;  // by engine name
  std::optional<ResourcePaths> resources;
  int augmentation_limit = kDefaultAugmentationLimit;
  std::optional<std::filesystem::path> cache_dir;
};

class UsageError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Flags override values from --config. Relative paths in the config file are
// resolved against the file's directory. Returns nullopt after printing
// --help to `out`. Throws UsageError.
std::optional<CliArgs> ParseArgs(const std::vector<std::string>& argv, std::ostream& out);

// Throws UsageError for invalid engine specs.
RunConfig BuildRunConfig(const CliArgs& args);

// Whole command: parse, run, summarize. Returns the process exit code.
int RunMain(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace asrdiff

#endif  // ASRDIFF_CLI_H_
