#ifndef ASRDIFF_ENGINE_H_
#define ASRDIFF_ENGINE_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "asrdiff/text.h"

namespace asrdiff {

class PronouncingDict;

enum class EngineKind { kTts, kAsr };

const char* EngineKindName(EngineKind kind);  // "tts" / "asr"

inline constexpr int kDefaultEngineTimeoutMs = 60000;

struct EngineSpec {
  std::string name;
  EngineKind kind = EngineKind::kAsr;
  // Shell command line for an external engine, or a builtin identifier such
  // as "sim-asr(seed=7,rule=word:cat>sub:bat@1)".
  std::string launch;
  int timeout_ms = kDefaultEngineTimeoutMs;

  bool builtin() const;

  // Accepts "name=launch" or a bare launch string. A bare builtin takes its
  // base identifier as name ("sim-asr"); a bare command takes the basename of
  // its program. Throws ConfigError.
  static EngineSpec Parse(EngineKind kind, std::string_view text);

  friend bool operator==(const EngineSpec&, const EngineSpec&) = default;
};

// Names end up in file names, so they are restricted to [A-Za-z0-9_.-].
bool IsValidEngineName(std::string_view name);

struct AudioArtifact {
  std::filesystem::path path;
  std::string source_text_id;
  friend bool operator==(const AudioArtifact&, const AudioArtifact&) = default;
};

// A handle on one TTS or ASR engine. Not reentrant: a handle serves one
// request at a time, but may be moved between threads between requests.
class Engine {
 public:
  explicit Engine(EngineSpec spec) : spec_(std::move(spec)) {}
  virtual ~Engine() = default;
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const EngineSpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.name; }
  EngineKind kind() const { return spec_.kind; }

  // Identifies everything that can change this engine's output; used as the
  // transcript cache key.
  virtual std::string Fingerprint() const = 0;

  // Writes <out_dir>/<case_id>.wav. Throws PreconditionError for a non-TTS
  // handle or empty text, EngineError/TimeoutError for engine failures.
  AudioArtifact Synthesize(const std::string& case_id, const NormalizedText& text,
                           const std::filesystem::path& out_dir);

  // Returns the raw transcript (callers normalize). Throws PreconditionError
  // for a non-ASR handle, IoError for a missing file, EngineError on failure.
  std::string Transcribe(const std::string& case_id, const AudioArtifact& audio);

 protected:
  virtual void DoSynthesize(const std::string& case_id, const NormalizedText& text,
                            const std::filesystem::path& out_path) = 0;
  virtual std::string DoTranscribe(const std::string& case_id, const std::filesystem::path& audio_path) = 0;

 private:
  EngineSpec spec_;
};

struct SpawnContext {
  // Needed by simulated engines with phoneme-triggered rules.
  std::shared_ptr<const PronouncingDict> dict;
  // Seed for builtin engines that do not set their own.
  int64_t run_seed = 0;
};

// Starts the engine and validates its handshake. Throws ConfigError for an
// unknown builtin or bad parameters, EngineError for launch failure,
// malformed handshake or kind mismatch, TimeoutError if no handshake arrives.
std::unique_ptr<Engine> SpawnEngine(const EngineSpec& spec, const SpawnContext& context = {});

}  // namespace asrdiff

#endif  // ASRDIFF_ENGINE_H_
