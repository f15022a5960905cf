#include "asrdiff/engine.h"

#include <atomic>
#include <chrono>
#include <filesystem>

#include "asrdiff/errors.h"
#include "asrdiff/protocol.h"
#include "asrdiff/sim_engine.h"
#include "asrdiff/subprocess.h"
#include "asrdiff/wav.h"

namespace asrdiff {

namespace fs = std::filesystem;

const char* EngineKindName(EngineKind kind) { return kind == EngineKind::kTts ? "tts" : "asr"; }

bool IsValidEngineName(std::string_view name) {
  if (name.empty() || name == "." || name == "..") return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                    c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

bool EngineSpec::builtin() const { return IsSimEngineId(launch); }

EngineSpec EngineSpec::Parse(EngineKind kind, std::string_view text) {
  EngineSpec spec;
  spec.kind = kind;
  // "name=launch" only when the '=' precedes any parenthesis or whitespace;
  // builtin parameters also contain '='.
  const auto eq = text.find('=');
  const auto stop = text.find_first_of("( \t");
  if (eq != std::string_view::npos && (stop == std::string_view::npos || eq < stop)) {
    spec.name = std::string(text.substr(0, eq));
    spec.launch = std::string(text.substr(eq + 1));
  } else {
    spec.launch = std::string(text);
    if (spec.builtin()) {
      spec.name = spec.launch.substr(0, spec.launch.find('('));
    } else {
      const auto program = spec.launch.substr(0, spec.launch.find_first_of(" \t"));
      spec.name = fs::path(program).filename().string();
    }
  }
  if (spec.launch.empty()) throw ConfigError("empty engine command in \"" + std::string(text) + "\"");
  if (!IsValidEngineName(spec.name)) {
    throw ConfigError("invalid engine name \"" + spec.name + "\" (allowed: letters, digits, '_', '-', '.')");
  }
  return spec;
}

AudioArtifact Engine::Synthesize(const std::string& case_id, const NormalizedText& text, const fs::path& out_dir) {
  if (kind() != EngineKind::kTts) throw PreconditionError("engine " + name() + " is not a TTS engine");
  if (text.empty()) throw PreconditionError("cannot synthesize empty text");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) throw IoError("output directory not writable: " + out_dir.string());
  const fs::path out_path = out_dir / (case_id + ".wav");
  DoSynthesize(case_id, text, out_path);
  return {out_path, case_id};
}

std::string Engine::Transcribe(const std::string& case_id, const AudioArtifact& audio) {
  if (kind() != EngineKind::kAsr) throw PreconditionError("engine " + name() + " is not an ASR engine");
  if (!fs::exists(audio.path)) throw IoError("audio file missing: " + audio.path.string());
  return DoTranscribe(case_id, audio.path);
}

namespace {

// An engine in a child process. A timeout or crash kills the child; the next
// request starts a fresh one.
class ProcessEngine : public Engine {
 public:
  explicit ProcessEngine(EngineSpec spec) : Engine(std::move(spec)) { Start(); }

  std::string Fingerprint() const override {
    return "external|" + name() + "|" + spec().launch + "|" + hello_name_;
  }

 protected:
  void DoSynthesize(const std::string& case_id, const NormalizedText& text, const fs::path& out_path) override {
    const auto id = NextId(case_id);
    const auto resp = Call(id, protocol::EncodeSynthesizeRequest(id, text.value(), out_path.string()));
    if (!fs::exists(resp)) throw EngineError(name() + ": reported audio " + resp + " does not exist");
    try {
      ReadWav(resp);
    } catch (const ParseError& e) {
      throw EngineError(name() + ": produced audio violates the WAV contract: " + e.what());
    }
    if (fs::path(resp) != out_path) fs::copy_file(resp, out_path, fs::copy_options::overwrite_existing);
  }

  std::string DoTranscribe(const std::string& case_id, const fs::path& audio_path) override {
    const auto id = NextId(case_id);
    return Call(id, protocol::EncodeTranscribeRequest(id, audio_path.string()));
  }

 private:
  std::string NextId(const std::string& case_id) { return case_id + "#" + std::to_string(++request_seq_); }

  std::chrono::steady_clock::time_point Deadline() const {
    return std::chrono::steady_clock::now() + std::chrono::milliseconds(spec().timeout_ms);
  }

  void Start() {
    process_ = std::make_unique<Subprocess>(spec().launch);
    std::optional<std::string> line;
    try {
      line = process_->ReadLine(Deadline());
    } catch (const TimeoutError&) {
      process_.reset();
      throw TimeoutError(name() + ": no handshake within " + std::to_string(spec().timeout_ms) + " ms");
    }
    if (!line) {
      process_.reset();
      throw EngineError(name() + ": exited before handshake");
    }
    protocol::Hello hello;
    try {
      hello = protocol::ParseHello(*line);
    } catch (const EngineError& e) {
      process_.reset();
      throw EngineError(name() + ": " + e.what());
    }
    if (hello.kind != kind()) {
      process_.reset();
      throw EngineError(name() + ": handshake kind mismatch (expected " + EngineKindName(kind()) + ", got " +
                        EngineKindName(hello.kind) + ")");
    }
    hello_name_ = hello.name;
  }

  std::string Call(const std::string& id, const std::string& request) {
    // A failed restart is not a per-case failure: let it propagate.
    if (!process_) {
      try {
        Start();
      } catch (const EngineError& e) {
        throw EngineUnavailableError(std::string("restart failed: ") + e.what());
      }
    }
    if (!process_->WriteLine(request)) {
      process_.reset();
      throw EngineError(name() + ": engine closed its input");
    }
    const auto deadline = Deadline();
    while (true) {
      std::optional<std::string> line;
      try {
        line = process_->ReadLine(deadline);
      } catch (const TimeoutError&) {
        process_.reset();
        throw TimeoutError(name() + ": request " + id + " timed out after " + std::to_string(spec().timeout_ms) +
                           " ms; engine restarted");
      }
      if (!line) {
        process_.reset();
        throw EngineError(name() + ": engine exited during request " + id);
      }
      auto resp = protocol::ParseResponse(*line, kind());
      if (!resp) {
        process_.reset();
        throw EngineError(name() + ": malformed response: " + *line);
      }
      // Stale answers to an earlier request are skipped.
      if (resp->id != id) continue;
      if (!resp->ok) throw EngineError(name() + ": " + resp->payload);
      return resp->payload;
    }
  }

  std::unique_ptr<Subprocess> process_;
  std::string hello_name_;
  uint64_t request_seq_ = 0;
};

}  // namespace

std::unique_ptr<Engine> SpawnEngine(const EngineSpec& spec, const SpawnContext& context) {
  if (!IsValidEngineName(spec.name)) throw ConfigError("invalid engine name \"" + spec.name + "\"");
  if (spec.timeout_ms <= 0) throw ConfigError("engine " + spec.name + ": timeout must be positive");
  if (spec.builtin()) return MakeSimEngine(spec, context);
  return std::make_unique<ProcessEngine>(spec);
}

}  // namespace asrdiff
