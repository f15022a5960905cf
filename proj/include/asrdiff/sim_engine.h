#ifndef ASRDIFF_SIM_ENGINE_H_
#define ASRDIFF_SIM_ENGINE_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "asrdiff/engine.h"
#include "asrdiff/errors.h"
#include "asrdiff/text.h"

namespace asrdiff {

class PronouncingDict;

// Deterministic stand-ins for real engines. The simulated TTS writes a valid
// 16 kHz WAV whose data chunk carries the text after a fixed marker; the
// simulated ASR recovers it and applies corruption rules.

struct SimCorruptionRule {
  enum class Trigger { kWord, kPhoneme };
  enum class Action { kSubstitute, kDrop, kIdentity };

  Trigger trigger = Trigger::kWord;
  // A lowercase word, or an ARPAbet symbol without stress.
  std::string trigger_value;
  Action action = Action::kIdentity;
  // Replacement for kSubstitute.
  std::string target;
  double probability = 1.0;

  // Compact form used in builtin engine ids and rule files:
  //   word:cat>sub:bat@1.0   phoneme:AE>drop@0.5   word:the>identity@1
  static SimCorruptionRule Parse(std::string_view text);
  std::string ToString() const;

  friend bool operator==(const SimCorruptionRule&, const SimCorruptionRule&) = default;
};

// One rule per line in compact form; blank lines and '#' comments ignored.
std::vector<SimCorruptionRule> LoadSimRules(const std::filesystem::path& path);

class GarbageAudioError : public ParseError {
 public:
  using ParseError::ParseError;
};

// PCM bytes for the data chunk of a simulated utterance.
std::vector<uint8_t> SimTtsEncode(const NormalizedText& text);

// Throws GarbageAudioError when the marker or payload is missing.
std::string SimPayloadText(std::span<const uint8_t> pcm_bytes);

// Per token, rules are tried in declaration order; each rule whose trigger
// matches consumes one draw from a generator seeded by (seed, text), and the
// first successful draw decides the token's fate. A phoneme trigger matches
// a word having that phoneme in any of its dictionary pronunciations.
std::string SimAsrDecode(std::span<const uint8_t> pcm_bytes, std::span<const SimCorruptionRule> rules,
                         uint64_t seed, const PronouncingDict* dict = nullptr);

// Parsed form of a "sim-tts" / "sim-asr(...)" identifier.
struct SimEngineParams {
  EngineKind kind = EngineKind::kAsr;
  std::optional<int64_t> seed;
  std::vector<SimCorruptionRule> rules;
  // Canonical identifier text (rules expanded inline, files resolved).
  std::string canonical;
};

bool IsSimEngineId(std::string_view launch);
SimEngineParams ParseSimEngineId(std::string_view launch);

std::unique_ptr<Engine> MakeSimEngine(const EngineSpec& spec, const SpawnContext& context);

}  // namespace asrdiff

#endif  // ASRDIFF_SIM_ENGINE_H_
