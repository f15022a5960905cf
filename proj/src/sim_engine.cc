#include "asrdiff/sim_engine.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <random>

#include "asrdiff/phonetics.h"
#include "asrdiff/wav.h"

namespace asrdiff {

namespace fs = std::filesystem;

namespace {

constexpr std::array<uint8_t, 16> kMarker = {0x00, 'A', 'S', 'R', 'D', 'I', 'F', 'F', '-',
                                             'S',  'I', 'M', '-', 'T', 'T', 0x01};
constexpr int kPreambleSamples = 800;

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double ParseProbability(std::string_view text, std::string_view context) {
  double p = -1;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(p >= 0.0 && p <= 1.0)) {
    throw ConfigError("bad probability \"" + std::string(text) + "\" in rule \"" + std::string(context) +
                      "\" (need a number in [0,1])");
  }
  return p;
}

std::string FormatProbability(double p) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p);
  return std::string(buf, ptr);
}

bool IsSingleWord(std::string_view w) { return !w.empty() && IsNormalized(w) && w.find(' ') == std::string_view::npos; }

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double NextUnit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool RuleMatches(const SimCorruptionRule& rule, const std::string& word, const PronouncingDict* dict) {
  if (rule.trigger == SimCorruptionRule::Trigger::kWord) return word == rule.trigger_value;
  if (dict == nullptr) return false;
  const auto* prons = dict->Find(word);
  if (prons == nullptr) return false;
  for (const auto& p : *prons) {
    if (std::find(p.begin(), p.end(), rule.trigger_value) != p.end()) return true;
  }
  return false;
}

}  // namespace

SimCorruptionRule SimCorruptionRule::Parse(std::string_view text) {
  const std::string whole(text);
  const auto colon = text.find(':');
  const auto arrow = text.find('>');
  const auto at = text.rfind('@');
  if (colon == std::string_view::npos || arrow == std::string_view::npos || at == std::string_view::npos ||
      !(colon < arrow && arrow < at)) {
    throw ConfigError("bad rule \"" + whole + "\" (expected <word|phoneme>:<trigger>><sub:W|drop|identity>@<p>)");
  }
  SimCorruptionRule rule;
  const auto kind = text.substr(0, colon);
  rule.trigger_value = std::string(text.substr(colon + 1, arrow - colon - 1));
  if (kind == "word") {
    rule.trigger = Trigger::kWord;
    if (!IsSingleWord(rule.trigger_value)) throw ConfigError("rule \"" + whole + "\": trigger must be one normalized word");
  } else if (kind == "phoneme") {
    rule.trigger = Trigger::kPhoneme;
    if (!IsArpabetPhoneme(rule.trigger_value)) {
      throw ConfigError("rule \"" + whole + "\": \"" + rule.trigger_value + "\" is not an ARPAbet phoneme");
    }
  } else {
    throw ConfigError("rule \"" + whole + "\": trigger kind must be word or phoneme");
  }
  const auto action = text.substr(arrow + 1, at - arrow - 1);
  if (action == "drop") {
    rule.action = Action::kDrop;
  } else if (action == "identity") {
    rule.action = Action::kIdentity;
  } else if (action.starts_with("sub:")) {
    rule.action = Action::kSubstitute;
    rule.target = std::string(action.substr(4));
    if (!IsSingleWord(rule.target)) throw ConfigError("rule \"" + whole + "\": substitute target must be one normalized word");
  } else {
    throw ConfigError("rule \"" + whole + "\": unknown action \"" + std::string(action) + "\"");
  }
  rule.probability = ParseProbability(text.substr(at + 1), text);
  return rule;
}

std::string SimCorruptionRule::ToString() const {
  std::string s = trigger == Trigger::kWord ? "word:" : "phoneme:";
  s += trigger_value + ">";
  switch (action) {
    case Action::kSubstitute:
      s += "sub:" + target;
      break;
    case Action::kDrop:
      s += "drop";
      break;
    case Action::kIdentity:
      s += "identity";
      break;
  }
  return s + "@" + FormatProbability(probability);
}

std::vector<SimCorruptionRule> LoadSimRules(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open rule file " + path.string());
  std::vector<SimCorruptionRule> rules;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // '#' starts a comment anywhere on the line.
    const auto body = Trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    try {
      rules.push_back(SimCorruptionRule::Parse(body));
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rules;
}

std::vector<uint8_t> SimTtsEncode(const NormalizedText& text) {
  std::vector<uint8_t> pcm;
  pcm.reserve(kPreambleSamples * 2 + kMarker.size() + 4 + text.value().size());
  // A 400 Hz triangle tone so the file is audible, then the payload.
  for (int k = 0; k < kPreambleSamples; ++k) {
    const int phase = k % 40;
    const int16_t v = static_cast<int16_t>((phase < 20 ? phase : 40 - phase) * 1600 - 16000);
    pcm.push_back(static_cast<uint8_t>(v & 0xff));
    pcm.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
  }
  pcm.insert(pcm.end(), kMarker.begin(), kMarker.end());
  const auto n = static_cast<uint32_t>(text.value().size());
  for (int i = 0; i < 4; ++i) pcm.push_back(static_cast<uint8_t>((n >> (8 * i)) & 0xff));
  pcm.insert(pcm.end(), text.value().begin(), text.value().end());
  return pcm;
}

std::string SimPayloadText(std::span<const uint8_t> pcm) {
  const auto it = std::search(pcm.begin(), pcm.end(), kMarker.begin(), kMarker.end());
  if (it == pcm.end()) throw GarbageAudioError("no simulated-speech marker in audio");
  const size_t at = static_cast<size_t>(it - pcm.begin()) + kMarker.size();
  if (pcm.size() < at + 4) throw GarbageAudioError("truncated simulated-speech payload");
  const uint32_t n = static_cast<uint32_t>(pcm[at]) | (static_cast<uint32_t>(pcm[at + 1]) << 8) |
                     (static_cast<uint32_t>(pcm[at + 2]) << 16) | (static_cast<uint32_t>(pcm[at + 3]) << 24);
  if (pcm.size() - at - 4 < n) throw GarbageAudioError("truncated simulated-speech payload");
  std::string text(reinterpret_cast<const char*>(pcm.data() + at + 4), n);
  if (!IsNormalized(text)) throw GarbageAudioError("simulated-speech payload is not normalized text");
  return text;
}

std::string SimAsrDecode(std::span<const uint8_t> pcm, std::span<const SimCorruptionRule> rules, uint64_t seed,
                         const PronouncingDict* dict) {
  const std::string text = SimPayloadText(pcm);
  if (rules.empty()) return text;

  const uint64_t text_hash = Fnv1a(text);
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32), static_cast<uint32_t>(text_hash),
                    static_cast<uint32_t>(text_hash >> 32)};
  std::mt19937_64 rng(seq);

  std::vector<std::string> out;
  for (auto& word : Tokenize(NormalizedText::FromNormalized(text))) {
    bool keep = true;
    for (const auto& rule : rules) {
      if (!RuleMatches(rule, word, dict)) continue;
      if (!(NextUnit(rng) < rule.probability)) continue;
      if (rule.action == SimCorruptionRule::Action::kDrop) keep = false;
      if (rule.action == SimCorruptionRule::Action::kSubstitute) word = rule.target;
      break;
    }
    if (keep) out.push_back(std::move(word));
  }
  return JoinTokens(out).value();
}

bool IsSimEngineId(std::string_view launch) {
  for (std::string_view base : {"sim-tts", "sim-asr"}) {
    if (launch.starts_with(base) && (launch.size() == base.size() || launch[base.size()] == '(')) return true;
  }
  return false;
}

SimEngineParams ParseSimEngineId(std::string_view launch) {
  if (!IsSimEngineId(launch)) throw ConfigError("unknown builtin engine \"" + std::string(launch) + "\"");
  SimEngineParams params;
  params.kind = launch.starts_with("sim-tts") ? EngineKind::kTts : EngineKind::kAsr;
  const std::string base(launch.substr(0, 7));
  std::string_view args = launch.substr(7);
  if (!args.empty()) {
    if (args.back() != ')') throw ConfigError("unterminated parameter list in \"" + std::string(launch) + "\"");
    args = args.substr(1, args.size() - 2);
  }
  while (!args.empty()) {
    const auto comma = args.find(',');
    const auto item = Trim(args.substr(0, comma));
    args = comma == std::string_view::npos ? std::string_view{} : args.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("parameter \"" + std::string(item) + "\" needs key=value");
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    if (key == "seed") {
      int64_t seed = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError("bad seed \"" + std::string(value) + "\"");
      }
      params.seed = seed;
    } else if (key == "rule") {
      params.rules.push_back(SimCorruptionRule::Parse(value));
    } else if (key == "rules") {
      auto loaded = LoadSimRules(fs::path(value));
      params.rules.insert(params.rules.end(), loaded.begin(), loaded.end());
    } else {
      throw ConfigError("unknown parameter \"" + std::string(key) + "\" for " + base);
    }
  }
  if (params.kind == EngineKind::kTts && (!params.rules.empty() || params.seed)) {
    throw ConfigError("sim-tts takes no parameters");
  }

  params.canonical = base;
  std::vector<std::string> parts;
  if (params.seed) parts.push_back("seed=" + std::to_string(*params.seed));
  for (const auto& r : params.rules) parts.push_back("rule=" + r.ToString());
  if (!parts.empty()) {
    params.canonical += "(";
    for (size_t i = 0; i < parts.size(); ++i) params.canonical += (i ? "," : "") + parts[i];
    params.canonical += ")";
  }
  return params;
}

namespace {

class SimTtsEngine : public Engine {
 public:
  explicit SimTtsEngine(EngineSpec spec) : Engine(std::move(spec)) {}
  std::string Fingerprint() const override { return "builtin|" + name() + "|sim-tts"; }

 protected:
  void DoSynthesize(const std::string&, const NormalizedText& text, const fs::path& out_path) override {
    WriteWav(out_path, SimTtsEncode(text));
  }
  std::string DoTranscribe(const std::string&, const fs::path&) override {
    throw PreconditionError("sim-tts cannot transcribe");
  }
};

class SimAsrEngine : public Engine {
 public:
  SimAsrEngine(EngineSpec spec, SimEngineParams params, uint64_t seed, std::shared_ptr<const PronouncingDict> dict)
      : Engine(std::move(spec)), params_(std::move(params)), seed_(seed), dict_(std::move(dict)) {}

  std::string Fingerprint() const override {
    return "builtin|" + name() + "|" + params_.canonical + "|seed=" + std::to_string(seed_);
  }

 protected:
  void DoSynthesize(const std::string&, const NormalizedText&, const fs::path&) override {
    throw PreconditionError("sim-asr cannot synthesize");
  }

  std::string DoTranscribe(const std::string&, const fs::path& audio_path) override {
    try {
      const auto wav = ReadWav(audio_path);
      return SimAsrDecode(wav.data, params_.rules, seed_, dict_.get());
    } catch (const ParseError&) {
      // Unintelligible audio: the simulated listener hears nothing.
      return "";
    }
  }

 private:
  SimEngineParams params_;
  uint64_t seed_;
  std::shared_ptr<const PronouncingDict> dict_;
};

}  // namespace

std::unique_ptr<Engine> MakeSimEngine(const EngineSpec& spec, const SpawnContext& context) {
  auto params = ParseSimEngineId(spec.launch);
  if (params.kind != spec.kind) {
    throw EngineError(spec.name + ": handshake kind mismatch (expected " + EngineKindName(spec.kind) + ", got " +
                      EngineKindName(params.kind) + ")");
  }
  if (params.kind == EngineKind::kTts) return std::make_unique<SimTtsEngine>(spec);
  const bool needs_dict = std::any_of(params.rules.begin(), params.rules.end(), [](const auto& r) {
    return r.trigger == SimCorruptionRule::Trigger::kPhoneme;
  });
  if (needs_dict && !context.dict) {
    throw ConfigError(spec.name + ": phoneme-triggered rules need a pronouncing dictionary");
  }
  const auto seed = static_cast<uint64_t>(params.seed.value_or(context.run_seed));
  return std::make_unique<SimAsrEngine>(spec, std::move(params), seed, context.dict);
}

}  // namespace asrdiff
