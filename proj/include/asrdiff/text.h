#ifndef ASRDIFF_TEXT_H_
#define ASRDIFF_TEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asrdiff {

// Lowercase a-z, apostrophes and single inner spaces only.
class NormalizedText {
 public:
  NormalizedText() = default;

  // Wraps a string that is already normalized. Throws PreconditionError
  // otherwise; use NormalizeText() for arbitrary input.
  static NormalizedText FromNormalized(std::string value);

  const std::string& value() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend bool operator==(const NormalizedText&, const NormalizedText&) = default;
  friend auto operator<=>(const NormalizedText&, const NormalizedText&) = default;

 private:
  explicit NormalizedText(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

struct NormalizeResult {
  NormalizedText text;
  // Digits were dropped; the line should not be used as a test text.
  bool lossy = false;
  // Nothing left after normalization.
  bool unusable() const { return text.empty(); }
};

NormalizeResult NormalizeText(std::string_view raw);

// True if `s` satisfies the NormalizedText invariants.
bool IsNormalized(std::string_view s);

std::vector<std::string> Tokenize(const NormalizedText& text);

// Inverse of Tokenize for tokens that are themselves normalized words.
NormalizedText JoinTokens(const std::vector<std::string>& tokens);

bool IsCorrect(const NormalizedText& reference, const NormalizedText& hypothesis);

// One engine's output for one case. `error` is set when the engine produced
// no transcript (crash, timeout, error response); `correct` is then false.
struct TranscriptionVerdict {
  std::string engine_name;
  NormalizedText transcript;
  bool correct = false;
  std::optional<std::string> error;

  bool errored() const { return error.has_value(); }
  friend bool operator==(const TranscriptionVerdict&, const TranscriptionVerdict&) = default;
};

TranscriptionVerdict JudgeTranscript(std::string engine_name, const NormalizedText& reference,
                                     std::string_view raw_transcript);

}  // namespace asrdiff

#endif  // ASRDIFF_TEXT_H_
