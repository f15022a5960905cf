#ifndef ASRDIFF_CACHE_H_
#define ASRDIFF_CACHE_H_

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>

#include "asrdiff/text.h"

namespace asrdiff {

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view data);

// Transcripts keyed by SHA-256 of (engine fingerprint, text), one JSON file
// per entry. Safe for concurrent use by distinct engines.
class TranscriptCache {
 public:
  explicit TranscriptCache(std::filesystem::path dir);

  // A corrupt or mismatching entry is deleted and reported as a miss.
  std::optional<std::string> Lookup(const NormalizedText& text, const std::string& fingerprint);
  void Store(const NormalizedText& text, const std::string& fingerprint, const std::string& transcript);

  const std::filesystem::path& dir() const { return dir_; }
  int64_t hits() const { return hits_; }
  int64_t misses() const { return misses_; }

  static std::string Key(const NormalizedText& text, const std::string& fingerprint);

 private:
  std::filesystem::path dir_;
  std::atomic<int64_t> hits_ = 0;
  std::atomic<int64_t> misses_ = 0;
};

}  // namespace asrdiff

#endif  // ASRDIFF_CACHE_H_
