#ifndef ASRDIFF_PHONETICS_H_
#define ASRDIFF_PHONETICS_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace asrdiff {

using Phoneme = std::string;
using Pronunciation = std::vector<Phoneme>;

// The 39 ARPAbet symbols without stress marks.
bool IsArpabetPhoneme(std::string_view symbol);

// Word -> pronunciations, stress digits removed. Immutable after loading.
class PronouncingDict {
 public:
  // Reads the CMU dictionary line format:
  //   WORD  PH1 PH2 ...
  //   WORD(2)  PH1 PH2 ...
  //   ;;; comment
  // Alternates are folded under the base word in file order. Throws
  // ParseError naming the line for malformed input or an empty dictionary.
  static PronouncingDict Load(const std::filesystem::path& path);
  static PronouncingDict Parse(std::istream& in, std::string_view source_name = "<stream>");

  // Case-insensitive. Null when the word is unknown.
  const std::vector<Pronunciation>* Find(std::string_view word) const;
  bool Contains(std::string_view word) const { return Find(word) != nullptr; }

  // Words sharing at least one pronunciation with `word`, excluding the word
  // itself, ascending. Throws PreconditionError for unknown words.
  std::vector<std::string> Homophones(std::string_view word) const;

  // Every word whose first pronunciation has this exact phoneme sequence.
  const std::vector<std::string>& WordsWithPronunciation(const Pronunciation& p) const;

  // All words, ascending.
  const std::vector<std::string>& words() const { return sorted_words_; }
  size_t size() const { return entries_.size(); }

 private:
  struct PronunciationHash {
    size_t operator()(const Pronunciation& p) const;
  };

  std::unordered_map<std::string, std::vector<Pronunciation>> entries_;
  std::vector<std::string> sorted_words_;
  // Any pronunciation -> words having it (ascending, unique).
  std::unordered_map<Pronunciation, std::vector<std::string>, PronunciationHash> by_pronunciation_;
};

// First listed pronunciation, or nullopt for out-of-vocabulary words.
std::optional<Pronunciation> PhonemesOf(const PronouncingDict& dict, std::string_view word);

std::vector<std::string> HomophonesOf(const PronouncingDict& dict, std::string_view word);

int PhonemeEditDistance(const Pronunciation& p, const Pronunciation& q);

struct PhonemeHistogram {
  std::map<Phoneme, int64_t> counts;
  int64_t oov_terms = 0;

  int64_t Total() const;
  // Descending count, ties by ascending symbol.
  std::vector<std::pair<Phoneme, int64_t>> Ranked() const;
  friend bool operator==(const PhonemeHistogram&, const PhonemeHistogram&) = default;
};

// Adds each phoneme of every term's first pronunciation, with multiplicity.
PhonemeHistogram PhonemeFrequency(const PronouncingDict& dict, const std::vector<std::string>& term_words);

}  // namespace asrdiff

#endif  // ASRDIFF_PHONETICS_H_
