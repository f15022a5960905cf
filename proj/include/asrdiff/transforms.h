#ifndef ASRDIFF_TRANSFORMS_H_
#define ASRDIFF_TRANSFORMS_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "asrdiff/alignment.h"
#include "asrdiff/case_record.h"
#include "asrdiff/phonetics.h"

namespace asrdiff {

// A reference word implicated in one engine's failure.
struct ErrorTerm {
  std::string word;
  int ref_index = 0;
  EditKind op = EditKind::kSubstitute;  // kSubstitute or kDelete
  std::string engine_name;
  friend bool operator==(const ErrorTerm&, const ErrorTerm&) = default;
};

// Reference words under SUBSTITUTE or DELETE in each failed engine's minimal
// alignment, engines in verdict order. Multiplicity across engines is kept.
// Throws PreconditionError unless record.failed_text.
std::vector<ErrorTerm> ExtractErrorTerms(const CaseRecord& record);

PhonemeHistogram PhonemeFrequency(const PronouncingDict& dict, std::span<const ErrorTerm> terms);

struct TransformedText {
  NormalizedText text;
  std::string parent_case_id;
  TransformMethod method;
  ErrorTerm focus_term;
  friend bool operator==(const TransformedText&, const TransformedText&) = default;
};

// Present -> past. Irregular forms come from a two-column TSV (present, past);
// regular verbs from a one-per-line list and are inflected by rule.
class VerbTable {
 public:
  static VerbTable Load(const std::filesystem::path& irregular_tsv, const std::filesystem::path& regular_list);
  static VerbTable FromEntries(std::vector<std::pair<std::string, std::string>> irregular,
                               std::vector<std::string> regular);

  // Past form of a recognized verb form (base, third person or past). A past
  // form maps to itself. nullopt if the word is not recognized.
  std::optional<std::string> PastOf(std::string_view word) const;

  // -ed with e-dropping, consonant-y -> ied and CVC final consonant doubling.
  static std::string RegularPast(std::string_view base);

 private:
  std::unordered_map<std::string, std::string> irregular_;
  std::unordered_set<std::string> irregular_past_;
  std::unordered_set<std::string> regular_;
  std::unordered_set<std::string> regular_past_;
};

// Number toggling: irregular pairs from a two-column TSV (singular, plural),
// otherwise s / es / ies suffix rules.
class NounTable {
 public:
  static NounTable Load(const std::filesystem::path& irregular_tsv);
  static NounTable FromEntries(std::vector<std::pair<std::string, std::string>> irregular);

  bool InTable(std::string_view word) const;
  // Opposite number. `dict` picks between plural readings of a word ending
  // in s; the caller still checks the result against the dictionary.
  std::string Toggle(std::string_view word, const PronouncingDict& dict) const;

  static std::string RegularPlural(std::string_view singular);

 private:
  std::unordered_map<std::string, std::string> to_plural_;
  std::unordered_map<std::string, std::string> to_singular_;
};

// Source of example sentences for homophone transformation.
class SentenceProvider {
 public:
  virtual ~SentenceProvider() = default;
  virtual std::optional<std::string> SentenceContaining(std::string_view word) const = 0;
};

// Searches a local sentence list (first match in file order), then falls back
// to the carrier sentence "please say the word <w> again" when enabled.
class OfflineSentenceProvider : public SentenceProvider {
 public:
  OfflineSentenceProvider(std::vector<std::string> sentences, bool carrier_fallback = true);
  static OfflineSentenceProvider Load(const std::filesystem::path& path, bool carrier_fallback = true);

  std::optional<std::string> SentenceContaining(std::string_view word) const override;

 private:
  std::unordered_map<std::string, std::string> first_sentence_;
  bool carrier_fallback_;
};

inline constexpr int kDefaultAugmentationLimit = 3;

struct TransformResources {
  std::shared_ptr<const PronouncingDict> dict;
  std::shared_ptr<const VerbTable> verbs;
  std::shared_ptr<const NounTable> nouns;
  std::shared_ptr<const SentenceProvider> sentences;
  int augmentation_limit = kDefaultAugmentationLimit;
};

// Each transform takes the failed parent and one of its error terms and
// returns new texts; none of them equals the parent text.

// Throws PreconditionError when the term is out of vocabulary.
std::vector<TransformedText> TransformHomophone(const TestCase& parent, const ErrorTerm& term,
                                                const PronouncingDict& dict, const SentenceProvider& sentences);

std::vector<TransformedText> TransformTense(const TestCase& parent, const ErrorTerm& term, const VerbTable& verbs);

std::vector<TransformedText> TransformPlurality(const TestCase& parent, const ErrorTerm& term,
                                                const NounTable& nouns, const PronouncingDict& dict);

// Deletes the word left of the term, then the word right of it.
std::vector<TransformedText> TransformAdjacentDeletion(const TestCase& parent, const ErrorTerm& term);

// Substitutes dictionary words at phoneme edit distance 1, alphabetically,
// at most `limit` variants.
std::vector<TransformedText> TransformAugmentation(const TestCase& parent, const ErrorTerm& term,
                                                   const PronouncingDict& dict, int limit = kDefaultAugmentationLimit);

// Union over records and their error terms, in order, deduplicated by text
// and excluding every text in `existing`.
std::vector<TransformedText> ApplyTransform(TransformMethod method, std::span<const CaseRecord> failed_records,
                                            const TransformResources& resources,
                                            const std::set<NormalizedText>& existing = {});

}  // namespace asrdiff

#endif  // ASRDIFF_TRANSFORMS_H_
