#ifndef ASRDIFF_CASE_RECORD_H_
#define ASRDIFF_CASE_RECORD_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "asrdiff/engine.h"
#include "asrdiff/text.h"

namespace asrdiff {

enum class TransformMethod { kHomophone, kAugmentation, kAdjacentDeletion, kPlurality, kTense };

const char* TransformMethodName(TransformMethod method);  // "homophone", "adjacent_deletion", ...
// Case-insensitive; '-' and '_' are interchangeable. Throws ConfigError
// listing the valid names.
TransformMethod ParseTransformMethod(std::string_view name);
std::vector<std::string> TransformMethodNames();

struct Lineage {
  // Empty for corpus texts.
  std::string parent_case_id;
  std::optional<TransformMethod> method;

  bool original() const { return !method.has_value(); }
  friend bool operator==(const Lineage&, const Lineage&) = default;
};

struct TestCase {
  std::string case_id;
  NormalizedText text;
  int iteration = 1;
  Lineage lineage;
  friend bool operator==(const TestCase&, const TestCase&) = default;
};

enum class CaseStatus { kDeterminable, kIndeterminable, kEngineErrored };

const char* CaseStatusName(CaseStatus status);  // "DETERMINABLE", ...
CaseStatus ParseCaseStatus(std::string_view name);

struct CrossReference {
  CaseStatus status = CaseStatus::kIndeterminable;
  bool failed_text = false;
  std::set<std::string> failed_engines;
  friend bool operator==(const CrossReference&, const CrossReference&) = default;
};

// Differential judgment over one case. Errored verdicts are left out; if
// fewer than two usable verdicts remain the case is ENGINE_ERRORED.
// Throws ConfigError when given fewer than two verdicts.
CrossReference CrossReferenceVerdicts(std::span<const TranscriptionVerdict> verdicts);

struct CaseRecord {
  TestCase test_case;
  std::optional<AudioArtifact> audio;
  // One per ASR engine, in configuration order.
  std::vector<TranscriptionVerdict> verdicts;
  CaseStatus status = CaseStatus::kIndeterminable;
  bool failed_text = false;
  std::set<std::string> failed_engines;
  // Set when the case could not be synthesized.
  std::optional<std::string> tts_error;

  friend bool operator==(const CaseRecord&, const CaseRecord&) = default;
};

}  // namespace asrdiff

#endif  // ASRDIFF_CASE_RECORD_H_
