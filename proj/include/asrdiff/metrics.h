#ifndef ASRDIFF_METRICS_H_
#define ASRDIFF_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asrdiff/case_record.h"
#include "asrdiff/ratio.h"

namespace asrdiff {

// Ratios are nullopt ("N/A") when their denominator is zero. Engine-errored
// cases and outputs count in no numerator and no denominator.
struct EngineMetrics {
  std::string engine;
  // Determinable cases this engine transcribed (its rate denominator).
  int64_t outputs = 0;
  int64_t failed_case_count = 0;
  std::optional<Ratio> failure_rate;
  // Word errors over reference words, pooled across determinable cases.
  std::optional<Ratio> mean_wer;
  friend bool operator==(const EngineMetrics&, const EngineMetrics&) = default;
};

struct MetricsRecord {
  int64_t texts_processed = 0;
  int64_t determinable_texts = 0;
  int64_t indeterminable_texts = 0;
  int64_t engine_errored_texts = 0;
  int64_t failed_texts = 0;
  std::optional<Ratio> failed_text_rate;
  std::vector<EngineMetrics> engines;
  std::optional<Ratio> pct_transformed_failed_text;
  std::optional<Ratio> pct_transformed_failed_cases;

  // Supplementary, not among the ten.
  int64_t iteration1_failed_texts = 0;
  int64_t transformed_determinable_texts = 0;
  std::optional<Ratio> boost_pct;

  friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

// failed / total over determinable transformed texts. Throws
// PreconditionError if failed > total or either is negative.
std::optional<Ratio> PctTransformedFailedText(int64_t failed_transformed, int64_t total_transformed);

// failed / total over the ASR outputs for determinable transformed texts.
std::optional<Ratio> PctTransformedFailedCases(int64_t failed_outputs, int64_t total_outputs);

// `engine_names` fixes the order of the per-engine entries.
MetricsRecord ComputeMetrics(std::span<const CaseRecord> records, std::span<const std::string> engine_names);

}  // namespace asrdiff

#endif  // ASRDIFF_METRICS_H_
