#include "asrdiff/metrics.h"

#include "asrdiff/alignment.h"
#include "asrdiff/errors.h"

namespace asrdiff {

namespace {

std::optional<Ratio> MaybeRatio(int64_t num, int64_t den) {
  if (den == 0) return std::nullopt;
  return Ratio{num, den};
}

std::optional<Ratio> CheckedRatio(int64_t num, int64_t den, const char* what) {
  if (num < 0 || den < 0 || num > den) {
    throw PreconditionError(std::string(what) + ": numerator " + std::to_string(num) +
                            " must lie in [0, denominator " + std::to_string(den) + "]");
  }
  return MaybeRatio(num, den);
}

}  // namespace

std::optional<Ratio> PctTransformedFailedText(int64_t failed_transformed, int64_t total_transformed) {
  return CheckedRatio(failed_transformed, total_transformed, "pct_transformed_failed_text");
}

std::optional<Ratio> PctTransformedFailedCases(int64_t failed_outputs, int64_t total_outputs) {
  return CheckedRatio(failed_outputs, total_outputs, "pct_transformed_failed_cases");
}

MetricsRecord ComputeMetrics(std::span<const CaseRecord> records, std::span<const std::string> engine_names) {
  MetricsRecord m;
  struct Tally {
    int64_t outputs = 0;
    int64_t failed = 0;
    int64_t edits = 0;
    int64_t words = 0;
  };
  std::vector<Tally> tallies(engine_names.size());
  int64_t transformed_failed = 0;
  int64_t transformed_outputs = 0;
  int64_t transformed_failed_outputs = 0;
  bool any_transformed = false;

  for (const auto& r : records) {
    ++m.texts_processed;
    const bool transformed = r.test_case.iteration == 2;
    any_transformed = any_transformed || transformed;
    switch (r.status) {
      case CaseStatus::kEngineErrored:
        ++m.engine_errored_texts;
        continue;
      case CaseStatus::kIndeterminable:
        ++m.indeterminable_texts;
        continue;
      case CaseStatus::kDeterminable:
        ++m.determinable_texts;
        break;
    }
    if (transformed) ++m.transformed_determinable_texts;
    if (r.failed_text) {
      ++m.failed_texts;
      if (transformed) {
        ++transformed_failed;
      } else {
        ++m.iteration1_failed_texts;
      }
    }
    const auto ref = Tokenize(r.test_case.text);
    for (const auto& v : r.verdicts) {
      if (v.errored()) continue;
      size_t e = 0;
      while (e < engine_names.size() && engine_names[e] != v.engine_name) ++e;
      if (e == engine_names.size()) continue;
      Tally& t = tallies[e];
      ++t.outputs;
      t.failed += v.correct ? 0 : 1;
      t.edits += EditDistance<std::string>(ref, Tokenize(v.transcript));
      t.words += static_cast<int64_t>(ref.size());
      if (transformed) {
        ++transformed_outputs;
        transformed_failed_outputs += v.correct ? 0 : 1;
      }
    }
  }

  m.failed_text_rate = MaybeRatio(m.failed_texts, m.determinable_texts);
  for (size_t e = 0; e < engine_names.size(); ++e) {
    const Tally& t = tallies[e];
    m.engines.push_back({engine_names[e], t.outputs, t.failed, MaybeRatio(t.failed, t.outputs),
                         MaybeRatio(t.edits, t.words)});
  }
  if (any_transformed) {
    m.pct_transformed_failed_text = PctTransformedFailedText(transformed_failed, m.transformed_determinable_texts);
    m.pct_transformed_failed_cases = PctTransformedFailedCases(transformed_failed_outputs, transformed_outputs);
    m.boost_pct = MaybeRatio(m.failed_texts - m.iteration1_failed_texts, m.iteration1_failed_texts);
  }
  return m;
}

}  // namespace asrdiff
