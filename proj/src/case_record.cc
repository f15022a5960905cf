#include "asrdiff/case_record.h"

#include <array>

#include "asrdiff/errors.h"

namespace asrdiff {

namespace {

constexpr std::array<std::pair<TransformMethod, const char*>, 5> kMethods = {{
    {TransformMethod::kHomophone, "homophone"},
    {TransformMethod::kAugmentation, "augmentation"},
    {TransformMethod::kAdjacentDeletion, "adjacent_deletion"},
    {TransformMethod::kPlurality, "plurality"},
    {TransformMethod::kTense, "tense"},
}};

}  // namespace

const char* TransformMethodName(TransformMethod method) {
  for (const auto& [m, name] : kMethods) {
    if (m == method) return name;
  }
  return "?";
}

std::vector<std::string> TransformMethodNames() {
  std::vector<std::string> names;
  for (const auto& [m, name] : kMethods) names.emplace_back(name);
  return names;
}

TransformMethod ParseTransformMethod(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '-') c = '_';
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    key.push_back(c);
  }
  for (const auto& [m, n] : kMethods) {
    if (key == n) return m;
  }
  std::string valid;
  for (const auto& n : TransformMethodNames()) valid += (valid.empty() ? "" : ", ") + n;
  throw ConfigError("unknown transform \"" + std::string(name) + "\" (valid: " + valid + ")");
}

const char* CaseStatusName(CaseStatus status) {
  switch (status) {
    case CaseStatus::kDeterminable:
      return "DETERMINABLE";
    case CaseStatus::kIndeterminable:
      return "INDETERMINABLE";
    case CaseStatus::kEngineErrored:
      return "ENGINE_ERRORED";
  }
  return "?";
}

CaseStatus ParseCaseStatus(std::string_view name) {
  for (auto s : {CaseStatus::kDeterminable, CaseStatus::kIndeterminable, CaseStatus::kEngineErrored}) {
    if (name == CaseStatusName(s)) return s;
  }
  throw ParseError("unknown case status \"" + std::string(name) + "\"");
}

CrossReference CrossReferenceVerdicts(std::span<const TranscriptionVerdict> verdicts) {
  if (verdicts.size() < 2) {
    throw ConfigError("cross-referencing needs at least two ASR engines, got " + std::to_string(verdicts.size()));
  }
  CrossReference result;
  int usable = 0;
  bool any_correct = false;
  for (const auto& v : verdicts) {
    if (v.errored()) continue;
    ++usable;
    any_correct = any_correct || v.correct;
  }
  if (usable < 2) {
    result.status = CaseStatus::kEngineErrored;
    return result;
  }
  if (!any_correct) {
    result.status = CaseStatus::kIndeterminable;
    return result;
  }
  result.status = CaseStatus::kDeterminable;
  for (const auto& v : verdicts) {
    if (!v.errored() && !v.correct) result.failed_engines.insert(v.engine_name);
  }
  result.failed_text = !result.failed_engines.empty();
  return result;
}

}  // namespace asrdiff
