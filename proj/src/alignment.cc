#include "asrdiff/alignment.h"

#include <cstdio>

#include "asrdiff/errors.h"

namespace asrdiff {

const char* EditKindName(EditKind kind) {
  switch (kind) {
    case EditKind::kMatch:
      return "MATCH";
    case EditKind::kSubstitute:
      return "SUBSTITUTE";
    case EditKind::kDelete:
      return "DELETE";
    case EditKind::kInsert:
      return "INSERT";
  }
  return "?";
}

int WordAlignment::Count(EditKind kind) const {
  int n = 0;
  for (const auto& op : ops) n += op.kind == kind ? 1 : 0;
  return n;
}

WordAlignment WordEditDistance(std::span<const std::string> ref, std::span<const std::string> hyp) {
  return Align<std::string>(ref, hyp);
}

Ratio WordErrorRate(std::span<const std::string> ref, std::span<const std::string> hyp) {
  if (ref.empty()) throw PreconditionError("word error rate is undefined for an empty reference");
  return Ratio{EditDistance<std::string>(ref, hyp), static_cast<int64_t>(ref.size())};
}

std::string Ratio::ToString() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value());
  return buf;
}

}  // namespace asrdiff
