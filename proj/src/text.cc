#include "asrdiff/text.h"

#include <cctype>

#include "asrdiff/errors.h"

namespace asrdiff {

namespace {

bool IsWordChar(char c) { return (c >= 'a' && c <= 'z') || c == '\''; }

}  // namespace

NormalizedText NormalizedText::FromNormalized(std::string value) {
  if (!IsNormalized(value)) {
    throw PreconditionError("text is not normalized: \"" + value + "\"");
  }
  return NormalizedText(std::move(value));
}

bool IsNormalized(std::string_view s) {
  if (s.empty()) return true;
  if (s.front() == ' ' || s.back() == ' ') return false;
  char prev = '\0';
  for (char c : s) {
    if (c == ' ') {
      if (prev == ' ') return false;
    } else if (!IsWordChar(c)) {
      return false;
    }
    prev = c;
  }
  return true;
}

NormalizeResult NormalizeText(std::string_view raw) {
  NormalizeResult result;
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (unsigned char uc : raw) {
    const char c = static_cast<char>(std::tolower(uc));
    if (uc < 0x80 && IsWordChar(c)) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
      continue;
    }
    if (uc < 0x80 && std::isdigit(uc)) result.lossy = true;
    pending_space = true;
  }
  result.text = NormalizedText::FromNormalized(std::move(out));
  return result;
}

std::vector<std::string> Tokenize(const NormalizedText& text) {
  std::vector<std::string> tokens;
  const std::string& s = text.value();
  size_t start = 0;
  while (start < s.size()) {
    size_t end = s.find(' ', start);
    if (end == std::string::npos) end = s.size();
    tokens.emplace_back(s.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

NormalizedText JoinTokens(const std::vector<std::string>& tokens) {
  std::string joined;
  for (const auto& t : tokens) {
    if (t.empty()) continue;
    if (!joined.empty()) joined.push_back(' ');
    joined += t;
  }
  return NormalizedText::FromNormalized(std::move(joined));
}

bool IsCorrect(const NormalizedText& reference, const NormalizedText& hypothesis) {
  return reference == hypothesis;
}

TranscriptionVerdict JudgeTranscript(std::string engine_name, const NormalizedText& reference,
                                     std::string_view raw_transcript) {
  TranscriptionVerdict verdict;
  verdict.engine_name = std::move(engine_name);
  verdict.transcript = NormalizeText(raw_transcript).text;
  verdict.correct = IsCorrect(reference, verdict.transcript);
  return verdict;
}

}  // namespace asrdiff
