#include "asrdiff/transforms.h"

#include <fstream>

#include "asrdiff/errors.h"

namespace asrdiff {

namespace fs = std::filesystem;

namespace {

bool IsVowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool IsSingleWord(std::string_view w) { return !w.empty() && IsNormalized(w) && w.find(' ') == std::string_view::npos; }

std::vector<std::pair<std::string, std::string>> LoadPairs(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected two tab-separated columns");
    }
    auto a = NormalizeText(line.substr(0, tab)).text.value();
    auto b = NormalizeText(line.substr(tab + 1)).text.value();
    if (!IsSingleWord(a) || !IsSingleWord(b)) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": each column must be one word");
    }
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return pairs;
}

// Base forms a third-person singular verb could come from, most specific first.
std::vector<std::string> ThirdPersonBases(std::string_view w) {
  std::vector<std::string> bases;
  if (w.size() > 3 && w.ends_with("ies")) bases.push_back(std::string(w.substr(0, w.size() - 3)) + "y");
  if (w.size() > 2 && w.ends_with("es")) bases.emplace_back(w.substr(0, w.size() - 2));
  if (w.size() > 1 && w.ends_with("s") && !w.ends_with("ss")) bases.emplace_back(w.substr(0, w.size() - 1));
  return bases;
}

std::vector<std::string> PluralToSingularCandidates(std::string_view w) {
  std::vector<std::string> out;
  if (w.size() > 3 && w.ends_with("ies")) out.push_back(std::string(w.substr(0, w.size() - 3)) + "y");
  if (w.size() > 3 && (w.ends_with("ses") || w.ends_with("xes") || w.ends_with("zes") || w.ends_with("ches") ||
                       w.ends_with("shes"))) {
    out.emplace_back(w.substr(0, w.size() - 2));
  }
  if (w.size() > 1 && w.ends_with("s") && !w.ends_with("ss")) out.emplace_back(w.substr(0, w.size() - 1));
  return out;
}

TransformedText MakeVariant(const TestCase& parent, TransformMethod method, const ErrorTerm& term,
                            const std::vector<std::string>& tokens) {
  return {JoinTokens(tokens), parent.case_id, method, term};
}

// Checks that the term points at its word in the parent and returns the tokens.
std::vector<std::string> ParentTokens(const TestCase& parent, const ErrorTerm& term) {
  auto tokens = Tokenize(parent.text);
  if (term.ref_index < 0 || static_cast<size_t>(term.ref_index) >= tokens.size() ||
      tokens[static_cast<size_t>(term.ref_index)] != term.word) {
    throw PreconditionError("error term \"" + term.word + "\"@" + std::to_string(term.ref_index) +
                            " does not match parent text \"" + parent.text.value() + "\"");
  }
  return tokens;
}

void PushIfNew(std::vector<TransformedText>& out, const TestCase& parent, TransformedText variant) {
  if (variant.text.empty() || variant.text == parent.text) return;
  for (const auto& v : out) {
    if (v.text == variant.text) return;
  }
  out.push_back(std::move(variant));
}

}  // namespace

std::vector<ErrorTerm> ExtractErrorTerms(const CaseRecord& record) {
  if (!record.failed_text) {
    throw PreconditionError("case " + record.test_case.case_id + " is not a failed text");
  }
  const auto ref = Tokenize(record.test_case.text);
  std::vector<ErrorTerm> terms;
  for (const auto& verdict : record.verdicts) {
    if (!record.failed_engines.contains(verdict.engine_name)) continue;
    const auto hyp = Tokenize(verdict.transcript);
    const auto alignment = WordEditDistance(ref, hyp);
    for (const auto& op : alignment.ops) {
      if (op.kind != EditKind::kSubstitute && op.kind != EditKind::kDelete) continue;
      terms.push_back({ref[static_cast<size_t>(op.ref_index)], op.ref_index, op.kind, verdict.engine_name});
    }
  }
  return terms;
}

PhonemeHistogram PhonemeFrequency(const PronouncingDict& dict, std::span<const ErrorTerm> terms) {
  std::vector<std::string> words;
  words.reserve(terms.size());
  for (const auto& t : terms) words.push_back(t.word);
  return PhonemeFrequency(dict, words);
}

// --- VerbTable ---------------------------------------------------------------

VerbTable VerbTable::Load(const fs::path& irregular_tsv, const fs::path& regular_list) {
  std::ifstream in(regular_list);
  if (!in) throw IoError("cannot open " + regular_list.string());
  std::vector<std::string> regular;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto w = NormalizeText(line).text.value();
    if (w.empty() || line.front() == '#') continue;
    if (!IsSingleWord(w)) {
      throw ParseError(regular_list.string() + ":" + std::to_string(line_no) + ": expected one verb per line");
    }
    regular.push_back(std::move(w));
  }
  return FromEntries(LoadPairs(irregular_tsv), std::move(regular));
}

VerbTable VerbTable::FromEntries(std::vector<std::pair<std::string, std::string>> irregular,
                                 std::vector<std::string> regular) {
  VerbTable table;
  for (auto& [present, past] : irregular) {
    table.irregular_past_.insert(past);
    table.irregular_.emplace(std::move(present), std::move(past));
  }
  for (auto& base : regular) {
    table.regular_past_.insert(RegularPast(base));
    table.regular_.insert(std::move(base));
  }
  return table;
}

std::string VerbTable::RegularPast(std::string_view base) {
  std::string w(base);
  const size_t n = w.size();
  if (n == 0) return w;
  if (w.back() == 'e') return w + "d";
  if (n >= 2 && w.back() == 'y' && !IsVowel(w[n - 2])) return w.substr(0, n - 1) + "ied";
  if (n >= 3 && !IsVowel(w[n - 1]) && w[n - 1] != 'w' && w[n - 1] != 'x' && w[n - 1] != 'y' && IsVowel(w[n - 2]) &&
      !IsVowel(w[n - 3])) {
    int vowel_groups = 0;
    for (size_t i = 0; i < n; ++i) {
      if (IsVowel(w[i]) && (i == 0 || !IsVowel(w[i - 1]))) ++vowel_groups;
    }
    if (vowel_groups == 1) return w + w.back() + "ed";
  }
  return w + "ed";
}

std::optional<std::string> VerbTable::PastOf(std::string_view word) const {
  const std::string w(word);
  if (auto it = irregular_.find(w); it != irregular_.end()) return it->second;
  if (irregular_past_.contains(w)) return w;
  if (regular_.contains(w)) return RegularPast(w);
  if (regular_past_.contains(w)) return w;
  for (const auto& base : ThirdPersonBases(w)) {
    if (auto it = irregular_.find(base); it != irregular_.end()) return it->second;
    if (regular_.contains(base)) return RegularPast(base);
  }
  return std::nullopt;
}

// --- NounTable ---------------------------------------------------------------

NounTable NounTable::Load(const fs::path& irregular_tsv) { return FromEntries(LoadPairs(irregular_tsv)); }

NounTable NounTable::FromEntries(std::vector<std::pair<std::string, std::string>> irregular) {
  NounTable table;
  for (auto& [singular, plural] : irregular) {
    table.to_plural_.emplace(singular, plural);
    table.to_singular_.emplace(std::move(plural), std::move(singular));
  }
  return table;
}

bool NounTable::InTable(std::string_view word) const {
  const std::string w(word);
  return to_plural_.contains(w) || to_singular_.contains(w);
}

std::string NounTable::RegularPlural(std::string_view singular) {
  std::string w(singular);
  const size_t n = w.size();
  if (n == 0) return w;
  if (w.ends_with("s") || w.ends_with("x") || w.ends_with("z") || w.ends_with("ch") || w.ends_with("sh")) {
    return w + "es";
  }
  if (n >= 2 && w.back() == 'y' && !IsVowel(w[n - 2])) return w.substr(0, n - 1) + "ies";
  return w + "s";
}

std::string NounTable::Toggle(std::string_view word, const PronouncingDict& dict) const {
  const std::string w(word);
  if (auto it = to_plural_.find(w); it != to_plural_.end()) return it->second;
  if (auto it = to_singular_.find(w); it != to_singular_.end()) return it->second;
  for (const auto& singular : PluralToSingularCandidates(w)) {
    if (dict.Contains(singular)) return singular;
  }
  return RegularPlural(w);
}

// --- Sentences ---------------------------------------------------------------

OfflineSentenceProvider::OfflineSentenceProvider(std::vector<std::string> sentences, bool carrier_fallback)
    : carrier_fallback_(carrier_fallback) {
  for (const auto& raw : sentences) {
    const auto norm = NormalizeText(raw);
    if (norm.unusable() || norm.lossy) continue;
    for (const auto& token : Tokenize(norm.text)) first_sentence_.try_emplace(token, norm.text.value());
  }
}

OfflineSentenceProvider OfflineSentenceProvider::Load(const fs::path& path, bool carrier_fallback) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sentence corpus " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return OfflineSentenceProvider(std::move(lines), carrier_fallback);
}

std::optional<std::string> OfflineSentenceProvider::SentenceContaining(std::string_view word) const {
  if (auto it = first_sentence_.find(std::string(word)); it != first_sentence_.end()) return it->second;
  if (carrier_fallback_ && IsSingleWord(word)) return "please say the word " + std::string(word) + " again";
  return std::nullopt;
}

// --- Transforms --------------------------------------------------------------

std::vector<TransformedText> TransformHomophone(const TestCase& parent, const ErrorTerm& term,
                                                const PronouncingDict& dict, const SentenceProvider& sentences) {
  std::vector<TransformedText> out;
  for (const auto& homophone : dict.Homophones(term.word)) {
    if (!IsSingleWord(homophone)) continue;
    const auto sentence = sentences.SentenceContaining(homophone);
    if (!sentence) continue;
    const auto norm = NormalizeText(*sentence);
    if (norm.unusable() || norm.lossy) continue;
    PushIfNew(out, parent, {norm.text, parent.case_id, TransformMethod::kHomophone, term});
  }
  return out;
}

std::vector<TransformedText> TransformTense(const TestCase& parent, const ErrorTerm& term, const VerbTable& verbs) {
  auto tokens = ParentTokens(parent, term);
  std::optional<size_t> at;
  std::optional<std::string> past = verbs.PastOf(term.word);
  if (past) {
    at = static_cast<size_t>(term.ref_index);
  } else {
    for (size_t i = 0; i < tokens.size() && !past; ++i) {
      past = verbs.PastOf(tokens[i]);
      if (past) at = i;
    }
  }
  std::vector<TransformedText> out;
  if (!past || tokens[*at] == *past) return out;
  tokens[*at] = *past;
  PushIfNew(out, parent, MakeVariant(parent, TransformMethod::kTense, term, tokens));
  return out;
}

std::vector<TransformedText> TransformPlurality(const TestCase& parent, const ErrorTerm& term,
                                                const NounTable& nouns, const PronouncingDict& dict) {
  auto tokens = ParentTokens(parent, term);
  auto toggle_at = [&](size_t i) -> std::optional<std::string> {
    auto toggled = nouns.Toggle(tokens[i], dict);
    if (toggled == tokens[i] || !dict.Contains(toggled)) return std::nullopt;
    return toggled;
  };
  std::optional<size_t> at;
  std::optional<std::string> toggled = toggle_at(static_cast<size_t>(term.ref_index));
  if (toggled) {
    at = static_cast<size_t>(term.ref_index);
  } else {
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (static_cast<int>(i) == term.ref_index || !nouns.InTable(tokens[i])) continue;
      if ((toggled = toggle_at(i))) {
        at = i;
        break;
      }
    }
  }
  std::vector<TransformedText> out;
  if (!toggled) return out;
  tokens[*at] = *toggled;
  PushIfNew(out, parent, MakeVariant(parent, TransformMethod::kPlurality, term, tokens));
  return out;
}

std::vector<TransformedText> TransformAdjacentDeletion(const TestCase& parent, const ErrorTerm& term) {
  const auto tokens = ParentTokens(parent, term);
  std::vector<TransformedText> out;
  if (tokens.size() < 2) return out;
  const auto i = static_cast<size_t>(term.ref_index);
  for (const size_t victim : {i - 1, i + 1}) {
    // i - 1 wraps to SIZE_MAX when the term is first.
    if (victim >= tokens.size()) continue;
    auto shorter = tokens;
    shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(victim));
    PushIfNew(out, parent, MakeVariant(parent, TransformMethod::kAdjacentDeletion, term, shorter));
  }
  return out;
}

std::vector<TransformedText> TransformAugmentation(const TestCase& parent, const ErrorTerm& term,
                                                   const PronouncingDict& dict, int limit) {
  std::vector<TransformedText> out;
  const auto source = PhonemesOf(dict, term.word);
  if (!source || limit <= 0) return out;
  auto tokens = ParentTokens(parent, term);
  for (const auto& candidate : dict.words()) {
    if (static_cast<int>(out.size()) >= limit) break;
    if (candidate == term.word || !IsSingleWord(candidate)) continue;
    const auto& pron = dict.Find(candidate)->front();
    // Length differs by more than one: distance cannot be 1.
    if (pron.size() + 1 < source->size() || source->size() + 1 < pron.size()) continue;
    if (PhonemeEditDistance(*source, pron) != 1) continue;
    tokens[static_cast<size_t>(term.ref_index)] = candidate;
    PushIfNew(out, parent, MakeVariant(parent, TransformMethod::kAugmentation, term, tokens));
  }
  return out;
}

std::vector<TransformedText> ApplyTransform(TransformMethod method, std::span<const CaseRecord> failed_records,
                                            const TransformResources& resources,
                                            const std::set<NormalizedText>& existing) {
  auto need = [&](bool present, const char* what) {
    if (!present) {
      throw ConfigError(std::string(TransformMethodName(method)) + " transform needs " + what);
    }
  };
  switch (method) {
    case TransformMethod::kHomophone:
      need(resources.dict && resources.sentences, "a dictionary and a sentence provider");
      break;
    case TransformMethod::kAugmentation:
      need(resources.dict != nullptr, "a dictionary");
      break;
    case TransformMethod::kPlurality:
      need(resources.dict && resources.nouns, "a dictionary and a noun table");
      break;
    case TransformMethod::kTense:
      need(resources.verbs != nullptr, "a verb table");
      break;
    case TransformMethod::kAdjacentDeletion:
      break;
  }

  std::vector<TransformedText> out;
  std::set<NormalizedText> seen = existing;
  for (const auto& record : failed_records) {
    for (const auto& term : ExtractErrorTerms(record)) {
      const TestCase& parent = record.test_case;
      std::vector<TransformedText> variants;
      switch (method) {
        case TransformMethod::kHomophone:
          if (resources.dict->Contains(term.word)) {
            variants = TransformHomophone(parent, term, *resources.dict, *resources.sentences);
          }
          break;
        case TransformMethod::kAugmentation:
          variants = TransformAugmentation(parent, term, *resources.dict, resources.augmentation_limit);
          break;
        case TransformMethod::kAdjacentDeletion:
          variants = TransformAdjacentDeletion(parent, term);
          break;
        case TransformMethod::kPlurality:
          variants = TransformPlurality(parent, term, *resources.nouns, *resources.dict);
          break;
        case TransformMethod::kTense:
          variants = TransformTense(parent, term, *resources.verbs);
          break;
      }
      for (auto& v : variants) {
        if (seen.insert(v.text).second) out.push_back(std::move(v));
      }
    }
  }
  return out;
}

}  // namespace asrdiff
