#include "asrdiff/phonetics.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <functional>
#include <sstream>

#include "asrdiff/alignment.h"
#include "asrdiff/errors.h"

namespace asrdiff {

namespace {

constexpr std::array<std::string_view, 39> kArpabet = {
    "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH", "EH", "ER", "EY",
    "F",  "G",  "HH", "IH", "IY", "JH", "K",  "L",  "M",  "N",  "NG", "OW", "OY",
    "P",  "R",  "S",  "SH", "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"};

std::string Lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

[[noreturn]] void Fail(std::string_view source, int line_no, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line_no << ": " << what;
  throw ParseError(msg.str());
}

}  // namespace

bool IsArpabetPhoneme(std::string_view symbol) {
  return std::find(kArpabet.begin(), kArpabet.end(), symbol) != kArpabet.end();
}

size_t PronouncingDict::PronunciationHash::operator()(const Pronunciation& p) const {
  size_t h = 1469598103934665603ull;
  for (const auto& ph : p) {
    h ^= std::hash<std::string>{}(ph);
    h *= 1099511628211ull;
  }
  return h;
}

PronouncingDict PronouncingDict::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pronouncing dictionary " + path.string());
  return Parse(in, path.string());
}

PronouncingDict PronouncingDict::Parse(std::istream& in, std::string_view source_name) {
  PronouncingDict dict;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.starts_with(";;;")) continue;

    std::istringstream fields(line);
    std::string head;
    fields >> head;
    if (head.empty()) continue;  // whitespace-only line

    std::string word = head;
    if (word.back() == ')') {
      const auto open = word.rfind('(');
      const std::string variant = open == std::string::npos ? "" : word.substr(open + 1, word.size() - open - 2);
      if (variant.empty() || !std::all_of(variant.begin(), variant.end(), ::isdigit)) {
        Fail(source_name, line_no, "bad alternate marker in \"" + head + "\"");
      }
      word.resize(open);
    }
    if (word.empty()) Fail(source_name, line_no, "missing word");

    Pronunciation pron;
    std::string symbol;
    while (fields >> symbol) {
      if (symbol.starts_with("#")) break;  // trailing comment in newer releases
      while (!symbol.empty() && symbol.back() >= '0' && symbol.back() <= '2') symbol.pop_back();
      if (!IsArpabetPhoneme(symbol)) Fail(source_name, line_no, "unknown phoneme \"" + symbol + "\"");
      pron.push_back(symbol);
    }
    if (pron.empty()) Fail(source_name, line_no, "no phonemes for \"" + head + "\"");

    word = Lower(word);
    auto& prons = dict.entries_[word];
    if (std::find(prons.begin(), prons.end(), pron) == prons.end()) prons.push_back(std::move(pron));
  }
  if (dict.entries_.empty()) throw ParseError(std::string(source_name) + ": dictionary is empty");

  dict.sorted_words_.reserve(dict.entries_.size());
  for (const auto& [word, prons] : dict.entries_) {
    dict.sorted_words_.push_back(word);
  }
  std::sort(dict.sorted_words_.begin(), dict.sorted_words_.end());
  for (const auto& word : dict.sorted_words_) {
    for (const auto& p : dict.entries_.at(word)) dict.by_pronunciation_[p].push_back(word);
  }
  return dict;
}

const std::vector<Pronunciation>* PronouncingDict::Find(std::string_view word) const {
  auto it = entries_.find(Lower(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> PronouncingDict::Homophones(std::string_view word) const {
  const std::string key = Lower(word);
  const auto* prons = Find(key);
  if (prons == nullptr) throw PreconditionError("word not in pronouncing dictionary: \"" + key + "\"");
  std::vector<std::string> out;
  for (const auto& p : *prons) {
    for (const auto& other : by_pronunciation_.at(p)) {
      if (other != key) out.push_back(other);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const std::vector<std::string>& PronouncingDict::WordsWithPronunciation(const Pronunciation& p) const {
  static const std::vector<std::string> kNone;
  auto it = by_pronunciation_.find(p);
  return it == by_pronunciation_.end() ? kNone : it->second;
}

std::optional<Pronunciation> PhonemesOf(const PronouncingDict& dict, std::string_view word) {
  if (word.empty()) return std::nullopt;
  const auto* prons = dict.Find(word);
  if (prons == nullptr) return std::nullopt;
  return prons->front();
}

std::vector<std::string> HomophonesOf(const PronouncingDict& dict, std::string_view word) {
  return dict.Homophones(word);
}

int PhonemeEditDistance(const Pronunciation& p, const Pronunciation& q) {
  return EditDistance<Phoneme>(p, q);
}

int64_t PhonemeHistogram::Total() const {
  int64_t total = 0;
  for (const auto& [ph, n] : counts) total += n;
  return total;
}

std::vector<std::pair<Phoneme, int64_t>> PhonemeHistogram::Ranked() const {
  std::vector<std::pair<Phoneme, int64_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return ranked;
}

PhonemeHistogram PhonemeFrequency(const PronouncingDict& dict, const std::vector<std::string>& term_words) {
  PhonemeHistogram hist;
  for (const auto& word : term_words) {
    auto pron = PhonemesOf(dict, word);
    if (!pron) {
      ++hist.oov_terms;
      continue;
    }
    for (const auto& ph : *pron) ++hist.counts[ph];
  }
  return hist;
}

}  // namespace asrdiff
