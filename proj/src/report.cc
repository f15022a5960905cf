#include "asrdiff/report.h"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "asrdiff/alignment.h"
#include "asrdiff/errors.h"

namespace asrdiff {

namespace fs = std::filesystem;
using nlohmann::json;

// --- CSV ---------------------------------------------------------------------

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string CsvRow(const std::vector<std::string>& fields) {
  std::string row;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) row.push_back(',');
    row += CsvField(fields[i]);
  }
  row.push_back('\n');
  return row;
}

std::vector<std::vector<std::string>> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        field_started = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        field_started = false;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (quoted) throw ParseError("CSV ends inside a quoted field");
  if (field_started || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<std::string>> ReadCsv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream body;
  body << in.rdbuf();
  return ParseCsv(body.str());
}

std::string FormatRatio(const std::optional<Ratio>& r) { return r ? r->ToString() : "N/A"; }

namespace {

std::string LineageField(const Lineage& lineage) {
  return lineage.original() ? "ORIGINAL" : "TRANSFORMED:" + lineage.parent_case_id;
}

}  // namespace

std::string RenderReportCsv(const std::vector<CaseRecord>& records) {
  std::string out = CsvRow(kReportCsvHeader);
  for (const auto& r : records) {
    const auto ref = Tokenize(r.test_case.text);
    for (const auto& v : r.verdicts) {
      std::string correct = "error";
      std::string wer;
      if (!v.errored()) {
        correct = v.correct ? "true" : "false";
        wer = WordErrorRate(ref, Tokenize(v.transcript)).ToString();
      }
      out += CsvRow({r.test_case.case_id, std::to_string(r.test_case.iteration), LineageField(r.test_case.lineage),
                     r.test_case.lineage.method ? TransformMethodName(*r.test_case.lineage.method) : "",
                     v.engine_name, r.test_case.text.value(), v.transcript.value(), correct, wer,
                     CaseStatusName(r.status)});
    }
  }
  return out;
}

std::string RenderMetricsCsv(const MetricsRecord& m, const PhonemeHistogram& phonemes) {
  std::string out = CsvRow({"metric", "value"});
  auto row = [&out](const std::string& name, const std::string& value) { out += CsvRow({name, value}); };
  row("texts_processed", std::to_string(m.texts_processed));
  row("determinable_texts", std::to_string(m.determinable_texts));
  row("indeterminable_texts", std::to_string(m.indeterminable_texts));
  row("engine_errored_texts", std::to_string(m.engine_errored_texts));
  row("failed_texts", std::to_string(m.failed_texts));
  row("failed_text_rate", FormatRatio(m.failed_text_rate));
  for (const auto& e : m.engines) row("failed_case_count." + e.engine, std::to_string(e.failed_case_count));
  for (const auto& e : m.engines) row("failure_rate." + e.engine, FormatRatio(e.failure_rate));
  for (const auto& e : m.engines) row("mean_wer." + e.engine, FormatRatio(e.mean_wer));
  row("pct_transformed_failed_text", FormatRatio(m.pct_transformed_failed_text));
  row("pct_transformed_failed_cases", FormatRatio(m.pct_transformed_failed_cases));
  row("iteration1_failed_texts", std::to_string(m.iteration1_failed_texts));
  row("transformed_determinable_texts", std::to_string(m.transformed_determinable_texts));
  row("boost_pct", FormatRatio(m.boost_pct));
  row("oov_error_terms", std::to_string(phonemes.oov_terms));
  return out;
}

std::string RenderPhonemesCsv(const PhonemeHistogram& phonemes) {
  std::string out = CsvRow({"phoneme", "count"});
  for (const auto& [ph, n] : phonemes.Ranked()) out += CsvRow({ph, std::to_string(n)});
  return out;
}

std::string RenderPhonemeSvg(const PhonemeHistogram& phonemes, size_t top_n) {
  auto ranked = phonemes.Ranked();
  if (ranked.size() > top_n) ranked.resize(top_n);
  constexpr int kBar = 30;
  constexpr int kGap = 10;
  constexpr int kLeft = 50;
  constexpr int kTop = 40;
  constexpr int kPlotHeight = 300;
  const int width = kLeft + static_cast<int>(std::max<size_t>(ranked.size(), 1)) * (kBar + kGap) + kGap;
  const int height = kTop + kPlotHeight + 50;
  const int64_t max_count = ranked.empty() ? 0 : ranked.front().second;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<title>Phonemes in error-inducing terms</title>\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
      << "Phoneme frequency in error-inducing terms</text>\n";
  const int baseline = kTop + kPlotHeight;
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << baseline << "\" x2=\"" << width - kGap << "\" y2=\"" << baseline
      << "\" stroke=\"black\"/>\n";
  for (size_t i = 0; i < ranked.size(); ++i) {
    const auto& [ph, count] = ranked[i];
    const int x = kLeft + kGap + static_cast<int>(i) * (kBar + kGap);
    const int h = max_count == 0 ? 0 : static_cast<int>(count * kPlotHeight / max_count);
    svg << "<rect class=\"bar\" x=\"" << x << "\" y=\"" << baseline - h << "\" width=\"" << kBar << "\" height=\"" << h
        << "\" fill=\"steelblue\"><title>" << ph << ": " << count << "</title></rect>\n";
    svg << "<text x=\"" << x + kBar / 2 << "\" y=\"" << baseline - h - 4
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << count << "</text>\n";
    svg << "<text x=\"" << x + kBar / 2 << "\" y=\"" << baseline + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << ph << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void WriteTextFile(const fs::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("short write to " + path.string());
}

void EmitReport(const MetricsRecord& metrics, const std::vector<CaseRecord>& records,
                const PhonemeHistogram& phonemes, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  WriteTextFile(out_dir / "report.csv", RenderReportCsv(records));
  WriteTextFile(out_dir / "metrics.csv", RenderMetricsCsv(metrics, phonemes));
  WriteTextFile(out_dir / "phonemes.csv", RenderPhonemesCsv(phonemes));
  WriteTextFile(out_dir / "phonemes.svg", RenderPhonemeSvg(phonemes));
}

// --- run.json ----------------------------------------------------------------

namespace {

json RatioJson(const std::optional<Ratio>& r) {
  if (!r) return nullptr;
  return {{"num", r->num}, {"den", r->den}, {"value", r->value()}};
}

std::optional<Ratio> RatioFrom(const json& j) {
  if (j.is_null()) return std::nullopt;
  return Ratio{j.at("num").get<int64_t>(), j.at("den").get<int64_t>()};
}

json SpecJson(const EngineSpec& s) {
  return {{"name", s.name}, {"kind", EngineKindName(s.kind)}, {"launch", s.launch}, {"timeout_ms", s.timeout_ms}};
}

EngineSpec SpecFrom(const json& j) {
  EngineSpec s;
  s.name = j.at("name").get<std::string>();
  s.kind = j.at("kind").get<std::string>() == "tts" ? EngineKind::kTts : EngineKind::kAsr;
  s.launch = j.at("launch").get<std::string>();
  s.timeout_ms = j.at("timeout_ms").get<int>();
  return s;
}

json OptString(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

std::optional<std::string> OptStringFrom(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>();
}

json ConfigJson(const RunConfig& c) {
  json asr = json::array();
  for (const auto& s : c.asr) asr.push_back(SpecJson(s));
  return {{"corpus", c.corpus_path.string()},
          {"output_dir", c.output_dir.string()},
          {"num_texts", c.num_texts},
          {"tts", SpecJson(c.tts)},
          {"asr", asr},
          {"transform", c.transform ? json(TransformMethodName(*c.transform)) : json(nullptr)},
          {"seed", c.seed},
          {"dict", c.dict_path.string()},
          {"resources",
           {{"verbs_irregular", c.resources.verbs_irregular.string()},
            {"verbs_regular", c.resources.verbs_regular.string()},
            {"nouns_irregular", c.resources.nouns_irregular.string()},
            {"sentences", c.resources.sentences.string()}}},
          {"augmentation_limit", c.augmentation_limit},
          {"workers", c.workers},
          {"cache_dir", c.cache_dir ? json(c.cache_dir->string()) : json(nullptr)}};
}

RunConfig ConfigFrom(const json& j) {
  RunConfig c;
  c.corpus_path = j.at("corpus").get<std::string>();
  c.output_dir = j.at("output_dir").get<std::string>();
  c.num_texts = j.at("num_texts").get<int64_t>();
  c.tts = SpecFrom(j.at("tts"));
  for (const auto& s : j.at("asr")) c.asr.push_back(SpecFrom(s));
  if (!j.at("transform").is_null()) c.transform = ParseTransformMethod(j.at("transform").get<std::string>());
  c.seed = j.at("seed").get<int64_t>();
  c.dict_path = j.at("dict").get<std::string>();
  const auto& r = j.at("resources");
  c.resources = {r.at("verbs_irregular").get<std::string>(), r.at("verbs_regular").get<std::string>(),
                 r.at("nouns_irregular").get<std::string>(), r.at("sentences").get<std::string>()};
  c.augmentation_limit = j.at("augmentation_limit").get<int>();
  c.workers = j.at("workers").get<int>();
  if (!j.at("cache_dir").is_null()) c.cache_dir = j.at("cache_dir").get<std::string>();
  return c;
}

EditKind EditKindFrom(const std::string& s) {
  for (auto k : {EditKind::kMatch, EditKind::kSubstitute, EditKind::kDelete, EditKind::kInsert}) {
    if (s == EditKindName(k)) return k;
  }
  throw ParseError("unknown edit kind \"" + s + "\"");
}

json TermJson(const ErrorTerm& t) {
  return {{"word", t.word}, {"ref_index", t.ref_index}, {"op", EditKindName(t.op)}, {"engine", t.engine_name}};
}

ErrorTerm TermFrom(const json& j) {
  return {j.at("word").get<std::string>(), j.at("ref_index").get<int>(), EditKindFrom(j.at("op").get<std::string>()),
          j.at("engine").get<std::string>()};
}

json RecordJson(const CaseRecord& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back(
        {{"engine", v.engine_name}, {"transcript", v.transcript.value()}, {"correct", v.correct}, {"error", OptString(v.error)}});
  }
  json audio = nullptr;
  if (r.audio) audio = {{"path", r.audio->path.string()}, {"source_text_id", r.audio->source_text_id}};
  json failed = json::array();
  for (const auto& e : r.failed_engines) failed.push_back(e);
  const auto& tc = r.test_case;
  return {{"case_id", tc.case_id},
          {"text", tc.text.value()},
          {"iteration", tc.iteration},
          {"parent_case_id", tc.lineage.original() ? json(nullptr) : json(tc.lineage.parent_case_id)},
          {"method", tc.lineage.method ? json(TransformMethodName(*tc.lineage.method)) : json(nullptr)},
          {"audio", audio},
          {"verdicts", verdicts},
          {"status", CaseStatusName(r.status)},
          {"failed_text", r.failed_text},
          {"failed_engines", failed},
          {"tts_error", OptString(r.tts_error)}};
}

CaseRecord RecordFrom(const json& j) {
  CaseRecord r;
  r.test_case.case_id = j.at("case_id").get<std::string>();
  r.test_case.text = NormalizedText::FromNormalized(j.at("text").get<std::string>());
  r.test_case.iteration = j.at("iteration").get<int>();
  if (!j.at("parent_case_id").is_null()) r.test_case.lineage.parent_case_id = j.at("parent_case_id").get<std::string>();
  if (!j.at("method").is_null()) r.test_case.lineage.method = ParseTransformMethod(j.at("method").get<std::string>());
  if (!j.at("audio").is_null()) {
    r.audio = AudioArtifact{j["audio"].at("path").get<std::string>(), j["audio"].at("source_text_id").get<std::string>()};
  }
  for (const auto& v : j.at("verdicts")) {
    TranscriptionVerdict verdict;
    verdict.engine_name = v.at("engine").get<std::string>();
    verdict.transcript = NormalizedText::FromNormalized(v.at("transcript").get<std::string>());
    verdict.correct = v.at("correct").get<bool>();
    verdict.error = OptStringFrom(v.at("error"));
    r.verdicts.push_back(std::move(verdict));
  }
  r.status = ParseCaseStatus(j.at("status").get<std::string>());
  r.failed_text = j.at("failed_text").get<bool>();
  for (const auto& e : j.at("failed_engines")) r.failed_engines.insert(e.get<std::string>());
  r.tts_error = OptStringFrom(j.at("tts_error"));
  return r;
}

json MetricsJson(const MetricsRecord& m) {
  json engines = json::array();
  for (const auto& e : m.engines) {
    engines.push_back({{"engine", e.engine},
                       {"outputs", e.outputs},
                       {"failed_case_count", e.failed_case_count},
                       {"failure_rate", RatioJson(e.failure_rate)},
                       {"mean_wer", RatioJson(e.mean_wer)}});
  }
  return {{"texts_processed", m.texts_processed},
          {"determinable_texts", m.determinable_texts},
          {"indeterminable_texts", m.indeterminable_texts},
          {"engine_errored_texts", m.engine_errored_texts},
          {"failed_texts", m.failed_texts},
          {"failed_text_rate", RatioJson(m.failed_text_rate)},
          {"engines", engines},
          {"pct_transformed_failed_text", RatioJson(m.pct_transformed_failed_text)},
          {"pct_transformed_failed_cases", RatioJson(m.pct_transformed_failed_cases)},
          {"iteration1_failed_texts", m.iteration1_failed_texts},
          {"transformed_determinable_texts", m.transformed_determinable_texts},
          {"boost_pct", RatioJson(m.boost_pct)}};
}

MetricsRecord MetricsFrom(const json& j) {
  MetricsRecord m;
  m.texts_processed = j.at("texts_processed").get<int64_t>();
  m.determinable_texts = j.at("determinable_texts").get<int64_t>();
  m.indeterminable_texts = j.at("indeterminable_texts").get<int64_t>();
  m.engine_errored_texts = j.at("engine_errored_texts").get<int64_t>();
  m.failed_texts = j.at("failed_texts").get<int64_t>();
  m.failed_text_rate = RatioFrom(j.at("failed_text_rate"));
  for (const auto& e : j.at("engines")) {
    m.engines.push_back({e.at("engine").get<std::string>(), e.at("outputs").get<int64_t>(),
                         e.at("failed_case_count").get<int64_t>(), RatioFrom(e.at("failure_rate")),
                         RatioFrom(e.at("mean_wer"))});
  }
  m.pct_transformed_failed_text = RatioFrom(j.at("pct_transformed_failed_text"));
  m.pct_transformed_failed_cases = RatioFrom(j.at("pct_transformed_failed_cases"));
  m.iteration1_failed_texts = j.at("iteration1_failed_texts").get<int64_t>();
  m.transformed_determinable_texts = j.at("transformed_determinable_texts").get<int64_t>();
  m.boost_pct = RatioFrom(j.at("boost_pct"));
  return m;
}

}  // namespace

std::string RunReportToJson(const RunReport& report) {
  json records = json::array();
  for (const auto& r : report.records) records.push_back(RecordJson(r));
  json terms = json::array();
  for (const auto& t : report.error_terms) terms.push_back(TermJson(t));
  json counts = json::array();
  for (const auto& [ph, n] : report.phonemes.Ranked()) counts.push_back({{"phoneme", ph}, {"count", n}});
  const json j = {{"config", ConfigJson(report.config)},
                  {"skipped_corpus_lines", report.skipped_corpus_lines},
                  {"records", records},
                  {"error_terms", terms},
                  {"metrics", MetricsJson(report.metrics)},
                  {"phonemes", {{"counts", counts}, {"oov_terms", report.phonemes.oov_terms}}}};
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

RunReport RunReportFromJson(std::string_view text) {
  try {
    const json j = json::parse(text);
    RunReport report;
    report.config = ConfigFrom(j.at("config"));
    report.skipped_corpus_lines = j.at("skipped_corpus_lines").get<int64_t>();
    for (const auto& r : j.at("records")) report.records.push_back(RecordFrom(r));
    for (const auto& t : j.at("error_terms")) report.error_terms.push_back(TermFrom(t));
    report.metrics = MetricsFrom(j.at("metrics"));
    for (const auto& c : j.at("phonemes").at("counts")) {
      report.phonemes.counts[c.at("phoneme").get<std::string>()] = c.at("count").get<int64_t>();
    }
    report.phonemes.oov_terms = j.at("phonemes").at("oov_terms").get<int64_t>();
    return report;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed run report: ") + e.what());
  }
}

void WriteRunJson(const RunReport& report, const fs::path& path) { WriteTextFile(path, RunReportToJson(report)); }

}  // namespace asrdiff
