#ifndef ASRDIFF_REPORT_H_
#define ASRDIFF_REPORT_H_

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "asrdiff/metrics.h"
#include "asrdiff/phonetics.h"
#include "asrdiff/pipeline.h"

namespace asrdiff {

// RFC 4180 with LF line endings.
std::string CsvField(std::string_view field);
std::string CsvRow(const std::vector<std::string>& fields);
// Throws ParseError on unterminated quotes.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);
std::vector<std::vector<std::string>> ReadCsv(const std::filesystem::path& path);

inline const std::vector<std::string> kReportCsvHeader = {
    "case_id", "iteration", "lineage", "method", "engine", "reference", "transcript", "correct", "wer", "status"};

std::string FormatRatio(const std::optional<Ratio>& r);  // "N/A" when absent

std::string RenderReportCsv(const std::vector<CaseRecord>& records);
std::string RenderMetricsCsv(const MetricsRecord& metrics, const PhonemeHistogram& phonemes);
std::string RenderPhonemesCsv(const PhonemeHistogram& phonemes);
// Static bar chart of the most frequent phonemes.
std::string RenderPhonemeSvg(const PhonemeHistogram& phonemes, size_t top_n = 20);

// Writes report.csv, metrics.csv, phonemes.csv and phonemes.svg.
void EmitReport(const MetricsRecord& metrics, const std::vector<CaseRecord>& records,
                const PhonemeHistogram& phonemes, const std::filesystem::path& out_dir);

std::string RunReportToJson(const RunReport& report);
RunReport RunReportFromJson(std::string_view json);
void WriteRunJson(const RunReport& report, const std::filesystem::path& path);

void WriteTextFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace asrdiff

#endif  // ASRDIFF_REPORT_H_
