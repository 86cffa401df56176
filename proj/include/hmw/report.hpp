#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "hmw/common.hpp"

namespace hmw {

inline constexpr const char* kToolVersion = "hecke_bench 1.0.0";

// %.17g, which round-trips every double.
std::string fmt_double(double x);
std::string fmt_int(long long x);
std::string csv_escape(const std::string& s);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    void add(std::vector<std::string> row);
};

struct Report {
    std::string title;
    std::vector<std::pair<std::string, std::string>> config;  // echoed in the header, in order
    std::vector<std::pair<std::string, Table>> tables;
    std::vector<std::pair<std::string, std::string>> summary;  // scalar results
};

enum class ReportFormat { csv, json };
ReportFormat parse_format(const std::string& s);

// CSV: '#' header lines, then each table as a header row plus data rows.
void write_csv(std::ostream& os, const Report& r);
void write_json(std::ostream& os, const Report& r);
std::string render(const Report& r, ReportFormat f);

// Writes the report to path (stdout when empty). Wall-clock time goes to a
// <path>.meta.json sidecar, or to stderr for stdout output, so the report
// itself stays byte-identical across runs.
void emit_report(const Report& r, ReportFormat f, const std::string& path, double wall_seconds, int threads);

}  // namespace hmw
