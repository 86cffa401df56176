#include "hmw/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace hmw {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_int(long long x) { return std::to_string(x); }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

void Table::add(std::vector<std::string> row) {
    if (row.size() != columns.size())
        throw AssertionFailure("report row has " + std::to_string(row.size()) + " cells, expected " +
                               std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

ReportFormat parse_format(const std::string& s) {
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw DomainError("unknown format '" + s + "' (expected csv or json)");
}

void write_csv(std::ostream& os, const Report& r) {
    os << "# " << kToolVersion << '\n';
    os << "# report: " << r.title << '\n';
    for (const auto& [k, v] : r.config) os << "# config " << k << " = " << v << '\n';
    for (const auto& [k, v] : r.summary) os << "# result " << k << " = " << v << '\n';
    bool first = true;
    for (const auto& [name, t] : r.tables) {
        if (!first) os << '\n';
        first = false;
        os << "# table: " << name << '\n';
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_escape(t.columns[i]);
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
            os << '\n';
        }
    }
}

void write_json(std::ostream& os, const Report& r) {
    nlohmann::ordered_json j;
    j["tool"] = kToolVersion;
    j["report"] = r.title;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.config) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json sum = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.summary) sum[k] = v;
    j["results"] = sum;
    nlohmann::ordered_json tabs = nlohmann::ordered_json::object();
    for (const auto& [name, t] : r.tables) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json o;
            for (std::size_t i = 0; i < row.size(); ++i) o[t.columns[i]] = row[i];
            rows.push_back(std::move(o));
        }
        tabs[name] = std::move(rows);
    }
    j["tables"] = tabs;
    os << j.dump(2) << '\n';
}

std::string render(const Report& r, ReportFormat f) {
    std::ostringstream os;
    if (f == ReportFormat::csv) write_csv(os, r);
    else write_json(os, r);
    return os.str();
}

void emit_report(const Report& r, ReportFormat f, const std::string& path, double wall_seconds, int threads) {
    const std::string text = render(r, f);
    if (path.empty()) {
        std::cout << text << std::flush;
        std::fprintf(stderr, "wall-clock %.3f s, threads %d\n", wall_seconds, threads);
        return;
    }
    {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw DomainError("cannot open '" + path + "' for writing");
        os << text;
        if (!os) throw ComputationError("write failed for '" + path + "'");
    }
    nlohmann::ordered_json meta;
    meta["tool"] = kToolVersion;
    meta["report"] = path;
    meta["wall_clock_seconds"] = wall_seconds;
    meta["threads"] = threads;
    std::ofstream ms(path + ".meta.json");
    if (!ms) throw DomainError("cannot open '" + path + ".meta.json' for writing");
    ms << meta.dump(2) << '\n';
}

}  // namespace hmw
