#include "revlab/report.hpp"

#include <cstdio>
#include <fstream>

#include "revlab/oracle.hpp"

namespace revlab::report {

void Table::add(std::vector<std::string> row) {
    if (row.size() != columns.size())
        throw SchemaError("row has " + std::to_string(row.size()) + " cells, table has " +
                          std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

std::string cell(uint64_t v) { return std::to_string(v); }
std::string cell(int64_t v) { return std::to_string(v); }

std::string cell(double v) {
    char buf[64];
    snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

std::string escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (size_t i = 0; i < t.columns.size(); ++i)
        out += (i ? "," : "") + escape(t.columns[i]);
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + escape(row[i]);
        out += '\n';
    }
    return out;
}

void save_csv(const std::string& path, const Table& t) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw oracle::IoError("cannot write " + path);
    std::string body = to_csv(t);
    out.write(body.data(), long(body.size()));
    if (!out) throw oracle::IoError("short write to " + path);
}

}  // namespace revlab::report
