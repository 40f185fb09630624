#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Tiny CSV emitter for experiment output. One table per subcommand, schema
// fixed up front so an empty run still produces a header, values formatted
// deterministically so identical configs give byte-identical files.

namespace revlab::report {

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}
    void add(std::vector<std::string> row);
};

std::string cell(uint64_t v);
std::string cell(int64_t v);
std::string cell(double v);  // shortest round-trip form, locale-independent
inline std::string cell(int v) { return cell(int64_t(v)); }
inline std::string cell(unsigned v) { return cell(uint64_t(v)); }
inline std::string cell(bool v) { return v ? "1" : "0"; }
inline std::string cell(std::string v) { return v; }

std::string to_csv(const Table& t);
void save_csv(const std::string& path, const Table& t);

}  // namespace revlab::report
