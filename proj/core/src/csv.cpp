#include "srg/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "srg/errors.hpp"

namespace srg::harness {

std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns_.size()) throw schema_error("Table: row width mismatch");
    rows_.push_back(std::move(row));
}

std::optional<std::size_t> Table::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i] == name) return i;
    return std::nullopt;
}

double Table::at(std::size_t row, std::string_view column) const {
    const auto idx = column_index(column);
    if (!idx) throw schema_error("Table: no column named '" + std::string(column) + "'");
    return rows_.at(row)[*idx];
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ',';
        out += columns_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_g17(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string Table::to_json() const {
    std::string out = "[";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        out += r ? ",\n {" : "\n {";
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) out += ", ";
            out += '"';
            out += columns_[i];
            out += "\": ";
            const double v = rows_[r][i];
            // JSON has no nan/inf literals
            out += std::isfinite(v) ? format_g17(v) : "null";
        }
        out += '}';
    }
    out += "\n]\n";
    return out;
}

Table Table::from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw schema_error("from_csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cols.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    Table t(std::move(cols));
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        row.reserve(t.columns_.size());
        const char* p = line.c_str();
        char* end = nullptr;
        while (true) {
            row.push_back(std::strtod(p, &end));
            if (p == end) throw schema_error("from_csv: malformed number in row");
            if (*end == ',')
                p = end + 1;
            else
                break;
        }
        t.add_row(std::move(row));
    }
    return t;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw io_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open for reading: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Table read_csv_file(const std::filesystem::path& path) {
    return Table::from_csv(read_file(path));
}

}  // namespace srg::harness
