#pragma once
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace srg::harness {

// 17 significant digits: doubles round-trip exactly through the CSV.
std::string format_g17(double x);

std::uint64_t fnv1a64(std::string_view data);

// A rectangular table of doubles with named columns. The only data shape
// the tool emits or joins.
class Table {
public:
    Table() = default;
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<double> row);
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    std::optional<std::size_t> column_index(std::string_view name) const;
    double at(std::size_t row, std::string_view column) const;  // schema_error if absent

    std::string to_csv() const;
    std::string to_json() const;  // array of row objects

    static Table from_csv(std::string_view text);

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

void write_file(const std::filesystem::path& path, std::string_view content);  // io_error
std::string read_file(const std::filesystem::path& path);                      // io_error
Table read_csv_file(const std::filesystem::path& path);

}  // namespace srg::harness
