#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace ceeflow::csv {

/// Strict CSV reader: UTF-8, comma-delimited, mandatory header row,
/// double-quote quoting with "" escapes, tolerates trailing \r.
class Reader {
public:
    explicit Reader(const std::filesystem::path& path);

    const std::vector<std::string>& header() const { return header_; }
    const std::string& filename() const { return filename_; }

    /// Index of a required column; ValidationError naming the column if absent.
    std::size_t column(const std::string& name) const;

    /// Next record. Returns false at end of input. Blank lines are skipped.
    /// Rows with a field count different from the header are an error.
    bool next(std::vector<std::string>& fields, std::size_t& line);

private:
    std::ifstream in_;
    std::string filename_;
    std::vector<std::string> header_;
    std::size_t line_ = 0;

    bool read_record(std::vector<std::string>& fields);
};

double parse_number(const std::string& field, const std::string& file, std::size_t line,
                    const std::string& column);
int parse_int(const std::string& field, const std::string& file, std::size_t line,
              const std::string& column);

/// Shortest decimal string that parses back to exactly `v`.
/// Integral values within 2^53 print without a fractional part.
std::string format_number(double v);

/// Quote a field if it contains a delimiter, quote or newline.
std::string escape_field(const std::string& field);

/// Rectangular report buffer. Writes CSV and a one-to-one JSON mirror
/// (array of objects keyed by the column names).
class TableWriter {
public:
    using Cell = std::variant<std::string, double, std::int64_t, bool>;

    explicit TableWriter(std::vector<std::string> columns);

    void add_row(std::vector<Cell> cells);
    std::size_t row_count() const { return rows_.size(); }

    std::string to_csv() const;
    std::string to_json() const;
    void write_csv(const std::filesystem::path& path) const;
    void write_json(const std::filesystem::path& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

/// Write a whole file, creating parent directories. IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace ceeflow::csv
