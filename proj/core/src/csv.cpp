#include "ceeflow/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ceeflow/errors.hpp"

namespace ceeflow::csv {

Reader::Reader(const std::filesystem::path& path)
    : in_(path), filename_(path.filename().string()) {
    if (!in_.is_open())
        throw IoError("cannot open " + path.string());
    line_ = 0;
    if (!read_record(header_) || header_.empty())
        throw ValidationError(filename_ + ": missing header row");
}

std::size_t Reader::column(const std::string& name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == name) return i;
    throw ValidationError(filename_ + ": missing column '" + name + "'");
}

bool Reader::read_record(std::vector<std::string>& fields) {
    std::string raw;
    // skip blank lines
    do {
        if (!std::getline(in_, raw)) return false;
        ++line_;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    } while (raw.empty());

    fields.clear();
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        char c = raw[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < raw.size() && raw[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        fail_at(filename_, line_, "unterminated quoted field");
    fields.push_back(std::move(cur));
    return true;
}

bool Reader::next(std::vector<std::string>& fields, std::size_t& line) {
    if (!read_record(fields)) return false;
    line = line_;
    if (fields.size() != header_.size())
        fail_at(filename_, line_, "expected " + std::to_string(header_.size()) + " fields, got " +
                                      std::to_string(fields.size()));
    return true;
}

double parse_number(const std::string& field, const std::string& file, std::size_t line,
                    const std::string& column) {
    if (field.empty()) fail_at(file, line, "empty value in column '" + column + "'");
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size() || errno == ERANGE)
        fail_at(file, line, "non-numeric value '" + field + "' in column '" + column + "'");
    return v;
}

int parse_int(const std::string& field, const std::string& file, std::size_t line,
              const std::string& column) {
    if (field.empty()) fail_at(file, line, "empty value in column '" + column + "'");
    errno = 0;
    char* end = nullptr;
    long v = std::strtol(field.c_str(), &end, 10);
    if (end != field.c_str() + field.size() || errno == ERANGE)
        fail_at(file, line, "non-integer value '" + field + "' in column '" + column + "'");
    return static_cast<int>(v);
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // avoid "-0"
    if (v == std::floor(v) && std::fabs(v) < 9.007199254740992e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string escape_field(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

TableWriter::TableWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void TableWriter::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns_.size())
        throw std::logic_error("TableWriter: row width mismatch");
    rows_.push_back(std::move(cells));
}

namespace {

std::string cell_to_string(const TableWriter::Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return escape_field(*s);
    if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    return std::get<bool>(cell) ? "true" : "false";
}

}  // namespace

std::string TableWriter::to_csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns_.size(); ++i)
        out << (i ? "," : "") << escape_field(columns_[i]);
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << cell_to_string(row[i]);
        out << '\n';
    }
    return out.str();
}

std::string TableWriter::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& cell = row[i];
            if (const auto* s = std::get_if<std::string>(&cell))
                obj[columns_[i]] = *s;
            else if (const auto* d = std::get_if<double>(&cell)) {
                if (std::isfinite(*d))
                    obj[columns_[i]] = *d;
                else
                    obj[columns_[i]] = format_number(*d);  // JSON has no nan/inf literals
            } else if (const auto* v = std::get_if<std::int64_t>(&cell))
                obj[columns_[i]] = *v;
            else
                obj[columns_[i]] = std::get<bool>(cell);
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

void TableWriter::write_csv(const std::filesystem::path& path) const {
    write_file(path, to_csv());
}

void TableWriter::write_json(const std::filesystem::path& path) const {
    write_file(path, to_json());
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open())
        throw IoError("cannot write " + path.string());
    out << contents;
    if (!out.good())
        throw IoError("write failed: " + path.string());
}

}  // namespace ceeflow::csv
