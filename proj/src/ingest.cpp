#include "measaudit/ingest.hpp"

#include "measaudit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

namespace measaudit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.push_back(trim(std::string_view(line).substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

bool is_unnamed_header(const std::string& name) {
    return name.empty() || name.rfind("Unnamed", 0) == 0;
}

/// Full-string numeric parse with a configurable radix mark.
std::optional<double> parse_number(const std::string& cell, char decimal_sep) {
    if (cell.empty()) return std::nullopt;
    std::string buf = cell;
    if (decimal_sep != '.') {
        // a literal '.' cannot be a radix mark in this dialect
        if (buf.find('.') != std::string::npos) return std::nullopt;
        std::replace(buf.begin(), buf.end(), decimal_sep, '.');
    }
    const char* begin = buf.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + buf.size()) return std::nullopt;
    if (std::isnan(v) || std::isinf(v)) return std::nullopt;
    return v;
}

}  // namespace

bool Dataset::has_column(std::string_view name) const {
    return std::find(column_names.begin(), column_names.end(), name) !=
           column_names.end();
}

Eigen::Index Dataset::column_index(std::string_view name) const {
    auto it = std::find(column_names.begin(), column_names.end(), name);
    if (it == column_names.end())
        throw UnknownColumnError("unknown column: " + std::string(name));
    return static_cast<Eigen::Index>(it - column_names.begin());
}

Eigen::VectorXd Dataset::column(std::string_view name) const {
    return values.col(column_index(name));
}

Eigen::MatrixXd Dataset::columns(const std::vector<std::string>& names) const {
    Eigen::MatrixXd out(values.rows(), static_cast<Eigen::Index>(names.size()));
    for (size_t j = 0; j < names.size(); ++j)
        out.col(static_cast<Eigen::Index>(j)) = values.col(column_index(names[j]));
    return out;
}

RawTable parse_table(std::istream& source, const TableFormat& format) {
    std::string line;
    std::string header_line;
    if (!std::getline(source, header_line))
        throw EmptyInputError("no header row");
    for (unsigned char c : header_line)
        if (c == 0) throw EncodingError("NUL byte in header");

    const auto header = split_fields(header_line, format.field_separator);
    const size_t n_fields = header.size();
    if (n_fields == 0 || (n_fields == 1 && header[0].empty()))
        throw EmptyInputError("empty header row");

    std::vector<bool> keep(n_fields, true);
    if (format.drop_unnamed_trailing)
        for (size_t j = 0; j < n_fields; ++j)
            if (is_unnamed_header(header[j])) keep[j] = false;

    std::set<std::string> seen;
    for (size_t j = 0; j < n_fields; ++j)
        if (keep[j] && !seen.insert(header[j]).second)
            throw DuplicateColumnError("duplicate column name: " + header[j]);

    std::vector<std::vector<std::string>> cells(n_fields);
    size_t row_index = 0;
    while (std::getline(source, line)) {
        ++row_index;
        if (trim(line).empty()) continue;  // blank lines are skipped
        for (unsigned char c : line)
            if (c == 0)
                throw EncodingError("NUL byte at row " + std::to_string(row_index));
        auto fields = split_fields(line, format.field_separator);
        if (fields.size() != n_fields)
            throw RaggedRowError("row " + std::to_string(row_index) + " has " +
                                 std::to_string(fields.size()) + " fields, expected " +
                                 std::to_string(n_fields));
        for (size_t j = 0; j < n_fields; ++j) cells[j].push_back(std::move(fields[j]));
    }
    const size_t n_rows = cells.empty() ? 0 : cells[0].size();

    // A column is numeric when every non-empty cell parses as a number.
    RawTable table;
    for (size_t j = 0; j < n_fields; ++j) {
        if (!keep[j]) continue;
        bool numeric = true;
        bool any_value = false;
        for (const auto& cell : cells[j]) {
            if (cell.empty()) continue;
            any_value = true;
            if (!parse_number(cell, format.decimal_separator)) {
                numeric = false;
                break;
            }
        }
        if (numeric && any_value) {
            Eigen::VectorXd col(static_cast<Eigen::Index>(n_rows));
            for (size_t i = 0; i < n_rows; ++i) {
                auto v = parse_number(cells[j][i], format.decimal_separator);
                col[static_cast<Eigen::Index>(i)] = v ? *v : kNaN;
            }
            table.numeric_names.push_back(header[j]);
            table.numeric_columns.push_back(std::move(col));
        } else {
            table.metadata_names.push_back(header[j]);
            table.metadata_columns.push_back(cells[j]);
        }
    }
    return table;
}

RawTable parse_table(std::string_view text, const TableFormat& format) {
    std::istringstream in{std::string(text)};
    return parse_table(in, format);
}

Dataset clean(const RawTable& raw, const TableFormat& format) {
    if (raw.numeric_columns.empty())
        throw NoNumericColumnsError("table has no numeric columns");
    const Eigen::Index n = raw.n_rows();
    const size_t n_num = raw.numeric_columns.size();

    std::vector<bool> complete(static_cast<size_t>(n), true);
    for (const auto& col : raw.numeric_columns)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double v = col[i];
            if (std::isnan(v) || v == format.sentinel_missing)
                complete[static_cast<size_t>(i)] = false;
        }

    Eigen::Index n_keep = 0;
    for (bool c : complete) n_keep += c;
    if (n_keep == 0) throw AllRowsDroppedError("no complete rows remain");

    Dataset out;
    out.column_names = raw.numeric_names;
    out.values.resize(n_keep, static_cast<Eigen::Index>(n_num));
    out.metadata_names = raw.metadata_names;
    out.metadata_columns.resize(raw.metadata_columns.size());

    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!complete[static_cast<size_t>(i)]) continue;
        for (size_t j = 0; j < n_num; ++j)
            out.values(r, static_cast<Eigen::Index>(j)) = raw.numeric_columns[j][i];
        for (size_t j = 0; j < raw.metadata_columns.size(); ++j)
            out.metadata_columns[j].push_back(
                raw.metadata_columns[j][static_cast<size_t>(i)]);
        ++r;
    }
    return out;
}

Dataset load_table(const std::string& path, const TableFormat& format,
                   Eigen::Index* raw_rows) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    RawTable raw = parse_table(in, format);
    if (raw_rows) *raw_rows = raw.n_rows();
    return clean(raw, format);
}

}  // namespace measaudit
