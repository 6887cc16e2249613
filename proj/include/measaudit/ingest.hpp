#pragma once

// Parsing and cleaning of raw sensor tables into a validated Dataset.

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace measaudit {

struct TableFormat {
    char field_separator = ';';
    char decimal_separator = ',';
    bool drop_unnamed_trailing = true;
    double sentinel_missing = -200.0;

    /// European sensor-export dialect: ';' fields, ',' decimals, -200 sentinel.
    static TableFormat uci() { return TableFormat{}; }
    /// Plain CSV: ',' fields, '.' decimals, same sentinel.
    static TableFormat standard() { return TableFormat{',', '.', true, -200.0}; }
};

/// Parsed but uncleaned table. Numeric cells that were empty or
/// unparseable are NaN; non-numeric columns are kept as text metadata.
struct RawTable {
    std::vector<std::string> numeric_names;
    std::vector<Eigen::VectorXd> numeric_columns;  // NaN = missing
    std::vector<std::string> metadata_names;
    std::vector<std::vector<std::string>> metadata_columns;

    Eigen::Index n_rows() const {
        if (!numeric_columns.empty()) return numeric_columns.front().size();
        if (!metadata_columns.empty())
            return static_cast<Eigen::Index>(metadata_columns.front().size());
        return 0;
    }
};

/// Cleaned tabular data: finite values only, source row order preserved.
struct Dataset {
    std::vector<std::string> column_names;
    Eigen::MatrixXd values;  // n_rows x n_cols
    std::vector<std::string> metadata_names;
    std::vector<std::vector<std::string>> metadata_columns;

    Eigen::Index n_rows() const { return values.rows(); }
    Eigen::Index n_cols() const { return values.cols(); }

    bool has_column(std::string_view name) const;
    /// Index of a named feature column; throws UnknownColumnError.
    Eigen::Index column_index(std::string_view name) const;
    Eigen::VectorXd column(std::string_view name) const;
    /// n_rows x names.size() matrix of the named columns, in order.
    Eigen::MatrixXd columns(const std::vector<std::string>& names) const;
};

RawTable parse_table(std::istream& source, const TableFormat& format);
RawTable parse_table(std::string_view text, const TableFormat& format);

Dataset clean(const RawTable& raw, const TableFormat& format);

/// parse_table + clean on a file; also reports the raw parsed row count.
Dataset load_table(const std::string& path, const TableFormat& format,
                   Eigen::Index* raw_rows = nullptr);

}  // namespace measaudit
