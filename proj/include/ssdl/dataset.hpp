#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssdl/stats.hpp"

namespace ssdl {

// Malformed input data (unreadable file, bad target, duplicate columns, ...).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ColumnKind { Binary, Nominal, Numeric };

const char* column_kind_name(ColumnKind kind);

// Shortest round-trip decimal rendering (std::to_chars).
std::string double_to_string(double v);

struct ColumnSchema {
    std::string name;
    ColumnKind kind = ColumnKind::Numeric;
    // 2 for binary, |X_v| for nominal, unused for numeric.
    int domain_size = 0;
    // Category labels in first-appearance order; index == integer code.
    std::vector<std::string> categories;
};

// Immutable typed table with a numeric target. Explanatory cells are stored
// column-major as doubles: numeric columns hold the parsed value (NaN for
// missing), categorical columns hold the integer code (-1 for missing).
class Dataset {
public:
    static constexpr double kMissingNumeric = std::numeric_limits<double>::quiet_NaN();
    static constexpr int kMissingCode = -1;

    // target_column empty means "last column". schema_override maps column
    // name to a forced kind.
    static Dataset load_csv(const std::string& path,
                            const std::string& target_column = "",
                            const std::map<std::string, ColumnKind>& schema_override = {});

    static Dataset from_csv_text(const std::string& text,
                                 const std::string& target_column = "",
                                 const std::map<std::string, ColumnKind>& schema_override = {});

    // In-memory construction (used by the synthetic generator and tests).
    // Raw cells are strings; typing follows the same inference as load_csv.
    static Dataset from_cells(std::vector<std::string> column_names,
                              const std::vector<std::vector<std::string>>& rows,
                              const std::string& target_column = "",
                              const std::map<std::string, ColumnKind>& schema_override = {});

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return columns_.size(); }

    const ColumnSchema& column(std::size_t j) const { return columns_[j]; }
    const std::vector<ColumnSchema>& columns() const { return columns_; }
    std::optional<std::size_t> column_index(const std::string& name) const;

    bool is_missing(std::size_t row, std::size_t col) const;
    // Numeric columns only.
    double numeric_at(std::size_t row, std::size_t col) const { return cells_[col][row]; }
    // Binary/nominal columns only.
    int code_at(std::size_t row, std::size_t col) const {
        const double v = cells_[col][row];
        return std::isnan(v) ? kMissingCode : static_cast<int>(v);
    }

    const std::string& target_name() const { return target_name_; }
    const std::vector<double>& target() const { return target_; }
    const GaussianStats& theta_d() const { return theta_d_; }

    // Smallest positive gap between consecutive sorted distinct target
    // values; 1 when the target is constant.
    double resolution() const { return resolution_; }

    std::string to_csv() const;

private:
    std::size_t n_rows_ = 0;
    std::vector<ColumnSchema> columns_;
    std::vector<std::vector<double>> cells_;  // column-major
    std::string target_name_;
    std::vector<double> target_;
    GaussianStats theta_d_;
    double resolution_ = 1.0;
};

double target_resolution(const std::vector<double>& target);

// Per numeric column: ascending distinct interior cut values (empty vector
// for categorical or constant columns).
struct BinningScheme {
    std::vector<std::vector<double>> cuts;  // indexed by column

    const std::vector<double>& for_column(std::size_t j) const { return cuts[j]; }
};

// Empirical quantiles at ranks i/(n_cut+1), i = 1..n_cut, with midpoint
// interpolation between order statistics. Tied cuts are collapsed and cuts
// not strictly between the column min and max are dropped.
BinningScheme equal_frequency_cuts(const Dataset& dataset, int n_cut);

}  // namespace ssdl
