#include "ssdl/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ssdl {

const char* column_kind_name(ColumnKind kind) {
    switch (kind) {
        case ColumnKind::Binary: return "binary";
        case ColumnKind::Nominal: return "nominal";
        case ColumnKind::Numeric: return "numeric";
    }
    return "?";
}

std::string double_to_string(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

namespace {

bool parse_double(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    out.push_back(cell);
    return out;
}

}  // namespace

std::optional<std::size_t> Dataset::column_index(const std::string& name) const {
    for (std::size_t j = 0; j < columns_.size(); ++j)
        if (columns_[j].name == name) return j;
    return std::nullopt;
}

bool Dataset::is_missing(std::size_t row, std::size_t col) const {
    return std::isnan(cells_[col][row]);
}

double target_resolution(const std::vector<double>& target) {
    std::vector<double> v(target);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.size() < 2) return 1.0;
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < v.size(); ++i) gap = std::min(gap, v[i] - v[i - 1]);
    return gap;
}

Dataset Dataset::from_cells(std::vector<std::string> column_names,
                            const std::vector<std::vector<std::string>>& rows,
                            const std::string& target_column,
                            const std::map<std::string, ColumnKind>& schema_override) {
    if (column_names.empty()) throw DataError("no columns");
    {
        std::unordered_set<std::string> seen;
        for (const auto& n : column_names)
            if (!seen.insert(n).second)
                throw DataError("duplicate column name: " + n);
    }
    if (rows.size() < 2) throw DataError("fewer than 2 data rows");
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r].size() != column_names.size())
            throw DataError("row " + std::to_string(r + 1) + " has " +
                            std::to_string(rows[r].size()) + " cells, expected " +
                            std::to_string(column_names.size()));

    std::size_t target_idx = column_names.size() - 1;
    if (!target_column.empty()) {
        auto it = std::find(column_names.begin(), column_names.end(), target_column);
        if (it == column_names.end())
            throw DataError("target column not found: " + target_column);
        target_idx = static_cast<std::size_t>(it - column_names.begin());
    }

    Dataset d;
    d.n_rows_ = rows.size();
    d.target_name_ = column_names[target_idx];
    d.target_.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::string& cell = rows[r][target_idx];
        double y;
        if (cell.empty() || !parse_double(cell, y))
            throw DataError("non-numeric or missing target '" + cell + "' in column '" +
                            d.target_name_ + "' at row " + std::to_string(r + 1));
        d.target_.push_back(y);
        d.theta_d_.add(y);
    }
    d.resolution_ = target_resolution(d.target_);

    for (std::size_t c = 0; c < column_names.size(); ++c) {
        if (c == target_idx) continue;
        ColumnSchema schema;
        schema.name = column_names[c];

        bool all_numeric = true;
        std::vector<double> parsed(rows.size(), kMissingNumeric);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::string& cell = rows[r][c];
            if (cell.empty()) continue;
            double v;
            if (parse_double(cell, v))
                parsed[r] = v;
            else {
                all_numeric = false;
                break;
            }
        }

        auto ov = schema_override.find(schema.name);
        ColumnKind kind;
        if (ov != schema_override.end()) {
            kind = ov->second;
            if (kind == ColumnKind::Numeric && !all_numeric)
                throw DataError("column '" + schema.name +
                                "' forced numeric but has non-numeric cells");
        } else if (all_numeric) {
            kind = ColumnKind::Numeric;
        } else {
            std::unordered_set<std::string> distinct;
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (!rows[r][c].empty()) distinct.insert(rows[r][c]);
            kind = distinct.size() <= 2 ? ColumnKind::Binary : ColumnKind::Nominal;
        }
        schema.kind = kind;

        std::vector<double> col;
        if (kind == ColumnKind::Numeric) {
            col = std::move(parsed);
            schema.domain_size = 0;
        } else {
            // Integer codes by first appearance; order-stable.
            col.assign(rows.size(), kMissingNumeric);
            std::unordered_map<std::string, int> codes;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const std::string& cell = rows[r][c];
                if (cell.empty()) continue;
                auto [it, inserted] = codes.emplace(cell, static_cast<int>(schema.categories.size()));
                if (inserted) schema.categories.push_back(cell);
                col[r] = it->second;
            }
            schema.domain_size = kind == ColumnKind::Binary
                                     ? 2
                                     : static_cast<int>(schema.categories.size());
        }
        d.columns_.push_back(std::move(schema));
        d.cells_.push_back(std::move(col));
    }
    return d;
}

Dataset Dataset::from_csv_text(const std::string& text,
                               const std::string& target_column,
                               const std::map<std::string, ColumnKind>& schema_override) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty CSV input");
    std::vector<std::string> header = split_csv_line(line);
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    return from_cells(std::move(header), rows, target_column, schema_override);
}

Dataset Dataset::load_csv(const std::string& path,
                          const std::string& target_column,
                          const std::map<std::string, ColumnKind>& schema_override) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_csv_text(buf.str(), target_column, schema_override);
}

std::string Dataset::to_csv() const {
    std::ostringstream out;
    for (const auto& col : columns_) out << col.name << ',';
    out << target_name_ << '\n';
    for (std::size_t r = 0; r < n_rows_; ++r) {
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (!is_missing(r, c)) {
                if (columns_[c].kind == ColumnKind::Numeric)
                    out << double_to_string(numeric_at(r, c));
                else
                    out << columns_[c].categories[static_cast<std::size_t>(code_at(r, c))];
            }
            out << ',';
        }
        out << double_to_string(target_[r]) << '\n';
    }
    return out.str();
}

BinningScheme equal_frequency_cuts(const Dataset& dataset, int n_cut) {
    if (n_cut < 1) throw std::invalid_argument("n_cut must be >= 1");
    BinningScheme scheme;
    scheme.cuts.resize(dataset.n_cols());
    for (std::size_t j = 0; j < dataset.n_cols(); ++j) {
        if (dataset.column(j).kind != ColumnKind::Numeric) continue;
        std::vector<double> v;
        v.reserve(dataset.n_rows());
        for (std::size_t r = 0; r < dataset.n_rows(); ++r)
            if (!dataset.is_missing(r, j)) v.push_back(dataset.numeric_at(r, j));
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        if (n < 2) continue;
        std::vector<double>& cuts = scheme.cuts[j];
        for (int i = 1; i <= n_cut; ++i) {
            const double h = static_cast<double>(i) * static_cast<double>(n) /
                             (static_cast<double>(n_cut) + 1.0);
            std::size_t k = static_cast<std::size_t>(std::ceil(h));
            k = std::clamp<std::size_t>(k, 1, n - 1);
            const double cut = (v[k - 1] + v[k]) / 2.0;
            if (cut > v.front() && cut < v.back() &&
                (cuts.empty() || cut > cuts.back()))
                cuts.push_back(cut);
        }
    }
    return scheme;
}

}  // namespace ssdl
