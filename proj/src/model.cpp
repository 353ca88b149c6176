#include "ssdl/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ssdl {

const char* op_name(Op op) {
    switch (op) {
        case Op::Equals: return "equals";
        case Op::Geq: return "geq";
        case Op::Leq: return "leq";
        case Op::Between: return "between";
    }
    return "?";
}

bool Condition::matches(const Dataset& data, std::size_t row) const {
    const auto col = static_cast<std::size_t>(column);
    if (data.is_missing(row, col)) return false;
    switch (op) {
        case Op::Equals:
            return data.code_at(row, col) == static_cast<int>(lo);
        case Op::Geq:
            return data.numeric_at(row, col) >= lo;
        case Op::Leq:
            return data.numeric_at(row, col) <= lo;
        case Op::Between: {
            const double v = data.numeric_at(row, col);
            return v >= lo && v <= hi;
        }
    }
    return false;
}

std::string Condition::render(const Dataset& data) const {
    const auto& schema = data.column(static_cast<std::size_t>(column));
    std::ostringstream out;
    switch (op) {
        case Op::Equals:
            out << schema.name << " = " << schema.categories[static_cast<std::size_t>(lo)];
            break;
        case Op::Geq:
            out << schema.name << " >= " << double_to_string(lo);
            break;
        case Op::Leq:
            out << schema.name << " <= " << double_to_string(lo);
            break;
        case Op::Between:
            out << double_to_string(lo) << " <= " << schema.name << " <= "
                << double_to_string(hi);
            break;
    }
    return out.str();
}

Description canonicalize(std::vector<Condition> conditions) {
    std::sort(conditions.begin(), conditions.end(),
              [](const Condition& a, const Condition& b) { return a.column < b.column; });
    for (std::size_t i = 1; i < conditions.size(); ++i)
        if (conditions[i].column == conditions[i - 1].column)
            throw std::invalid_argument("description uses a column twice");
    return Description{std::move(conditions)};
}

Description Description::extended(const Condition& c) const {
    std::vector<Condition> conds = conditions;
    conds.push_back(c);
    return canonicalize(std::move(conds));
}

bool Description::uses_column(int column) const {
    for (const auto& c : conditions)
        if (c.column == column) return true;
    return false;
}

bool Description::matches(const Dataset& data, std::size_t row) const {
    for (const auto& c : conditions)
        if (!c.matches(data, row)) return false;
    return true;
}

RowSet Description::cover(const Dataset& data) const {
    RowSet rows(data.n_rows());
    for (std::size_t r = 0; r < data.n_rows(); ++r)
        if (matches(data, r)) rows.set(r);
    return rows;
}

std::string Description::key() const {
    std::ostringstream out;
    for (const auto& c : conditions)
        out << 'c' << c.column << ':' << op_name(c.op) << ':' << double_to_string(c.lo)
            << ':' << double_to_string(c.hi) << ';';
    return out.str();
}

std::string Description::render(const Dataset& data) const {
    if (conditions.empty()) return "(all rows)";
    std::string out;
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        if (i) out += " & ";
        out += conditions[i].render(data);
    }
    return out;
}

std::pair<std::vector<RowSet>, RowSet> list_covers(const SubgroupList& model,
                                                   const Dataset& data) {
    std::vector<RowSet> usages;
    usages.reserve(model.subgroups.size());
    RowSet remaining = RowSet::all(data.n_rows());
    for (const auto& sg : model.subgroups) {
        RowSet usage = sg.description.cover(data);
        usage &= remaining;
        remaining.subtract(usage);
        usages.push_back(std::move(usage));
    }
    return {std::move(usages), std::move(remaining)};
}

GaussianStats gaussian_stats(std::span<const double> values) {
    return GaussianStats::of(values);
}

std::vector<double> values_at(const std::vector<double>& target, const RowSet& rows) {
    std::vector<double> out;
    out.reserve(rows.count());
    rows.for_each([&](std::size_t i) { out.push_back(target[i]); });
    return out;
}

}  // namespace ssdl
