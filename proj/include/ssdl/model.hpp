#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ssdl/dataset.hpp"
#include "ssdl/rowset.hpp"
#include "ssdl/stats.hpp"

namespace ssdl {

enum class Op { Equals, Geq, Leq, Between };

const char* op_name(Op op);

struct Condition {
    int column = 0;
    Op op = Op::Equals;
    // Equals: lo holds the category code. Geq/Leq: lo holds the threshold.
    // Between: [lo, hi] closed interval, lo < hi.
    double lo = 0.0;
    double hi = 0.0;

    bool matches(const Dataset& data, std::size_t row) const;
    std::string render(const Dataset& data) const;

    friend bool operator==(const Condition&, const Condition&) = default;
};

// Conjunction of at most one condition per column, kept sorted by column so
// equal descriptions compare equal.
struct Description {
    std::vector<Condition> conditions;

    std::size_t size() const { return conditions.size(); }
    bool empty() const { return conditions.empty(); }

    // Canonical insert; throws if the column is already used.
    Description extended(const Condition& c) const;
    bool uses_column(int column) const;

    bool matches(const Dataset& data, std::size_t row) const;
    RowSet cover(const Dataset& data) const;

    // Canonical dataset-independent key; defines the tie-break text order.
    std::string key() const;
    std::string render(const Dataset& data) const;

    friend bool operator==(const Description&, const Description&) = default;
};

Description canonicalize(std::vector<Condition> conditions);

struct Subgroup {
    Description description;
    GaussianStats stats;   // over the usage cover
    RowSet usage;          // rows assigned to this subgroup (list order applied)
    bool variance_floored = false;
    double cost_bits = 0.0;  // L_cost of the two conditioning points, for reporting
};

struct CodeLengths {
    double model_bits = 0.0;
    double data_bits = 0.0;
    std::vector<double> per_subgroup_data_bits;
    double default_data_bits = 0.0;

    double total_bits() const { return model_bits + data_bits; }
};

// Ordered subgroup list with a fixed dataset-distribution default rule.
struct SubgroupList {
    std::vector<Subgroup> subgroups;
    GaussianStats default_stats;  // fixed to theta_d, never re-estimated
    CodeLengths code;             // cache, maintained by total_code / search

    std::size_t size() const { return subgroups.size(); }

    static SubgroupList empty_model(const Dataset& data) {
        SubgroupList m;
        m.default_stats = data.theta_d();
        return m;
    }
};

// First-match assignment: per-subgroup usage covers plus the default cover.
// The returned sets partition the row range.
std::pair<std::vector<RowSet>, RowSet> list_covers(const SubgroupList& model,
                                                   const Dataset& data);

GaussianStats gaussian_stats(std::span<const double> values);

std::vector<double> values_at(const std::vector<double>& target, const RowSet& rows);

}  // namespace ssdl
