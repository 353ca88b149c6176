#include "ssdl/encoding.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ssdl {

namespace {

constexpr double kRissanenConstant = 2.865064;

double lg(double x) { return std::log2(x); }

const double kLog2E = std::numbers::log2e;
const double kLog2Pi = std::log2(std::numbers::pi);
const double kLog2TwoPi = std::log2(2.0 * std::numbers::pi);

double log2_gamma(double x) { return std::lgamma(x) * kLog2E; }

}  // namespace

double universal_int_code(std::uint64_t i) {
    if (i == 0) throw std::invalid_argument("universal_int_code requires i >= 1");
    double bits = lg(kRissanenConstant);
    double term = lg(static_cast<double>(i));
    while (term > 0.0) {
        bits += term;
        term = lg(term);
    }
    return bits;
}

double log2_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) throw std::invalid_argument("binomial with k > n");
    return log2_gamma(static_cast<double>(n) + 1.0) -
           log2_gamma(static_cast<double>(k) + 1.0) -
           log2_gamma(static_cast<double>(n - k) + 1.0);
}

std::uint64_t numeric_condition_count(std::uint64_t cuts) {
    return 2 * cuts + cuts * (cuts - 1) / 2;
}

Encoder::Encoder(const Dataset& data, const BinningScheme& binning, EncodingConfig config)
    : data_(data), binning_(binning), config_(config) {
    default_variance_ = floored(data.theta_d().variance());
}

std::optional<double> Encoder::condition_bits(std::size_t column) const {
    const ColumnSchema& schema = data_.column(column);
    switch (schema.kind) {
        case ColumnKind::Binary:
            return 1.0;
        case ColumnKind::Nominal:
            return lg(static_cast<double>(schema.domain_size));
        case ColumnKind::Numeric: {
            const std::size_t c = binning_.for_column(column).size();
            if (c == 0) return std::nullopt;
            return lg(static_cast<double>(numeric_condition_count(c)));
        }
    }
    return std::nullopt;
}

double Encoder::description_bits(const Description& description) const {
    const std::uint64_t len = description.size();
    if (len == 0) return 0.0;
    if (len > data_.n_cols())
        throw std::invalid_argument("description longer than the variable count");
    double bits = universal_int_code(len) + log2_binomial(data_.n_cols(), len);
    for (const auto& cond : description.conditions) {
        auto cb = condition_bits(static_cast<std::size_t>(cond.column));
        if (!cb)
            throw std::logic_error("condition on a column with no expressible conditions");
        bits += *cb;
    }
    return bits;
}

double Encoder::model_bits(const SubgroupList& model) const {
    double bits = universal_int_code(model.size() + 1);
    for (const auto& sg : model.subgroups) bits += description_bits(sg.description);
    return bits;
}

double Encoder::fixed_bits(const GaussianStats& values, double mu, double variance) const {
    if (values.n == 0) return 0.0;
    if (variance <= 0.0) throw std::invalid_argument("non-positive variance in fixed code");
    const double n = static_cast<double>(values.n);
    return n / 2.0 * kLog2TwoPi + n / 2.0 * lg(variance) +
           values.rss_about(mu) / (2.0 * variance) * kLog2E;
}

double Encoder::bayes_bits(const GaussianStats& stats) const {
    if (stats.n < 2) throw std::invalid_argument("Bayesian code requires n >= 2");
    const double n = static_cast<double>(stats.n);
    const double n_var = n * floored(stats.variance());
    return 1.0 + (n + 1.0) / 2.0 * kLog2Pi - log2_gamma(n / 2.0) +
           0.5 * lg(n + 1.0) + n / 2.0 * lg(n_var);
}

Encoder::PriorPoints Encoder::select_prior_points(std::span<const double> cover_values) const {
    if (cover_values.size() < 2)
        throw std::invalid_argument("need at least two values to pick prior points");
    const double mu_d = data_.theta_d().mean();
    // Sort key: (|y - mu_d|, y, position). Two linear scans instead of a sort.
    auto better = [&](double y, std::size_t pos, double best_y, std::size_t best_pos) {
        const double dy = std::fabs(y - mu_d);
        const double dbest = std::fabs(best_y - mu_d);
        if (dy != dbest) return dy < dbest;
        if (y != best_y) return y < best_y;
        return pos < best_pos;
    };
    std::size_t first = 0;
    for (std::size_t i = 1; i < cover_values.size(); ++i)
        if (better(cover_values[i], i, cover_values[first], first)) first = i;

    bool have_second = false;
    std::size_t second = 0;
    for (std::size_t i = 0; i < cover_values.size(); ++i) {
        if (i == first || cover_values[i] == cover_values[first]) continue;
        if (!have_second || better(cover_values[i], i, cover_values[second], second)) {
            second = i;
            have_second = true;
        }
    }
    if (!have_second)
        return {cover_values[first], cover_values[first], true};
    return {cover_values[first], cover_values[second], false};
}

Encoder::SubgroupCode Encoder::subgroup_data_bits(std::span<const double> cover_values) const {
    if (cover_values.size() < 2)
        throw std::invalid_argument("subgroup code requires at least two values");
    const GaussianStats stats = GaussianStats::of(cover_values);
    const PriorPoints pts = select_prior_points(cover_values);

    GaussianStats two;
    two.add(pts.y1);
    two.add(pts.y2);

    const double bayes_full = bayes_bits(stats);
    const double bayes_two = bayes_bits(two);
    const double fixed_two =
        fixed_bits(two, data_.theta_d().mean(), default_variance_);

    SubgroupCode code;
    code.bits = bayes_full - bayes_two + fixed_two;
    code.cost_bits = fixed_two - bayes_two;
    code.floored = pts.degenerate || stats.variance() <= config_.variance_floor;
    return code;
}

double Encoder::default_data_bits(const GaussianStats& default_values) const {
    return fixed_bits(default_values, data_.theta_d().mean(), default_variance_);
}

double Encoder::empty_model_data_bits() const {
    return default_data_bits(data_.theta_d());
}

double Encoder::empty_model_total_bits() const {
    return universal_int_code(1) + empty_model_data_bits();
}

CodeLengths Encoder::total_code(const SubgroupList& model) const {
    auto [usages, default_cover] = list_covers(model, data_);
    CodeLengths code;
    code.model_bits = model_bits(model);
    for (const auto& usage : usages) {
        const std::vector<double> values = values_at(data_.target(), usage);
        const double bits =
            values.size() < 2 ? 0.0 : subgroup_data_bits(values).bits;
        code.per_subgroup_data_bits.push_back(bits);
        code.data_bits += bits;
    }
    const GaussianStats default_stats =
        GaussianStats::of(values_at(data_.target(), default_cover));
    code.default_data_bits = default_data_bits(default_stats);
    code.data_bits += code.default_data_bits;
    return code;
}

Encoder::Gain Encoder::gain(const SubgroupList& model, const Description& candidate,
                            std::span<const double> usage_values,
                            std::size_t min_usage) const {
    Gain g;
    g.usage = usage_values.size();
    if (g.usage < min_usage || g.usage < 2) return g;

    const GaussianStats stats = GaussianStats::of(usage_values);
    const double fixed_under_default =
        fixed_bits(stats, data_.theta_d().mean(), default_variance_);
    const double data_gain = fixed_under_default - subgroup_data_bits(usage_values).bits;

    const double model_delta = universal_int_code(model.size() + 2) -
                               universal_int_code(model.size() + 1) +
                               description_bits(candidate);

    g.total = data_gain - model_delta;
    g.per_row = g.total / static_cast<double>(g.usage);
    g.valid = true;
    return g;
}

}  // namespace ssdl
