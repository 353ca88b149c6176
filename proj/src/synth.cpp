#include "ssdl/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ssdl {

double Rng::normal(double mean, double stddev) {
    if (have_spare_) {
        have_spare_ = false;
        return mean + stddev * spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return mean + stddev * r * std::cos(theta);
}

SynthResult generate_planted(const PlantedSpec& spec) {
    if (spec.n_rows < 2) throw std::invalid_argument("need at least 2 rows");
    double total_fraction = 0.0;
    for (const auto& p : spec.planted) {
        if (p.fraction <= 0.0 || p.ratio <= 0.0)
            throw std::invalid_argument("planted fraction and ratio must be positive");
        total_fraction += p.fraction;
    }
    if (total_fraction >= 1.0)
        throw std::invalid_argument("planted fractions must sum to < 1");

    Rng rng(spec.seed);
    const std::size_t k = spec.planted.size();

    std::vector<std::string> names;
    for (std::size_t c = 0; c < spec.noise_columns.size(); ++c)
        names.push_back("x" + std::to_string(c + 1));
    if (k > 0) names.push_back("segment");
    names.push_back("target");

    std::vector<int> segment(spec.n_rows, 0);  // 0 = background, i+1 = planted i
    std::vector<std::vector<std::string>> rows(spec.n_rows);
    for (std::size_t r = 0; r < spec.n_rows; ++r) {
        auto& row = rows[r];
        row.reserve(names.size());
        for (const auto& col : spec.noise_columns) {
            switch (col.kind) {
                case ColumnKind::Numeric:
                    row.push_back(double_to_string(rng.uniform(0.0, 10.0)));
                    break;
                case ColumnKind::Binary:
                    row.push_back(rng.uniform_int(2) ? "yes" : "no");
                    break;
                case ColumnKind::Nominal:
                    row.push_back("c" + std::to_string(rng.uniform_int(
                                            static_cast<std::uint64_t>(col.domain))));
                    break;
            }
        }
        if (k > 0) {
            const double u = rng.uniform();
            double acc = 0.0;
            int seg = 0;
            for (std::size_t i = 0; i < k; ++i) {
                acc += spec.planted[i].fraction;
                if (u < acc) {
                    seg = static_cast<int>(i) + 1;
                    break;
                }
            }
            segment[r] = seg;
            row.push_back(seg == 0 ? "bg" : "g" + std::to_string(seg));
        }
        double y;
        if (segment[r] == 0) {
            y = rng.normal(spec.mu0, spec.sigma0);
        } else {
            const auto& p = spec.planted[static_cast<std::size_t>(segment[r]) - 1];
            y = rng.normal(spec.mu0 + p.shift * spec.sigma0, p.ratio * spec.sigma0);
        }
        row.push_back(double_to_string(y));
    }

    SynthResult result{Dataset::from_cells(names, rows, "target"), {}, {}};
    if (k > 0) {
        const auto seg_col = result.dataset.column_index("segment");
        if (!seg_col) throw std::logic_error("segment column missing");
        const ColumnSchema& schema = result.dataset.column(*seg_col);
        for (std::size_t i = 0; i < k; ++i) {
            const std::string label = "g" + std::to_string(i + 1);
            const auto it =
                std::find(schema.categories.begin(), schema.categories.end(), label);
            if (it == schema.categories.end())
                throw DataError("planted subgroup " + label +
                                " drew no rows; increase n_rows or fraction");
            const int code = static_cast<int>(it - schema.categories.begin());
            result.planted_descriptions.push_back(Description{
                {Condition{static_cast<int>(*seg_col), Op::Equals,
                           static_cast<double>(code), 0.0}}});
            RowSet cover(spec.n_rows);
            for (std::size_t r = 0; r < spec.n_rows; ++r)
                if (segment[r] == static_cast<int>(i) + 1) cover.set(r);
            result.ground_truth.push_back(std::move(cover));
        }
    }
    return result;
}

BeamCandidate exhaustive_best_subgroup(const Dataset& dataset, int d_max,
                                       const SearchConfig& config) {
    if (dataset.n_cols() > 6 || dataset.n_rows() > 500 || d_max > 2)
        throw std::invalid_argument("exhaustive oracle guard: |V|<=6, n<=500, d_max<=2");

    const BinningScheme binning = equal_frequency_cuts(dataset, config.n_cut);
    const EncodingConfig enc_config = EncodingConfig::for_dataset(dataset, config.n_cut);
    const Encoder encoder(dataset, binning, enc_config);
    const std::vector<Condition> conditions = enumerate_conditions(dataset, binning);
    const SubgroupList empty = SubgroupList::empty_model(dataset);

    std::optional<BeamCandidate> best;
    auto consider = [&](const Description& desc) {
        BeamCandidate cand;
        cand.description = desc;
        cand.usage = desc.cover(dataset);
        cand.usage_count = cand.usage.count();
        cand.key = desc.key();
        const auto values = values_at(dataset.target(), cand.usage);
        const Encoder::Gain g = encoder.gain(empty, desc, values, config.min_usage);
        if (!g.valid) return;
        cand.gain_per_row = g.per_row;
        cand.gain_total = g.total;
        cand.rank_score = config.gain_mode == SearchConfig::GainMode::Normalized
                              ? g.per_row
                              : g.total;
        cand.valid = true;
        if (!best || candidate_better(cand, *best)) best = cand;
    };

    for (std::size_t i = 0; i < conditions.size(); ++i) {
        consider(Description{{conditions[i]}});
        if (d_max < 2) continue;
        for (std::size_t j = i + 1; j < conditions.size(); ++j) {
            if (conditions[i].column == conditions[j].column) continue;
            consider(canonicalize({conditions[i], conditions[j]}));
        }
    }
    if (!best) {
        BeamCandidate none;
        return none;
    }
    return *best;
}

CodeLengths recompute_total_code(const SubgroupList& model, const Dataset& dataset,
                                 const EncodingConfig& config) {
    const BinningScheme binning = equal_frequency_cuts(dataset, config.n_cut);
    const Encoder encoder(dataset, binning, config);

    // Plain first-match row loop, independent of the bitset cover path.
    std::vector<std::vector<double>> per_subgroup(model.size());
    std::vector<double> default_values;
    for (std::size_t r = 0; r < dataset.n_rows(); ++r) {
        bool assigned = false;
        for (std::size_t s = 0; s < model.size(); ++s) {
            if (model.subgroups[s].description.matches(dataset, r)) {
                per_subgroup[s].push_back(dataset.target()[r]);
                assigned = true;
                break;
            }
        }
        if (!assigned) default_values.push_back(dataset.target()[r]);
    }

    CodeLengths code;
    code.model_bits = encoder.model_bits(model);
    for (const auto& values : per_subgroup) {
        const double bits =
            values.size() < 2 ? 0.0 : encoder.subgroup_data_bits(values).bits;
        code.per_subgroup_data_bits.push_back(bits);
        code.data_bits += bits;
    }
    code.default_data_bits =
        encoder.default_data_bits(GaussianStats::of(default_values));
    code.data_bits += code.default_data_bits;
    return code;
}

}  // namespace ssdl
