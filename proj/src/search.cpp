#include "ssdl/search.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ssdl {

bool candidate_better(const BeamCandidate& a, const BeamCandidate& b) {
    if (a.rank_score != b.rank_score) return a.rank_score > b.rank_score;
    if (a.usage_count != b.usage_count) return a.usage_count > b.usage_count;
    if (a.description.size() != b.description.size())
        return a.description.size() < b.description.size();
    return a.key < b.key;
}

std::vector<Condition> enumerate_conditions(const Dataset& data,
                                            const BinningScheme& binning) {
    std::vector<Condition> out;
    for (std::size_t j = 0; j < data.n_cols(); ++j) {
        const ColumnSchema& schema = data.column(j);
        const int col = static_cast<int>(j);
        if (schema.kind == ColumnKind::Numeric) {
            const auto& cuts = binning.for_column(j);
            for (double c : cuts) out.push_back({col, Op::Geq, c, 0.0});
            for (double c : cuts) out.push_back({col, Op::Leq, c, 0.0});
            for (std::size_t a = 0; a < cuts.size(); ++a)
                for (std::size_t b = a + 1; b < cuts.size(); ++b)
                    out.push_back({col, Op::Between, cuts[a], cuts[b]});
        } else {
            for (std::size_t code = 0; code < schema.categories.size(); ++code)
                out.push_back({col, Op::Equals, static_cast<double>(code), 0.0});
        }
    }
    return out;
}

ConditionPool ConditionPool::build(const Dataset& data, const BinningScheme& binning) {
    ConditionPool pool;
    pool.conditions = enumerate_conditions(data, binning);
    pool.covers.reserve(pool.conditions.size());
    pool.by_column.resize(data.n_cols());
    for (std::size_t i = 0; i < pool.conditions.size(); ++i) {
        const Condition& cond = pool.conditions[i];
        RowSet cover(data.n_rows());
        for (std::size_t r = 0; r < data.n_rows(); ++r)
            if (cond.matches(data, r)) cover.set(r);
        pool.covers.push_back(std::move(cover));
        pool.by_column[static_cast<std::size_t>(cond.column)].push_back(i);
    }
    return pool;
}

std::vector<Description> generate_refinements(const Description& candidate,
                                              const Dataset& data,
                                              const BinningScheme& binning) {
    std::vector<Description> out;
    std::unordered_set<std::string> seen;
    for (const Condition& cond : enumerate_conditions(data, binning)) {
        if (candidate.uses_column(cond.column)) continue;
        Description refined = candidate.extended(cond);
        if (seen.insert(refined.key()).second) out.push_back(std::move(refined));
    }
    return out;
}

CandidateScorer::Score MdlGainScorer::score(const Description& description,
                                            std::span<const double> usage_values) const {
    const Encoder::Gain g = encoder_.gain(model_, description, usage_values, min_usage_);
    Score s;
    if (!g.valid) return s;
    s.per_row = g.per_row;
    s.total = g.total;
    s.rank = mode_ == SearchConfig::GainMode::Normalized ? g.per_row : g.total;
    s.valid = true;
    return s;
}

namespace {

BeamCandidate score_one(const Dataset& data, const ConditionPool& pool,
                        const LevelItem& item, const CandidateScorer& scorer) {
    BeamCandidate cand;
    cand.description = item.description;
    cand.usage = pool.covers[item.condition_id] & *item.parent;
    cand.usage_count = cand.usage.count();
    cand.key = cand.description.key();
    const std::vector<double> values = values_at(data.target(), cand.usage);
    const auto s = scorer.score(cand.description, values);
    cand.rank_score = s.rank;
    cand.gain_per_row = s.per_row;
    cand.gain_total = s.total;
    cand.valid = s.valid;
    return cand;
}

}  // namespace

std::vector<BeamCandidate> score_level_serial(const Dataset& data,
                                              const ConditionPool& pool,
                                              const std::vector<LevelItem>& items,
                                              const CandidateScorer& scorer) {
    std::vector<BeamCandidate> out(items.size());
    for (std::size_t i = 0; i < items.size(); ++i)
        out[i] = score_one(data, pool, items[i], scorer);
    return out;
}

std::vector<BeamCandidate> score_level(const Dataset& data,
                                       const ConditionPool& pool,
                                       const std::vector<LevelItem>& items,
                                       const CandidateScorer& scorer,
                                       int threads) {
    std::vector<BeamCandidate> out(items.size());
#ifdef _OPENMP
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(nt)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(items.size()); ++i)
        out[static_cast<std::size_t>(i)] =
            score_one(data, pool, items[static_cast<std::size_t>(i)], scorer);
#else
    (void)threads;
    for (std::size_t i = 0; i < items.size(); ++i)
        out[i] = score_one(data, pool, items[i], scorer);
#endif
    return out;
}

std::optional<BeamCandidate> beam_search(
    const Dataset& data, const ConditionPool& pool, const RowSet& base_cover,
    const CandidateScorer& scorer, const SearchConfig& config,
    const std::function<void(const BeamCandidate&)>& on_candidate) {
    std::optional<BeamCandidate> best;
    std::vector<BeamCandidate> beam;

    std::vector<LevelItem> items;
    items.reserve(pool.conditions.size());
    for (std::size_t ci = 0; ci < pool.conditions.size(); ++ci)
        items.push_back({Description{{pool.conditions[ci]}}, &base_cover, ci});

    for (int depth = 1; depth <= config.max_depth && !items.empty(); ++depth) {
        std::vector<BeamCandidate> scored =
            config.parallel ? score_level(data, pool, items, scorer, config.threads)
                            : score_level_serial(data, pool, items, scorer);

        // Candidates below min_usage cannot recover by refinement.
        std::erase_if(scored, [&](const BeamCandidate& c) {
            return c.usage_count < config.min_usage;
        });

        for (const BeamCandidate& c : scored) {
            if (!c.valid) continue;
            if (on_candidate) on_candidate(c);
            if (c.rank_score > 0 && (!best || candidate_better(c, *best)))
                best = c;
        }

        if (depth == config.max_depth) break;

        const std::size_t keep =
            std::min<std::size_t>(static_cast<std::size_t>(config.beam_width), scored.size());
        std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                          scored.end(), candidate_better);
        scored.resize(keep);
        beam = std::move(scored);

        items.clear();
        std::unordered_set<std::string> seen;
        for (const BeamCandidate& parent : beam) {
            for (std::size_t j = 0; j < data.n_cols(); ++j) {
                if (parent.description.uses_column(static_cast<int>(j))) continue;
                for (std::size_t ci : pool.by_column[j]) {
                    Description refined = parent.description.extended(pool.conditions[ci]);
                    std::string key = refined.key();
                    if (!seen.insert(std::move(key)).second) continue;
                    items.push_back({std::move(refined), &parent.usage, ci});
                }
            }
        }
    }
    return best;
}

SubgroupList ssd_plus_plus(const Dataset& data, const SearchConfig& config,
                           const Encoder& encoder, const ConditionPool& pool) {
    SubgroupList model = SubgroupList::empty_model(data);
    model.code.model_bits = universal_int_code(1);
    model.code.default_data_bits = encoder.empty_model_data_bits();
    model.code.data_bits = model.code.default_data_bits;

    RowSet default_cover = RowSet::all(data.n_rows());

    for (;;) {
        MdlGainScorer scorer(encoder, model, config.min_usage, config.gain_mode);
        std::optional<BeamCandidate> best =
            beam_search(data, pool, default_cover, scorer, config);
        if (!best || best->gain_total <= 0.0) break;

        const std::vector<double> values = values_at(data.target(), best->usage);
        const Encoder::SubgroupCode sub_code = encoder.subgroup_data_bits(values);

        Subgroup sg;
        sg.description = best->description;
        sg.stats = GaussianStats::of(values);
        sg.usage = best->usage;
        sg.variance_floored = sub_code.floored;
        sg.cost_bits = sub_code.cost_bits;

        // Incremental cache update, consistent with the gain definition: the
        // usage rows leave the default (fixed) code, the subgroup code and
        // model bits are added.
        const double removed_fixed = encoder.fixed_bits(
            sg.stats, data.theta_d().mean(), encoder.default_variance());
        const double old_total = model.code.total_bits();

        model.subgroups.push_back(std::move(sg));
        model.code.per_subgroup_data_bits.push_back(sub_code.bits);
        model.code.default_data_bits -= removed_fixed;
        model.code.data_bits += sub_code.bits - removed_fixed;
        model.code.model_bits = encoder.model_bits(model);

        assert(model.code.total_bits() < old_total);
        (void)old_total;

        default_cover.subtract(best->usage);
    }
    return model;
}

SubgroupList ssd_plus_plus(const Dataset& data, const SearchConfig& config) {
    const BinningScheme binning = equal_frequency_cuts(data, config.n_cut);
    const EncodingConfig enc_config = EncodingConfig::for_dataset(data, config.n_cut);
    const Encoder encoder(data, binning, enc_config);
    const ConditionPool pool = ConditionPool::build(data, binning);
    return ssd_plus_plus(data, config, encoder, pool);
}

}  // namespace ssdl
