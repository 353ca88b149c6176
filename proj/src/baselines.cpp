#include "ssdl/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace ssdl {

double wkl_mu(const GaussianStats& stats_s, const GaussianStats& theta_d) {
    const double var_d = theta_d.variance();
    if (var_d <= 0.0) throw std::invalid_argument("wkl_mu requires positive dataset variance");
    const double diff = stats_s.mean() - theta_d.mean();
    return static_cast<double>(stats_s.n) * diff * diff / (2.0 * var_d) *
           std::numbers::log2e;
}

CandidateScorer::Score WklScorer::score(const Description&,
                                        std::span<const double> usage_values) const {
    Score s;
    if (usage_values.size() < min_coverage_ || usage_values.size() < 2) return s;
    const GaussianStats stats = GaussianStats::of(usage_values);
    const double score = wkl_mu(stats, theta_d_);
    s.rank = score;
    s.total = score;
    s.per_row = score / static_cast<double>(usage_values.size());
    s.valid = true;
    return s;
}

TopkResult topk_miner(const Dataset& dataset, const BaselineConfig& config) {
    const BinningScheme binning = equal_frequency_cuts(dataset, config.search.n_cut);
    const ConditionPool pool = ConditionPool::build(dataset, binning);
    const RowSet all = RowSet::all(dataset.n_rows());
    const WklScorer scorer(dataset.theta_d(), config.min_coverage);

    SearchConfig search = config.search;
    search.min_usage = std::max(search.min_usage, config.min_coverage);

    // Pool of every distinct valid candidate seen at any beam level.
    std::map<std::string, BeamCandidate> seen;
    beam_search(dataset, pool, all, scorer, search,
                [&](const BeamCandidate& c) { seen.emplace(c.key, c); });

    std::vector<BeamCandidate> ranked;
    ranked.reserve(seen.size());
    for (auto& [key, cand] : seen) ranked.push_back(std::move(cand));
    std::sort(ranked.begin(), ranked.end(), candidate_better);

    TopkResult result;
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(config.k),
                                                ranked.size());
    for (std::size_t i = 0; i < k; ++i) {
        TopkResult::Entry entry;
        entry.description = ranked[i].description;
        entry.stats = GaussianStats::of(values_at(dataset.target(), ranked[i].usage));
        entry.score = ranked[i].rank_score;
        result.subgroups.push_back(std::move(entry));
    }
    return result;
}

SubgroupList listify_topk(const TopkResult& topk, const Dataset& dataset) {
    SubgroupList model = SubgroupList::empty_model(dataset);
    RowSet remaining = RowSet::all(dataset.n_rows());
    for (const auto& entry : topk.subgroups) {
        Subgroup sg;
        sg.description = entry.description;
        sg.usage = entry.description.cover(dataset);
        sg.usage &= remaining;
        remaining.subtract(sg.usage);
        sg.stats = GaussianStats::of(values_at(dataset.target(), sg.usage));
        model.subgroups.push_back(std::move(sg));
    }
    return model;
}

SubgroupList seq_cover_miner(const Dataset& dataset, const BaselineConfig& config) {
    const BinningScheme binning = equal_frequency_cuts(dataset, config.search.n_cut);
    const ConditionPool pool = ConditionPool::build(dataset, binning);
    const WklScorer scorer(dataset.theta_d(), config.min_coverage);
    SearchConfig search = config.search;
    search.min_usage = std::max(search.min_usage, config.min_coverage);

    SubgroupList model = SubgroupList::empty_model(dataset);
    RowSet remaining = RowSet::all(dataset.n_rows());
    while (remaining.count() >= config.min_coverage) {
        std::optional<BeamCandidate> best =
            beam_search(dataset, pool, remaining, scorer, search);
        if (!best || best->rank_score <= 0.0 || best->usage_count < config.min_coverage)
            break;
        Subgroup sg;
        sg.description = best->description;
        sg.usage = best->usage;
        sg.stats = GaussianStats::of(values_at(dataset.target(), best->usage));
        model.subgroups.push_back(std::move(sg));
        remaining.subtract(best->usage);
    }
    return model;
}

}  // namespace ssdl
