#pragma once

#include "ssdl/search.hpp"

namespace ssdl {

struct BaselineConfig {
    int k = 1;  // top-k only
    SearchConfig search;
    std::size_t min_coverage = 2;
};

// Usage-weighted KL divergence ignoring dispersion:
// n_s (mu_s - mu_d)^2 / (2 sigma_d^2) * log2 e.
double wkl_mu(const GaussianStats& stats_s, const GaussianStats& theta_d);

// Scores candidates by WKL_mu of the usage cover against the fixed dataset
// distribution.
class WklScorer : public CandidateScorer {
public:
    WklScorer(const GaussianStats& theta_d, std::size_t min_coverage)
        : theta_d_(theta_d), min_coverage_(min_coverage) {}

    Score score(const Description& description,
                std::span<const double> usage_values) const override;

private:
    GaussianStats theta_d_;
    std::size_t min_coverage_;
};

struct TopkResult {
    struct Entry {
        Description description;
        GaussianStats stats;  // over the full-dataset cover
        double score = 0.0;
    };
    std::vector<Entry> subgroups;  // non-increasing score
};

// Beam search over the full dataset maximizing WKL_mu; k best distinct
// descriptions, no cover removal between picks.
TopkResult topk_miner(const Dataset& dataset, const BaselineConfig& config);

// List-ify a top-k set in score order with overlap removed, so it can be
// evaluated with the shared list metrics.
SubgroupList listify_topk(const TopkResult& topk, const Dataset& dataset);

// Sequential covering: repeatedly take the max-WKL_mu subgroup on the
// remaining rows (theta_d stays fixed) and remove its cover.
SubgroupList seq_cover_miner(const Dataset& dataset, const BaselineConfig& config);

}  // namespace ssdl
