#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssdl/dataset.hpp"
#include "ssdl/encoding.hpp"
#include "ssdl/model.hpp"

namespace ssdl {

struct SearchConfig {
    int beam_width = 100;
    int max_depth = 5;
    int n_cut = 5;
    std::size_t min_usage = 2;
    enum class GainMode { Normalized, Absolute } gain_mode = GainMode::Normalized;
    int threads = 0;        // 0 = runtime default
    bool parallel = true;   // false selects the serial reference kernel
};

struct BeamCandidate {
    Description description;
    RowSet usage;              // rows within the base cover that match
    std::size_t usage_count = 0;
    double rank_score = -std::numeric_limits<double>::infinity();
    double gain_per_row = -std::numeric_limits<double>::infinity();
    double gain_total = -std::numeric_limits<double>::infinity();
    bool valid = false;
    std::string key;           // canonical description key (tie-break)
};

// Total tie-break order: rank desc, usage desc, description size asc,
// canonical key asc. Makes every search result schedule-independent.
bool candidate_better(const BeamCandidate& a, const BeamCandidate& b);

// Every expressible single condition on the dataset, with its full-dataset
// cover, in a fixed deterministic order.
struct ConditionPool {
    std::vector<Condition> conditions;
    std::vector<RowSet> covers;
    std::vector<std::vector<std::size_t>> by_column;  // condition ids per column

    static ConditionPool build(const Dataset& data, const BinningScheme& binning);
};

std::vector<Condition> enumerate_conditions(const Dataset& data,
                                            const BinningScheme& binning);

// All one-condition extensions of `candidate` on unused columns,
// canonicalized and deduplicated.
std::vector<Description> generate_refinements(const Description& candidate,
                                              const Dataset& data,
                                              const BinningScheme& binning);

// Scores one candidate given the target values of its usage cover.
class CandidateScorer {
public:
    virtual ~CandidateScorer() = default;
    struct Score {
        double rank = -std::numeric_limits<double>::infinity();
        double per_row = -std::numeric_limits<double>::infinity();
        double total = -std::numeric_limits<double>::infinity();
        bool valid = false;
    };
    virtual Score score(const Description& description,
                        std::span<const double> usage_values) const = 0;
};

class MdlGainScorer : public CandidateScorer {
public:
    MdlGainScorer(const Encoder& encoder, const SubgroupList& model,
                  std::size_t min_usage, SearchConfig::GainMode mode)
        : encoder_(encoder), model_(model), min_usage_(min_usage), mode_(mode) {}

    Score score(const Description& description,
                std::span<const double> usage_values) const override;

private:
    const Encoder& encoder_;
    const SubgroupList& model_;
    std::size_t min_usage_;
    SearchConfig::GainMode mode_;
};

// One beam-level work item: a parent cover to intersect with one pool
// condition (level 1 uses the base cover as parent).
struct LevelItem {
    Description description;
    const RowSet* parent = nullptr;
    std::size_t condition_id = 0;
};

// Data-parallel scoring kernel (OpenMP) and its serial reference. Both
// return candidates in input order, so downstream selection is identical.
std::vector<BeamCandidate> score_level(const Dataset& data,
                                       const ConditionPool& pool,
                                       const std::vector<LevelItem>& items,
                                       const CandidateScorer& scorer,
                                       int threads);
std::vector<BeamCandidate> score_level_serial(const Dataset& data,
                                              const ConditionPool& pool,
                                              const std::vector<LevelItem>& items,
                                              const CandidateScorer& scorer);

// Level-wise beam search over the rows in `base_cover`. Returns the best
// candidate seen at any depth with usage >= min_usage and rank > 0.
// `on_candidate`, when set, observes every valid scored candidate in a
// deterministic order.
std::optional<BeamCandidate> beam_search(
    const Dataset& data, const ConditionPool& pool, const RowSet& base_cover,
    const CandidateScorer& scorer, const SearchConfig& config,
    const std::function<void(const BeamCandidate&)>& on_candidate = {});

// The greedy mining loop: repeatedly append the best positive-gain
// candidate found by beam search on the remaining (default-cover) rows.
SubgroupList ssd_plus_plus(const Dataset& data, const SearchConfig& config);

// Variant reusing precomputed structures (the CLI and tests share these).
SubgroupList ssd_plus_plus(const Dataset& data, const SearchConfig& config,
                           const Encoder& encoder, const ConditionPool& pool);

}  // namespace ssdl
