#pragma once

#include <cstdint>

#include "ssdl/search.hpp"

namespace ssdl {

// Deterministic RNG (splitmix64 core) so generated datasets are identical
// across standard libraries and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

    // Box-Muller.
    double normal(double mean, double stddev);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct SynthColumnSpec {
    ColumnKind kind = ColumnKind::Numeric;
    int domain = 3;  // nominal only
};

struct PlantedSubgroupSpec {
    double fraction = 0.1;  // expected fraction of rows in the subgroup
    double shift = 2.0;     // target mean shift in sigma_0 units
    double ratio = 0.5;     // target sigma as a ratio of sigma_0
};

struct PlantedSpec {
    std::size_t n_rows = 1000;
    std::vector<SynthColumnSpec> noise_columns;
    std::vector<PlantedSubgroupSpec> planted;
    double mu0 = 10.0;
    double sigma0 = 2.0;
    std::uint64_t seed = 1;
};

struct SynthResult {
    Dataset dataset;
    // One description per planted subgroup, an equality condition on the
    // marker column; covers are disjoint by construction.
    std::vector<Description> planted_descriptions;
    std::vector<RowSet> ground_truth;
};

// Rows are assigned to at most one planted subgroup via a dedicated marker
// column; background rows draw the target from N(mu0, sigma0^2), planted
// rows from N(mu0 + shift*sigma0, (ratio*sigma0)^2).
SynthResult generate_planted(const PlantedSpec& spec);

// Brute-force argmax of the normalized gain over every canonical
// description of depth <= d_max, scored on the empty model. Oracle for
// beam_search; guarded to small instances.
BeamCandidate exhaustive_best_subgroup(const Dataset& dataset, int d_max,
                                       const SearchConfig& config);

// From-scratch recomputation of all code lengths via a plain row loop,
// ignoring every cache. Oracle for the incremental bookkeeping.
CodeLengths recompute_total_code(const SubgroupList& model, const Dataset& dataset,
                                 const EncodingConfig& config);

}  // namespace ssdl
