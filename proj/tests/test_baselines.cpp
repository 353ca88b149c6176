#include <doctest.h>

#include <cmath>

#include "ssdl/baselines.hpp"
#include "ssdl/metrics.hpp"
#include "ssdl/synth.hpp"

using namespace ssdl;

namespace {

// Frozen: n_s = 10, mean shift 2, unit dataset variance.
constexpr double kWklExample = 28.853900817779268;

GaussianStats stats_with(std::size_t n, double mean, double variance) {
    GaussianStats s;
    s.n = n;
    s.sum = mean * static_cast<double>(n);
    s.sum_sq = static_cast<double>(n) * (variance + mean * mean);
    return s;
}

SynthResult planted_three(std::uint64_t seed) {
    PlantedSpec spec;
    spec.n_rows = 3000;
    spec.seed = seed;
    spec.noise_columns = {{ColumnKind::Numeric, 0}, {ColumnKind::Binary, 2}};
    spec.planted = {{0.12, 3.0, 0.25}, {0.12, -2.5, 0.25}, {0.1, 2.0, 0.3}};
    return generate_planted(spec);
}

double cover_jaccard(const RowSet& a, const RowSet& b) {
    const std::size_t inter = a.intersection_count(b);
    const std::size_t uni = a.count() + b.count() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

TEST_CASE("mean-only weighted KL") {
    const GaussianStats theta_d = stats_with(100, 0.0, 1.0);
    CHECK(wkl_mu(stats_with(10, 0.0, 5.0), theta_d) == doctest::Approx(0.0));
    CHECK(std::abs(wkl_mu(stats_with(10, 2.0, 1.0), theta_d) - kWklExample) < 1e-9);
    // Linear in the usage count.
    CHECK(wkl_mu(stats_with(20, 2.0, 1.0), theta_d) ==
          doctest::Approx(2.0 * kWklExample));
    CHECK_THROWS(wkl_mu(stats_with(10, 2.0, 1.0), stats_with(5, 0.0, 0.0)));
}

TEST_CASE("wkl scorer enforces the coverage threshold") {
    const WklScorer scorer(stats_with(100, 0.0, 1.0), 5);
    const Description dummy;
    CHECK_FALSE(scorer.score(dummy, std::vector<double>{1, 2, 3, 4}).valid);
    const auto s = scorer.score(dummy, std::vector<double>{2, 2, 2, 2, 2});
    REQUIRE(s.valid);
    CHECK(s.rank == doctest::Approx(wkl_mu(stats_with(5, 2.0, 0.0),
                                           stats_with(100, 0.0, 1.0))));
}

TEST_CASE("top-k returns distinct descriptions in non-increasing score order") {
    const SynthResult synth = planted_three(101);
    BaselineConfig config;
    config.k = 5;
    const TopkResult topk = topk_miner(synth.dataset, config);
    REQUIRE(topk.subgroups.size() >= 3);
    CHECK(topk.subgroups.size() <= 5);
    for (std::size_t i = 1; i < topk.subgroups.size(); ++i) {
        CHECK(topk.subgroups[i - 1].score >= topk.subgroups[i].score);
        for (std::size_t j = 0; j < i; ++j)
            CHECK(topk.subgroups[i].description.key() !=
                  topk.subgroups[j].description.key());
    }

    // The best-scoring description should isolate a planted segment.
    const RowSet top_cover = topk.subgroups.front().description.cover(synth.dataset);
    double best = 0.0;
    for (const auto& truth : synth.ground_truth)
        best = std::max(best, cover_jaccard(top_cover, truth));
    CHECK(best >= 0.9);
}

TEST_CASE("list-ified top-k has disjoint usages and keeps theta_d fixed") {
    const SynthResult synth = planted_three(102);
    BaselineConfig config;
    config.k = 4;
    const SubgroupList model = listify_topk(topk_miner(synth.dataset, config),
                                            synth.dataset);
    CHECK(model.default_stats.n == synth.dataset.n_rows());

    RowSet seen(synth.dataset.n_rows());
    for (const auto& sg : model.subgroups) {
        CHECK(seen.intersection_count(sg.usage) == 0);
        seen |= sg.usage;
        CHECK(sg.stats.n == sg.usage.count());
    }
}

TEST_CASE("sequential covering removes covers and recovers planted segments") {
    const SynthResult synth = planted_three(103);
    const SubgroupList model = seq_cover_miner(synth.dataset, BaselineConfig{});
    REQUIRE(model.size() >= 3);

    RowSet seen(synth.dataset.n_rows());
    for (const auto& sg : model.subgroups) {
        CHECK(sg.usage.count() >= 2);
        CHECK(seen.intersection_count(sg.usage) == 0);
        seen |= sg.usage;
    }

    for (const auto& truth : synth.ground_truth) {
        double best = 0.0;
        for (const auto& sg : model.subgroups)
            best = std::max(best,
                            cover_jaccard(sg.description.cover(synth.dataset), truth));
        CHECK(best >= 0.9);
    }
}

TEST_CASE("dispersion-aware mining scores at least as well as top-k on lists") {
    const SynthResult synth = planted_three(104);
    const Dataset& d = synth.dataset;

    const SubgroupList mdl_model = ssd_plus_plus(d, SearchConfig{});
    REQUIRE(mdl_model.size() >= 1);

    BaselineConfig config;
    config.k = static_cast<int>(mdl_model.size());
    const SubgroupList topk_model = listify_topk(topk_miner(d, config), d);

    const double floor = EncodingConfig::for_dataset(d, 5).variance_floor;
    CHECK(swkl(mdl_model, floor) >= swkl(topk_model, floor));
}
