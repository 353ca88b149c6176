#include <doctest.h>

#include <cmath>

#include "ssdl/synth.hpp"

using namespace ssdl;

TEST_CASE("splitmix rng moments are sane and sequences are reproducible") {
    Rng a(123), b(123), c(124);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    CHECK(a.next_u64() != c.next_u64());

    Rng r(7);
    double sum = 0.0, sum_sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double v = r.normal(5.0, 2.0);
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean - 5.0) < 0.1);
    CHECK(std::abs(std::sqrt(var) - 2.0) < 0.1);

    Rng u(11);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.uniform(2.0, 3.0);
        CHECK(v >= 2.0);
        CHECK(v < 3.0);
    }
}

TEST_CASE("identical specs generate byte-identical datasets") {
    PlantedSpec spec;
    spec.n_rows = 500;
    spec.seed = 99;
    spec.noise_columns = {{ColumnKind::Numeric, 0}, {ColumnKind::Binary, 2},
                          {ColumnKind::Nominal, 4}};
    spec.planted = {{0.2, 2.0, 0.5}};

    const SynthResult a = generate_planted(spec);
    const SynthResult b = generate_planted(spec);
    CHECK(a.dataset.to_csv() == b.dataset.to_csv());

    spec.seed = 100;
    const SynthResult c = generate_planted(spec);
    CHECK(a.dataset.to_csv() != c.dataset.to_csv());
}

TEST_CASE("ground-truth row sets equal the marker description covers") {
    PlantedSpec spec;
    spec.n_rows = 1000;
    spec.seed = 55;
    spec.noise_columns = {{ColumnKind::Numeric, 0}};
    spec.planted = {{0.15, 2.0, 0.5}, {0.1, -1.5, 0.4}};
    const SynthResult synth = generate_planted(spec);

    REQUIRE(synth.planted_descriptions.size() == 2);
    REQUIRE(synth.ground_truth.size() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(synth.planted_descriptions[i].cover(synth.dataset) ==
              synth.ground_truth[i]);

    // Disjoint by construction.
    CHECK(synth.ground_truth[0].intersection_count(synth.ground_truth[1]) == 0);
}

TEST_CASE("planted sizes and target shifts match the spec parameters") {
    PlantedSpec spec;
    spec.n_rows = 5000;
    spec.seed = 56;
    spec.planted = {{0.2, 3.0, 0.25}};
    const SynthResult synth = generate_planted(spec);

    const std::size_t n = synth.ground_truth.front().count();
    CHECK(n > 0.15 * 5000);
    CHECK(n < 0.25 * 5000);

    const GaussianStats stats = GaussianStats::of(
        values_at(synth.dataset.target(), synth.ground_truth.front()));
    // mu0 + shift*sigma0 = 16, sigma = 0.25*sigma0 = 0.5.
    CHECK(std::abs(stats.mean() - 16.0) < 0.1);
    CHECK(std::abs(stats.stddev() - 0.5) < 0.1);
}

TEST_CASE("invalid planted specs are rejected") {
    PlantedSpec spec;
    spec.n_rows = 100;
    spec.planted = {{0.6, 1.0, 0.5}, {0.5, 1.0, 0.5}};
    CHECK_THROWS(generate_planted(spec));  // fractions sum to >= 1
    spec.planted = {{-0.1, 1.0, 0.5}};
    CHECK_THROWS(generate_planted(spec));
    spec.planted = {{0.1, 1.0, 0.0}};
    CHECK_THROWS(generate_planted(spec));
    spec.planted = {{0.001, 5.0, 0.1}};
    CHECK_THROWS_AS(generate_planted(spec), DataError);  // no rows drawn
}

TEST_CASE("exhaustive oracle refuses instances beyond its guard") {
    PlantedSpec spec;
    spec.n_rows = 2000;
    spec.seed = 1;
    const SynthResult synth = generate_planted(spec);
    CHECK_THROWS(exhaustive_best_subgroup(synth.dataset, 2, SearchConfig{}));

    spec.n_rows = 100;
    const SynthResult small = generate_planted(spec);
    CHECK_THROWS(exhaustive_best_subgroup(small.dataset, 3, SearchConfig{}));
}

TEST_CASE("recompute_total_code agrees with the encoder on a hand-built list") {
    PlantedSpec spec;
    spec.n_rows = 600;
    spec.seed = 61;
    spec.noise_columns = {{ColumnKind::Binary, 2}};
    spec.planted = {{0.2, 2.5, 0.3}};
    const SynthResult synth = generate_planted(spec);
    const Dataset& d = synth.dataset;

    SubgroupList model = SubgroupList::empty_model(d);
    Subgroup sg;
    sg.description = synth.planted_descriptions.front();
    sg.usage = synth.ground_truth.front();
    sg.stats = GaussianStats::of(values_at(d.target(), sg.usage));
    model.subgroups.push_back(std::move(sg));

    const EncodingConfig config = EncodingConfig::for_dataset(d, 5);
    const BinningScheme binning = equal_frequency_cuts(d, 5);
    const Encoder enc(d, binning, config);

    const CodeLengths a = enc.total_code(model);
    const CodeLengths b = recompute_total_code(model, d, config);
    CHECK(std::abs(a.total_bits() - b.total_bits()) < 1e-9);
    CHECK(std::abs(a.model_bits - b.model_bits) < 1e-9);
    CHECK(std::abs(a.default_data_bits - b.default_data_bits) < 1e-9);
}
