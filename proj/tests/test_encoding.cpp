#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ssdl/encoding.hpp"
#include "ssdl/synth.hpp"

using namespace ssdl;

namespace {

// Frozen against an independent high-precision recomputation.
constexpr double kLn1 = 1.5185673663648484;
constexpr double kLn2 = 2.5185673663648484;
constexpr double kModelExample = 7.0371347327296968;     // LN(2)+LN(1)+log2(4)+1
constexpr double kLog2Twenty = 4.3219280948873623;       // N(5) = 20
constexpr double kBayesPm1 = 5.2697254445690563;         // values {-1,+1}
constexpr double kFixedPm1 = 4.0941911703612822;         // {-1,+1} under N(0,1)

// Four explanatory columns: binary, nominal(3), numeric, constant numeric.
Dataset fixture() {
    return Dataset::from_csv_text(
        "flag,cat,x,z,y\n"
        "on,a,1,5,-1\n"
        "off,b,2,5,1\n"
        "on,c,3,5,-1\n"
        "off,a,4,5,1\n");
}

}  // namespace

TEST_CASE("universal integer code values and monotonicity") {
    CHECK(std::abs(universal_int_code(1) - kLn1) < 1e-9);
    CHECK(std::abs(universal_int_code(2) - kLn2) < 1e-9);
    double prev = universal_int_code(1);
    for (std::uint64_t i = 2; i <= 10000; ++i) {
        const double cur = universal_int_code(i);
        CHECK(cur > prev);
        prev = cur;
    }
    CHECK_THROWS(universal_int_code(0));
}

TEST_CASE("log2 binomial coefficients") {
    CHECK(std::abs(log2_binomial(4, 1) - 2.0) < 1e-9);
    CHECK(std::abs(log2_binomial(10, 3) - std::log2(120.0)) < 1e-9);
    CHECK(log2_binomial(7, 0) == doctest::Approx(0.0));
    CHECK(log2_binomial(7, 7) == doctest::Approx(0.0));
    CHECK_THROWS(log2_binomial(3, 4));
}

TEST_CASE("expressible condition counts for numeric columns") {
    CHECK(numeric_condition_count(0) == 0);
    CHECK(numeric_condition_count(1) == 2);
    CHECK(numeric_condition_count(5) == 20);
}

TEST_CASE("per-condition code lengths by column kind") {
    const Dataset d = fixture();
    BinningScheme binning;
    binning.cuts.resize(d.n_cols());
    binning.cuts[2] = {1.5, 2.0, 2.5, 3.0, 3.5};  // five cuts on x

    const Encoder enc(d, binning, EncodingConfig{});
    CHECK(*enc.condition_bits(0) == 1.0);                           // binary
    CHECK(std::abs(*enc.condition_bits(1) - std::log2(3.0)) < 1e-9);  // nominal
    CHECK(std::abs(*enc.condition_bits(2) - kLog2Twenty) < 1e-9);   // numeric, c=5
    CHECK_FALSE(enc.condition_bits(3).has_value());                 // no cuts
}

TEST_CASE("model code for one single-binary-condition subgroup over 4 variables") {
    const Dataset d = fixture();
    BinningScheme binning;
    binning.cuts.resize(d.n_cols());
    const Encoder enc(d, binning, EncodingConfig{});

    SubgroupList empty = SubgroupList::empty_model(d);
    CHECK(std::abs(enc.model_bits(empty) - kLn1) < 1e-9);

    SubgroupList one = empty;
    one.subgroups.push_back(
        {Description{{Condition{0, Op::Equals, 0.0, 0.0}}}, {}, {}, false, 0.0});
    CHECK(std::abs(enc.model_bits(one) - kModelExample) < 1e-9);
}

TEST_CASE("description code grows with extra conditions") {
    const Dataset d = fixture();
    BinningScheme binning;
    binning.cuts.resize(d.n_cols());
    binning.cuts[2] = {2.5};
    const Encoder enc(d, binning, EncodingConfig{});

    const Description one{{Condition{0, Op::Equals, 0.0, 0.0}}};
    const Description two = one.extended(Condition{2, Op::Geq, 2.5, 0.0});
    CHECK(enc.description_bits(Description{}) == 0.0);
    CHECK(enc.description_bits(two) > enc.description_bits(one));
    // Pattern length 2 over 4 variables, one binary + one numeric (c=1).
    const double expect = universal_int_code(2) + log2_binomial(4, 2) + 1.0 + 1.0;
    CHECK(std::abs(enc.description_bits(two) - expect) < 1e-9);
}

TEST_CASE("fixed-parameter gaussian code") {
    const Dataset d = fixture();
    BinningScheme binning;
    binning.cuts.resize(d.n_cols());
    const Encoder enc(d, binning, EncodingConfig{});

    GaussianStats pm1;
    pm1.add(-1.0);
    pm1.add(1.0);
    CHECK(std::abs(enc.fixed_bits(pm1, 0.0, 1.0) - kFixedPm1) < 1e-9);

    // With its own ML parameters the residual term collapses to (n/2) log2 e.
    GaussianStats s = GaussianStats::of(std::vector<double>{0.5, 2.0, -3.25, 1.0, 4.5});
    const double n = static_cast<double>(s.n);
    const double expect = n / 2.0 * std::log2(2.0 * std::numbers::pi * s.variance()) +
                          n / 2.0 * std::numbers::log2e;
    CHECK(std::abs(enc.fixed_bits(s, s.mean(), s.variance()) - expect) < 1e-9);

    CHECK(enc.fixed_bits(GaussianStats{}, 0.0, 1.0) == 0.0);
    CHECK_THROWS(enc.fixed_bits(pm1, 0.0, 0.0));
}

TEST_CASE("bayesian gaussian code on {-1,+1}") {
    const Dataset d = fixture();
    BinningScheme binning;
    binning.cuts.resize(d.n_cols());
    const Encoder enc(d, binning, EncodingConfig{});  // floor 1/12, below var 1

    GaussianStats pm1;
    pm1.add(-1.0);
    pm1.add(1.0);
    CHECK(std::abs(enc.bayes_bits(pm1) - kBayesPm1) < 1e-9);

    GaussianStats one;
    one.add(0.0);
    CHECK_THROWS(enc.bayes_bits(one));
}

TEST_CASE("prior point selection is deterministic") {
    const Dataset d = fixture();  // theta_d mean is 0
    REQUIRE(d.theta_d().mean() == 0.0);
    BinningScheme binning;
    binning.cuts.resize(d.n_cols());
    const Encoder enc(d, binning, EncodingConfig{});

    // Closest to the dataset mean first, then the next distinct value.
    {
        const auto p = enc.select_prior_points(std::vector<double>{3.0, -1.0, 2.0});
        CHECK(p.y1 == -1.0);
        CHECK(p.y2 == 2.0);
        CHECK_FALSE(p.degenerate);
    }
    // Distance tie broken by the smaller value.
    {
        const auto p = enc.select_prior_points(std::vector<double>{1.0, -1.0});
        CHECK(p.y1 == -1.0);
        CHECK(p.y2 == 1.0);
    }
    // Duplicates of the first point are skipped for the second.
    {
        const auto p = enc.select_prior_points(std::vector<double>{0.5, 0.5, -2.0});
        CHECK(p.y1 == 0.5);
        CHECK(p.y2 == -2.0);
    }
    // All-equal cover.
    {
        const auto p = enc.select_prior_points(std::vector<double>{2.0, 2.0, 2.0});
        CHECK(p.degenerate);
        CHECK(p.y1 == 2.0);
        CHECK(p.y2 == 2.0);
    }
    CHECK_THROWS(enc.select_prior_points(std::vector<double>{1.0}));
}

TEST_CASE("two-point covers reduce to the fixed default code exactly") {
    const Dataset d = fixture();
    BinningScheme binning;
    binning.cuts.resize(d.n_cols());
    const Encoder enc(d, binning, EncodingConfig{});

    for (auto [a, b] : {std::pair{-1.0, 1.0}, {0.25, 3.5}, {-7.0, -6.5}}) {
        const std::vector<double> two{a, b};
        const GaussianStats stats = GaussianStats::of(two);
        const auto code = enc.subgroup_data_bits(two);
        const double fixed =
            enc.fixed_bits(stats, d.theta_d().mean(), enc.default_variance());
        // The Bayes terms cancel, leaving only the conditioning cost.
        CHECK(std::abs(code.bits - fixed) < 1e-9);
        CHECK(std::abs(code.cost_bits - (fixed - enc.bayes_bits(stats))) < 1e-9);
    }
}

TEST_CASE("degenerate covers get the variance floor and stay finite") {
    const Dataset d = fixture();
    BinningScheme binning;
    binning.cuts.resize(d.n_cols());
    const Encoder enc(d, binning, EncodingConfig{});

    const std::vector<double> constant(10, 4.0);
    const auto code = enc.subgroup_data_bits(constant);
    CHECK(code.floored);
    CHECK(std::isfinite(code.bits));
    CHECK(std::isfinite(code.cost_bits));
}

TEST_CASE("a concentrated cover compresses against the default code") {
    PlantedSpec spec;
    spec.n_rows = 1200;
    spec.seed = 11;
    spec.planted = {{0.2, 3.0, 0.2}};
    const SynthResult synth = generate_planted(spec);
    const Dataset& d = synth.dataset;

    const BinningScheme binning = equal_frequency_cuts(d, 5);
    const Encoder enc(d, binning, EncodingConfig::for_dataset(d, 5));

    const std::vector<double> values =
        values_at(d.target(), synth.ground_truth.front());
    REQUIRE(values.size() > 100);
    const GaussianStats stats = GaussianStats::of(values);
    const double under_default =
        enc.fixed_bits(stats, d.theta_d().mean(), enc.default_variance());
    CHECK(enc.subgroup_data_bits(values).bits < under_default);
}

TEST_CASE("gain validity and sign on planted vs null covers") {
    PlantedSpec spec;
    spec.n_rows = 1000;
    spec.seed = 5;
    spec.noise_columns = {{ColumnKind::Binary, 2}};
    spec.planted = {{0.15, 3.0, 0.25}};
    const SynthResult synth = generate_planted(spec);
    const Dataset& d = synth.dataset;

    const BinningScheme binning = equal_frequency_cuts(d, 5);
    const Encoder enc(d, binning, EncodingConfig::for_dataset(d, 5));
    const SubgroupList empty = SubgroupList::empty_model(d);

    // The planted marker description has a strongly positive gain.
    const Description& planted = synth.planted_descriptions.front();
    const auto planted_values = values_at(d.target(), planted.cover(d));
    const auto g = enc.gain(empty, planted, planted_values);
    REQUIRE(g.valid);
    CHECK(g.total > 0.0);
    CHECK(std::abs(g.per_row - g.total / static_cast<double>(g.usage)) < 1e-12);

    // On pure noise a random binary split pays the model bits for nothing.
    PlantedSpec null_spec;
    null_spec.n_rows = 1000;
    null_spec.seed = 6;
    null_spec.noise_columns = {{ColumnKind::Binary, 2}};
    const SynthResult null_synth = generate_planted(null_spec);
    const Dataset& nd = null_synth.dataset;
    const BinningScheme null_binning = equal_frequency_cuts(nd, 5);
    const Encoder null_enc(nd, null_binning, EncodingConfig::for_dataset(nd, 5));
    const SubgroupList null_empty = SubgroupList::empty_model(nd);
    const Description noise{{Condition{0, Op::Equals, 0.0, 0.0}}};
    const auto g_noise = null_enc.gain(null_empty, noise,
                                       values_at(nd.target(), noise.cover(nd)));
    REQUIRE(g_noise.valid);
    CHECK(g_noise.total < 0.0);

    // Below the usage threshold the gain is marked invalid.
    const auto g_small = enc.gain(empty, planted, std::vector<double>{1.0}, 2);
    CHECK_FALSE(g_small.valid);
    CHECK(enc.gain(empty, planted, planted_values, planted_values.size() + 1).valid ==
          false);
}

TEST_CASE("appending a subgroup changes the total code by exactly its gain") {
    PlantedSpec spec;
    spec.n_rows = 1500;
    spec.seed = 23;
    spec.noise_columns = {{ColumnKind::Numeric, 0}};
    spec.planted = {{0.15, 2.5, 0.3}, {0.1, -2.0, 0.4}};
    const SynthResult synth = generate_planted(spec);
    const Dataset& d = synth.dataset;

    const BinningScheme binning = equal_frequency_cuts(d, 5);
    const Encoder enc(d, binning, EncodingConfig::for_dataset(d, 5));

    SubgroupList model = SubgroupList::empty_model(d);
    RowSet default_cover = RowSet::all(d.n_rows());
    double total = enc.total_code(model).total_bits();
    CHECK(std::abs(total - enc.empty_model_total_bits()) < 1e-9);

    for (const Description& desc : synth.planted_descriptions) {
        const RowSet usage = desc.cover(d) & default_cover;
        const auto values = values_at(d.target(), usage);
        const auto g = enc.gain(model, desc, values);
        REQUIRE(g.valid);

        Subgroup sg;
        sg.description = desc;
        sg.usage = usage;
        sg.stats = GaussianStats::of(values);
        model.subgroups.push_back(std::move(sg));
        default_cover.subtract(usage);

        const double new_total = enc.total_code(model).total_bits();
        CHECK(std::abs(new_total - (total - g.total)) < 1e-6);
        total = new_total;
    }
}

TEST_CASE("empty model identities and the dataset variance floor") {
    const Dataset d = fixture();
    BinningScheme binning;
    binning.cuts.resize(d.n_cols());
    const EncodingConfig cfg = EncodingConfig::for_dataset(d, 5);
    // Target values {-1,1,...}: resolution 2, floor 4/12.
    CHECK(std::abs(cfg.variance_floor - 4.0 / 12.0) < 1e-12);

    const Encoder enc(d, binning, cfg);
    CHECK(std::abs(enc.empty_model_data_bits() -
                   enc.fixed_bits(d.theta_d(), d.theta_d().mean(),
                                  enc.default_variance())) < 1e-9);
    CHECK(std::abs(enc.empty_model_total_bits() -
                   (universal_int_code(1) + enc.empty_model_data_bits())) < 1e-9);

    const CodeLengths code = enc.total_code(SubgroupList::empty_model(d));
    CHECK(std::abs(code.total_bits() - enc.empty_model_total_bits()) < 1e-9);
    CHECK(code.per_subgroup_data_bits.empty());
}
