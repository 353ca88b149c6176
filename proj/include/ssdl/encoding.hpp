#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "ssdl/dataset.hpp"
#include "ssdl/model.hpp"

namespace ssdl {

struct EncodingConfig {
    int n_cut = 5;
    double tau = 1.0;  // effect-size prior scale, fixed at 1
    double variance_floor = 1.0 / 12.0;

    static EncodingConfig for_dataset(const Dataset& data, int n_cut = 5) {
        EncodingConfig cfg;
        cfg.n_cut = n_cut;
        const double delta = data.resolution();
        cfg.variance_floor = delta * delta / 12.0;
        return cfg;
    }
};

// Universal code for the positive integers:
// L_N(i) = log2 k0 + log2* i, k0 ~ 2.865064.
double universal_int_code(std::uint64_t i);

double log2_binomial(std::uint64_t n, std::uint64_t k);

// Number of expressible single conditions on a numeric column with c cut
// points: geq and leq per cut plus every closed interval, 2c + c(c-1)/2.
std::uint64_t numeric_condition_count(std::uint64_t cuts);

// All MDL code lengths for one dataset + binning + config. Stateless beyond
// the references it holds; safe for concurrent use.
class Encoder {
public:
    Encoder(const Dataset& data, const BinningScheme& binning, EncodingConfig config);

    const EncodingConfig& config() const { return config_; }
    const Dataset& data() const { return data_; }
    const BinningScheme& binning() const { return binning_; }

    double floored(double variance) const {
        return variance > config_.variance_floor ? variance : config_.variance_floor;
    }
    // Dataset target variance with the floor applied.
    double default_variance() const { return default_variance_; }

    // Bits to specify one condition on the given column; nullopt when the
    // column admits no condition (numeric with zero cuts).
    std::optional<double> condition_bits(std::size_t column) const;

    // L_N(|a|) + log2 C(|V|, |a|) + sum of per-variable condition bits.
    double description_bits(const Description& description) const;

    // L(M); the subgroup count is coded as L_N(|S| + 1) so the empty model
    // is in the model class.
    double model_bits(const SubgroupList& model) const;

    // Fixed-parameter Gaussian code for the accumulated values:
    // (n/2) log2 2pi + (n/2) log2 var + RSS/(2 var) * log2 e.
    double fixed_bits(const GaussianStats& values, double mu, double variance) const;

    // Bayesian Gaussian code -log2 P_Bayes with tau = 1; variance floored.
    // Requires n >= 2.
    double bayes_bits(const GaussianStats& stats) const;

    struct PriorPoints {
        double y1 = 0.0;
        double y2 = 0.0;
        bool degenerate = false;  // all cover values equal
    };
    // Deterministic two-point selection: sort by (|y - mu_d|, y, position),
    // y1 = first, y2 = first later value != y1.
    PriorPoints select_prior_points(std::span<const double> cover_values) const;

    struct SubgroupCode {
        double bits = 0.0;
        double cost_bits = 0.0;  // L_cost of the two conditioning points
        bool floored = false;
    };
    // L(Y_i) = L_Bayes(Y_i) - L_Bayes(Y^2_i) + fixed(Y^2_i | theta_d).
    SubgroupCode subgroup_data_bits(std::span<const double> cover_values) const;

    double default_data_bits(const GaussianStats& default_values) const;
    double empty_model_data_bits() const;
    double empty_model_total_bits() const;

    // Full from-scratch code lengths; also refreshes the model's cache
    // fields through the returned value.
    CodeLengths total_code(const SubgroupList& model) const;

    struct Gain {
        double per_row = -std::numeric_limits<double>::infinity();
        double total = -std::numeric_limits<double>::infinity();
        std::size_t usage = 0;
        bool valid = false;
    };
    // Normalized gain of appending `candidate` after all current subgroups,
    // evaluated on the rows currently in the default cover.
    Gain gain(const SubgroupList& model, const Description& candidate,
              std::span<const double> usage_values, std::size_t min_usage = 2) const;

private:
    const Dataset& data_;
    const BinningScheme& binning_;
    EncodingConfig config_;
    double default_variance_ = 0.0;
};

}  // namespace ssdl
