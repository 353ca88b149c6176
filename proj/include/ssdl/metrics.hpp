#pragma once

#include <string>
#include <vector>

#include "ssdl/encoding.hpp"
#include "ssdl/model.hpp"

namespace ssdl {

struct EvaluationReport {
    double swkl_total = 0.0;
    double swkl_per_row = 0.0;
    std::size_t num_subgroups = 0;
    double avg_conditions = 0.0;
    double sigma_top1_norm = 1.0;  // sigma of first subgroup / sigma_d
    double avg_jaccard = 0.0;
    double compression_ratio = 1.0;
    double runtime_seconds = 0.0;
};

// KL divergence between two normals, in bits; tiny negative rounding is
// clamped to zero.
double kl_normal(const GaussianStats& p, const GaussianStats& q);

// Sum of usage-weighted KL divergences against the fixed default
// distribution, in list order. Zero-variance stats are floored.
double swkl(const SubgroupList& model, double variance_floor = 0.0);

// Mean pairwise Jaccard index of the independent full-dataset covers.
// Fewer than two descriptions -> 0; a pair of two empty covers -> 0.
double avg_jaccard(const std::vector<Description>& descriptions, const Dataset& dataset);

// L(D,M) / L(D | theta_d).
double compression_ratio(const SubgroupList& model, const Encoder& encoder);

EvaluationReport summarize(const SubgroupList& model, const Dataset& dataset,
                           const Encoder& encoder, double runtime_seconds);

// Aligned-text rendering in Table-2 column order.
std::string report_table(const std::vector<std::pair<std::string, EvaluationReport>>& rows);

}  // namespace ssdl
