#include "ssdl/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ssdl {

double kl_normal(const GaussianStats& p, const GaussianStats& q) {
    const double vp = p.variance();
    const double vq = q.variance();
    if (vp <= 0.0 || vq <= 0.0)
        throw std::invalid_argument("kl_normal requires positive variances");
    const double mu_diff = p.mean() - q.mean();
    const double kl = -std::numbers::log2e / 2.0 + 0.5 * std::log2(vq / vp) +
                      (vp + mu_diff * mu_diff) / (2.0 * vq) * std::numbers::log2e;
    return kl > 0.0 ? kl : 0.0;
}

namespace {

GaussianStats floored_stats(const GaussianStats& s, double variance_floor) {
    if (s.variance() > variance_floor || variance_floor <= 0.0) return s;
    // Rebuild the accumulators so variance() reports the floor.
    GaussianStats out;
    out.n = s.n;
    out.sum = s.sum;
    const double m = s.mean();
    out.sum_sq = static_cast<double>(s.n) * (variance_floor + m * m);
    return out;
}

}  // namespace

double swkl(const SubgroupList& model, double variance_floor) {
    const GaussianStats theta_d = floored_stats(model.default_stats, variance_floor);
    double total = 0.0;
    for (const auto& sg : model.subgroups) {
        if (sg.stats.n == 0) continue;
        const GaussianStats stats = floored_stats(sg.stats, variance_floor);
        total += static_cast<double>(stats.n) * kl_normal(stats, theta_d);
    }
    return total;
}

double avg_jaccard(const std::vector<Description>& descriptions, const Dataset& dataset) {
    if (descriptions.size() < 2) return 0.0;
    std::vector<RowSet> covers;
    covers.reserve(descriptions.size());
    for (const auto& d : descriptions) covers.push_back(d.cover(dataset));

    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < covers.size(); ++i) {
        for (std::size_t j = i + 1; j < covers.size(); ++j) {
            ++pairs;
            const std::size_t inter = covers[i].intersection_count(covers[j]);
            const std::size_t uni = covers[i].count() + covers[j].count() - inter;
            if (uni > 0) sum += static_cast<double>(inter) / static_cast<double>(uni);
        }
    }
    return sum / static_cast<double>(pairs);
}

double compression_ratio(const SubgroupList& model, const Encoder& encoder) {
    const CodeLengths code = encoder.total_code(model);
    return code.total_bits() / encoder.empty_model_total_bits();
}

EvaluationReport summarize(const SubgroupList& model, const Dataset& dataset,
                           const Encoder& encoder, double runtime_seconds) {
    EvaluationReport report;
    report.num_subgroups = model.size();
    report.runtime_seconds = runtime_seconds;

    const double floor = encoder.config().variance_floor;
    report.swkl_total = swkl(model, floor);
    report.swkl_per_row = report.swkl_total / static_cast<double>(dataset.n_rows());

    if (!model.subgroups.empty()) {
        double conds = 0.0;
        for (const auto& sg : model.subgroups)
            conds += static_cast<double>(sg.description.size());
        report.avg_conditions = conds / static_cast<double>(model.size());

        const double sigma_d = std::sqrt(encoder.floored(model.default_stats.variance()));
        const double sigma_1 =
            std::sqrt(encoder.floored(model.subgroups.front().stats.variance()));
        report.sigma_top1_norm = sigma_1 / sigma_d;

        std::vector<Description> descriptions;
        for (const auto& sg : model.subgroups) descriptions.push_back(sg.description);
        report.avg_jaccard = avg_jaccard(descriptions, dataset);
    }

    report.compression_ratio = compression_ratio(model, encoder);
    return report;
}

std::string report_table(const std::vector<std::pair<std::string, EvaluationReport>>& rows) {
    std::ostringstream out;
    out << std::left << std::setw(20) << "name" << std::right << std::setw(12) << "SWKL/n"
        << std::setw(12) << "sigma_top1" << std::setw(6) << "|S|" << std::setw(8) << "|a|"
        << std::setw(10) << "jaccard" << std::setw(10) << "L%" << std::setw(12)
        << "runtime_s" << '\n';
    out << std::fixed;
    for (const auto& [name, r] : rows) {
        out << std::left << std::setw(20) << name << std::right << std::setprecision(4)
            << std::setw(12) << r.swkl_per_row << std::setw(12) << r.sigma_top1_norm
            << std::setw(6) << r.num_subgroups << std::setprecision(2) << std::setw(8)
            << r.avg_conditions << std::setprecision(3) << std::setw(10) << r.avg_jaccard
            << std::setw(10) << r.compression_ratio << std::setprecision(3)
            << std::setw(12) << r.runtime_seconds << '\n';
    }
    return out.str();
}

}  // namespace ssdl
