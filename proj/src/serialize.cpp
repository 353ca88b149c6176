#include "ssdl/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ssdl {

using nlohmann::json;

namespace {

json condition_to_json(const Condition& cond, const Dataset& dataset) {
    const auto& schema = dataset.column(static_cast<std::size_t>(cond.column));
    json j;
    j["column"] = schema.name;
    j["operator"] = op_name(cond.op);
    switch (cond.op) {
        case Op::Equals:
            j["value"] = schema.categories[static_cast<std::size_t>(cond.lo)];
            break;
        case Op::Geq:
        case Op::Leq:
            j["threshold"] = cond.lo;
            break;
        case Op::Between:
            j["lo"] = cond.lo;
            j["hi"] = cond.hi;
            break;
    }
    return j;
}

Condition condition_from_json(const json& j, const Dataset& dataset) {
    const std::string name = j.at("column").get<std::string>();
    const auto col = dataset.column_index(name);
    if (!col) throw DataError("model references unknown column: " + name);
    const ColumnSchema& schema = dataset.column(*col);
    const std::string op = j.at("operator").get<std::string>();

    Condition cond;
    cond.column = static_cast<int>(*col);
    if (op == "equals") {
        if (schema.kind == ColumnKind::Numeric)
            throw DataError("equals condition on numeric column: " + name);
        const std::string value = j.at("value").get<std::string>();
        const auto it =
            std::find(schema.categories.begin(), schema.categories.end(), value);
        if (it == schema.categories.end())
            throw DataError("unknown category '" + value + "' for column " + name);
        cond.op = Op::Equals;
        cond.lo = static_cast<double>(it - schema.categories.begin());
    } else if (op == "geq" || op == "leq") {
        if (schema.kind != ColumnKind::Numeric)
            throw DataError("threshold condition on categorical column: " + name);
        cond.op = op == "geq" ? Op::Geq : Op::Leq;
        cond.lo = j.at("threshold").get<double>();
    } else if (op == "between") {
        if (schema.kind != ColumnKind::Numeric)
            throw DataError("between condition on categorical column: " + name);
        cond.op = Op::Between;
        cond.lo = j.at("lo").get<double>();
        cond.hi = j.at("hi").get<double>();
        if (!(cond.lo < cond.hi)) throw DataError("between requires lo < hi");
    } else {
        throw DataError("unknown operator: " + op);
    }
    return cond;
}

}  // namespace

json model_to_json(const SubgroupList& model, const Dataset& dataset,
                   const std::string& algorithm) {
    json doc;
    doc["format"] = "subgroup-list/1";
    doc["algorithm"] = algorithm;
    doc["target"] = dataset.target_name();
    doc["n_rows"] = dataset.n_rows();
    doc["default"] = {{"n", model.default_stats.n},
                      {"mean", model.default_stats.mean()},
                      {"std", model.default_stats.stddev()}};
    doc["code_lengths"] = {{"model_bits", model.code.model_bits},
                           {"data_bits", model.code.data_bits},
                           {"total_bits", model.code.total_bits()}};
    doc["subgroups"] = json::array();
    for (const auto& sg : model.subgroups) {
        json s;
        s["conditions"] = json::array();
        for (const auto& cond : sg.description.conditions)
            s["conditions"].push_back(condition_to_json(cond, dataset));
        s["n"] = sg.stats.n;
        s["mean"] = sg.stats.mean();
        s["std"] = sg.stats.stddev();
        if (sg.variance_floored) s["variance_floored"] = true;
        s["cost_bits"] = sg.cost_bits;
        doc["subgroups"].push_back(std::move(s));
    }
    return doc;
}

SubgroupList model_from_json(const json& doc, const Dataset& dataset) {
    if (doc.value("format", "") != "subgroup-list/1")
        throw DataError("not a subgroup-list model document");
    SubgroupList model = SubgroupList::empty_model(dataset);
    RowSet remaining = RowSet::all(dataset.n_rows());
    for (const auto& s : doc.at("subgroups")) {
        std::vector<Condition> conds;
        for (const auto& cj : s.at("conditions"))
            conds.push_back(condition_from_json(cj, dataset));
        Subgroup sg;
        sg.description = canonicalize(std::move(conds));
        sg.usage = sg.description.cover(dataset);
        sg.usage &= remaining;
        remaining.subtract(sg.usage);
        sg.stats = GaussianStats::of(values_at(dataset.target(), sg.usage));
        model.subgroups.push_back(std::move(sg));
    }
    return model;
}

json report_to_json(const EvaluationReport& report) {
    return json{{"swkl_total", report.swkl_total},
                {"swkl_per_row", report.swkl_per_row},
                {"num_subgroups", report.num_subgroups},
                {"avg_conditions", report.avg_conditions},
                {"sigma_top1_norm", report.sigma_top1_norm},
                {"avg_jaccard", report.avg_jaccard},
                {"compression_ratio", report.compression_ratio},
                {"runtime_seconds", report.runtime_seconds}};
}

std::string model_table(const SubgroupList& model, const Dataset& dataset) {
    std::ostringstream out;
    out << std::left << std::setw(4) << "#" << std::setw(56) << "description"
        << std::right << std::setw(8) << "n" << std::setw(12) << "mean" << std::setw(12)
        << "std" << std::setw(10) << "overlap" << '\n';
    out << std::fixed << std::setprecision(3);
    for (std::size_t i = 0; i < model.subgroups.size(); ++i) {
        const auto& sg = model.subgroups[i];
        const std::size_t full_cover = sg.description.cover(dataset).count();
        const double overlap =
            full_cover == 0 ? 0.0
                            : 1.0 - static_cast<double>(sg.usage.count()) /
                                        static_cast<double>(full_cover);
        out << std::left << std::setw(4) << i + 1 << std::setw(56)
            << sg.description.render(dataset) << std::right << std::setw(8) << sg.stats.n
            << std::setw(12) << sg.stats.mean() << std::setw(12) << sg.stats.stddev()
            << std::setw(9) << 100.0 * overlap << "%" << '\n';
    }
    out << std::left << std::setw(4) << "" << std::setw(56) << "dataset distribution"
        << std::right << std::setw(8) << model.default_stats.n << std::setw(12)
        << model.default_stats.mean() << std::setw(12) << model.default_stats.stddev()
        << std::setw(10) << "-" << '\n';
    return out.str();
}

}  // namespace ssdl
