#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ssdl/baselines.hpp"
#include "ssdl/metrics.hpp"
#include "ssdl/search.hpp"
#include "ssdl/serialize.hpp"
#include "ssdl/synth.hpp"

namespace {

using nlohmann::json;
using namespace ssdl;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Write via a temp file so a failure never leaves a partial output behind.
void write_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DataError("cannot write: " + path.string());
        out << content;
        if (!out) throw DataError("write failed: " + path.string());
    }
    std::filesystem::rename(tmp, path);
}

std::map<std::string, ColumnKind> load_schema_sidecar(const std::string& path) {
    std::map<std::string, ColumnKind> out;
    if (path.empty()) return out;
    std::ifstream in(path);
    if (!in) throw DataError("cannot open schema file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw DataError("bad schema line: " + line);
        const std::string name = line.substr(0, eq);
        const std::string kind = line.substr(eq + 1);
        if (kind == "binary")
            out[name] = ColumnKind::Binary;
        else if (kind == "nominal")
            out[name] = ColumnKind::Nominal;
        else if (kind == "numeric")
            out[name] = ColumnKind::Numeric;
        else
            throw DataError("unknown column kind: " + kind);
    }
    return out;
}

struct CommonFlags {
    std::string target;
    std::string schema_file;
    int beam_width = 100;
    int n_cut = 5;
    int max_depth = 5;
    std::size_t min_usage = 2;
    std::string gain = "normalized";
    int threads = 0;

    SearchConfig search() const {
        SearchConfig cfg;
        cfg.beam_width = beam_width;
        cfg.n_cut = n_cut;
        cfg.max_depth = max_depth;
        cfg.min_usage = min_usage;
        cfg.gain_mode = gain == "absolute" ? SearchConfig::GainMode::Absolute
                                           : SearchConfig::GainMode::Normalized;
        cfg.threads = threads;
        return cfg;
    }

    void add_to(CLI::App* cmd) {
        cmd->add_option("--target", target, "Target column name (default: last column)");
        cmd->add_option("--schema", schema_file,
                        "Sidecar schema file (column=binary|nominal|numeric lines)");
        cmd->add_option("--beam-width", beam_width, "Beam width")->check(CLI::PositiveNumber);
        cmd->add_option("--n-cut", n_cut, "Cut points per numeric column")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--max-depth", max_depth, "Maximum conditions per description")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--min-usage", min_usage, "Minimum rows per subgroup (>= 2)");
        cmd->add_option("--gain", gain, "Gain mode: normalized|absolute")
            ->check(CLI::IsMember({"normalized", "absolute"}));
        cmd->add_option("--threads", threads, "Candidate-scoring threads (0 = auto)");
    }
};

struct MinedModel {
    SubgroupList model;
    double runtime = 0.0;
};

MinedModel run_miner(const std::string& algorithm, const Dataset& data,
                     const SearchConfig& search, int k) {
    const auto t0 = std::chrono::steady_clock::now();
    MinedModel out;
    if (algorithm == "ssdpp") {
        out.model = ssd_plus_plus(data, search);
    } else if (algorithm == "topk") {
        BaselineConfig cfg;
        cfg.search = search;
        cfg.min_coverage = std::max<std::size_t>(search.min_usage, 2);
        cfg.k = k;
        if (k <= 0) {
            // Paper protocol: k defaults to the SSD++ subgroup count.
            cfg.k = std::max<int>(1, static_cast<int>(ssd_plus_plus(data, search).size()));
        }
        out.model = listify_topk(topk_miner(data, cfg), data);
    } else if (algorithm == "seqcover") {
        BaselineConfig cfg;
        cfg.search = search;
        cfg.min_coverage = std::max<std::size_t>(search.min_usage, 2);
        out.model = seq_cover_miner(data, cfg);
    } else {
        throw CLI::ValidationError("--algorithm", "unknown algorithm: " + algorithm);
    }
    out.runtime = seconds_since(t0);
    return out;
}

int cmd_mine(const std::string& input, const std::string& output_dir,
             const std::string& algorithm, int k, const std::string& format,
             const CommonFlags& flags) {
    const Dataset data =
        Dataset::load_csv(input, flags.target, load_schema_sidecar(flags.schema_file));
    const SearchConfig search = flags.search();
    MinedModel mined = run_miner(algorithm, data, search, k);

    const BinningScheme binning = equal_frequency_cuts(data, search.n_cut);
    const Encoder encoder(data, binning, EncodingConfig::for_dataset(data, search.n_cut));
    mined.model.code = encoder.total_code(mined.model);
    const EvaluationReport report = summarize(mined.model, data, encoder, mined.runtime);

    std::filesystem::create_directories(output_dir);
    const std::filesystem::path dir(output_dir);
    write_file(dir / "model.json",
               model_to_json(mined.model, data, algorithm).dump(2) + "\n");
    write_file(dir / "model.txt", model_table(mined.model, data));
    write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");

    if (format == "table") {
        std::cout << model_table(mined.model, data) << '\n'
                  << report_table({{algorithm, report}});
    } else {
        std::cout << report_to_json(report).dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_evaluate(const std::string& input, const std::string& model_path,
                 const std::string& format, const CommonFlags& flags) {
    const Dataset data =
        Dataset::load_csv(input, flags.target, load_schema_sidecar(flags.schema_file));
    std::ifstream in(model_path);
    if (!in) throw DataError("cannot open model file: " + model_path);
    json doc;
    in >> doc;
    SubgroupList model = model_from_json(doc, data);

    const BinningScheme binning = equal_frequency_cuts(data, flags.n_cut);
    const Encoder encoder(data, binning, EncodingConfig::for_dataset(data, flags.n_cut));
    model.code = encoder.total_code(model);
    const EvaluationReport report = summarize(model, data, encoder, 0.0);
    if (format == "table")
        std::cout << report_table({{model_path, report}});
    else
        std::cout << report_to_json(report).dump(2) << '\n';
    return kExitOk;
}

int cmd_synth(const std::string& output, std::size_t rows, std::uint64_t seed,
              const std::vector<std::string>& planted_specs, int numeric_cols,
              int binary_cols, int nominal_cols, double mu0, double sigma0) {
    PlantedSpec spec;
    spec.n_rows = rows;
    spec.seed = seed;
    spec.mu0 = mu0;
    spec.sigma0 = sigma0;
    for (int i = 0; i < numeric_cols; ++i)
        spec.noise_columns.push_back({ColumnKind::Numeric, 0});
    for (int i = 0; i < binary_cols; ++i)
        spec.noise_columns.push_back({ColumnKind::Binary, 2});
    for (int i = 0; i < nominal_cols; ++i)
        spec.noise_columns.push_back({ColumnKind::Nominal, 4});
    for (const auto& s : planted_specs) {
        // fraction:shift:ratio
        PlantedSubgroupSpec p;
        std::istringstream in(s);
        char sep1 = 0, sep2 = 0;
        if (!(in >> p.fraction >> sep1 >> p.shift >> sep2 >> p.ratio) || sep1 != ':' ||
            sep2 != ':')
            throw CLI::ValidationError("--planted", "expected fraction:shift:ratio, got " + s);
        spec.planted.push_back(p);
    }

    const SynthResult result = generate_planted(spec);
    write_file(output, result.dataset.to_csv());

    json truth;
    truth["seed"] = seed;
    truth["n_rows"] = rows;
    truth["subgroups"] = json::array();
    for (std::size_t i = 0; i < result.planted_descriptions.size(); ++i) {
        json g;
        g["description"] = result.planted_descriptions[i].render(result.dataset);
        g["rows"] = result.ground_truth[i].indices();
        g["shift"] = spec.planted[i].shift;
        g["ratio"] = spec.planted[i].ratio;
        truth["subgroups"].push_back(std::move(g));
    }
    write_file(output + ".truth.json", truth.dump(2) + "\n");
    std::cout << "wrote " << output << " (" << rows << " rows, "
              << result.planted_descriptions.size() << " planted subgroups)\n";
    return kExitOk;
}

int cmd_compare(const std::vector<std::string>& inputs, const std::string& output,
                const std::string& sweep, const std::vector<std::string>& sweep_values,
                const CommonFlags& flags) {
    std::ostringstream csv;
    csv << "dataset,algorithm,gain_mode,sweep_param,sweep_value,swkl_per_row,"
           "sigma_top1_norm,num_subgroups,avg_conditions,avg_jaccard,"
           "compression_ratio,runtime_seconds\n";
    bool any_failed = false;

    auto emit = [&](const std::string& name, const std::string& algorithm,
                    const SearchConfig& search, const std::string& sweep_param,
                    const std::string& sweep_value, const Dataset& data, int k) {
        MinedModel mined = run_miner(algorithm, data, search, k);
        const BinningScheme binning = equal_frequency_cuts(data, search.n_cut);
        const Encoder encoder(data, binning,
                              EncodingConfig::for_dataset(data, search.n_cut));
        mined.model.code = encoder.total_code(mined.model);
        const EvaluationReport r = summarize(mined.model, data, encoder, mined.runtime);
        const char* gain_name =
            search.gain_mode == SearchConfig::GainMode::Absolute ? "absolute" : "normalized";
        csv << name << ',' << algorithm << ',' << gain_name << ',' << sweep_param << ','
            << sweep_value << ',' << double_to_string(r.swkl_per_row) << ','
            << double_to_string(r.sigma_top1_norm) << ',' << r.num_subgroups << ','
            << double_to_string(r.avg_conditions) << ','
            << double_to_string(r.avg_jaccard) << ','
            << double_to_string(r.compression_ratio) << ','
            << double_to_string(r.runtime_seconds) << '\n';
        return mined.model.size();
    };

    for (const auto& input : inputs) {
        const std::string name = std::filesystem::path(input).stem().string();
        try {
            const Dataset data = Dataset::load_csv(input, flags.target,
                                                   load_schema_sidecar(flags.schema_file));
            if (sweep.empty()) {
                const SearchConfig search = flags.search();
                const std::size_t k = emit(name, "ssdpp", search, "", "", data, 0);
                emit(name, "topk", search, "", "", data,
                     std::max<int>(1, static_cast<int>(k)));
                emit(name, "seqcover", search, "", "", data, 0);
            } else {
                for (const auto& value : sweep_values) {
                    SearchConfig search = flags.search();
                    const int v = std::stoi(value);
                    if (sweep == "depth")
                        search.max_depth = v;
                    else if (sweep == "cuts")
                        search.n_cut = v;
                    else if (sweep == "beam")
                        search.beam_width = v;
                    else
                        throw CLI::ValidationError("--sweep",
                                                   "expected depth|cuts|beam, got " + sweep);
                    emit(name, "ssdpp", search, sweep, value, data, 0);
                }
            }
        } catch (const DataError& e) {
            std::cerr << "error: " << name << ": " << e.what() << '\n';
            any_failed = true;
        }
    }

    if (output.empty())
        std::cout << csv.str();
    else
        write_file(output, csv.str());
    return any_failed ? kExitData : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subgroup-list discovery on tabular data with a numeric target"};
    app.require_subcommand(1);

    CommonFlags flags;

    // mine
    auto* mine = app.add_subcommand("mine", "Mine a subgroup list from a CSV dataset");
    std::string mine_input, mine_output = ".", mine_algorithm = "ssdpp",
                mine_format = "table";
    int mine_k = 0;
    mine->add_option("input", mine_input, "Input CSV file")->required();
    mine->add_option("--algorithm", mine_algorithm, "ssdpp|topk|seqcover")
        ->check(CLI::IsMember({"ssdpp", "topk", "seqcover"}));
    mine->add_option("--k", mine_k, "Subgroup count for topk (0 = match ssdpp)");
    mine->add_option("--output,-o", mine_output, "Output directory");
    mine->add_option("--format", mine_format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));
    flags.add_to(mine);

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate a model JSON on a dataset");
    std::string eval_input, eval_model, eval_format = "table";
    evaluate->add_option("input", eval_input, "Input CSV file")->required();
    evaluate->add_option("--model", eval_model, "Model JSON file")->required();
    evaluate->add_option("--format", eval_format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));
    flags.add_to(evaluate);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic dataset");
    std::string synth_output = "synthetic.csv";
    std::size_t synth_rows = 1000;
    std::uint64_t synth_seed = 1;
    std::vector<std::string> synth_planted;
    int synth_numeric = 2, synth_binary = 1, synth_nominal = 0;
    double synth_mu0 = 10.0, synth_sigma0 = 2.0;
    synth->add_option("--output,-o", synth_output, "Output CSV path");
    synth->add_option("--rows", synth_rows, "Number of rows");
    synth->add_option("--seed", synth_seed, "RNG seed");
    synth->add_option("--planted", synth_planted,
                      "Planted subgroup as fraction:shift:ratio (repeatable)");
    synth->add_option("--numeric-cols", synth_numeric, "Numeric noise columns");
    synth->add_option("--binary-cols", synth_binary, "Binary noise columns");
    synth->add_option("--nominal-cols", synth_nominal, "Nominal noise columns");
    synth->add_option("--mu0", synth_mu0, "Background target mean");
    synth->add_option("--sigma0", synth_sigma0, "Background target stddev");

    // compare
    auto* compare = app.add_subcommand(
        "compare", "Run ssdpp/topk/seqcover over datasets and emit a tidy CSV");
    std::vector<std::string> compare_inputs;
    std::string compare_output, compare_sweep;
    std::vector<std::string> compare_sweep_values;
    compare->add_option("inputs", compare_inputs, "Input CSV files")->required();
    compare->add_option("--output,-o", compare_output, "Output CSV (default: stdout)");
    compare->add_option("--sweep", compare_sweep, "Sweep one parameter: depth|cuts|beam");
    compare->add_option("--sweep-values", compare_sweep_values,
                        "Values for the swept parameter")
        ->delimiter(',');
    flags.add_to(compare);

    try {
        app.parse(argc, argv);
        if (mine->parsed())
            return cmd_mine(mine_input, mine_output, mine_algorithm, mine_k, mine_format,
                            flags);
        if (evaluate->parsed()) return cmd_evaluate(eval_input, eval_model, eval_format, flags);
        if (synth->parsed())
            return cmd_synth(synth_output, synth_rows, synth_seed, synth_planted,
                             synth_numeric, synth_binary, synth_nominal, synth_mu0,
                             synth_sigma0);
        if (compare->parsed())
            return cmd_compare(compare_inputs, compare_output, compare_sweep,
                               compare_sweep_values, flags);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const ssdl::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
