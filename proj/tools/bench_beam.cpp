// Compares the OpenMP candidate-scoring kernel against the serial reference
// on a synthetic dataset and checks that both produce identical results.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "ssdl/search.hpp"
#include "ssdl/synth.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace ssdl;

namespace {

double time_seconds(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t rows = argc > 1 ? static_cast<std::size_t>(std::atoll(argv[1])) : 50000;
    int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

    PlantedSpec spec;
    spec.n_rows = rows;
    spec.seed = 7;
    spec.noise_columns = {{ColumnKind::Numeric, 0}, {ColumnKind::Numeric, 0},
                          {ColumnKind::Numeric, 0}, {ColumnKind::Numeric, 0},
                          {ColumnKind::Binary, 2},  {ColumnKind::Nominal, 6}};
    spec.planted = {{0.1, 2.5, 0.3}, {0.1, -2.0, 0.4}};
    const SynthResult synth = generate_planted(spec);
    const Dataset& data = synth.dataset;

    const SearchConfig config;
    const BinningScheme binning = equal_frequency_cuts(data, config.n_cut);
    const Encoder encoder(data, binning, EncodingConfig::for_dataset(data, config.n_cut));
    const ConditionPool pool = ConditionPool::build(data, binning);
    const SubgroupList empty = SubgroupList::empty_model(data);
    const MdlGainScorer scorer(encoder, empty, config.min_usage, config.gain_mode);

    const RowSet all = RowSet::all(data.n_rows());
    std::vector<LevelItem> items;
    for (std::size_t ci = 0; ci < pool.conditions.size(); ++ci)
        items.push_back({Description{{pool.conditions[ci]}}, &all, ci});

    std::cout << "rows=" << rows << " candidates=" << items.size();
#ifdef _OPENMP
    std::cout << " omp_threads=" << omp_get_max_threads();
#else
    std::cout << " (built without OpenMP)";
#endif
    std::cout << '\n';

    std::vector<BeamCandidate> serial, parallel;
    double t_serial = 1e300, t_parallel = 1e300;
    for (int i = 0; i < repeats; ++i) {
        t_serial = std::min(t_serial, time_seconds([&] {
                                serial = score_level_serial(data, pool, items, scorer);
                            }));
        t_parallel = std::min(t_parallel, time_seconds([&] {
                                  parallel = score_level(data, pool, items, scorer, 0);
                              }));
    }

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i)
        identical = serial[i].key == parallel[i].key &&
                    serial[i].usage_count == parallel[i].usage_count &&
                    serial[i].rank_score == parallel[i].rank_score;

    std::cout << "serial:   " << t_serial << " s\n";
    std::cout << "parallel: " << t_parallel << " s\n";
    std::cout << "speedup:  " << t_serial / t_parallel << "x\n";
    std::cout << "results identical: " << (identical ? "yes" : "NO") << '\n';
    return identical ? 0 : 1;
}
