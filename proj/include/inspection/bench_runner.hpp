#pragma once

#include "inspection/controller.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace inspection {

/// One cell of a runtime-scaling sweep: fixed point count and horizon,
/// `trials` missions with freshly sampled point scatters.
struct BenchCell {
    int points = 0;
    int horizon = 0;
    int trials = 0;
    int completed = 0;
    long total_steps = 0;
    double total_solve_time = 0.0;
    long total_nodes = 0;
    std::vector<std::string> failures;

    double mean_step_solve_time() const {
        return total_steps > 0 ? total_solve_time / static_cast<double>(total_steps) : 0.0;
    }
    double mean_nodes_per_step() const {
        return total_steps > 0 ? static_cast<double>(total_nodes) / static_cast<double>(total_steps)
                               : 0.0;
    }
};

std::vector<BenchCell> run_bench(const Scenario& base,
                                 const std::vector<int>& point_counts,
                                 const std::vector<int>& horizons, int trials,
                                 std::uint64_t seed, bool parallel = true,
                                 bool verbose = false);

void write_bench_csv(const std::vector<BenchCell>& cells, std::ostream& os);

} // namespace inspection
