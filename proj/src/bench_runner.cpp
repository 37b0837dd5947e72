#include "inspection/bench_runner.hpp"

#include <cstdio>
#include <ostream>

namespace inspection {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, int points, int horizon, int trial) {
    SplitMix64 rng(seed ^ (static_cast<std::uint64_t>(points) * 1000003ull +
                           static_cast<std::uint64_t>(horizon) * 10007ull +
                           static_cast<std::uint64_t>(trial) + 1ull));
    return rng.next();
}

} // namespace

std::vector<BenchCell> run_bench(const Scenario& base,
                                 const std::vector<int>& point_counts,
                                 const std::vector<int>& horizons, int trials,
                                 std::uint64_t seed, bool parallel, bool verbose) {
    std::vector<BenchCell> cells;
    for (int np : point_counts) {
        for (int T : horizons) {
            BenchCell cell;
            cell.points = np;
            cell.horizon = T;
            cell.trials = trials;
            for (int trial = 0; trial < trials; ++trial) {
                Scenario sc = resample_points(base, split_points_per_face(base, np),
                                              mix_seed(seed, np, T, trial));
                sc.horizon = T;
                MissionConfig cfg = MissionConfig::from_scenario(sc);
                cfg.solver.parallel = parallel;
                MissionLog log = run_mission(cfg);
                for (const StepRecord& r : log.steps) {
                    cell.total_steps += 1;
                    cell.total_solve_time += r.solve_time;
                    cell.total_nodes += r.nodes;
                }
                if (log.status == MissionStatus::Complete) {
                    ++cell.completed;
                } else {
                    cell.failures.push_back("trial " + std::to_string(trial) + ": " +
                                            mission_status_name(log.status));
                }
                if (verbose) {
                    std::fprintf(stderr,
                                 "bench points=%d horizon=%d trial=%d status=%s steps=%zu\n",
                                 np, T, trial, mission_status_name(log.status),
                                 log.steps.size());
                }
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

void write_bench_csv(const std::vector<BenchCell>& cells, std::ostream& os) {
    os << "feature_points,horizon,trials,completed,total_steps,"
          "mean_step_solve_time_s,mean_nodes_per_step,failures\n";
    for (const BenchCell& c : cells) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", c.mean_step_solve_time());
        os << c.points << ',' << c.horizon << ',' << c.trials << ',' << c.completed
           << ',' << c.total_steps << ',' << buf << ',';
        std::snprintf(buf, sizeof buf, "%.2f", c.mean_nodes_per_step());
        os << buf << ',';
        for (size_t i = 0; i < c.failures.size(); ++i)
            os << (i ? ";" : "") << c.failures[i];
        os << '\n';
    }
}

} // namespace inspection
