#pragma once

#include "inspection/controller.hpp"

#include <string>
#include <vector>

namespace inspection {

/// Flat per-step row as persisted in trajectory.csv.
struct TrajectoryRecord {
    int t = 0;
    Vec3 p, v, u;
    int viewed_face = -1;
    double fov_side = -1.0;
    std::vector<int> inspected; // global point ids marked this step
    int cum_inspected = 0;
    double solve_time = 0.0;
    long nodes = 0;
};

/// Writes trajectory.csv, summary.json, footprints.csv and a canonical
/// scenario.cfg copy into dir (created if needed).
void write_log(const MissionLog& log, const Scenario& scenario,
               const std::string& dir);

std::vector<TrajectoryRecord> read_trajectory(const std::string& path);

struct MissionSummary {
    std::string status;
    int steps = 0;
    int points_total = 0;
    int points_inspected = 0;
    AgentState start;
    double solve_time_total = 0.0, solve_time_mean = 0.0, solve_time_max = 0.0;
    long nodes_total = 0;
    double wall_time = 0.0;
};

MissionSummary read_summary(const std::string& path);

struct ValidationReport {
    struct Item {
        std::string name;
        bool pass = true;
        std::vector<int> bad_steps;
        std::string detail;
    };
    std::vector<Item> items;
    bool all_pass() const {
        for (const Item& i : items)
            if (!i.pass) return false;
        return true;
    }
};

/// Replay every mission invariant against a persisted log directory:
/// dynamics chaining, collision safety, operating bounds, inspection
/// soundness at the realized states, and the distance cut-off.
ValidationReport validate_log_dir(const std::string& dir);

} // namespace inspection
