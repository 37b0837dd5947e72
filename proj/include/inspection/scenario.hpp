#pragma once

#include "inspection/geometry.hpp"
#include "inspection/sensing.hpp"
#include "inspection/vehicle.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace inspection {

struct SolverParams {
    double gap = 1e-6;
    long node_limit = 0; // 0 = unlimited
};

/// A fully resolved scenario: every "uniform: n" point request has been
/// sampled into explicit coordinates.
struct Scenario {
    OperatingBounds bounds;
    Vec3 cuboid_center, cuboid_size;
    Cuboid cuboid; // derived from center/size, faces flagged inspectable
    std::array<bool, 6> inspect_face{};
    DynamicsModel vehicle;
    CameraModel camera;
    int horizon = 5;
    int t_max = 100;
    double weight_w = 0.01;
    int n_tan = 17;
    AgentState start;
    SolverParams solver;
    std::uint64_t seed = 0;
    std::vector<FeaturePoint> points; // global order: by face id, then index
};

struct ScenarioLoadResult {
    std::optional<Scenario> scenario;
    std::vector<std::string> errors; // every problem found, not just the first
    bool ok() const { return errors.empty() && scenario.has_value(); }
};

ScenarioLoadResult parse_scenario(const std::string& text);
ScenarioLoadResult load_scenario(const std::string& path);

/// Canonical form: all keys explicit, sampled points written out as
/// coordinates. load(write(x)) reproduces x.
void write_scenario(const Scenario& s, std::ostream& os);
std::string scenario_to_string(const Scenario& s);

/// Replace the point set with fresh uniform samples, `count[i]` points on
/// the i-th inspectable face (ascending face id).
Scenario resample_points(const Scenario& base, const std::vector<int>& counts,
                         std::uint64_t seed);

/// Split n points as evenly as possible over the inspectable faces.
std::vector<int> split_points_per_face(const Scenario& s, int total);

/// Deterministic, platform-independent generator used for point sampling.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    double uniform(); // [0, 1)
};

} // namespace inspection
