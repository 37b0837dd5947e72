// Command-line front end: run missions, benchmark runtime scaling, validate
// persisted logs, and dump a step's optimization model.

#include "CLI11.hpp"

#include "inspection/bench_runner.hpp"
#include "inspection/controller.hpp"
#include "inspection/mission_io.hpp"
#include "inspection/oracle.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

// Exit codes, also documented in the README:
//   0 success / mission complete
//   2 configuration or scenario error
//   3 infeasible solve (mission aborted)
//   4 mission timeout
//   5 log validation failure
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitTimeout = 4;
constexpr int kExitValidation = 5;

int load_or_complain(const std::string& path, inspection::Scenario& out) {
    inspection::ScenarioLoadResult r = inspection::load_scenario(path);
    if (!r.ok()) {
        std::cerr << "scenario '" << path << "' is invalid:\n";
        for (const std::string& e : r.errors) std::cerr << "  - " << e << "\n";
        return kExitConfig;
    }
    out = std::move(*r.scenario);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Receding-horizon cuboid inspection planner"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "out", log_dir, model_out;
    std::uint64_t seed = 0;
    bool have_seed = false;
    int dump_step = 0;
    std::vector<int> bench_points{8};
    std::vector<int> bench_horizons{2, 3, 4};
    int bench_trials = 5;
    std::string bench_out = "bench.csv";
    bool serial = false;
    bool no_tighten = false;
    bool retry_hold = false;

    CLI::App* run = app.add_subcommand("run", "Run one inspection mission");
    run->add_option("scenario", scenario_path, "Scenario file")->required();
    run->add_option("-o,--out", out_dir, "Output directory (env INSPECTION_OUT_DIR overrides)");
    run->add_option("--seed", seed, "Override points.seed for uniform sampling")
        ->each([&](const std::string&) { have_seed = true; });
    run->add_flag("--serial", serial, "Disable the parallel pivot kernel");
    run->add_flag("--no-tighten", no_tighten, "Plain workspace-box formulation");
    run->add_flag("--retry-hold", retry_hold, "Hold position once on an infeasible solve");

    CLI::App* bench = app.add_subcommand("bench", "Runtime-scaling sweep");
    bench->add_option("scenario", scenario_path, "Base scenario file")->required();
    bench->add_option("--points", bench_points, "Feature-point counts")->delimiter(',');
    bench->add_option("--horizons", bench_horizons, "Planning horizons")->delimiter(',');
    bench->add_option("--trials", bench_trials, "Missions per cell");
    bench->add_option("--seed", seed, "Sweep seed");
    bench->add_option("-o,--out", bench_out, "Output table (CSV)");
    bench->add_flag("--serial", serial, "Disable the parallel pivot kernel");

    CLI::App* validate = app.add_subcommand("validate", "Replay invariants on a log directory");
    validate->add_option("logdir", log_dir, "Directory written by 'run'")->required();

    CLI::App* dump = app.add_subcommand("dump-model", "Write one step's model in LP format");
    dump->add_option("scenario", scenario_path, "Scenario file")->required();
    dump->add_option("--step", dump_step, "Run this many steps first, then dump");
    dump->add_option("-o,--out", model_out, "Output file (default stdout)");
    dump->add_flag("--no-tighten", no_tighten, "Plain workspace-box formulation");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            inspection::Scenario sc;
            if (int rc = load_or_complain(scenario_path, sc); rc != kExitOk) return rc;
            if (have_seed && sc.seed != seed) {
                // Re-sample with the override, keeping per-face counts.
                std::vector<int> counts;
                for (int id = 0; id < 6; ++id) {
                    if (!sc.inspect_face[static_cast<size_t>(id)]) continue;
                    int n = 0;
                    for (const inspection::FeaturePoint& p : sc.points)
                        if (p.face_id == id) ++n;
                    counts.push_back(n);
                }
                sc = inspection::resample_points(sc, counts, seed);
            }
            if (const char* env = std::getenv("INSPECTION_OUT_DIR")) out_dir = env;
            inspection::MissionConfig cfg = inspection::MissionConfig::from_scenario(sc);
            cfg.solver.parallel = !serial;
            cfg.tighten = !no_tighten;
            cfg.retry_hold_on_infeasible = retry_hold;
            inspection::MissionLog log = inspection::run_mission(cfg);
            inspection::write_log(log, sc, out_dir);
            std::cout << "status: " << inspection::mission_status_name(log.status)
                      << ", steps: " << log.steps.size() << ", inspected: "
                      << log.inspected_total << "/" << log.total_points
                      << ", log: " << out_dir << "\n";
            switch (log.status) {
            case inspection::MissionStatus::Complete: return kExitOk;
            case inspection::MissionStatus::Timeout: return kExitTimeout;
            default:
                std::cerr << "abort: " << log.abort_reason << "\n";
                return kExitInfeasible;
            }
        }

        if (*bench) {
            inspection::Scenario sc;
            if (int rc = load_or_complain(scenario_path, sc); rc != kExitOk) return rc;
            auto cells = inspection::run_bench(sc, bench_points, bench_horizons,
                                               bench_trials, seed, !serial, true);
            std::ofstream out(bench_out);
            if (!out) {
                std::cerr << "cannot write " << bench_out << "\n";
                return kExitConfig;
            }
            inspection::write_bench_csv(cells, out);
            inspection::write_bench_csv(cells, std::cout);
            return kExitOk;
        }

        if (*validate) {
            inspection::ValidationReport rep = inspection::validate_log_dir(log_dir);
            for (const auto& item : rep.items) {
                std::cout << (item.pass ? "[PASS] " : "[FAIL] ") << item.name;
                if (!item.pass && !item.bad_steps.empty()) {
                    std::cout << " (steps:";
                    for (int t : item.bad_steps) std::cout << ' ' << t;
                    std::cout << ")";
                }
                if (!item.detail.empty()) std::cout << " - " << item.detail;
                std::cout << "\n";
            }
            return rep.all_pass() ? kExitOk : kExitValidation;
        }

        if (*dump) {
            inspection::Scenario sc;
            if (int rc = load_or_complain(scenario_path, sc); rc != kExitOk) return rc;
            inspection::MissionConfig cfg = inspection::MissionConfig::from_scenario(sc);
            cfg.tighten = !no_tighten;
            inspection::InspectionMemory mem(static_cast<int>(sc.points.size()));
            inspection::AgentState state = sc.start;
            for (int i = 0; i < dump_step; ++i) {
                inspection::StepResult r = inspection::run_step(cfg, mem, state);
                if (!r.ok) {
                    std::cerr << "cannot advance to step " << dump_step << ": " << r.error << "\n";
                    return kExitInfeasible;
                }
            }
            const int target = inspection::select_target(mem, sc.points, state.p);
            if (target < 0) {
                std::cerr << "mission already complete at step " << dump_step << "\n";
                return kExitConfig;
            }
            inspection::P2Instance inst;
            inst.model = sc.vehicle;
            inst.bounds = sc.bounds;
            inst.camera = sc.camera;
            inst.cuboid = sc.cuboid;
            inst.points = sc.points;
            inst.memory = mem;
            inst.state = state;
            inst.horizon = sc.horizon;
            inst.weight_w = sc.weight_w;
            inst.target = sc.points[static_cast<size_t>(target)];
            inst.n_tan = sc.n_tan;
            inst.tighten = !no_tighten;
            inspection::P2Build pb = inspection::build(inst);
            if (model_out.empty()) {
                inspection::milp::write_lp_format(pb.model, std::cout);
            } else {
                std::ofstream out(model_out);
                if (!out) {
                    std::cerr << "cannot write " << model_out << "\n";
                    return kExitConfig;
                }
                inspection::milp::write_lp_format(pb.model, out);
            }
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
