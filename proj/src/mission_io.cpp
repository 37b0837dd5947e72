#include "inspection/mission_io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace inspection {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join_ids(const std::vector<int>& ids) {
    std::string s;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(ids[i]);
    }
    return s;
}

} // namespace

void write_log(const MissionLog& log, const Scenario& scenario,
               const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create log directory " + dir);

    {
        std::ofstream out(dir + "/trajectory.csv");
        if (!out) throw std::runtime_error("cannot write " + dir + "/trajectory.csv");
        out << "t,px,py,pz,vx,vy,vz,ux,uy,uz,viewed_face,fov_side,"
               "inspected,cum_inspected,solve_time_s,nodes\n";
        for (const StepRecord& r : log.steps) {
            out << r.t << ',' << fmt(r.state.p.x) << ',' << fmt(r.state.p.y) << ','
                << fmt(r.state.p.z) << ',' << fmt(r.state.v.x) << ','
                << fmt(r.state.v.y) << ',' << fmt(r.state.v.z) << ','
                << fmt(r.control.x) << ',' << fmt(r.control.y) << ','
                << fmt(r.control.z) << ',' << r.viewed_face << ','
                << fmt(r.fov_side) << ',' << join_ids(r.newly_inspected) << ','
                << r.cum_inspected << ',' << fmt(r.solve_time) << ',' << r.nodes
                << '\n';
        }
    }
    {
        double total = 0.0, mx = 0.0;
        long nodes = 0;
        for (const StepRecord& r : log.steps) {
            total += r.solve_time;
            mx = std::max(mx, r.solve_time);
            nodes += r.nodes;
        }
        nlohmann::json j;
        j["status"] = mission_status_name(log.status);
        j["steps"] = log.steps.size();
        j["points_total"] = log.total_points;
        j["points_inspected"] = log.inspected_total;
        j["start"]["p"] = {log.start.p.x, log.start.p.y, log.start.p.z};
        j["start"]["v"] = {log.start.v.x, log.start.v.y, log.start.v.z};
        j["solve_time"]["total"] = total;
        j["solve_time"]["mean"] = log.steps.empty() ? 0.0 : total / log.steps.size();
        j["solve_time"]["max"] = mx;
        j["nodes_total"] = nodes;
        j["wall_time_s"] = log.wall_time;
        if (!log.abort_reason.empty()) j["abort_reason"] = log.abort_reason;
        std::ofstream out(dir + "/summary.json");
        if (!out) throw std::runtime_error("cannot write " + dir + "/summary.json");
        out << j.dump(2) << '\n';
    }
    {
        std::ofstream out(dir + "/footprints.csv");
        if (!out) throw std::runtime_error("cannot write " + dir + "/footprints.csv");
        out << "t,face,center_a,center_b,side\n";
        for (const StepRecord& r : log.steps) {
            if (r.viewed_face < 0) continue;
            const Face& f = scenario.cuboid.face(r.viewed_face);
            out << r.t << ',' << r.viewed_face << ',' << fmt(r.state.p[f.axis_a])
                << ',' << fmt(r.state.p[f.axis_b]) << ',' << fmt(r.fov_side) << '\n';
        }
    }
    {
        std::ofstream out(dir + "/scenario.cfg");
        if (!out) throw std::runtime_error("cannot write " + dir + "/scenario.cfg");
        write_scenario(scenario, out);
    }
}

std::vector<TrajectoryRecord> read_trajectory(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty trajectory file " + path);
    std::vector<TrajectoryRecord> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 16)
            throw std::runtime_error("bad trajectory row: " + line);
        TrajectoryRecord r;
        r.t = std::stoi(cells[0]);
        r.p = {std::strtod(cells[1].c_str(), nullptr),
               std::strtod(cells[2].c_str(), nullptr),
               std::strtod(cells[3].c_str(), nullptr)};
        r.v = {std::strtod(cells[4].c_str(), nullptr),
               std::strtod(cells[5].c_str(), nullptr),
               std::strtod(cells[6].c_str(), nullptr)};
        r.u = {std::strtod(cells[7].c_str(), nullptr),
               std::strtod(cells[8].c_str(), nullptr),
               std::strtod(cells[9].c_str(), nullptr)};
        r.viewed_face = std::stoi(cells[10]);
        r.fov_side = std::strtod(cells[11].c_str(), nullptr);
        if (!cells[12].empty()) {
            std::istringstream ids(cells[12]);
            std::string id;
            while (std::getline(ids, id, ';')) r.inspected.push_back(std::stoi(id));
        }
        r.cum_inspected = std::stoi(cells[13]);
        r.solve_time = std::strtod(cells[14].c_str(), nullptr);
        r.nodes = std::stol(cells[15]);
        rows.push_back(std::move(r));
    }
    return rows;
}

MissionSummary read_summary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    MissionSummary s;
    s.status = j.at("status").get<std::string>();
    s.steps = j.at("steps").get<int>();
    s.points_total = j.at("points_total").get<int>();
    s.points_inspected = j.at("points_inspected").get<int>();
    const auto& p = j.at("start").at("p");
    const auto& v = j.at("start").at("v");
    s.start.p = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
    s.start.v = {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    s.solve_time_total = j.at("solve_time").at("total").get<double>();
    s.solve_time_mean = j.at("solve_time").at("mean").get<double>();
    s.solve_time_max = j.at("solve_time").at("max").get<double>();
    s.nodes_total = j.at("nodes_total").get<long>();
    s.wall_time = j.at("wall_time_s").get<double>();
    return s;
}

ValidationReport validate_log_dir(const std::string& dir) {
    ValidationReport rep;
    ScenarioLoadResult sc = load_scenario(dir + "/scenario.cfg");
    if (!sc.ok()) {
        ValidationReport::Item item;
        item.name = "scenario";
        item.pass = false;
        item.detail = sc.errors.empty() ? "unreadable" : sc.errors.front();
        rep.items.push_back(std::move(item));
        return rep;
    }
    const Scenario& s = *sc.scenario;
    const MissionSummary sum = read_summary(dir + "/summary.json");
    const std::vector<TrajectoryRecord> rows = read_trajectory(dir + "/trajectory.csv");

    ValidationReport::Item chain{"dynamics-chaining", true, {}, {}};
    AgentState st = sum.start;
    for (size_t i = 0; i < rows.size(); ++i) {
        st = step(s.vehicle, st, rows[i].u);
        const double err = std::max((st.p - rows[i].p).inf_norm(),
                                    (st.v - rows[i].v).inf_norm());
        if (err > 1e-9) {
            chain.pass = false;
            chain.bad_steps.push_back(rows[i].t);
        }
        st.p = rows[i].p; // continue the replay from the recorded row
        st.v = rows[i].v;
    }
    rep.items.push_back(std::move(chain));

    ValidationReport::Item safety{"collision-safety", true, {}, {}};
    for (const TrajectoryRecord& r : rows) {
        if (s.cuboid.strictly_inside(r.p)) {
            safety.pass = false;
            safety.bad_steps.push_back(r.t);
        }
    }
    rep.items.push_back(std::move(safety));

    ValidationReport::Item bounds{"operating-bounds", true, {}, {}};
    for (const TrajectoryRecord& r : rows) {
        if (!check_bounds(s.bounds, {r.p, r.v}, r.u, 1e-6)) {
            bounds.pass = false;
            bounds.bad_steps.push_back(r.t);
        }
    }
    rep.items.push_back(std::move(bounds));

    ValidationReport::Item sound{"inspection-soundness", true, {}, {}};
    ValidationReport::Item cutoff{"distance-cutoff", true, {}, {}};
    std::vector<char> seen(s.points.size(), 0);
    for (const TrajectoryRecord& r : rows) {
        for (int id : r.inspected) {
            if (id < 0 || id >= static_cast<int>(s.points.size()) ||
                seen[static_cast<size_t>(id)]) {
                sound.pass = false;
                sound.bad_steps.push_back(r.t);
                continue;
            }
            seen[static_cast<size_t>(id)] = 1;
            const FeaturePoint& xi = s.points[static_cast<size_t>(id)];
            const Face& f = s.cuboid.face(xi.face_id);
            if (!inspects(s.camera, f, r.p, xi, 1e-9)) {
                sound.pass = false;
                sound.bad_steps.push_back(r.t);
            }
            if (face_distance(f, r.p) > s.camera.d_max + 1e-6) {
                cutoff.pass = false;
                cutoff.bad_steps.push_back(r.t);
            }
        }
    }
    rep.items.push_back(std::move(sound));
    rep.items.push_back(std::move(cutoff));

    ValidationReport::Item cum{"cumulative-count", true, {}, {}};
    int running = 0;
    for (const TrajectoryRecord& r : rows) {
        running += static_cast<int>(r.inspected.size());
        if (r.cum_inspected != running) {
            cum.pass = false;
            cum.bad_steps.push_back(r.t);
        }
    }
    if (sum.points_inspected != running) {
        cum.pass = false;
        cum.detail = "summary count disagrees with trajectory";
    }
    rep.items.push_back(std::move(cum));
    return rep;
}

} // namespace inspection
