#include "inspection/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace inspection {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Parser {
    std::vector<std::string> errors;

    bool parse_doubles(const std::string& key, const std::string& val, int n,
                       double* out) {
        std::istringstream is(val);
        for (int i = 0; i < n; ++i) {
            if (!(is >> out[i])) {
                errors.push_back(key + ": expected " + std::to_string(n) + " numbers");
                return false;
            }
        }
        std::string rest;
        if (is >> rest) {
            errors.push_back(key + ": trailing input '" + rest + "'");
            return false;
        }
        return true;
    }

    bool parse_vec3(const std::string& key, const std::string& val, Vec3& out) {
        double v[3];
        if (!parse_doubles(key, val, 3, v)) return false;
        out = {v[0], v[1], v[2]};
        return true;
    }

    bool parse_int(const std::string& key, const std::string& val, long& out) {
        try {
            size_t pos = 0;
            out = std::stol(val, &pos);
            if (pos != val.size()) throw std::invalid_argument("");
            return true;
        } catch (...) {
            errors.push_back(key + ": expected an integer, got '" + val + "'");
            return false;
        }
    }

    bool parse_u64(const std::string& key, const std::string& val, std::uint64_t& out) {
        try {
            size_t pos = 0;
            out = std::stoull(val, &pos);
            if (pos != val.size()) throw std::invalid_argument("");
            return true;
        } catch (...) {
            errors.push_back(key + ": expected an unsigned integer, got '" + val + "'");
            return false;
        }
    }
};

} // namespace

ScenarioLoadResult parse_scenario(const std::string& text) {
    Parser P;
    Scenario s;
    // raw collected inputs
    bool have[32] = {};
    enum Key {
        WLO, WHI, CCEN, CSIZ, CFACES, VDT, VMASS, VDRAG, VULO, VUHI, VVLO, VVHI,
        CZ0, CZ1, CDMAX, MHOR, MTMAX, MW, MNTAN, SPOS, SVEL, SGAP, SNODE, PSEED
    };
    std::array<std::vector<Vec3>, 6> explicit_points;
    std::array<int, 6> uniform_counts{};
    std::array<bool, 6> face_has_uniform{}, face_has_explicit{};

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            P.errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "workspace.lo") { have[WLO] = P.parse_vec3(key, val, s.bounds.workspace_lo); }
        else if (key == "workspace.hi") { have[WHI] = P.parse_vec3(key, val, s.bounds.workspace_hi); }
        else if (key == "cuboid.center") { have[CCEN] = P.parse_vec3(key, val, s.cuboid_center); }
        else if (key == "cuboid.size") { have[CSIZ] = P.parse_vec3(key, val, s.cuboid_size); }
        else if (key == "cuboid.inspect_faces") {
            have[CFACES] = true;
            std::istringstream fs(val);
            std::string name;
            while (fs >> name) {
                const int id = face_id_from_name(name);
                if (id < 0)
                    P.errors.push_back(key + ": unknown face '" + name + "'");
                else
                    s.inspect_face[static_cast<size_t>(id)] = true;
            }
        }
        else if (key == "vehicle.dt") { have[VDT] = P.parse_doubles(key, val, 1, &s.vehicle.dt); }
        else if (key == "vehicle.mass") { have[VMASS] = P.parse_doubles(key, val, 1, &s.vehicle.mass); }
        else if (key == "vehicle.drag") { have[VDRAG] = P.parse_doubles(key, val, 1, &s.vehicle.drag); }
        else if (key == "vehicle.u_lo") { have[VULO] = P.parse_vec3(key, val, s.bounds.u_lo); }
        else if (key == "vehicle.u_hi") { have[VUHI] = P.parse_vec3(key, val, s.bounds.u_hi); }
        else if (key == "vehicle.v_lo") { have[VVLO] = P.parse_vec3(key, val, s.bounds.v_lo); }
        else if (key == "vehicle.v_hi") { have[VVHI] = P.parse_vec3(key, val, s.bounds.v_hi); }
        else if (key == "camera.z0") { have[CZ0] = P.parse_doubles(key, val, 1, &s.camera.z0); }
        else if (key == "camera.z1") { have[CZ1] = P.parse_doubles(key, val, 1, &s.camera.z1); }
        else if (key == "camera.d_max") { have[CDMAX] = P.parse_doubles(key, val, 1, &s.camera.d_max); }
        else if (key == "mission.horizon") {
            long v;
            if ((have[MHOR] = P.parse_int(key, val, v))) s.horizon = static_cast<int>(v);
        }
        else if (key == "mission.t_max") {
            long v;
            if ((have[MTMAX] = P.parse_int(key, val, v))) s.t_max = static_cast<int>(v);
        }
        else if (key == "mission.w") { have[MW] = P.parse_doubles(key, val, 1, &s.weight_w); }
        else if (key == "mission.n_tan") {
            long v;
            if ((have[MNTAN] = P.parse_int(key, val, v))) s.n_tan = static_cast<int>(v);
        }
        else if (key == "start.position") { have[SPOS] = P.parse_vec3(key, val, s.start.p); }
        else if (key == "start.velocity") { have[SVEL] = P.parse_vec3(key, val, s.start.v); }
        else if (key == "solver.gap") { have[SGAP] = P.parse_doubles(key, val, 1, &s.solver.gap); }
        else if (key == "solver.node_limit") { have[SNODE] = P.parse_int(key, val, s.solver.node_limit); }
        else if (key == "points.seed") { have[PSEED] = P.parse_u64(key, val, s.seed); }
        else if (key.rfind("points.", 0) == 0) {
            const std::string face = key.substr(7);
            const int id = face_id_from_name(face);
            if (id < 0) {
                P.errors.push_back(key + ": unknown face");
                continue;
            }
            std::string v = val;
            if (v.rfind("uniform:", 0) == 0) {
                long n;
                if (P.parse_int(key, trim(v.substr(8)), n)) {
                    if (n < 1)
                        P.errors.push_back(key + ": uniform count must be positive");
                    else {
                        uniform_counts[static_cast<size_t>(id)] = static_cast<int>(n);
                        face_has_uniform[static_cast<size_t>(id)] = true;
                    }
                }
            } else {
                P.errors.push_back(key + ": expected 'uniform: N'");
            }
        }
        else if (key.rfind("point.", 0) == 0) {
            const std::string face = key.substr(6);
            const int id = face_id_from_name(face);
            if (id < 0) {
                P.errors.push_back(key + ": unknown face");
                continue;
            }
            Vec3 pos;
            if (P.parse_vec3(key, val, pos)) {
                explicit_points[static_cast<size_t>(id)].push_back(pos);
                face_has_explicit[static_cast<size_t>(id)] = true;
            }
        }
        else {
            P.errors.push_back("unknown key '" + key + "'");
        }
    }

    // Required keys.
    const std::pair<int, const char*> required[] = {
        {WLO, "workspace.lo"}, {WHI, "workspace.hi"}, {CCEN, "cuboid.center"},
        {CSIZ, "cuboid.size"}, {VDT, "vehicle.dt"}, {VMASS, "vehicle.mass"},
        {VDRAG, "vehicle.drag"}, {VULO, "vehicle.u_lo"}, {VUHI, "vehicle.u_hi"},
        {VVLO, "vehicle.v_lo"}, {VVHI, "vehicle.v_hi"}, {CZ0, "camera.z0"},
        {CZ1, "camera.z1"}, {CDMAX, "camera.d_max"}, {SPOS, "start.position"},
    };
    for (const auto& [k, name] : required) {
        if (!have[k]) P.errors.push_back(std::string(name) + ": missing");
    }
    if (!P.errors.empty()) return {std::nullopt, std::move(P.errors)};

    // Range validation; every failure is reported with the offending field.
    if (!(s.vehicle.dt > 0)) P.errors.push_back("vehicle.dt: must be positive");
    if (!(s.vehicle.mass > 0)) P.errors.push_back("vehicle.mass: must be positive");
    if (s.vehicle.drag < 0 || s.vehicle.drag >= 1)
        P.errors.push_back("vehicle.drag: must be in [0, 1)");
    for (int k = 0; k < 3; ++k) {
        if (!(s.bounds.workspace_lo[k] < s.bounds.workspace_hi[k]))
            P.errors.push_back("workspace: lo must be below hi");
        if (!(s.bounds.u_lo[k] < s.bounds.u_hi[k]))
            P.errors.push_back("vehicle.u: lo must be below hi");
        if (!(s.bounds.v_lo[k] < s.bounds.v_hi[k]))
            P.errors.push_back("vehicle.v: lo must be below hi");
        if (!(s.cuboid_size[k] > 0)) P.errors.push_back("cuboid.size: must be positive");
    }
    if (s.camera.z0 < 0) P.errors.push_back("camera.z0: must be nonnegative");
    if (s.camera.z1 < 0) P.errors.push_back("camera.z1: must be nonnegative");
    if (!(s.camera.d_max > 0)) P.errors.push_back("camera.d_max: must be positive");
    if (s.horizon < 1) P.errors.push_back("mission.horizon: must be at least 1");
    if (s.t_max < 1) P.errors.push_back("mission.t_max: must be at least 1");
    if (s.weight_w < 0) P.errors.push_back("mission.w: must be nonnegative");
    if (s.n_tan < 2) P.errors.push_back("mission.n_tan: must be at least 2");
    if (!(s.solver.gap > 0)) P.errors.push_back("solver.gap: must be positive");
    if (s.solver.node_limit < 0) P.errors.push_back("solver.node_limit: must be nonnegative");
    if (!P.errors.empty()) return {std::nullopt, std::move(P.errors)};

    const Vec3 clo = s.cuboid_center - s.cuboid_size * 0.5;
    const Vec3 chi = s.cuboid_center + s.cuboid_size * 0.5;
    for (int k = 0; k < 3; ++k) {
        if (clo[k] < s.bounds.workspace_lo[k] || chi[k] > s.bounds.workspace_hi[k])
            P.errors.push_back("cuboid: must lie inside the workspace");
    }
    for (int k = 0; k < 3; ++k) {
        if (s.start.p[k] < s.bounds.workspace_lo[k] || s.start.p[k] > s.bounds.workspace_hi[k])
            P.errors.push_back("start.position: outside the workspace");
        if (s.start.v[k] < s.bounds.v_lo[k] || s.start.v[k] > s.bounds.v_hi[k])
            P.errors.push_back("start.velocity: outside the velocity bounds");
    }
    if (!P.errors.empty()) return {std::nullopt, std::move(P.errors)};

    s.cuboid = Cuboid::from_box(clo, chi);
    for (int id = 0; id < 6; ++id)
        s.cuboid.faces[static_cast<size_t>(id)].inspectable = s.inspect_face[static_cast<size_t>(id)];

    // Assemble points: explicit first (validated), then uniform samples.
    for (int id = 0; id < 6; ++id) {
        const size_t fi = static_cast<size_t>(id);
        const bool any = face_has_explicit[fi] || face_has_uniform[fi];
        if (!any) continue;
        if (!s.inspect_face[fi])
            P.errors.push_back(std::string("point.") + kFaceNames[fi] +
                               ": face is not listed in cuboid.inspect_faces");
        if (face_has_explicit[fi] && face_has_uniform[fi])
            P.errors.push_back(std::string("points.") + kFaceNames[fi] +
                               ": mixes explicit points with uniform sampling");
    }
    if (!P.errors.empty()) return {std::nullopt, std::move(P.errors)};

    for (int id = 0; id < 6; ++id) {
        const size_t fi = static_cast<size_t>(id);
        const Face& f = s.cuboid.face(id);
        int idx = 0;
        for (const Vec3& pos : explicit_points[fi]) {
            if (!point_on_face(f, pos, 1e-9)) {
                P.errors.push_back(std::string("point.") + kFaceNames[fi] + "[" +
                                   std::to_string(idx) + "]: not on its declared face");
            }
            s.points.push_back({id, idx++, pos});
        }
        if (face_has_uniform[fi]) {
            SplitMix64 rng(s.seed ^ (0x5deece66dull * (static_cast<std::uint64_t>(id) + 1)));
            for (int n = 0; n < uniform_counts[fi]; ++n) {
                Vec3 pos;
                pos[f.axis] = f.plane;
                pos[f.axis_a] = f.lo_a + rng.uniform() * (f.hi_a - f.lo_a);
                pos[f.axis_b] = f.lo_b + rng.uniform() * (f.hi_b - f.lo_b);
                s.points.push_back({id, idx++, pos});
            }
        }
    }
    if (!P.errors.empty()) return {std::nullopt, std::move(P.errors)};
    return {std::move(s), {}};
}

ScenarioLoadResult load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {std::nullopt, {"cannot open scenario file: " + path}};
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

void write_scenario(const Scenario& s, std::ostream& os) {
    const auto v3 = [&](const Vec3& v) {
        return fmt(v.x) + " " + fmt(v.y) + " " + fmt(v.z);
    };
    os << "workspace.lo = " << v3(s.bounds.workspace_lo) << "\n";
    os << "workspace.hi = " << v3(s.bounds.workspace_hi) << "\n";
    os << "cuboid.center = " << v3(s.cuboid_center) << "\n";
    os << "cuboid.size = " << v3(s.cuboid_size) << "\n";
    os << "cuboid.inspect_faces =";
    for (int id = 0; id < 6; ++id)
        if (s.inspect_face[static_cast<size_t>(id)]) os << ' ' << kFaceNames[static_cast<size_t>(id)];
    os << "\n";
    os << "vehicle.dt = " << fmt(s.vehicle.dt) << "\n";
    os << "vehicle.mass = " << fmt(s.vehicle.mass) << "\n";
    os << "vehicle.drag = " << fmt(s.vehicle.drag) << "\n";
    os << "vehicle.u_lo = " << v3(s.bounds.u_lo) << "\n";
    os << "vehicle.u_hi = " << v3(s.bounds.u_hi) << "\n";
    os << "vehicle.v_lo = " << v3(s.bounds.v_lo) << "\n";
    os << "vehicle.v_hi = " << v3(s.bounds.v_hi) << "\n";
    os << "camera.z0 = " << fmt(s.camera.z0) << "\n";
    os << "camera.z1 = " << fmt(s.camera.z1) << "\n";
    os << "camera.d_max = " << fmt(s.camera.d_max) << "\n";
    os << "mission.horizon = " << s.horizon << "\n";
    os << "mission.t_max = " << s.t_max << "\n";
    os << "mission.w = " << fmt(s.weight_w) << "\n";
    os << "mission.n_tan = " << s.n_tan << "\n";
    os << "start.position = " << v3(s.start.p) << "\n";
    os << "start.velocity = " << v3(s.start.v) << "\n";
    os << "solver.gap = " << fmt(s.solver.gap) << "\n";
    os << "solver.node_limit = " << s.solver.node_limit << "\n";
    os << "points.seed = " << s.seed << "\n";
    for (const FeaturePoint& p : s.points) {
        os << "point." << kFaceNames[static_cast<size_t>(p.face_id)] << " = "
           << v3(p.pos) << "\n";
    }
}

std::string scenario_to_string(const Scenario& s) {
    std::ostringstream os;
    write_scenario(s, os);
    return os.str();
}

std::vector<int> split_points_per_face(const Scenario& s, int total) {
    std::vector<int> faces;
    for (int id = 0; id < 6; ++id)
        if (s.inspect_face[static_cast<size_t>(id)]) faces.push_back(id);
    std::vector<int> counts(faces.size(), 0);
    if (faces.empty()) return counts;
    for (int i = 0; i < total; ++i) counts[static_cast<size_t>(i) % faces.size()]++;
    return counts;
}

Scenario resample_points(const Scenario& base, const std::vector<int>& counts,
                         std::uint64_t seed) {
    Scenario s = base;
    s.seed = seed;
    s.points.clear();
    int slot = 0;
    for (int id = 0; id < 6; ++id) {
        if (!s.inspect_face[static_cast<size_t>(id)]) continue;
        const Face& f = s.cuboid.face(id);
        const int n = slot < static_cast<int>(counts.size()) ? counts[static_cast<size_t>(slot)] : 0;
        ++slot;
        SplitMix64 rng(seed ^ (0x5deece66dull * (static_cast<std::uint64_t>(id) + 1)));
        for (int i = 0; i < n; ++i) {
            Vec3 pos;
            pos[f.axis] = f.plane;
            pos[f.axis_a] = f.lo_a + rng.uniform() * (f.hi_a - f.lo_a);
            pos[f.axis_b] = f.lo_b + rng.uniform() * (f.hi_b - f.lo_b);
            s.points.push_back({id, i, pos});
        }
    }
    return s;
}

} // namespace inspection
