#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "hbem/asymptotics.hpp"
#include "hbem/field.hpp"
#include "hbem/solve.hpp"
#include "hbem/spectral.hpp"

using nlohmann::json;

namespace hbem::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

Vec3 parse_vec3(const json& j, const char* field) {
    if (!j.is_array() || j.size() != 3)
        throw config_error(std::string(field) + ": expected an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

RunConfig parse_config(const json& doc) {
    try {
        RunConfig config;
        if (!doc.is_object()) throw config_error("config: expected a JSON object");
        if (!doc.contains("shape")) throw config_error("config: missing field 'shape'");

        const json& shape = doc.at("shape");
        const std::string type = shape.at("type").get<std::string>();
        if (type == "icosphere") {
            config.shape.kind = ShapeSpec::Kind::icosphere;
            config.shape.subdivisions = shape.at("subdivisions").get<int>();
            config.shape.radius = shape.at("radius").get<double>();
        } else if (type == "ellipsoid") {
            config.shape.kind = ShapeSpec::Kind::ellipsoid;
            config.shape.subdivisions = shape.at("subdivisions").get<int>();
            const json& axes = shape.at("semi_axes");
            if (!axes.is_array() || axes.size() != 3)
                throw config_error("shape.semi_axes: expected an array of 3 numbers");
            config.shape.a = axes[0].get<double>();
            config.shape.b = axes[1].get<double>();
            config.shape.c = axes[2].get<double>();
        } else if (type == "file") {
            config.shape.kind = ShapeSpec::Kind::file;
            config.shape.path = shape.at("path").get<std::string>();
        } else {
            throw config_error("shape.type: unknown type '" + type + "'");
        }

        if (doc.contains("z")) config.z = parse_vec3(doc.at("z"), "z");
        if (doc.contains("epsilon")) config.epsilon = doc.at("epsilon").get<double>();
        if (doc.contains("delta0")) config.delta0 = doc.at("delta0").get<double>();
        if (doc.contains("pressure")) config.pressure = parse_vec3(doc.at("pressure"), "pressure");
        if (doc.contains("datum")) {
            const json& datum = doc.at("datum");
            if (datum.at("type").get<std::string>() != "constant")
                throw config_error("datum.type: only 'constant' is supported");
            config.constant_datum = datum.at("value").get<double>();
        }
        if (doc.contains("observation")) {
            const json& obs = doc.at("observation");
            if (obs.contains("points"))
                for (const json& p : obs.at("points"))
                    config.observation_points.push_back(parse_vec3(p, "observation.points"));
            if (obs.contains("grid")) {
                const json& g = obs.at("grid");
                GridSpec grid;
                grid.min_x = g.at("min")[0].get<double>();
                grid.min_y = g.at("min")[1].get<double>();
                grid.max_x = g.at("max")[0].get<double>();
                grid.max_y = g.at("max")[1].get<double>();
                grid.nx = g.at("n")[0].get<int>();
                grid.ny = g.at("n")[1].get<int>();
                if (grid.nx < 1 || grid.ny < 1)
                    throw config_error("observation.grid.n: counts must be >= 1");
                config.grid = grid;
            }
        }
        if (doc.contains("epsilon_sweep")) {
            for (const json& v : doc.at("epsilon_sweep"))
                config.epsilon_sweep.push_back(v.get<double>());
            for (std::size_t i = 0; i < config.epsilon_sweep.size(); ++i) {
                if (!(config.epsilon_sweep[i] > 0.0))
                    throw config_error("epsilon_sweep: values must be positive");
                if (i > 0 && !(config.epsilon_sweep[i] < config.epsilon_sweep[i - 1]))
                    throw config_error("epsilon_sweep: values must be strictly decreasing");
            }
        }

        if (!(config.z.z < 0.0)) throw config_error("z: cavity center must have z[2] < 0");
        if (!(config.delta0 > 0.0)) throw config_error("delta0: must be positive");
        if (!(-config.z.z >= config.delta0))
            throw config_error("z: depth |z[2]| must be at least delta0");
        if (!(config.epsilon > 0.0)) throw config_error("epsilon: must be positive");
        return config;
    } catch (const json::exception& e) {
        throw config_error(std::string("config: ") + e.what());
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    return parse_config(doc);
}

json config_to_json(const RunConfig& config) {
    json shape;
    switch (config.shape.kind) {
        case ShapeSpec::Kind::icosphere:
            shape = {{"type", "icosphere"},
                     {"subdivisions", config.shape.subdivisions},
                     {"radius", config.shape.radius}};
            break;
        case ShapeSpec::Kind::ellipsoid:
            shape = {{"type", "ellipsoid"},
                     {"subdivisions", config.shape.subdivisions},
                     {"semi_axes", {config.shape.a, config.shape.b, config.shape.c}}};
            break;
        case ShapeSpec::Kind::file:
            shape = {{"type", "file"}, {"path", config.shape.path}};
            break;
    }
    json doc = {{"shape", shape},
                {"z", {config.z.x, config.z.y, config.z.z}},
                {"epsilon", config.epsilon},
                {"delta0", config.delta0},
                {"pressure", {config.pressure.x, config.pressure.y, config.pressure.z}}};
    if (config.constant_datum)
        doc["datum"] = {{"type", "constant"}, {"value", *config.constant_datum}};
    json obs;
    if (!config.observation_points.empty()) {
        json points = json::array();
        for (const Vec3& p : config.observation_points) points.push_back({p.x, p.y, p.z});
        obs["points"] = points;
    }
    if (config.grid) {
        obs["grid"] = {{"min", {config.grid->min_x, config.grid->min_y}},
                       {"max", {config.grid->max_x, config.grid->max_y}},
                       {"n", {config.grid->nx, config.grid->ny}}};
    }
    if (!obs.empty()) doc["observation"] = obs;
    if (!config.epsilon_sweep.empty()) doc["epsilon_sweep"] = config.epsilon_sweep;
    return doc;
}

SurfaceMesh build_shape(const ShapeSpec& shape) {
    try {
        switch (shape.kind) {
            case ShapeSpec::Kind::icosphere:
                return icosphere(shape.subdivisions, shape.radius);
            case ShapeSpec::Kind::ellipsoid:
                return ellipsoid(shape.subdivisions, shape.a, shape.b, shape.c);
            case ShapeSpec::Kind::file:
                return load_mesh(shape.path);
        }
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("shape: ") + e.what());
    } catch (const std::runtime_error& e) {
        throw config_error(std::string("shape: ") + e.what());
    }
    throw config_error("shape: unreachable kind");
}

std::vector<Vec3> observation_list(const RunConfig& config) {
    std::vector<Vec3> points = config.observation_points;
    if (config.grid) {
        const GridSpec& g = *config.grid;
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const double fx = g.nx == 1 ? 0.0 : double(ix) / (g.nx - 1);
                const double fy = g.ny == 1 ? 0.0 : double(iy) / (g.ny - 1);
                points.push_back({g.min_x + fx * (g.max_x - g.min_x),
                                  g.min_y + fy * (g.max_y - g.min_y), 0.0});
            }
    }
    return points;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

CavityScene make_scene(const RunConfig& config, const SurfaceMesh& base) {
    if (!(config.epsilon * base.circumradius() < -config.z.z))
        throw config_error("epsilon: scaled shape is not strictly submerged below the plane");
    try {
        return CavityScene(base, config.z, config.epsilon, config.delta0);
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("scene: ") + e.what());
    }
}

BoundaryField scene_datum(const RunConfig& config, const SurfaceMesh& mesh) {
    if (config.constant_datum) return constant_datum(mesh, *config.constant_datum);
    return pressure_datum(mesh, config.pressure);
}

json base_metadata(const char* command, const RunConfig& config) {
    json meta = {{"tool", "hbem"},
                 {"version", kVersion},
                 {"command", command},
                 {"config", config_to_json(config)}};
    // wall-clock stamp only on request; default output is bit-reproducible
    if (std::getenv("HBEM_TIMESTAMP")) {
        char buf[32];
        const std::time_t now = std::time(nullptr);
        std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
        meta["timestamp"] = buf;
    }
    return meta;
}

std::string fingerprint_hex(std::uint64_t fp) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fp));
    return buf;
}

}  // namespace

ResultTable cmd_solve(const RunConfig& config) {
    const SurfaceMesh base = build_shape(config.shape);
    const CavityScene scene = make_scene(config, base);
    const TraceSystem system = build_trace_system(scene);
    const BoundaryField g = scene_datum(config, system.mesh);

    const auto [f_direct, report_direct] = solve_trace(system, g, SolveMethod::direct);
    const auto [f_series, report_series] = solve_trace(system, g, SolveMethod::neumann_series);
    double method_gap = 0.0;
    for (std::size_t i = 0; i < f_direct.values.size(); ++i)
        method_gap = std::max(method_gap, std::abs(f_direct.values[i] - f_series.values[i]));

    ResultTable table;
    table.header = {"x", "y", "z", "u"};
    for (const Vec3& x : observation_list(config)) {
        const FieldSample s = x.z == 0.0 ? evaluate_on_plane(x, system.mesh, f_direct, g)
                                         : evaluate(x, system.mesh, f_direct, g);
        table.rows.push_back(
            {format_double(x.x), format_double(x.y), format_double(x.z), format_double(s.value)});
    }

    const double scale = std::max(inf_norm(g.values), 1.0);
    table.pass = report_direct.residual <= 1e-10 * scale && method_gap <= 1e-8;

    json meta = base_metadata("solve", config);
    meta["mesh_fingerprint"] = fingerprint_hex(system.mesh.fingerprint());
    meta["panel_count"] = system.mesh.size();
    meta["direct_residual"] = report_direct.residual;
    meta["series_terms"] = report_series.iterations;
    meta["series_residual"] = report_series.residual;
    meta["method_gap"] = method_gap;
    meta["verdict"] = table.pass ? "PASS" : "FAIL";
    table.metadata = meta.dump();
    return table;
}

ResultTable cmd_expand(const RunConfig& config) {
    const SurfaceMesh base = build_shape(config.shape);
    const CavityScene scene = make_scene(config, base);
    const BoundaryField g_hat = scene_datum(config, scene.base_mesh);

    ResultTable table;
    table.header = {"x", "y", "z", "monopole", "dipole", "total"};
    for (const Vec3& x : observation_list(config)) {
        if (x.z != 0.0) throw config_error("expand: observation points must lie on the plane z = 0");
        const ExpansionSample s = expansion_general(x, scene, g_hat);
        table.rows.push_back({format_double(x.x), format_double(x.y), format_double(x.z),
                              format_double(s.leading_monopole), format_double(s.dipole),
                              format_double(s.total)});
    }

    json meta = base_metadata("expand", config);
    meta["mesh_fingerprint"] = fingerprint_hex(scene.base_mesh.fingerprint());
    meta["verdict"] = "PASS";
    table.metadata = meta.dump();
    return table;
}

ResultTable cmd_polarization(const RunConfig& config) {
    const SurfaceMesh base = build_shape(config.shape);
    const PolarizationResult M = polarization_tensor(base);

    ResultTable table;
    table.header = {"i", "j", "M_ij"};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            table.rows.push_back(
                {std::to_string(i), std::to_string(j), format_double(M.tensor[i][j])});
    table.pass = M.min_eigenvalue > 0.0;

    json meta = base_metadata("polarization", config);
    meta["mesh_fingerprint"] = fingerprint_hex(base.fingerprint());
    meta["panel_count"] = M.panel_count;
    meta["raw_symmetry_defect"] = M.raw_symmetry_defect;
    meta["eigenvalues"] = {M.eigenvalues[0], M.eigenvalues[1], M.eigenvalues[2]};
    meta["spd"] = table.pass;
    meta["verdict"] = table.pass ? "PASS" : "FAIL";
    table.metadata = meta.dump();
    return table;
}

ResultTable cmd_spectrum(const RunConfig& config) {
    const SurfaceMesh base = build_shape(config.shape);
    const CavityScene scene = make_scene(config, base);
    const SpectrumReport report = spectrum(scene);

    ResultTable table;
    table.header = {"re", "im"};
    for (const auto& ev : report.eigenvalues)
        table.rows.push_back({format_double(ev.real()), format_double(ev.imag())});
    table.pass = report.min_real >= -0.495 && report.max_real <= 0.52 &&
                 report.max_imag <= SpectrumReport::imag_tolerance &&
                 report.count_near_half == 1;

    json meta = base_metadata("spectrum", config);
    meta["min_real"] = report.min_real;
    meta["max_real"] = report.max_real;
    meta["max_imag"] = report.max_imag;
    meta["count_near_half"] = report.count_near_half;
    meta["verdict"] = table.pass ? "PASS" : "FAIL";
    table.metadata = meta.dump();
    return table;
}

ResultTable cmd_convergence(const RunConfig& config) {
    if (config.epsilon_sweep.size() < 3)
        throw config_error("convergence: need >= 3 epsilon_sweep values");
    const std::vector<Vec3> points = observation_list(config);
    if (points.empty()) throw config_error("convergence: need an observation point");
    const Vec3 x = points.front();
    if (x.z != 0.0) throw config_error("convergence: observation point must lie on the plane z = 0");
    if (config.constant_datum)
        throw config_error("convergence: constant-pressure sweep requires the pressure datum");

    const SurfaceMesh base = build_shape(config.shape);
    const PolarizationResult M = polarization_tensor(base);

    ResultTable table;
    table.header = {"epsilon", "u_bie", "u_expansion", "abs_diff"};
    std::vector<double> eps_list, diffs;
    for (double eps : config.epsilon_sweep) {
        RunConfig step = config;
        step.epsilon = eps;
        const CavityScene scene = make_scene(step, base);
        const SurfaceMesh placed = place(scene);
        const BoundaryField g = pressure_datum(placed, config.pressure);
        const auto [f, report] = solve_trace(scene, g);
        (void)report;
        const double u_bie = evaluate_on_plane(x, placed, f, g).value;
        const double u_exp =
            expansion_constant_pressure(x, scene, config.pressure, M).total;
        const double diff = std::abs(u_bie - u_exp);
        eps_list.push_back(eps);
        diffs.push_back(diff);
        table.rows.push_back({format_double(eps), format_double(u_bie), format_double(u_exp),
                              format_double(diff)});
    }
    const double slope = loglog_slope(eps_list, diffs);
    table.pass = slope >= 3.5;

    json meta = base_metadata("convergence", config);
    meta["mesh_fingerprint"] = fingerprint_hex(base.fingerprint());
    meta["slope"] = slope;
    meta["verdict"] = table.pass ? "PASS" : "FAIL";
    table.metadata = meta.dump();
    return table;
}

void write_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "# " << table.metadata << "\n";
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << table.header[i] << (i + 1 < table.header.size() ? "," : "");
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "-h" || args[0] == "--help") {
        std::cout << "usage: hbem <solve|expand|polarization|spectrum|convergence>"
                     " --config <file.json> --out <file.csv>\n";
        return args.empty() ? 2 : 0;
    }
    const std::string command = args[0];
    std::string config_path, out_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            config_path = args[++i];
        else if (args[i] == "--out" && i + 1 < args.size())
            out_path = args[++i];
        else {
            std::cerr << "hbem: unknown argument '" << args[i] << "'\n";
            return 2;
        }
    }
    if (config_path.empty() || out_path.empty()) {
        std::cerr << "hbem: --config and --out are required\n";
        return 2;
    }

    try {
        const RunConfig config = load_config(config_path);
        ResultTable table;
        if (command == "solve")
            table = cmd_solve(config);
        else if (command == "expand")
            table = cmd_expand(config);
        else if (command == "polarization")
            table = cmd_polarization(config);
        else if (command == "spectrum")
            table = cmd_spectrum(config);
        else if (command == "convergence")
            table = cmd_convergence(config);
        else {
            std::cerr << "hbem: unknown command '" << command << "'\n";
            return 2;
        }
        write_csv(table, out_path);
        return table.pass ? 0 : 1;
    } catch (const config_error& e) {
        std::cerr << "hbem: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hbem: error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hbem::cli
