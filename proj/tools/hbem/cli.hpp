#ifndef HBEM_CLI_HPP
#define HBEM_CLI_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hbem/geometry.hpp"

namespace hbem::cli {

/// Config validation failure; maps to exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeSpec {
    enum class Kind { icosphere, ellipsoid, file };
    Kind kind = Kind::icosphere;
    int subdivisions = 3;
    double radius = 1.0;
    double a = 1.0, b = 1.0, c = 1.0;
    std::string path;

    bool operator==(const ShapeSpec&) const = default;
};

struct GridSpec {
    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    int nx = 0, ny = 0;

    bool operator==(const GridSpec&) const = default;
};

struct RunConfig {
    ShapeSpec shape;
    Vec3 z{0, 0, -2};
    double epsilon = 0.25;
    double delta0 = 1.0;
    Vec3 pressure{0, 0, 1};
    std::optional<double> constant_datum;  // overrides pressure when present
    std::vector<Vec3> observation_points;
    std::optional<GridSpec> grid;
    std::vector<double> epsilon_sweep;

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
nlohmann::json config_to_json(const RunConfig& config);

SurfaceMesh build_shape(const ShapeSpec& shape);
std::vector<Vec3> observation_list(const RunConfig& config);

struct ResultTable {
    std::string metadata;  // JSON object, one line
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    bool pass = true;
};

void write_csv(const ResultTable& table, const std::string& path);
std::string format_double(double v);

ResultTable cmd_solve(const RunConfig& config);
ResultTable cmd_expand(const RunConfig& config);
ResultTable cmd_polarization(const RunConfig& config);
ResultTable cmd_spectrum(const RunConfig& config);
ResultTable cmd_convergence(const RunConfig& config);

/// Full entry point: returns the process exit code
/// (0 pass, 1 numeric fail, 2 config error).
int run(int argc, const char* const* argv);

}  // namespace hbem::cli

#endif
