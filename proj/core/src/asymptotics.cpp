#include "hbem/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "hbem/kernels.hpp"
#include "hbem/linalg.hpp"

namespace hbem {

std::array<BoundaryField, 3> psi_traces(const SurfaceMesh& B_mesh) {
    ExteriorTraceSolver solver(B_mesh);
    std::array<BoundaryField, 3> traces;
    for (int i = 0; i < 3; ++i) {
        std::vector<double> g;
        g.reserve(B_mesh.size());
        for (const Panel& p : B_mesh.panels()) g.push_back(-p.normal[i]);
        BoundaryField trace =
            solver.solve(B_mesh, make_field(B_mesh, std::move(g), FieldLabel::g));
        trace.label = FieldLabel::psi_component;
        traces[i] = std::move(trace);
    }
    return traces;
}

PolarizationResult polarization_tensor(const SurfaceMesh& B_mesh) {
    const auto psi = psi_traces(B_mesh);
    const auto& panels = B_mesh.panels();

    std::array<std::array<double, 3>, 3> raw{};
    for (std::size_t k = 0; k < panels.size(); ++k) {
        const Panel& p = panels[k];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                raw[i][j] += p.normal[i] * (p.centroid[j] + psi[j].values[k]) * p.area;
    }

    PolarizationResult result;
    result.shape_fingerprint = B_mesh.fingerprint();
    result.panel_count = panels.size();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            result.raw_symmetry_defect =
                std::max(result.raw_symmetry_defect, std::abs(raw[i][j] - raw[j][i]));
            result.tensor[i][j] = 0.5 * (raw[i][j] + raw[j][i]);
        }
    result.eigenvalues = sym3_eigenvalues(result.tensor);
    result.min_eigenvalue = result.eigenvalues[0];
    return result;
}

namespace {

void require_plane(const Vec3& x, const char* who) {
    if (x.z != 0.0) throw std::invalid_argument(std::string(who) + ": point must satisfy x3 = 0");
}

}  // namespace

ExpansionSample expansion_general(const Vec3& x, const CavityScene& scene,
                                  const BoundaryField& g_hat) {
    require_plane(x, "expansion_general");
    if (g_hat.mesh_fingerprint != scene.base_mesh.fingerprint())
        throw std::invalid_argument("expansion_general: g_hat must live on the base mesh");

    const auto kc = KernelConstants::for_dimension(3);
    const BoundaryField f = exterior_trace(scene.base_mesh, g_hat);

    double g_total = 0.0;
    Vec3 dipole_moment{};
    const auto& panels = scene.base_mesh.panels();
    for (std::size_t k = 0; k < panels.size(); ++k) {
        const Panel& p = panels[k];
        g_total += g_hat.values[k] * p.area;
        dipole_moment += (f.values[k] * p.normal - g_hat.values[k] * p.centroid) * p.area;
    }
    if (g_hat.zero_mean) g_total = 0.0;

    const double eps = scene.epsilon;
    ExpansionSample sample;
    sample.point = x;
    sample.leading_monopole =
        2.0 * eps * eps * gamma_fs(kc, x - scene.center) * g_total;
    sample.dipole =
        2.0 * eps * eps * eps * dot(grad_gamma(kc, x - scene.center), dipole_moment);
    sample.total = sample.leading_monopole + sample.dipole;
    return sample;
}

ExpansionSample expansion_constant_pressure(const Vec3& x, const CavityScene& scene, const Vec3& p,
                                            const PolarizationResult& M) {
    require_plane(x, "expansion_constant_pressure");
    const auto kc = KernelConstants::for_dimension(3);
    Vec3 Mp{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Mp[i] += M.tensor[i][j] * p[j];

    const double eps = scene.epsilon;
    ExpansionSample sample;
    sample.point = x;
    sample.leading_monopole = 0.0;
    sample.dipole = 2.0 * eps * eps * eps * dot(grad_gamma(kc, x - scene.center), Mp);
    sample.total = sample.dipole;
    return sample;
}

double inverse_operator_expansion_check(const CavityScene& scene, const BoundaryField& g_hat) {
    if (g_hat.mesh_fingerprint != scene.base_mesh.fingerprint())
        throw std::invalid_argument(
            "inverse_operator_expansion_check: g_hat must live on the base mesh");

    const BoundaryField base_trace = exterior_trace(scene.base_mesh, g_hat);

    const TraceSystem system = build_trace_system(scene);
    // g on the placed mesh is g_hat transported panelwise (same panel order)
    const BoundaryField g = make_field(system.mesh, g_hat.values, FieldLabel::g);
    const auto [f, report] = solve_trace(system, g);
    (void)report;

    double worst = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k)
        worst = std::max(worst, std::abs(f.values[k] - scene.epsilon * base_trace.values[k]));
    return worst;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need at least two matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace hbem
