#include "hbem/field.hpp"

#include <cmath>
#include <stdexcept>

#include "hbem/kernels.hpp"

namespace hbem {

namespace {

void check_fields(const SurfaceMesh& mesh, const BoundaryField& f, const BoundaryField& g) {
    if (f.mesh_fingerprint != mesh.fingerprint() || g.mesh_fingerprint != mesh.fingerprint())
        throw std::invalid_argument("field evaluation: field/mesh fingerprint mismatch");
}

}  // namespace

FieldSample evaluate(const Vec3& x, const SurfaceMesh& cavity_mesh, const BoundaryField& f,
                     const BoundaryField& g) {
    check_fields(cavity_mesh, f, g);
    if (x.z > 0.0)
        throw std::invalid_argument("evaluate: point must lie in the closed half-space x3 <= 0");

    const auto kc = KernelConstants::for_dimension(3);
    const Vec3 x_img = reflect(x);
    const double exclusion = cavity_mesh.max_panel_diameter();

    double u = 0.0;
    const auto& panels = cavity_mesh.panels();
    for (std::size_t j = 0; j < panels.size(); ++j) {
        const Panel& p = panels[j];
        if (norm(x - p.centroid) <= exclusion)
            throw std::invalid_argument(
                "evaluate: point too close to the cavity boundary (near-singular quadrature)");
        const double n_xy = neumann_function(kc, x, p.centroid);
        const double dn = kernel_K(kc, x, p.centroid, p.normal) +
                          kernel_K(kc, x_img, p.centroid, p.normal);
        u += (n_xy * g.values[j] - dn * f.values[j]) * p.area;
    }
    return {x, u, x.z == 0.0};
}

FieldSample evaluate_on_plane(const Vec3& x, const SurfaceMesh& cavity_mesh,
                              const BoundaryField& f, const BoundaryField& g) {
    if (x.z != 0.0) throw std::invalid_argument("evaluate_on_plane: point must satisfy x3 = 0");
    check_fields(cavity_mesh, f, g);

    const auto kc = KernelConstants::for_dimension(3);
    const double exclusion = cavity_mesh.max_panel_diameter();

    double u = 0.0;
    const auto& panels = cavity_mesh.panels();
    for (std::size_t j = 0; j < panels.size(); ++j) {
        const Panel& p = panels[j];
        if (norm(x - p.centroid) <= exclusion)
            throw std::invalid_argument("evaluate_on_plane: point too close to the cavity boundary");
        u += (gamma_fs(kc, x - p.centroid) * g.values[j] -
              kernel_K(kc, x, p.centroid, p.normal) * f.values[j]) *
             p.area;
    }
    return {x, 2.0 * u, true};
}

double boundary_limit_check(const SurfaceMesh& cavity_mesh, const BoundaryField& f,
                            const BoundaryField& g) {
    check_fields(cavity_mesh, f, g);
    const std::size_t n = cavity_mesh.size();

    const Matrix S = assemble(OperatorKind::S, cavity_mesh).matrix;
    const Matrix St = assemble(OperatorKind::Stilde, cavity_mesh).matrix;
    const Matrix K = assemble(OperatorKind::K, cavity_mesh).matrix;
    const Matrix Dt = assemble(OperatorKind::Dtilde, cavity_mesh).matrix;

    const std::vector<double> sg = matvec(S, g.values);
    const std::vector<double> stg = matvec(St, g.values);
    const std::vector<double> kf = matvec(K, f.values);
    const std::vector<double> dtf = matvec(Dt, f.values);

    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double rhs = sg[i] + stg[i] - (-0.5 * f.values[i] + kf[i] + dtf[i]);
        worst = std::max(worst, std::abs(f.values[i] - rhs));
    }
    return worst;
}

}  // namespace hbem
