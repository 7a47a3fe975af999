#include "hbem/solve.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>

namespace hbem {

BoundaryField make_field(const SurfaceMesh& mesh, std::vector<double> values, FieldLabel label) {
    if (values.size() != mesh.size())
        throw std::invalid_argument("make_field: value count does not match panel count");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("make_field: non-finite entry");
    return {std::move(values), mesh.fingerprint(), label};
}

BoundaryField pressure_datum(const SurfaceMesh& mesh, const Vec3& p) {
    std::vector<double> g;
    g.reserve(mesh.size());
    for (const Panel& panel : mesh.panels()) g.push_back(-dot(p, panel.normal));
    BoundaryField field = make_field(mesh, std::move(g), FieldLabel::g);
    field.zero_mean = true;  // divergence theorem on the closed surface
    return field;
}

BoundaryField constant_datum(const SurfaceMesh& mesh, double value) {
    return make_field(mesh, std::vector<double>(mesh.size(), value), FieldLabel::g);
}

TraceSystem build_trace_system(const CavityScene& scene) {
    SurfaceMesh mesh = place(scene);
    const std::size_t n = mesh.size();

    DenseOperator K = assemble(OperatorKind::K, mesh);
    DenseOperator Dt = assemble(OperatorKind::Dtilde, mesh);
    DenseOperator S = assemble(OperatorKind::S, mesh);
    DenseOperator St = assemble(OperatorKind::Stilde, mesh);

    Matrix lhs = K.matrix + Dt.matrix;
    Matrix iteration(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            iteration(i, j) = (i == j ? 0.5 : 0.0) - lhs(i, j);
    for (std::size_t i = 0; i < n; ++i) lhs(i, i) += 0.5;

    return {std::move(mesh), std::move(lhs), std::move(iteration), S.matrix + St.matrix};
}

namespace {

void check_field(const SurfaceMesh& mesh, const BoundaryField& field, const char* who) {
    if (field.mesh_fingerprint != mesh.fingerprint())
        throw std::invalid_argument(std::string(who) + ": field/mesh fingerprint mismatch");
}

double residual_norm(const Matrix& lhs, const std::vector<double>& f,
                     const std::vector<double>& rhs) {
    std::vector<double> r = matvec(lhs, f);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= rhs[i];
    return inf_norm(r);
}

}  // namespace

std::pair<BoundaryField, SolveReport> solve_trace(const TraceSystem& system,
                                                  const BoundaryField& g, SolveMethod method) {
    check_field(system.mesh, g, "solve_trace");
    const std::vector<double> rhs = matvec(system.single_layer_sum, g.values);

    std::vector<double> f;
    int terms = 0;
    if (method == SolveMethod::direct) {
        LuFactorization lu(system.lhs);
        if (lu.singular())
            throw std::runtime_error("solve_trace: singular system (discretization failure)");
        f = lu.solve(rhs);
    } else {
        std::tie(f, terms) = neumann_series_solve(system.iteration, rhs);
    }
    const double resid = residual_norm(system.lhs, f, rhs);
    return {make_field(system.mesh, std::move(f), FieldLabel::f),
            SolveReport{method, terms, resid}};
}

std::pair<BoundaryField, SolveReport> solve_trace(const CavityScene& scene,
                                                  const BoundaryField& g, SolveMethod method) {
    return solve_trace(build_trace_system(scene), g, method);
}

namespace {
Matrix half_plus_K(const SurfaceMesh& mesh) {
    Matrix lhs = assemble(OperatorKind::K, mesh).matrix;
    for (std::size_t i = 0; i < mesh.size(); ++i) lhs(i, i) += 0.5;
    return lhs;
}
}  // namespace

ExteriorTraceSolver::ExteriorTraceSolver(const SurfaceMesh& B_mesh)
    : fingerprint_(B_mesh.fingerprint()),
      single_layer_(assemble(OperatorKind::S, B_mesh).matrix),
      lu_(half_plus_K(B_mesh)) {
    if (lu_.singular()) throw std::runtime_error("ExteriorTraceSolver: singular system");
}

BoundaryField ExteriorTraceSolver::solve(const SurfaceMesh& B_mesh, const BoundaryField& g) const {
    if (B_mesh.fingerprint() != fingerprint_ || g.mesh_fingerprint != fingerprint_)
        throw std::invalid_argument("ExteriorTraceSolver: mesh fingerprint mismatch");
    return make_field(B_mesh, lu_.solve(matvec(single_layer_, g.values)), FieldLabel::f);
}

BoundaryField exterior_trace(const SurfaceMesh& B_mesh, const BoundaryField& g) {
    check_field(B_mesh, g, "exterior_trace");
    ExteriorTraceSolver solver(B_mesh);
    return solver.solve(B_mesh, g);
}

std::pair<std::vector<double>, int> neumann_series_solve(const Matrix& iteration,
                                                         const std::vector<double>& rhs,
                                                         double tol, int max_terms) {
    std::vector<double> sum = rhs;
    std::vector<double> term = rhs;
    int used = 1;
    if (inf_norm(term) == 0.0) return {sum, used};
    for (; used < max_terms; ++used) {
        term = matvec(iteration, term);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term[i];
        if (inf_norm(term) <= tol) return {sum, used + 1};
    }
    throw std::runtime_error(
        "neumann_series_solve: no convergence within max_terms (spectral radius violation?)");
}

}  // namespace hbem
