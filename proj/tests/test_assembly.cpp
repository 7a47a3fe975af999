#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

#include "hbem/assembly.hpp"

using namespace hbem;

namespace {

const KernelConstants kc3 = KernelConstants::for_dimension(3);

std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

SurfaceMesh submerged_sphere(int s) {
    const CavityScene scene(icosphere(s, 1.0), Vec3{0, 0, -2}, 0.5, 1.0);
    return place(scene);
}

// Gauss identity quadrature at an off-boundary point: 1 inside, 0 outside.
double gauss_sum(const SurfaceMesh& mesh, const Vec3& x) {
    double s = 0.0;
    for (const Panel& p : mesh.panels()) s += kernel_K(kc3, x, p.centroid, p.normal) * p.area;
    return s;
}

}  // namespace

TEST_CASE("self term of the single layer") {
    Panel p;
    p.area = M_PI;
    CHECK(self_term_S(p) == doctest::Approx(-0.5).epsilon(1e-14));
    p.area = 4.0 * M_PI;
    CHECK(self_term_S(p) == doctest::Approx(-1.0).epsilon(1e-14));
    p.area = 1e-12;
    CHECK(std::abs(self_term_S(p)) <= 1e-5);
}

TEST_CASE("Gauss identity for K on the boundary") {
    double prev = 1.0;
    for (int s : {1, 2, 3}) {
        const SurfaceMesh mesh = icosphere(s, 1.0);
        const DenseOperator K = assemble(OperatorKind::K, mesh);
        const auto row_sums = matvec(K.matrix, ones(mesh.size()));
        double err = 0.0;
        for (double v : row_sums) err = std::max(err, std::abs(v - 0.5));
        CHECK(err < prev);
        prev = err;
        if (s == 3) CHECK(err <= 2e-2);
    }
}

TEST_CASE("Gauss identity off the boundary") {
    const SurfaceMesh mesh = icosphere(4, 1.0);
    CHECK(gauss_sum(mesh, {0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(gauss_sum(mesh, {0.3, -0.2, 0.1}) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(std::abs(gauss_sum(mesh, {2, 0, 0})) <= 1e-2);
    CHECK(std::abs(gauss_sum(mesh, {0, 0, 5})) <= 1e-2);
}

TEST_CASE("uniform single layer on the unit sphere") {
    const SurfaceMesh mesh = icosphere(3, 1.0);
    const DenseOperator S = assemble(OperatorKind::S, mesh);
    const auto values = matvec(S.matrix, ones(mesh.size()));
    for (double v : values) CHECK(v == doctest::Approx(-1.0).epsilon(2e-2));
    // sign structure: all off-diagonal entries negative
    for (std::size_t i = 0; i < mesh.size(); ++i)
        for (std::size_t j = 0; j < mesh.size(); ++j)
            CHECK(S.matrix(i, j) < 0.0);
}

TEST_CASE("image operator entries obey the depth bound") {
    const double delta0 = 1.0;
    const CavityScene scene(icosphere(2, 1.0), Vec3{0, 0, -2}, 0.5, delta0);
    const SurfaceMesh mesh = place(scene);
    const DenseOperator Dt = assemble(OperatorKind::Dtilde, mesh);
    double area_max = 0.0;
    for (const Panel& p : mesh.panels()) area_max = std::max(area_max, p.area);
    const double bound = area_max / (kc3.omega_d * (2.0 * delta0) * (2.0 * delta0));
    CHECK(max_abs(Dt.matrix) <= bound + 1e-15);
}

TEST_CASE("image operator consistency via independent reflection loop") {
    const SurfaceMesh mesh = submerged_sphere(1);
    const DenseOperator Dt = assemble(OperatorKind::Dtilde, mesh);
    const auto& panels = mesh.panels();
    for (std::size_t i = 0; i < panels.size(); ++i)
        for (std::size_t j = 0; j < panels.size(); ++j) {
            const double expected =
                kernel_K(kc3, reflect(panels[i].centroid), panels[j].centroid,
                         panels[j].normal) *
                panels[j].area;
            CHECK(Dt.matrix(i, j) == doctest::Approx(expected).epsilon(1e-15));
        }
}

TEST_CASE("image kinds require a submerged mesh") {
    const SurfaceMesh above = icosphere(1, 1.0);
    CHECK_THROWS_AS(assemble(OperatorKind::Stilde, above), std::invalid_argument);
    CHECK_THROWS_AS(assemble(OperatorKind::Dtilde, above), std::invalid_argument);
    CHECK_NOTHROW(assemble(OperatorKind::K, above));
}

TEST_CASE("kind bookkeeping") {
    const SurfaceMesh mesh = submerged_sphere(1);
    for (OperatorKind kind : {OperatorKind::S, OperatorKind::K, OperatorKind::Kstar,
                              OperatorKind::Stilde, OperatorKind::Dtilde,
                              OperatorKind::DtildeStar}) {
        const DenseOperator op = assemble(kind, mesh);
        CHECK(op.kind == kind);
        CHECK(op.image == uses_image(kind));
        CHECK(op.mesh_fingerprint == mesh.fingerprint());
        CHECK(op.matrix.rows() == mesh.size());
        CHECK(op.matrix.cols() == mesh.size());
    }
}

TEST_CASE("weighted-transpose adjoint") {
    const SurfaceMesh mesh = submerged_sphere(1);
    const DenseOperator K = assemble(OperatorKind::K, mesh);
    const DenseOperator Ks = adjoint_discretization(K, mesh);
    CHECK(Ks.kind == OperatorKind::Kstar);

    // involution
    const DenseOperator back = adjoint_discretization(Ks, mesh);
    for (std::size_t i = 0; i < mesh.size(); ++i)
        for (std::size_t j = 0; j < mesh.size(); ++j)
            CHECK(back.matrix(i, j) == doctest::Approx(K.matrix(i, j)).epsilon(1e-14));

    // discrete duality <psi, K phi>_W = <K* psi, phi>_W
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> phi(mesh.size()), psi(mesh.size());
    for (auto& v : phi) v = u(rng);
    for (auto& v : psi) v = u(rng);
    const auto k_phi = matvec(K.matrix, phi);
    const auto ks_psi = matvec(Ks.matrix, psi);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const double w = mesh.panels()[i].area;
        lhs += w * psi[i] * k_phi[i];
        rhs += w * ks_psi[i] * phi[i];
    }
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    // adjoint assembly matches the independent kernel loop
    const DenseOperator Ks_direct = assemble(OperatorKind::Kstar, mesh);
    const auto& panels = mesh.panels();
    for (std::size_t i = 0; i < panels.size(); ++i)
        for (std::size_t j = 0; j < panels.size(); ++j) {
            const double expected =
                i == j ? 0.0
                       : kernel_Kstar(kc3, panels[i].centroid, panels[j].centroid,
                                      panels[i].normal) *
                             panels[j].area;
            CHECK(Ks_direct.matrix(i, j) == doctest::Approx(expected).epsilon(1e-13));
        }

    const DenseOperator S = assemble(OperatorKind::S, mesh);
    CHECK_THROWS_AS(adjoint_discretization(S, mesh), std::invalid_argument);
}

TEST_CASE("assembly is deterministic across worker counts") {
    const SurfaceMesh mesh = submerged_sphere(2);
    setenv("HBEM_THREADS", "1", 1);
    const DenseOperator serial = assemble(OperatorKind::S, mesh);
    setenv("HBEM_THREADS", "7", 1);
    const DenseOperator parallel = assemble(OperatorKind::S, mesh);
    unsetenv("HBEM_THREADS");
    for (std::size_t i = 0; i < mesh.size(); ++i)
        for (std::size_t j = 0; j < mesh.size(); ++j)
            CHECK(serial.matrix(i, j) == parallel.matrix(i, j));
}

TEST_CASE("binary dump round trip") {
    const SurfaceMesh mesh = submerged_sphere(0);
    const DenseOperator op = assemble(OperatorKind::Dtilde, mesh);
    std::stringstream buf;
    dump_operator(op, buf);
    const DenseOperator copy = read_operator_dump(buf);
    CHECK(copy.kind == op.kind);
    CHECK(copy.matrix.rows() == op.matrix.rows());
    for (std::size_t i = 0; i < op.matrix.rows(); ++i)
        for (std::size_t j = 0; j < op.matrix.cols(); ++j)
            CHECK(copy.matrix(i, j) == op.matrix(i, j));

    std::stringstream bad("nonsense");
    CHECK_THROWS_AS(read_operator_dump(bad), std::runtime_error);
}
