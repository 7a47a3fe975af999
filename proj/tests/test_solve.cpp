#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hbem/solve.hpp"

using namespace hbem;

namespace {

CavityScene sphere_scene(double depth, double eps, int s = 2) {
    return CavityScene(icosphere(s, 1.0), Vec3{0, 0, -depth}, eps, 1.0);
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("homogeneous datum gives the zero trace") {
    const CavityScene scene = sphere_scene(2.0, 0.5);
    const TraceSystem system = build_trace_system(scene);
    const BoundaryField g = constant_datum(system.mesh, 0.0);
    const auto [f, report] = solve_trace(system, g);
    CHECK(inf_norm(f.values) <= 1e-14);
    CHECK(report.residual <= 1e-14);

    const auto [f_series, sr] = solve_trace(system, g, SolveMethod::neumann_series);
    CHECK(inf_norm(f_series.values) == 0.0);
    CHECK(sr.iterations == 1);
}

TEST_CASE("direct solve meets the residual contract") {
    const CavityScene scene = sphere_scene(2.0, 0.5);
    const TraceSystem system = build_trace_system(scene);
    const BoundaryField g = pressure_datum(system.mesh, {0, 0, 1});
    const auto [f, report] = solve_trace(system, g);
    const double scale = inf_norm(g.values) * max_abs(system.lhs) * double(system.mesh.size());
    CHECK(report.residual <= 1e-10 * scale);
    CHECK(report.iterations == 0);
}

TEST_CASE("linearity of the solve map") {
    const CavityScene scene = sphere_scene(2.0, 0.5);
    const TraceSystem system = build_trace_system(scene);
    const BoundaryField g1 = pressure_datum(system.mesh, {0, 0, 1});
    const BoundaryField g2 = pressure_datum(system.mesh, {1, 0, 0});
    const double alpha = 0.7, beta = -1.3;

    std::vector<double> combo(g1.values.size());
    for (std::size_t i = 0; i < combo.size(); ++i)
        combo[i] = alpha * g1.values[i] + beta * g2.values[i];

    const auto [f1, r1] = solve_trace(system, g1);
    const auto [f2, r2] = solve_trace(system, g2);
    const auto [fc, rc] = solve_trace(system, make_field(system.mesh, combo, FieldLabel::g));

    for (std::size_t i = 0; i < combo.size(); ++i)
        CHECK(fc.values[i] ==
              doctest::Approx(alpha * f1.values[i] + beta * f2.values[i]).epsilon(1e-10));
}

TEST_CASE("exterior trace of the unit sphere with unit datum") {
    const SurfaceMesh sphere = icosphere(3, 1.0);
    const BoundaryField f = exterior_trace(sphere, constant_datum(sphere, 1.0));
    for (double v : f.values) CHECK(v == doctest::Approx(-1.0).epsilon(2e-2));

    const BoundaryField zero = exterior_trace(sphere, constant_datum(sphere, 0.0));
    CHECK(inf_norm(zero.values) <= 1e-14);
}

TEST_CASE("exterior trace with normal-component datum gives the corrector trace") {
    const SurfaceMesh sphere = icosphere(3, 1.0);
    for (int i = 0; i < 3; ++i) {
        std::vector<double> g;
        for (const Panel& p : sphere.panels()) g.push_back(-p.normal[i]);
        const BoundaryField f = exterior_trace(sphere, make_field(sphere, g, FieldLabel::g));
        double err = 0.0;
        for (std::size_t k = 0; k < sphere.size(); ++k)
            err = std::max(err, std::abs(f.values[k] - 0.5 * sphere.panels()[k].centroid[i]));
        CHECK(err <= 3e-2);
    }
}

TEST_CASE("Neumann series agrees with the direct solve") {
    const CavityScene scene = sphere_scene(2.0, 0.5);
    const TraceSystem system = build_trace_system(scene);
    const BoundaryField g = pressure_datum(system.mesh, {0, 0, 1});
    const auto [f_direct, rd] = solve_trace(system, g, SolveMethod::direct);
    const auto [f_series, rs] = solve_trace(system, g, SolveMethod::neumann_series);
    CHECK(rs.iterations > 1);
    CHECK(max_gap(f_direct.values, f_series.values) <= 1e-8);
}

TEST_CASE("series term count grows as the cavity approaches the plane") {
    // same shape and epsilon, admissible at both depths
    const double eps = 0.5;
    const TraceSystem shallow = build_trace_system(CavityScene(icosphere(2, 1.0), Vec3{0, 0, -1.1}, eps, 0.5));
    const TraceSystem deep = build_trace_system(CavityScene(icosphere(2, 1.0), Vec3{0, 0, -4.0}, eps, 0.5));

    const BoundaryField g_shallow = pressure_datum(shallow.mesh, {0, 0, 1});
    const BoundaryField g_deep = pressure_datum(deep.mesh, {0, 0, 1});
    const auto [fs, rep_shallow] = solve_trace(shallow, g_shallow, SolveMethod::neumann_series);
    const auto [fd, rep_deep] = solve_trace(deep, g_deep, SolveMethod::neumann_series);
    CHECK(rep_shallow.iterations > rep_deep.iterations);
}

TEST_CASE("series respects the max term cap") {
    Matrix a = Matrix::identity(2);  // spectral radius 1: never converges
    CHECK_THROWS_AS(neumann_series_solve(a, {1.0, 1.0}, 1e-10, 20), std::runtime_error);
}

TEST_CASE("deep cavity decouples from the plane") {
    // f_eps(z + eps*zeta) -> eps * exterior_trace as depth grows
    const SurfaceMesh base = icosphere(2, 1.0);
    const double eps = 0.1;
    std::vector<double> base_g;
    for (const Panel& p : base.panels()) base_g.push_back(-p.normal.z);
    const BoundaryField free_trace =
        exterior_trace(base, make_field(base, base_g, FieldLabel::g));

    double prev_gap = 1e300;
    for (double depth : {2.0, 5.0, 10.0, 20.0}) {
        const CavityScene scene(icosphere(2, 1.0), Vec3{0, 0, -depth}, eps, 1.0);
        const TraceSystem system = build_trace_system(scene);
        const BoundaryField g = pressure_datum(system.mesh, {0, 0, 1});
        const auto [f, report] = solve_trace(system, g);
        double gap = 0.0;
        for (std::size_t k = 0; k < f.values.size(); ++k)
            gap = std::max(gap, std::abs(f.values[k] - eps * free_trace.values[k]));
        const double rel = gap / (eps * inf_norm(free_trace.values));
        if (depth == 10.0) CHECK(rel <= 2e-2);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("field construction guards") {
    const SurfaceMesh sphere = icosphere(1, 1.0);
    CHECK_THROWS_AS(make_field(sphere, std::vector<double>(3, 0.0)), std::invalid_argument);
    std::vector<double> bad(sphere.size(), 0.0);
    bad[0] = std::nan("");
    CHECK_THROWS_AS(make_field(sphere, bad), std::invalid_argument);

    // fingerprint mismatch across meshes
    const SurfaceMesh other = icosphere(2, 1.0);
    const BoundaryField g = constant_datum(other, 1.0);
    CHECK_THROWS_AS(exterior_trace(sphere, g), std::invalid_argument);
}
