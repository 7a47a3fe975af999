#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hbem/geometry.hpp"

using namespace hbem;

namespace {

double closure_residual(const SurfaceMesh& mesh) {
    Vec3 s{};
    for (const Panel& p : mesh.panels()) s += p.area * p.normal;
    return norm(s) / mesh.total_area();
}

const char* tetra_off =
    "OFF\n4 4 0\n"
    "0 0 0\n1 0 0\n0 1 0\n0 0 1\n"
    "3 0 2 1\n3 0 1 3\n3 0 3 2\n3 1 2 3\n";

const char* tetra_off_flipped =
    "OFF\n4 4 0\n"
    "0 0 0\n1 0 0\n0 1 0\n0 0 1\n"
    "3 0 1 2\n3 0 3 1\n3 0 2 3\n3 1 3 2\n";

}  // namespace

TEST_CASE("icosphere panel counts and metrics") {
    const SurfaceMesh coarse = icosphere(0, 1.0);
    CHECK(coarse.size() == 20);
    // flat icosahedron inscribed in the unit sphere
    CHECK(coarse.total_area() == doctest::Approx(9.5746).epsilon(1e-3));

    const SurfaceMesh fine = icosphere(3, 1.0);
    CHECK(fine.size() == 1280);
    CHECK(fine.total_area() == doctest::Approx(4.0 * M_PI).epsilon(0.005));
    CHECK(fine.enclosed_volume() == doctest::Approx(4.0 * M_PI / 3.0).epsilon(0.01));

    CHECK_THROWS_AS(icosphere(8, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(icosphere(-1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(icosphere(2, 0.0), std::invalid_argument);
}

TEST_CASE("icosphere refinement converges monotonically") {
    double prev_area = 0.0, prev_vol = 0.0;
    for (int s = 0; s <= 4; ++s) {
        const SurfaceMesh m = icosphere(s, 1.0);
        CHECK(m.total_area() > prev_area);
        CHECK(m.enclosed_volume() > prev_vol);
        CHECK(m.total_area() < 4.0 * M_PI);
        CHECK(m.enclosed_volume() < 4.0 * M_PI / 3.0);
        CHECK(closure_residual(m) <= 1e-10);
        prev_area = m.total_area();
        prev_vol = m.enclosed_volume();
    }
}

TEST_CASE("panel invariants") {
    for (const Panel& p : icosphere(2, 1.0).panels()) {
        CHECK(norm(p.normal) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.area > 0.0);
        const Vec3 c = (p.v0 + p.v1 + p.v2) / 3.0;
        CHECK(norm(p.centroid - c) <= 1e-14);
        // outward: normal points away from the origin on a sphere
        CHECK(dot(p.normal, p.centroid) > 0.0);
    }
}

TEST_CASE("ellipsoid") {
    const SurfaceMesh sphere = icosphere(2, 1.0);
    const SurfaceMesh ell1 = ellipsoid(2, 1.0, 1.0, 1.0);
    CHECK(ell1.fingerprint() == sphere.fingerprint());

    const SurfaceMesh ell = ellipsoid(3, 1.0, 1.0, 2.0);
    CHECK(ell.enclosed_volume() == doctest::Approx(8.0 * M_PI / 3.0).epsilon(0.01));
    CHECK(closure_residual(ell) <= 1e-10);

    CHECK_THROWS_AS(ellipsoid(2, 1.0, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("OFF import") {
    std::istringstream in(tetra_off);
    const SurfaceMesh tetra = read_off(in);
    CHECK(tetra.size() == 4);
    CHECK(tetra.enclosed_volume() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    std::istringstream flipped(tetra_off_flipped);
    const SurfaceMesh fixed = read_off(flipped);
    CHECK(fixed.enclosed_volume() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    std::istringstream quad("OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n");
    CHECK_THROWS_WITH_AS(read_off(quad), "OFF: non-triangle face", std::runtime_error);

    std::istringstream garbage("PLY\n");
    CHECK_THROWS_AS(read_off(garbage), std::runtime_error);

    // open surface: one face of the tetrahedron missing
    std::istringstream open_surface(
        "OFF\n4 3 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 2 1\n3 0 1 3\n3 0 3 2\n");
    CHECK_THROWS_AS(read_off(open_surface), std::invalid_argument);
}

TEST_CASE("cavity scene validation") {
    CHECK_THROWS_AS(CavityScene(icosphere(1, 1.0), Vec3{0, 0, 0}, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(CavityScene(icosphere(1, 1.0), Vec3{0, 0, -0.5}, 1.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(CavityScene(icosphere(1, 1.0), Vec3{0, 0, -2}, -0.1, 1.0),
                    std::invalid_argument);
}

TEST_CASE("place scales and translates") {
    const CavityScene scene(icosphere(2, 1.0), Vec3{0, 0, -2}, 0.5, 1.0);
    const SurfaceMesh placed = place(scene);
    CHECK(placed.size() == scene.base_mesh.size());
    CHECK(placed.total_area() ==
          doctest::Approx(0.25 * scene.base_mesh.total_area()).epsilon(1e-12));
    CHECK(placed.enclosed_volume() ==
          doctest::Approx(0.125 * scene.base_mesh.enclosed_volume()).epsilon(1e-12));
    CHECK(closure_residual(placed) <= 1e-10);
    for (std::size_t i = 0; i < placed.size(); ++i) {
        CHECK(norm(placed.panels()[i].centroid - scene.center) <= 0.5 + 1e-12);
        // normals unchanged by similarity
        CHECK(norm(placed.panels()[i].normal - scene.base_mesh.panels()[i].normal) <= 1e-12);
    }
}

TEST_CASE("place rejects meshes crossing the plane") {
    const CavityScene crossing(icosphere(2, 1.0), Vec3{0, 0, -1}, 1.5, 0.5);
    CHECK_THROWS_AS(place(crossing), std::invalid_argument);
}
