#include "hbem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hbem {

namespace {

// FNV-1a over the raw coordinate bytes; enough to catch operator/mesh mixups.
std::uint64_t hash_bytes(const void* data, std::size_t n, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

Panel make_panel(const Vec3& v0, const Vec3& v1, const Vec3& v2) {
    Panel p;
    p.v0 = v0;
    p.v1 = v1;
    p.v2 = v2;
    p.centroid = (v0 + v1 + v2) / 3.0;
    const Vec3 c = cross(v1 - v0, v2 - v0);
    const double twice_area = norm(c);
    if (!(twice_area > 0.0)) throw std::invalid_argument("make_panel: zero-area panel");
    p.area = 0.5 * twice_area;
    p.normal = c / twice_area;
    return p;
}

SurfaceMesh::SurfaceMesh(std::vector<Panel> panels) : panels_(std::move(panels)) {
    if (panels_.empty()) throw std::invalid_argument("SurfaceMesh: empty panel list");

    Vec3 closure{};
    double total_area = 0.0;
    double volume = 0.0;
    std::uint64_t h = 1469598103934665603ull;
    for (const Panel& p : panels_) {
        if (!(p.area > 0.0)) throw std::invalid_argument("SurfaceMesh: zero-area panel");
        closure += p.area * p.normal;
        total_area += p.area;
        volume += p.area * dot(p.centroid, p.normal) / 3.0;
        circumradius_ = std::max({circumradius_, norm(p.v0), norm(p.v1), norm(p.v2)});
        max_diameter_ = std::max({max_diameter_, norm(p.v1 - p.v0), norm(p.v2 - p.v1),
                                  norm(p.v0 - p.v2)});
        const double coords[9] = {p.v0.x, p.v0.y, p.v0.z, p.v1.x, p.v1.y,
                                  p.v1.z, p.v2.x, p.v2.y, p.v2.z};
        h = hash_bytes(coords, sizeof(coords), h);
    }
    if (norm(closure) > 1e-10 * total_area)
        throw std::invalid_argument("SurfaceMesh: not closed (sum area*normal != 0)");
    if (!(volume > 0.0))
        throw std::invalid_argument("SurfaceMesh: non-positive enclosed volume");
    fingerprint_ = h;
    volume_ = volume;
    total_area_ = total_area;
}

CavityScene::CavityScene(SurfaceMesh base, const Vec3& z, double eps, double d0)
    : base_mesh(std::move(base)), center(z), epsilon(eps), delta0(d0) {
    if (!(d0 > 0.0)) throw std::invalid_argument("CavityScene: delta0 must be positive");
    if (!(eps > 0.0)) throw std::invalid_argument("CavityScene: epsilon must be positive");
    if (!(z.z < 0.0) || !(-z.z >= d0))
        throw std::invalid_argument("CavityScene: cavity center must satisfy |z_3| >= delta0");
}

namespace {

std::vector<Panel> to_panels(const std::vector<Vec3>& verts,
                             const std::vector<std::array<int, 3>>& faces) {
    std::vector<Panel> panels;
    panels.reserve(faces.size());
    for (const auto& f : faces) panels.push_back(make_panel(verts[f[0]], verts[f[1]], verts[f[2]]));
    return panels;
}

void subdivide(std::vector<Vec3>& verts, std::vector<std::array<int, 3>>& faces) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
        auto key = std::minmax(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        verts.push_back(0.5 * (verts[a] + verts[b]));
        int idx = int(verts.size()) - 1;
        midpoint.emplace(key, idx);
        return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(4 * faces.size());
    for (const auto& f : faces) {
        int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
        next.push_back({f[0], ab, ca});
        next.push_back({f[1], bc, ab});
        next.push_back({f[2], ca, bc});
        next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
}

void icosphere_grid(int subdivisions, std::vector<Vec3>& verts,
                    std::vector<std::array<int, 3>>& faces) {
    if (subdivisions < 0 || subdivisions > 7)
        throw std::invalid_argument("icosphere: subdivisions must be in [0, 7]");
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    verts = {{-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
             {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
             {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1}};
    faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (auto& v : verts) v = normalized(v);
    for (int s = 0; s < subdivisions; ++s) {
        subdivide(verts, faces);
        for (auto& v : verts) v = normalized(v);
    }
}

}  // namespace

SurfaceMesh icosphere(int subdivisions, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("icosphere: radius must be positive");
    std::vector<Vec3> verts;
    std::vector<std::array<int, 3>> faces;
    icosphere_grid(subdivisions, verts, faces);
    for (auto& v : verts) v *= radius;
    return SurfaceMesh(to_panels(verts, faces));
}

SurfaceMesh ellipsoid(int subdivisions, double a, double b, double c) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
        throw std::invalid_argument("ellipsoid: semi-axes must be positive");
    std::vector<Vec3> verts;
    std::vector<std::array<int, 3>> faces;
    icosphere_grid(subdivisions, verts, faces);
    for (auto& v : verts) v = {a * v.x, b * v.y, c * v.z};
    return SurfaceMesh(to_panels(verts, faces));
}

SurfaceMesh read_off(std::istream& in) {
    std::string token;
    if (!(in >> token) || token != "OFF") throw std::runtime_error("OFF parse error: missing header");
    std::size_t nv = 0, nf = 0, ne = 0;
    if (!(in >> nv >> nf >> ne)) throw std::runtime_error("OFF parse error: counts line");
    std::vector<Vec3> verts(nv);
    for (auto& v : verts)
        if (!(in >> v.x >> v.y >> v.z)) throw std::runtime_error("OFF parse error: vertex line");
    std::vector<std::array<int, 3>> faces(nf);
    for (auto& f : faces) {
        int arity = 0;
        if (!(in >> arity)) throw std::runtime_error("OFF parse error: face line");
        if (arity != 3) throw std::runtime_error("OFF: non-triangle face");
        if (!(in >> f[0] >> f[1] >> f[2])) throw std::runtime_error("OFF parse error: face indices");
        for (int idx : f)
            if (idx < 0 || std::size_t(idx) >= nv) throw std::runtime_error("OFF: vertex index out of range");
    }

    // Signed volume decides a global flip; mixed orientation is caught by
    // the closure check in the SurfaceMesh constructor.
    double volume = 0.0;
    for (const auto& f : faces)
        volume += dot(verts[f[0]], cross(verts[f[1]], verts[f[2]])) / 6.0;
    if (volume < 0.0)
        for (auto& f : faces) std::swap(f[1], f[2]);

    return SurfaceMesh(to_panels(verts, faces));
}

SurfaceMesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_mesh: cannot open " + path);
    return read_off(in);
}

SurfaceMesh place(const CavityScene& scene) {
    std::vector<Panel> panels;
    panels.reserve(scene.base_mesh.size());
    for (const Panel& p : scene.base_mesh.panels()) {
        Panel q = make_panel(scene.center + scene.epsilon * p.v0,
                             scene.center + scene.epsilon * p.v1,
                             scene.center + scene.epsilon * p.v2);
        if (q.v0.z >= 0.0 || q.v1.z >= 0.0 || q.v2.z >= 0.0)
            throw std::invalid_argument("place: scaled cavity touches or crosses the plane x3 = 0");
        panels.push_back(q);
    }
    return SurfaceMesh(std::move(panels));
}

}  // namespace hbem
