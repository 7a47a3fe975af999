#ifndef HBEM_GEOMETRY_HPP
#define HBEM_GEOMETRY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hbem/vec.hpp"

namespace hbem {

/// Flat triangular panel with single-point collocation data.
struct Panel {
    Vec3 v0, v1, v2;
    Vec3 centroid;   // vertex average
    Vec3 normal;     // unit, outward from the enclosed volume
    double area = 0.0;
};

/// Closed triangulated surface. Immutable after construction; the
/// fingerprint ties downstream operators and fields to this mesh.
class SurfaceMesh {
public:
    explicit SurfaceMesh(std::vector<Panel> panels);

    const std::vector<Panel>& panels() const { return panels_; }
    std::size_t size() const { return panels_.size(); }
    std::uint64_t fingerprint() const { return fingerprint_; }
    double enclosed_volume() const { return volume_; }
    double total_area() const { return total_area_; }
    /// max vertex distance from the origin (used for submersion checks)
    double circumradius() const { return circumradius_; }
    /// max edge length over all panels
    double max_panel_diameter() const { return max_diameter_; }

private:
    std::vector<Panel> panels_;
    std::uint64_t fingerprint_ = 0;
    double volume_ = 0.0;
    double total_area_ = 0.0;
    double circumradius_ = 0.0;
    double max_diameter_ = 0.0;
};

/// Normalized cavity shape B plus placement: C_eps = z + eps*B,
/// submerged at depth |z.z| >= delta0 below the plane {x3 = 0}.
struct CavityScene {
    SurfaceMesh base_mesh;   // B, contains the origin
    Vec3 center;             // z, center.z < 0
    double epsilon;          // scaling, > 0
    double delta0;           // depth constraint, > 0

    CavityScene(SurfaceMesh base, const Vec3& z, double eps, double d0);
};

/// Geodesic sphere: icosahedron refined `subdivisions` times,
/// vertices projected to radius r. 20 * 4^s panels.
SurfaceMesh icosphere(int subdivisions, double radius);

/// Icosphere stretched per axis; normals recomputed from the faces.
SurfaceMesh ellipsoid(int subdivisions, double a, double b, double c);

/// Reads an ASCII OFF triangle mesh; validates closure and fixes a
/// globally flipped orientation so the enclosed volume is positive.
SurfaceMesh load_mesh(const std::string& path);
SurfaceMesh read_off(std::istream& in);

/// The placed cavity boundary: panel vertices mapped v -> z + eps*v.
/// Throws if the scaled mesh touches or crosses the plane {x3 = 0}.
SurfaceMesh place(const CavityScene& scene);

/// Builds a panel from a vertex triple (normal from the right-hand rule).
Panel make_panel(const Vec3& v0, const Vec3& v1, const Vec3& v2);

}  // namespace hbem

#endif
