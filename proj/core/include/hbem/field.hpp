#ifndef HBEM_FIELD_HPP
#define HBEM_FIELD_HPP

#include "hbem/geometry.hpp"
#include "hbem/solve.hpp"

namespace hbem {

struct FieldSample {
    Vec3 point;
    double value = 0.0;
    bool on_plane = false;
};

/// Evaluates u at a point of the closed half-space away from the cavity
/// via the representation formula with the half-space Neumann function:
/// u(x) = sum_j [N(x,c_j) g_j - dN/dn_y(x,c_j) f_j] area_j,
/// where dN/dn_y is the sum of the direct and image double layer kernels.
/// Throws if x is closer to a panel centroid than the panel diameter.
FieldSample evaluate(const Vec3& x, const SurfaceMesh& cavity_mesh, const BoundaryField& f,
                     const BoundaryField& g);

/// Specialized formula on the plane {x3 = 0}: u(x) = 2 (S g - D f)(x).
FieldSample evaluate_on_plane(const Vec3& x, const SurfaceMesh& cavity_mesh,
                              const BoundaryField& f, const BoundaryField& g);

/// Self-consistency of a solved scene: max over panels of
/// |f_i - [S g + Stilde g - (-1/2 I + K + Dtilde) f]_i|,
/// algebraically the trace-equation residual.
double boundary_limit_check(const SurfaceMesh& cavity_mesh, const BoundaryField& f,
                            const BoundaryField& g);

}  // namespace hbem

#endif
