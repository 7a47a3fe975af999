#ifndef HBEM_SOLVE_HPP
#define HBEM_SOLVE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hbem/assembly.hpp"
#include "hbem/geometry.hpp"

namespace hbem {

enum class FieldLabel : std::uint8_t { g, f, psi_component, generic };

/// Per-panel scalar samples on a mesh; quadrature weights are the panel areas.
struct BoundaryField {
    std::vector<double> values;
    std::uint64_t mesh_fingerprint = 0;
    FieldLabel label = FieldLabel::generic;
    // true when the area-weighted sum of values vanishes identically
    // (e.g. g = -p.n on a closed surface, by the divergence theorem)
    bool zero_mean = false;
};

BoundaryField make_field(const SurfaceMesh& mesh, std::vector<double> values,
                         FieldLabel label = FieldLabel::generic);

/// Boundary datum g = -p.n sampled at panel centroids.
BoundaryField pressure_datum(const SurfaceMesh& mesh, const Vec3& p);
BoundaryField constant_datum(const SurfaceMesh& mesh, double value);

enum class SolveMethod { direct, neumann_series };

struct SolveReport {
    SolveMethod method;
    int iterations;   // series terms used, 0 for the direct method
    double residual;  // inf-norm of (1/2 I + K + Dtilde) f - (S + Stilde) g
};

/// Assembled boundary system for a placed cavity: the trace equation
/// (1/2 I + K + Dtilde) f = (S + Stilde) g at panel centroids.
struct TraceSystem {
    SurfaceMesh mesh;          // place(scene)
    Matrix lhs;                // 1/2 I + K + Dtilde
    Matrix iteration;          // A = 1/2 I - K - Dtilde (Neumann series)
    Matrix single_layer_sum;   // S + Stilde
};

TraceSystem build_trace_system(const CavityScene& scene);

/// Solves the trace equation for f on the placed cavity boundary.
std::pair<BoundaryField, SolveReport> solve_trace(const CavityScene& scene,
                                                  const BoundaryField& g,
                                                  SolveMethod method = SolveMethod::direct);
std::pair<BoundaryField, SolveReport> solve_trace(const TraceSystem& system,
                                                  const BoundaryField& g,
                                                  SolveMethod method = SolveMethod::direct);

/// Trace on the shape boundary of the exterior harmonic function with
/// Neumann datum g: f = (1/2 I + K_B)^{-1} S_B g.
BoundaryField exterior_trace(const SurfaceMesh& B_mesh, const BoundaryField& g);

/// Factors (1/2 I + K_B) once and serves many Neumann data on the same mesh.
class ExteriorTraceSolver {
public:
    explicit ExteriorTraceSolver(const SurfaceMesh& B_mesh);
    BoundaryField solve(const SurfaceMesh& B_mesh, const BoundaryField& g) const;

private:
    std::uint64_t fingerprint_;
    Matrix single_layer_;
    LuFactorization lu_;
};

/// Sums the Neumann series sum_h A^h rhs until the latest term drops
/// below tol in inf-norm. Returns the partial sum and the term count.
std::pair<std::vector<double>, int> neumann_series_solve(const Matrix& iteration,
                                                         const std::vector<double>& rhs,
                                                         double tol = 1e-10,
                                                         int max_terms = 500);

}  // namespace hbem

#endif
