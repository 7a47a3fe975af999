#ifndef HBEM_ASYMPTOTICS_HPP
#define HBEM_ASYMPTOTICS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "hbem/geometry.hpp"
#include "hbem/solve.hpp"

namespace hbem {

/// 3x3 polarization tensor of a shape, M = int_{dB} n (x) (zeta + Psi(zeta)) dsigma,
/// with Psi the exterior correctors. The tensor field holds the symmetrized
/// matrix; raw_symmetry_defect reports the discretization defect of M - M^T.
struct PolarizationResult {
    std::array<std::array<double, 3>, 3> tensor;
    std::uint64_t shape_fingerprint = 0;
    std::size_t panel_count = 0;
    double raw_symmetry_defect = 0.0;   // max-abs of M - M^T before symmetrization
    double min_eigenvalue = 0.0;
    std::array<double, 3> eigenvalues{};
};

/// One evaluation of the two-term expansion at a plane point.
struct ExpansionSample {
    Vec3 point;
    double leading_monopole = 0.0;
    double dipole = 0.0;
    double total = 0.0;
};

/// Traces of the exterior correctors Psi_i (Neumann datum -n_i), i = 1..3.
std::array<BoundaryField, 3> psi_traces(const SurfaceMesh& B_mesh);

PolarizationResult polarization_tensor(const SurfaceMesh& B_mesh);

/// Two-term expansion with a general epsilon-independent datum g_hat on B:
/// monopole = 2 eps^2 Gamma(x-z) int g_hat,
/// dipole   = 2 eps^3 grad Gamma(x-z) . int { n f - zeta g_hat }, f = exterior trace.
ExpansionSample expansion_general(const Vec3& x, const CavityScene& scene,
                                  const BoundaryField& g_hat);

/// Constant-pressure form: u = 2 eps^3 grad Gamma(x-z) . (M p); monopole = 0.
ExpansionSample expansion_constant_pressure(const Vec3& x, const CavityScene& scene, const Vec3& p,
                                            const PolarizationResult& M);

/// Max-panel deviation |f_eps(z + eps zeta) - eps * exterior_trace(g_hat)(zeta)|
/// for the scene with datum g_hat mapped onto the placed mesh.
/// Scales like eps^2 under an epsilon sweep.
double inverse_operator_expansion_check(const CavityScene& scene, const BoundaryField& g_hat);

/// Least-squares slope of log|y| against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hbem

#endif
