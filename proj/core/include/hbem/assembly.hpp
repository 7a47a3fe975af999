#ifndef HBEM_ASSEMBLY_HPP
#define HBEM_ASSEMBLY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "hbem/geometry.hpp"
#include "hbem/kernels.hpp"
#include "hbem/linalg.hpp"

namespace hbem {

enum class OperatorKind : std::uint8_t {
    S = 0,
    K = 1,
    Kstar = 2,
    Stilde = 3,
    D = 4,
    Dtilde = 5,
    DtildeStar = 6,
};

const char* to_string(OperatorKind kind);
bool uses_image(OperatorKind kind);

/// Dense collocation matrix of one layer operator on a mesh.
/// Entry (i,j) = kernel(centroid_i, centroid_j, normal) * area_j,
/// with the self-panel rules of `assemble`.
struct DenseOperator {
    OperatorKind kind;
    Matrix matrix;
    std::uint64_t mesh_fingerprint;
    bool image;
};

/// Singular self-panel rule for the single layer: the panel is replaced
/// by the disk of equal area, for which the integral of 1/r is exact.
/// Returns kappa_3 * 2*pi*R_eq = -(1/2) sqrt(area/pi).
double self_term_S(const Panel& panel);

/// Assembles the dense collocation matrix of the requested operator.
/// Self-panel entries: equivalent-disk rule for S, zero for K (the kernel
/// vanishes identically on a flat panel). Image kinds require the mesh to
/// lie strictly in the open half-space. Kstar and DtildeStar are produced
/// by the weighted transpose so discrete duality holds exactly.
/// Rows are assembled in parallel (HBEM_THREADS workers) with a fixed
/// per-row summation order, so results are bitwise worker-count independent.
DenseOperator assemble(OperatorKind kind, const SurfaceMesh& mesh);

/// Discrete L2(area-weighted) adjoint: W^{-1} M^T W, W = diag(areas).
/// Maps K -> Kstar and Dtilde -> DtildeStar.
DenseOperator adjoint_discretization(const DenseOperator& op, const SurfaceMesh& mesh);

/// Debug dump: 16-byte header (magic "HBEM", kind byte, u32 n, padding)
/// then n*n row-major little-endian doubles. Not a stable format.
void dump_operator(const DenseOperator& op, std::ostream& out);
DenseOperator read_operator_dump(std::istream& in);

/// Worker count used for row-parallel assembly: HBEM_THREADS if set,
/// otherwise hardware concurrency.
unsigned worker_count();

}  // namespace hbem

#endif
