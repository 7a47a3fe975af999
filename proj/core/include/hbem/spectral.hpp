#ifndef HBEM_SPECTRAL_HPP
#define HBEM_SPECTRAL_HPP

#include <complex>
#include <vector>

#include "hbem/geometry.hpp"

namespace hbem {

/// Eigenvalues of the discretized K* + Dtilde*, sorted by real part
/// descending. Imaginary parts above `imag_tolerance` are discretization
/// artifacts and flip the `imag_flagged` bit.
struct SpectrumReport {
    std::vector<std::complex<double>> eigenvalues;
    double max_imag = 0.0;
    int count_near_half = 0;  // eigenvalues with |Re - 1/2| <= 0.02
    double min_real = 0.0;
    double max_real = 0.0;
    bool imag_flagged = false;

    static constexpr double imag_tolerance = 0.01;
    static constexpr double half_window = 0.02;
};

SpectrumReport make_spectrum_report(std::vector<std::complex<double>> eigenvalues);

/// Full spectrum of K*_h + Dtilde*_h on the placed cavity boundary.
SpectrumReport spectrum(const CavityScene& scene);

/// Spectrum of K*_h alone (image term zeroed); on a sphere this is the
/// classical Neumann-Poincare spectrum 1/(2(2n+1)) with multiplicity 2n+1.
SpectrumReport spectrum_without_image(const SurfaceMesh& mesh);

/// Residual ||(K*_h + Dtilde*_h) v - v/2|| / ||v|| for the eigenvector v
/// associated with the eigenvalue nearest 1/2.
double half_eigenfunction_check(const CavityScene& scene);

/// Hausdorff distance between the eigenvalue sets of (K_h + Dtilde_h) and
/// its weighted-transpose adjoint; the transpose is a similarity, so this
/// is roundoff-level.
double adjoint_conjugacy_check(const CavityScene& scene);

}  // namespace hbem

#endif
