#ifndef HBEM_KERNELS_HPP
#define HBEM_KERNELS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

#include "hbem/vec.hpp"

namespace hbem {

/// Thrown when a kernel is evaluated at (or too close to) its singularity.
/// Coincident arguments always indicate a caller bug; self-panel handling
/// is the assembly layer's job.
class singular_point_error : public std::domain_error {
public:
    explicit singular_point_error(const std::string& what) : std::domain_error(what) {}
};

/// Dimension-dependent constants of the fundamental solution
/// Gamma(x) = kappa_d |x|^{2-d}, kappa_d = 1/(omega_d (2-d)),
/// with omega_d the surface area of the unit (d-1)-sphere.
struct KernelConstants {
    int d;
    double omega_d;
    double kappa_d;

    static KernelConstants for_dimension(int dim) {
        if (dim < 3) throw std::invalid_argument("kernel dimension must be >= 3");
        // omega_d = 2 pi^{d/2} / Gamma(d/2)
        const double omega = 2.0 * std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim);
        return {dim, omega, 1.0 / (omega * (2.0 - dim))};
    }
};

/// Reflection across the plane {x3 = 0}: (x', x3) -> (x', -x3).
inline Vec3 reflect(const Vec3& x) { return {x.x, x.y, -x.z}; }

namespace detail {
inline void require_nonsingular(double r, const char* where) {
    if (!(r > 0.0)) throw singular_point_error(std::string(where) + ": singular point");
}
}  // namespace detail

/// Fundamental solution Gamma(x) = kappa_d |x|^{2-d}.
inline double gamma_fs(const KernelConstants& kc, const Vec3& x) {
    const double r = norm(x);
    detail::require_nonsingular(r, "gamma_fs");
    return kc.kappa_d * std::pow(r, 2.0 - kc.d);
}

/// grad Gamma(x) = x / (omega_d |x|^d).
inline Vec3 grad_gamma(const KernelConstants& kc, const Vec3& x) {
    const double r = norm(x);
    detail::require_nonsingular(r, "grad_gamma");
    return x / (kc.omega_d * std::pow(r, double(kc.d)));
}

/// Half-space Neumann function N(x,y) = Gamma(x-y) + Gamma(x~-y),
/// x~ the reflection of x. Symmetric in (x,y).
inline double neumann_function(const KernelConstants& kc, const Vec3& x, const Vec3& y) {
    return gamma_fs(kc, x - y) + gamma_fs(kc, reflect(x) - y);
}

/// Double layer kernel: (1/omega_d) (y-x).n_y / |x-y|^d  =  dGamma(x-y)/dn_y.
inline double kernel_K(const KernelConstants& kc, const Vec3& x, const Vec3& y, const Vec3& n_y) {
    const Vec3 r = y - x;
    const double rn = norm(r);
    detail::require_nonsingular(rn, "kernel_K");
    return dot(r, n_y) / (kc.omega_d * std::pow(rn, double(kc.d)));
}

/// Adjoint double layer kernel: (1/omega_d) (x-y).n_x / |x-y|^d.
inline double kernel_Kstar(const KernelConstants& kc, const Vec3& x, const Vec3& y, const Vec3& n_x) {
    return kernel_K(kc, y, x, n_x);
}

/// Image double layer kernel: dGamma(x~-y)/dn_y. Smooth on the cavity
/// boundary since |x~-y| >= 2 delta0 when both points are submerged.
inline double kernel_Dtilde(const KernelConstants& kc, const Vec3& x, const Vec3& y, const Vec3& n_y) {
    return kernel_K(kc, reflect(x), y, n_y);
}

/// Adjoint image kernel: (1/omega_d) (x-y~).n_x / |y~-x|^d.
inline double kernel_Dtilde_star(const KernelConstants& kc, const Vec3& x, const Vec3& y, const Vec3& n_x) {
    return kernel_K(kc, reflect(y), x, n_x);
}

}  // namespace hbem

#endif
