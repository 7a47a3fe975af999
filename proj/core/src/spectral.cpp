#include "hbem/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hbem/assembly.hpp"
#include "hbem/linalg.hpp"

namespace hbem {

SpectrumReport make_spectrum_report(std::vector<std::complex<double>> eigenvalues) {
    std::sort(eigenvalues.begin(), eigenvalues.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  if (a.real() != b.real()) return a.real() > b.real();
                  return a.imag() > b.imag();
              });
    SpectrumReport report;
    report.min_real = std::numeric_limits<double>::infinity();
    report.max_real = -std::numeric_limits<double>::infinity();
    for (const auto& ev : eigenvalues) {
        report.max_imag = std::max(report.max_imag, std::abs(ev.imag()));
        report.min_real = std::min(report.min_real, ev.real());
        report.max_real = std::max(report.max_real, ev.real());
        if (std::abs(ev.real() - 0.5) <= SpectrumReport::half_window) ++report.count_near_half;
    }
    report.imag_flagged = report.max_imag > SpectrumReport::imag_tolerance;
    report.eigenvalues = std::move(eigenvalues);
    return report;
}

namespace {

Matrix adjoint_operator_matrix(const SurfaceMesh& mesh) {
    return assemble(OperatorKind::Kstar, mesh).matrix +
           assemble(OperatorKind::DtildeStar, mesh).matrix;
}

}  // namespace

SpectrumReport spectrum(const CavityScene& scene) {
    const SurfaceMesh mesh = place(scene);
    return make_spectrum_report(eigenvalues(adjoint_operator_matrix(mesh)));
}

SpectrumReport spectrum_without_image(const SurfaceMesh& mesh) {
    return make_spectrum_report(eigenvalues(assemble(OperatorKind::Kstar, mesh).matrix));
}

double half_eigenfunction_check(const CavityScene& scene) {
    const SurfaceMesh mesh = place(scene);
    const Matrix op = adjoint_operator_matrix(mesh);
    const auto [lambda, v] = eigenpair_near(op, 0.5);
    (void)lambda;
    const std::vector<double> av = matvec(op, v);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = av[i] - 0.5 * v[i];
        num += r * r;
        den += v[i] * v[i];
    }
    return std::sqrt(num / den);
}

double adjoint_conjugacy_check(const CavityScene& scene) {
    const SurfaceMesh mesh = place(scene);
    const Matrix direct = assemble(OperatorKind::K, mesh).matrix +
                          assemble(OperatorKind::Dtilde, mesh).matrix;
    const Matrix adjoint = adjoint_operator_matrix(mesh);

    const auto ev_a = eigenvalues(direct);
    const auto ev_b = eigenvalues(adjoint);

    auto one_sided = [](const std::vector<std::complex<double>>& from,
                        const std::vector<std::complex<double>>& to) {
        double worst = 0.0;
        for (const auto& a : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& b : to) best = std::min(best, std::abs(a - b));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(ev_a, ev_b), one_sided(ev_b, ev_a));
}

}  // namespace hbem
