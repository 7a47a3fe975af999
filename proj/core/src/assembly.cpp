#include "hbem/assembly.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace hbem {

const char* to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::S: return "S";
        case OperatorKind::K: return "K";
        case OperatorKind::Kstar: return "Kstar";
        case OperatorKind::Stilde: return "Stilde";
        case OperatorKind::D: return "D";
        case OperatorKind::Dtilde: return "Dtilde";
        case OperatorKind::DtildeStar: return "DtildeStar";
    }
    return "?";
}

bool uses_image(OperatorKind kind) {
    return kind == OperatorKind::Stilde || kind == OperatorKind::Dtilde ||
           kind == OperatorKind::DtildeStar;
}

double self_term_S(const Panel& panel) {
    return -0.5 * std::sqrt(panel.area / M_PI);
}

unsigned worker_count() {
    if (const char* env = std::getenv("HBEM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return unsigned(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

namespace {

void run_rows(std::size_t n, const std::function<void(std::size_t)>& row_job) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) row_job(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) row_job(i);
        });
    }
    for (auto& t : pool) t.join();
}

Matrix assemble_direct(OperatorKind kind, const SurfaceMesh& mesh) {
    const auto kc = KernelConstants::for_dimension(3);
    const auto& panels = mesh.panels();
    const std::size_t n = panels.size();
    Matrix m(n, n);

    run_rows(n, [&](std::size_t i) {
        const Vec3 xi = panels[i].centroid;
        const Vec3 xi_img = reflect(xi);
        const Vec3 ni = panels[i].normal;
        double* row = m.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            const Panel& pj = panels[j];
            double entry = 0.0;
            switch (kind) {
                case OperatorKind::S:
                    entry = (i == j) ? self_term_S(pj)
                                     : gamma_fs(kc, xi - pj.centroid) * pj.area;
                    break;
                case OperatorKind::K:
                case OperatorKind::D:
                    // kernel (y-x).n_y vanishes on a flat self panel
                    entry = (i == j) ? 0.0
                                     : kernel_K(kc, xi, pj.centroid, pj.normal) * pj.area;
                    break;
                case OperatorKind::Stilde:
                    entry = gamma_fs(kc, xi_img - pj.centroid) * pj.area;
                    break;
                case OperatorKind::Dtilde:
                    entry = kernel_K(kc, xi_img, pj.centroid, pj.normal) * pj.area;
                    break;
                case OperatorKind::Kstar:
                    entry = (i == j) ? 0.0
                                     : kernel_Kstar(kc, xi, pj.centroid, ni) * pj.area;
                    break;
                case OperatorKind::DtildeStar:
                    entry = kernel_Dtilde_star(kc, xi, pj.centroid, ni) * pj.area;
                    break;
            }
            row[j] = entry;
        }
    });
    return m;
}

Matrix weighted_transpose(const Matrix& m, const SurfaceMesh& mesh) {
    const auto& panels = mesh.panels();
    const std::size_t n = panels.size();
    Matrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double inv_ai = 1.0 / panels[i].area;
        double* row = t.row(i);
        for (std::size_t j = 0; j < n; ++j) row[j] = m(j, i) * panels[j].area * inv_ai;
    }
    return t;
}

}  // namespace

DenseOperator assemble(OperatorKind kind, const SurfaceMesh& mesh) {
    if (uses_image(kind)) {
        for (const Panel& p : mesh.panels())
            if (p.v0.z >= 0.0 || p.v1.z >= 0.0 || p.v2.z >= 0.0)
                throw std::invalid_argument(
                    "assemble: image operator requires a mesh strictly below the plane x3 = 0");
    }
    // Adjoints via the weighted transpose, keeping discrete duality exact.
    if (kind == OperatorKind::Kstar)
        return {kind, weighted_transpose(assemble_direct(OperatorKind::K, mesh), mesh),
                mesh.fingerprint(), false};
    if (kind == OperatorKind::DtildeStar)
        return {kind, weighted_transpose(assemble_direct(OperatorKind::Dtilde, mesh), mesh),
                mesh.fingerprint(), true};
    return {kind, assemble_direct(kind, mesh), mesh.fingerprint(), uses_image(kind)};
}

DenseOperator adjoint_discretization(const DenseOperator& op, const SurfaceMesh& mesh) {
    if (op.mesh_fingerprint != mesh.fingerprint())
        throw std::invalid_argument("adjoint_discretization: operator/mesh fingerprint mismatch");
    OperatorKind out;
    if (op.kind == OperatorKind::K)
        out = OperatorKind::Kstar;
    else if (op.kind == OperatorKind::Dtilde)
        out = OperatorKind::DtildeStar;
    else if (op.kind == OperatorKind::Kstar)
        out = OperatorKind::K;
    else if (op.kind == OperatorKind::DtildeStar)
        out = OperatorKind::Dtilde;
    else
        throw std::invalid_argument("adjoint_discretization: unsupported kind");
    return {out, weighted_transpose(op.matrix, mesh), mesh.fingerprint(), uses_image(out)};
}

void dump_operator(const DenseOperator& op, std::ostream& out) {
    char header[16] = {};
    std::memcpy(header, "HBEM", 4);
    header[4] = char(op.kind);
    const std::uint32_t n = std::uint32_t(op.matrix.rows());
    std::memcpy(header + 5, &n, 4);
    out.write(header, sizeof(header));
    out.write(reinterpret_cast<const char*>(op.matrix.data()),
              std::streamsize(sizeof(double) * n * n));
}

DenseOperator read_operator_dump(std::istream& in) {
    char header[16] = {};
    in.read(header, sizeof(header));
    if (!in || std::memcmp(header, "HBEM", 4) != 0)
        throw std::runtime_error("read_operator_dump: bad magic");
    const auto kind = OperatorKind(header[4]);
    std::uint32_t n = 0;
    std::memcpy(&n, header + 5, 4);
    Matrix m(n, n);
    in.read(reinterpret_cast<char*>(m.data()), std::streamsize(sizeof(double) * n * n));
    if (!in) throw std::runtime_error("read_operator_dump: truncated payload");
    return {kind, std::move(m), 0, uses_image(kind)};
}

}  // namespace hbem
