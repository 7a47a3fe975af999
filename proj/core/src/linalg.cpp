#include "hbem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hbem {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* ci = c.row(i);
        const double* ai = a.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = ai[k];
            if (aik == 0.0) continue;
            const double* bk = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("matvec: shape mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
        y[i] = s;
    }
    return y;
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    const double* p = a.data();
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) m = std::max(m, std::abs(p[i]));
    return m;
}

LuFactorization::LuFactorization(Matrix a) : lu_(std::move(a)) {
    const std::size_t n = lu_.rows();
    if (lu_.cols() != n) throw std::invalid_argument("LU: matrix must be square");
    perm_.resize(n);
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) { singular_ = true; return; }
        if (piv != k) {
            std::swap(perm_[k], perm_[piv]);
            double* rk = lu_.row(k);
            double* rp = lu_.row(piv);
            std::swap_ranges(rk, rk + n, rp);
        }
        const double pivot = lu_(k, k);
        const double* rowk = lu_.row(k);
        for (std::size_t i = k + 1; i < n; ++i) {
            double* rowi = lu_.row(i);
            const double m = rowi[k] / pivot;
            rowi[k] = m;
            if (m != 0.0)
                for (std::size_t j = k + 1; j < n; ++j) rowi[j] -= m * rowk[j];
        }
    }
}

std::vector<double> LuFactorization::solve(const std::vector<double>& rhs) const {
    if (singular_) throw std::runtime_error("LU solve: singular matrix");
    const std::size_t n = lu_.rows();
    if (rhs.size() != n) throw std::invalid_argument("LU solve: rhs size mismatch");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
    // forward substitution, unit lower triangle
    for (std::size_t i = 1; i < n; ++i) {
        const double* ri = lu_.row(i);
        double s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= ri[j] * x[j];
        x[i] = s;
    }
    // back substitution
    for (std::size_t ii = n; ii-- > 0;) {
        const double* ri = lu_.row(ii);
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= ri[j] * x[j];
        x[ii] = s / ri[ii];
    }
    return x;
}

namespace {

// Householder reduction of a general square matrix to upper Hessenberg form.
void hessenberg_reduce(Matrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<double> v(n), w(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
        if (scale == 0.0) continue;
        double sigma = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            sigma += v[i] * v[i];
        }
        double alpha = std::sqrt(sigma);
        if (v[k + 1] > 0.0) alpha = -alpha;
        const double beta = sigma - alpha * v[k + 1];
        if (beta == 0.0) continue;
        v[k + 1] -= alpha;
        // A <- (I - v v^T / beta) A
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
            s /= beta;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
        }
        // A <- A (I - v v^T / beta)
        for (std::size_t i = 0; i < n; ++i) {
            double* ri = a.row(i);
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += ri[j] * v[j];
            s /= beta;
            for (std::size_t j = k + 1; j < n; ++j) ri[j] -= s * v[j];
        }
        a(k + 1, k) = alpha * scale;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

inline double sign_like(double magnitude, double ref) {
    return ref >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// Francis double-shift QR on an upper Hessenberg matrix (in place).
std::vector<std::complex<double>> hessenberg_qr(Matrix& h) {
    const std::ptrdiff_t n = std::ptrdiff_t(h.rows());
    std::vector<std::complex<double>> eig(n);
    const double eps = std::numeric_limits<double>::epsilon();

    double anorm = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i)
        for (std::ptrdiff_t j = std::max<std::ptrdiff_t>(i - 1, 0); j < n; ++j)
            anorm += std::abs(h(i, j));

    std::ptrdiff_t nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        std::ptrdiff_t l;
        do {
            for (l = nn; l >= 1; --l) {
                double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(h(l, l - 1)) <= eps * s) {
                    h(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = h(nn, nn);
            if (l == nn) {
                eig[nn--] = x + t;
            } else {
                double y = h(nn - 1, nn - 1);
                double w = h(nn, nn - 1) * h(nn - 1, nn);
                if (l == nn - 1) {
                    double p = 0.5 * (y - x);
                    double q = p * p + w;
                    double z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_like(z, p);
                        eig[nn - 1] = eig[nn] = x + z;
                        if (z != 0.0) eig[nn] = x - w / z;
                    } else {
                        eig[nn] = {x + p, -z};
                        eig[nn - 1] = std::conj(eig[nn]);
                    }
                    nn -= 2;
                } else {
                    if (its == 60) throw std::runtime_error("eigenvalues: QR iteration did not converge");
                    if (its % 10 == 0 && its > 0) {
                        // exceptional shift
                        t += x;
                        for (std::ptrdiff_t i = 0; i <= nn; ++i) h(i, i) -= x;
                        double s = std::abs(h(nn, nn - 1)) + std::abs(h(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    std::ptrdiff_t m;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    for (m = nn - 2; m >= l; --m) {
                        z = h(m, m);
                        double rr = x - z;
                        double ss = y - z;
                        p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
                        q = h(m + 1, m + 1) - z - rr - ss;
                        r = h(m + 2, m + 1);
                        double sc = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= sc; q /= sc; r /= sc;
                        if (m == l) break;
                        const double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
                        const double v = std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) +
                                                        std::abs(h(m + 1, m + 1)));
                        if (u <= eps * v) break;
                    }
                    for (std::ptrdiff_t i = m + 2; i <= nn; ++i) {
                        h(i, i - 2) = 0.0;
                        if (i > m + 2) h(i, i - 3) = 0.0;
                    }
                    for (std::ptrdiff_t k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = h(k, k - 1);
                            q = h(k + 1, k - 1);
                            r = (k != nn - 1) ? h(k + 2, k - 1) : 0.0;
                            x = std::abs(p) + std::abs(q) + std::abs(r);
                            if (x != 0.0) { p /= x; q /= x; r /= x; }
                        }
                        double s = sign_like(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) h(k, k - 1) = -h(k, k - 1);
                        } else {
                            h(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        double yy = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (std::ptrdiff_t j = k; j <= nn; ++j) {
                            double pp = h(k, j) + q * h(k + 1, j);
                            if (k != nn - 1) {
                                pp += r * h(k + 2, j);
                                h(k + 2, j) -= pp * z;
                            }
                            h(k + 1, j) -= pp * yy;
                            h(k, j) -= pp * x;
                        }
                        const std::ptrdiff_t mmin = std::min(nn, k + 3);
                        for (std::ptrdiff_t i = l; i <= mmin; ++i) {
                            double pp = x * h(i, k) + yy * h(i, k + 1);
                            if (k != nn - 1) {
                                pp += z * h(i, k + 2);
                                h(i, k + 2) -= pp * r;
                            }
                            h(i, k + 1) -= pp * q;
                            h(i, k) -= pp;
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
    return eig;
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(Matrix a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
    if (a.rows() == 0) return {};
    if (a.rows() == 1) return {a(0, 0)};
    hessenberg_reduce(a);
    return hessenberg_qr(a);
}

std::pair<double, std::vector<double>> eigenpair_near(const Matrix& a, double target) {
    const std::size_t n = a.rows();
    // small perturbation keeps the shifted matrix safely invertible
    double shift = target;
    const double scale = std::max(max_abs(a), 1.0);
    Matrix shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= shift;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= 1e-8 * scale;
    LuFactorization lu(std::move(shifted));

    std::vector<double> v(n, 1.0 / std::sqrt(double(n)));
    double lambda = target;
    for (int it = 0; it < 50; ++it) {
        std::vector<double> w = lu.solve(v);
        const double wn = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
        for (double& x : w) x /= wn;
        std::vector<double> av = matvec(a, w);
        lambda = std::inner_product(w.begin(), w.end(), av.begin(), 0.0);
        double resid = 0.0;
        for (std::size_t i = 0; i < n; ++i) resid += (av[i] - lambda * w[i]) * (av[i] - lambda * w[i]);
        v = std::move(w);
        if (std::sqrt(resid) <= 1e-12 * scale) break;
    }
    return {lambda, v};
}

std::array<double, 3> sym3_eigenvalues(const std::array<std::array<double, 3>, 3>& m) {
    const double a = m[0][0], b = m[1][1], c = m[2][2];
    const double d = m[0][1], e = m[1][2], f = m[0][2];
    const double p1 = d * d + e * e + f * f;
    if (p1 == 0.0) {
        std::array<double, 3> eig{a, b, c};
        std::sort(eig.begin(), eig.end());
        return eig;
    }
    const double q = (a + b + c) / 3.0;
    const double p2 = (a - q) * (a - q) + (b - q) * (b - q) + (c - q) * (c - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    // det of (M - q I) / p
    const double b00 = (a - q) / p, b11 = (b - q) / p, b22 = (c - q) / p;
    const double b01 = d / p, b12 = e / p, b02 = f / p;
    double det = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
                 b02 * (b01 * b12 - b11 * b02);
    double r = det / 2.0;
    r = std::clamp(r, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    return {e3, e2, e1};
}

}  // namespace hbem
