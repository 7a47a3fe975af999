#ifndef HBEM_LINALG_HPP
#define HBEM_LINALG_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace hbem {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    Matrix transpose() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(double s);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

double inf_norm(const std::vector<double>& v);
double max_abs(const Matrix& a);

/// LU factorization with partial pivoting (in place).
class LuFactorization {
public:
    explicit LuFactorization(Matrix a);

    bool singular() const { return singular_; }
    std::vector<double> solve(const std::vector<double>& rhs) const;

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
    bool singular_ = false;
};

/// All eigenvalues of a general real square matrix, via Householder
/// reduction to Hessenberg form followed by the shifted QR iteration.
/// Throws std::runtime_error on non-convergence.
std::vector<std::complex<double>> eigenvalues(Matrix a);

/// Eigenvector for the eigenvalue of `a` closest to `target` (real part),
/// by inverse iteration on the shifted matrix. Returns the refined
/// eigenvalue (Rayleigh quotient) and a unit eigenvector.
std::pair<double, std::vector<double>> eigenpair_near(const Matrix& a, double target);

/// Eigenvalues of a symmetric 3x3 matrix, ascending, by the closed-form
/// trigonometric solution of the characteristic cubic.
std::array<double, 3> sym3_eigenvalues(const std::array<std::array<double, 3>, 3>& m);

}  // namespace hbem

#endif
