#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cohbound {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Sizes here never exceed 64x64.
class CMatrix {
   public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }

    static CMatrix identity(std::size_t dim) {
        CMatrix m(dim, dim);
        for (std::size_t i = 0; i < dim; i++) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static CMatrix diagonal(const std::vector<cplx> &entries) {
        CMatrix m(entries.size(), entries.size());
        for (std::size_t i = 0; i < entries.size(); i++) {
            m(i, i) = entries[i];
        }
        return m;
    }

    /// |v><v|
    static CMatrix outer(const std::vector<cplx> &v) {
        CMatrix m(v.size(), v.size());
        for (std::size_t r = 0; r < v.size(); r++) {
            for (std::size_t c = 0; c < v.size(); c++) {
                m(r, c) = v[r] * std::conj(v[c]);
            }
        }
        return m;
    }

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }

    cplx &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    CMatrix adjoint() const {
        CMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; r++) {
            for (std::size_t c = 0; c < cols_; c++) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    cplx trace() const {
        cplx t = 0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); i++) {
            t += (*this)(i, i);
        }
        return t;
    }

    CMatrix &operator+=(const CMatrix &other) {
        require_same_shape(other);
        for (std::size_t i = 0; i < data_.size(); i++) {
            data_[i] += other.data_[i];
        }
        return *this;
    }
    CMatrix &operator-=(const CMatrix &other) {
        require_same_shape(other);
        for (std::size_t i = 0; i < data_.size(); i++) {
            data_[i] -= other.data_[i];
        }
        return *this;
    }
    CMatrix &operator*=(cplx s) {
        for (auto &x : data_) {
            x *= s;
        }
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix &b) {
        return a += b;
    }
    friend CMatrix operator-(CMatrix a, const CMatrix &b) {
        return a -= b;
    }
    friend CMatrix operator*(CMatrix a, cplx s) {
        return a *= s;
    }
    friend CMatrix operator*(cplx s, CMatrix a) {
        return a *= s;
    }

    friend CMatrix operator*(const CMatrix &a, const CMatrix &b) {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("matrix product: inner dimensions differ");
        }
        CMatrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; r++) {
            for (std::size_t k = 0; k < a.cols_; k++) {
                cplx x = a(r, k);
                if (x == cplx{}) {
                    continue;
                }
                for (std::size_t c = 0; c < b.cols_; c++) {
                    out(r, c) += x * b(k, c);
                }
            }
        }
        return out;
    }

    std::vector<cplx> apply(const std::vector<cplx> &v) const {
        if (v.size() != cols_) {
            throw std::invalid_argument("matrix-vector product: dimension mismatch");
        }
        std::vector<cplx> out(rows_);
        for (std::size_t r = 0; r < rows_; r++) {
            cplx acc = 0;
            for (std::size_t c = 0; c < cols_; c++) {
                acc += (*this)(r, c) * v[c];
            }
            out[r] = acc;
        }
        return out;
    }

    /// Largest entrywise modulus of (this - other).
    double max_abs_diff(const CMatrix &other) const {
        require_same_shape(other);
        double worst = 0;
        for (std::size_t i = 0; i < data_.size(); i++) {
            worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
        }
        return worst;
    }

    double max_abs() const {
        double worst = 0;
        for (const auto &x : data_) {
            worst = std::max(worst, std::abs(x));
        }
        return worst;
    }

    bool is_hermitian(double tol) const {
        if (!is_square()) {
            return false;
        }
        for (std::size_t r = 0; r < rows_; r++) {
            for (std::size_t c = r; c < cols_; c++) {
                if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) {
                    return false;
                }
            }
        }
        return true;
    }

    bool is_unitary(double tol) const {
        if (!is_square()) {
            return false;
        }
        return ((*this) * adjoint()).max_abs_diff(identity(rows_)) <= tol;
    }

    const std::vector<cplx> &data() const {
        return data_;
    }

   private:
    void require_same_shape(const CMatrix &other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw std::invalid_argument("matrix shapes differ");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ar++) {
        for (std::size_t ac = 0; ac < a.cols(); ac++) {
            cplx x = a(ar, ac);
            if (x == cplx{}) {
                continue;
            }
            for (std::size_t br = 0; br < b.rows(); br++) {
                for (std::size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
                }
            }
        }
    }
    return out;
}

inline double vector_norm(const std::vector<cplx> &v) {
    double acc = 0;
    for (const auto &x : v) {
        acc += std::norm(x);
    }
    return std::sqrt(acc);
}

struct HermitianEigen {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // column j is the eigenvector of values[j]
};

/// Eigen-decomposition of a Hermitian matrix (Eigen's self-adjoint solver).
inline HermitianEigen hermitian_eigen(const CMatrix &input, bool want_vectors = true) {
    if (!input.is_square()) {
        throw std::invalid_argument("hermitian_eigen: matrix must be square");
    }
    const auto n = static_cast<Eigen::Index>(input.rows());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; r++) {
        for (Eigen::Index c = 0; c < n; c++) {
            m(r, c) = input(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigen: solver did not converge");
    }
    HermitianEigen out;
    out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    if (want_vectors) {
        out.vectors = CMatrix(input.rows(), input.rows());
        for (Eigen::Index r = 0; r < n; r++) {
            for (Eigen::Index c = 0; c < n; c++) {
                out.vectors(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = solver.eigenvectors()(r, c);
            }
        }
    }
    return out;
}

}  // namespace cohbound
