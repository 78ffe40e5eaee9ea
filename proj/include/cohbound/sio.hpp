#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cohbound/linalg.hpp"
#include "cohbound/qsim.hpp"

// Executable check that sum_i sqrt(d_i)|i> reaches every state with diagonal d
// under a strictly incoherent channel built from an ensemble decomposition.

namespace cohbound {

inline constexpr double kSupportThreshold = 1e-12;

struct EnsembleDecomposition {
    std::vector<double> weights;
    std::vector<std::vector<cplx>> states;  // normalized amplitude vectors

    CMatrix density() const {
        std::size_t dim = states.empty() ? 0 : states[0].size();
        CMatrix acc(dim, dim);
        for (std::size_t a = 0; a < weights.size(); a++) {
            acc += CMatrix::outer(states[a]) * cplx(weights[a]);
        }
        return acc;
    }
};

/// Spectral decomposition; eigenvalues below 1e-12 are dropped.
inline EnsembleDecomposition eigen_ensemble(const DensityMatrix &rho) {
    auto eig = hermitian_eigen(rho.matrix());
    EnsembleDecomposition out;
    for (std::size_t j = eig.values.size(); j-- > 0;) {
        if (eig.values[j] < kSupportThreshold) {
            continue;
        }
        std::vector<cplx> v(rho.dim());
        for (std::size_t i = 0; i < rho.dim(); i++) {
            v[i] = eig.vectors(i, j);
        }
        double norm = vector_norm(v);
        for (auto &x : v) {
            x /= norm;
        }
        out.weights.push_back(eig.values[j]);
        out.states.push_back(std::move(v));
    }
    return out;
}

/// Kraus operators expressed in a permuted basis where the support of d comes first.
///
/// permutation[a] is the original basis index moved to position a. Every
/// operator is diagonal in that basis. When d has zeros, the last operator
/// is the projector onto the zero block, which makes the channel trace
/// preserving on the whole space.
struct KrausSet {
    std::vector<CMatrix> operators;
    std::vector<std::size_t> permutation;
    std::size_t support = 0;

    std::size_t dim() const {
        return permutation.size();
    }

    /// M with M|permutation[a]> = |a>.
    CMatrix permutation_matrix() const {
        CMatrix m(dim(), dim());
        for (std::size_t a = 0; a < dim(); a++) {
            m(a, permutation[a]) = 1.0;
        }
        return m;
    }

    /// M^T K M for every operator.
    std::vector<CMatrix> in_original_basis() const {
        CMatrix m = permutation_matrix();
        CMatrix mt = m.adjoint();
        std::vector<CMatrix> out;
        for (const auto &k : operators) {
            out.push_back(mt * k * m);
        }
        return out;
    }
};

inline KrausSet kraus_from_ensemble(const EnsembleDecomposition &ens, const ProbVector &d) {
    if (ens.states.empty()) {
        throw std::invalid_argument("kraus_from_ensemble: empty ensemble");
    }
    const std::size_t dim = d.dim();
    for (const auto &s : ens.states) {
        if (s.size() != dim) {
            throw std::invalid_argument("kraus_from_ensemble: dimension mismatch");
        }
    }
    for (std::size_t i = 0; i < dim; i++) {
        double di = 0;
        for (std::size_t a = 0; a < ens.weights.size(); a++) {
            di += ens.weights[a] * std::norm(ens.states[a][i]);
        }
        if (std::abs(di - d[i]) > 1e-9) {
            throw std::invalid_argument("kraus_from_ensemble: d is not the ensemble diagonal");
        }
    }

    KrausSet ks;
    for (std::size_t i = 0; i < dim; i++) {
        if (d[i] > kSupportThreshold) {
            ks.permutation.push_back(i);
        }
    }
    ks.support = ks.permutation.size();
    for (std::size_t i = 0; i < dim; i++) {
        if (!(d[i] > kSupportThreshold)) {
            ks.permutation.push_back(i);
        }
    }

    for (std::size_t a = 0; a < ens.weights.size(); a++) {
        CMatrix k(dim, dim);
        double root = std::sqrt(ens.weights[a]);
        for (std::size_t pos = 0; pos < ks.support; pos++) {
            std::size_t i = ks.permutation[pos];
            k(pos, pos) = root * ens.states[a][i] / std::sqrt(d[i]);
        }
        ks.operators.push_back(std::move(k));
    }
    if (ks.support < dim) {
        CMatrix zero_block(dim, dim);
        for (std::size_t pos = ks.support; pos < dim; pos++) {
            zero_block(pos, pos) = 1.0;
        }
        ks.operators.push_back(std::move(zero_block));
    }
    return ks;
}

struct SioVerification {
    double reconstruction_deviation = 0;  // max |Lambda(psi_d) - target|
    double completeness_deviation = 0;    // max |sum K^dag K - I|
    bool strictly_incoherent = false;

    bool passed(double tol = 1e-9) const {
        return reconstruction_deviation <= tol && completeness_deviation <= tol && strictly_incoherent;
    }
};

namespace detail {

inline bool is_diagonal(const CMatrix &m) {
    for (std::size_t r = 0; r < m.rows(); r++) {
        for (std::size_t c = 0; c < m.cols(); c++) {
            if (r != c && m(r, c) != cplx{}) {
                return false;
            }
        }
    }
    return true;
}

/// At most one nonzero entry in every row and every column.
inline bool is_monomial_pattern(const CMatrix &m) {
    std::vector<int> row_count(m.rows(), 0);
    std::vector<int> col_count(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); r++) {
        for (std::size_t c = 0; c < m.cols(); c++) {
            if (m(r, c) != cplx{}) {
                row_count[r]++;
                col_count[c]++;
            }
        }
    }
    for (int k : row_count) {
        if (k > 1) {
            return false;
        }
    }
    for (int k : col_count) {
        if (k > 1) {
            return false;
        }
    }
    return true;
}

inline bool is_permutation_matrix(const CMatrix &m) {
    if (!is_monomial_pattern(m)) {
        return false;
    }
    for (std::size_t r = 0; r < m.rows(); r++) {
        bool one = false;
        for (std::size_t c = 0; c < m.cols(); c++) {
            if (m(r, c) == cplx(1.0)) {
                one = true;
            }
        }
        if (!one) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

/// Applies M^{-1} o Lambda o M to |psi_d><psi_d| and compares with target.
inline SioVerification apply_and_verify(const KrausSet &ks, const ProbVector &d, const DensityMatrix &target) {
    const std::size_t dim = d.dim();
    if (ks.dim() != dim || target.dim() != dim) {
        throw std::invalid_argument("apply_and_verify: dimension mismatch");
    }
    for (std::size_t i = 0; i < dim; i++) {
        if (std::abs(target(i, i).real() - d[i]) > 1e-9) {
            throw std::invalid_argument("apply_and_verify: target diagonal differs from d");
        }
    }

    std::vector<cplx> psi_d(dim);
    for (std::size_t i = 0; i < dim; i++) {
        psi_d[i] = std::sqrt(d[i]);
    }
    CMatrix m = ks.permutation_matrix();
    CMatrix mt = m.adjoint();
    CMatrix permuted = m * CMatrix::outer(psi_d) * mt;
    CMatrix image(dim, dim);
    CMatrix completeness(dim, dim);
    for (const auto &k : ks.operators) {
        CMatrix k_dag = k.adjoint();
        image += k * permuted * k_dag;
        completeness += k_dag * k;
    }
    image = mt * image * m;

    SioVerification v;
    v.reconstruction_deviation = image.max_abs_diff(target.matrix());
    v.completeness_deviation = completeness.max_abs_diff(CMatrix::identity(dim));
    v.strictly_incoherent = detail::is_permutation_matrix(m);
    for (const auto &k : ks.operators) {
        v.strictly_incoherent = v.strictly_incoherent && detail::is_diagonal(k);
    }
    for (const auto &k : ks.in_original_basis()) {
        v.strictly_incoherent = v.strictly_incoherent && detail::is_monomial_pattern(k);
    }
    return v;
}

}  // namespace cohbound
