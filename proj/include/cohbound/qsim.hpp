#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cohbound/linalg.hpp"
#include "cohbound/stabilizer.hpp"

namespace cohbound {

using Rng = std::mt19937_64;

/// Probability distribution over `dim` outcomes.
///
/// Entries in [-1e-12, 0) are clamped to 0; anything more negative, or a
/// total mass further than 1e-9 from 1, is rejected.
class ProbVector {
   public:
    ProbVector() = default;
    explicit ProbVector(std::vector<double> weights) : w_(std::move(weights)) {
        if (w_.empty()) {
            throw std::invalid_argument("ProbVector: empty");
        }
        double total = 0;
        for (auto &x : w_) {
            if (!std::isfinite(x) || x < -1e-12) {
                throw std::invalid_argument("ProbVector: negative or non-finite weight");
            }
            if (x < 0) {
                x = 0;
            }
            total += x;
        }
        if (std::abs(total - 1) > 1e-9) {
            throw std::invalid_argument("ProbVector: weights do not sum to 1");
        }
    }

    static ProbVector uniform(std::size_t dim) {
        return ProbVector(std::vector<double>(dim, 1.0 / double(dim)));
    }
    static ProbVector point_mass(std::size_t dim, std::size_t index) {
        std::vector<double> w(dim, 0.0);
        w.at(index) = 1;
        return ProbVector(std::move(w));
    }

    std::size_t dim() const {
        return w_.size();
    }
    double operator[](std::size_t i) const {
        return w_[i];
    }
    const std::vector<double> &weights() const {
        return w_;
    }

    /// Descending order; ties keep their original index order.
    ProbVector sorted_descending() const {
        ProbVector out = *this;
        std::stable_sort(out.w_.begin(), out.w_.end(), std::greater<>());
        return out;
    }

   private:
    std::vector<double> w_;
};

namespace detail {

inline std::size_t dim_for_qubits(std::size_t n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in 1..6");
    }
    return std::size_t{1} << n;
}

inline std::size_t qubits_for_dim(std::size_t dim) {
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("dimension must be a power of two >= 2");
    }
    return static_cast<std::size_t>(std::countr_zero(dim));
}

}  // namespace detail

/// Normalized state vector on n qubits.
class PureState {
   public:
    PureState() = default;
    explicit PureState(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
        n_ = detail::qubits_for_dim(amps_.size());
        detail::dim_for_qubits(n_);
        double norm = vector_norm(amps_);
        if (std::abs(norm * norm - 1) > 1e-10) {
            throw std::invalid_argument("PureState: amplitudes are not normalized");
        }
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    static PureState normalized(std::vector<cplx> amplitudes) {
        double norm = vector_norm(amplitudes);
        if (norm == 0) {
            throw std::invalid_argument("PureState: zero vector");
        }
        for (auto &a : amplitudes) {
            a /= norm;
        }
        return PureState(std::move(amplitudes));
    }

    std::size_t num_qubits() const {
        return n_;
    }
    std::size_t dim() const {
        return amps_.size();
    }
    const std::vector<cplx> &amplitudes() const {
        return amps_;
    }

   private:
    std::size_t n_ = 0;
    std::vector<cplx> amps_;
};

/// Hermitian, positive semidefinite, unit-trace matrix on n <= 6 qubits.
class DensityMatrix {
   public:
    DensityMatrix() = default;

    /// Validates Hermiticity (1e-10), trace (1e-10) and eigenvalues >= -1e-9.
    static DensityMatrix from_matrix(CMatrix m) {
        std::size_t n = detail::qubits_for_dim(m.rows());
        detail::dim_for_qubits(n);
        if (!m.is_square()) {
            throw std::invalid_argument("DensityMatrix: not square");
        }
        if (!m.is_hermitian(1e-10)) {
            throw std::invalid_argument("DensityMatrix: not Hermitian");
        }
        if (std::abs(m.trace() - 1.0) > 1e-10) {
            throw std::invalid_argument("DensityMatrix: trace is not 1");
        }
        auto eig = hermitian_eigen(m, false);
        if (eig.values.front() < -1e-9) {
            throw std::invalid_argument("DensityMatrix: not positive semidefinite");
        }
        return DensityMatrix(n, std::move(m));
    }

    static DensityMatrix from_pure(const PureState &psi) {
        return DensityMatrix(psi.num_qubits(), CMatrix::outer(psi.amplitudes()));
    }

    static DensityMatrix maximally_mixed(std::size_t n) {
        std::size_t dim = detail::dim_for_qubits(n);
        return DensityMatrix(n, CMatrix::identity(dim) * cplx(1.0 / double(dim)));
    }

    std::size_t num_qubits() const {
        return n_;
    }
    std::size_t dim() const {
        return m_.rows();
    }
    const CMatrix &matrix() const {
        return m_;
    }
    cplx operator()(std::size_t r, std::size_t c) const {
        return m_(r, c);
    }

   private:
    template <typename F>
    friend DensityMatrix transform_unchecked(const DensityMatrix &rho, F &&entry_map);

    DensityMatrix(std::size_t n, CMatrix m) : n_(n), m_(std::move(m)) {
    }

    std::size_t n_ = 0;
    CMatrix m_;
};

/// Entrywise map f(row, col, value) for channels known to preserve validity.
template <typename F>
DensityMatrix transform_unchecked(const DensityMatrix &rho, F &&entry_map) {
    CMatrix m = rho.matrix();
    for (std::size_t r = 0; r < m.rows(); r++) {
        for (std::size_t c = 0; c < m.cols(); c++) {
            m(r, c) = entry_map(r, c, m(r, c));
        }
    }
    return DensityMatrix(rho.num_qubits(), std::move(m));
}

inline ProbVector diagonal_distribution(const DensityMatrix &rho) {
    std::vector<double> d(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); i++) {
        d[i] = rho(i, i).real();
    }
    return ProbVector(std::move(d));
}

inline double entropy_term(double p) {
    return p > 0 ? -p * std::log2(p) : 0.0;
}

inline double shannon_entropy(const ProbVector &p) {
    double h = 0;
    for (double x : p.weights()) {
        h += entropy_term(x);
    }
    return std::max(h, 0.0);
}

/// Eigenvalues below 1e-12 count as zero.
inline double von_neumann_entropy(const DensityMatrix &rho) {
    auto eig = hermitian_eigen(rho.matrix(), false);
    double h = 0;
    for (double v : eig.values) {
        if (v >= 1e-12) {
            h += entropy_term(v);
        }
    }
    return std::max(h, 0.0);
}

inline double exact_relative_entropy_coherence(const DensityMatrix &rho) {
    return std::max(0.0, shannon_entropy(diagonal_distribution(rho)) - von_neumann_entropy(rho));
}

/// (1 - lambda) rho + lambda I / 2^n
inline DensityMatrix apply_depolarizing(const DensityMatrix &rho, double lambda) {
    if (!(lambda >= 0 && lambda <= 1)) {
        throw std::invalid_argument("apply_depolarizing: lambda must lie in [0, 1]");
    }
    double floor = lambda / double(rho.dim());
    return transform_unchecked(rho, [&](std::size_t r, std::size_t c, cplx x) {
        return (1 - lambda) * x + (r == c ? floor : 0.0);
    });
}

/// Independent phase flips on every qubit: rho -> (1 - gamma/2) rho + (gamma/2) Z rho Z,
/// so a coherence between basis states differing in k bits shrinks by (1 - gamma)^k.
inline DensityMatrix apply_dephasing(const DensityMatrix &rho, double gamma) {
    if (!(gamma >= 0 && gamma <= 1)) {
        throw std::invalid_argument("apply_dephasing: gamma must lie in [0, 1]");
    }
    return transform_unchecked(rho, [&](std::size_t r, std::size_t c, cplx x) {
        int k = std::popcount(r ^ c);
        return k == 0 ? x : x * std::pow(1 - gamma, k);
    });
}

inline double fidelity(const DensityMatrix &rho, const PureState &psi) {
    if (rho.dim() != psi.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    auto rho_psi = rho.matrix().apply(psi.amplitudes());
    cplx f = 0;
    for (std::size_t i = 0; i < psi.dim(); i++) {
        f += std::conj(psi.amplitudes()[i]) * rho_psi[i];
    }
    return f.real();
}

/// tr(P rho) for a single Pauli string, using its monomial structure.
inline cplx pauli_expectation(const DensityMatrix &rho, const PauliString &p) {
    if (p.num_qubits() != rho.num_qubits()) {
        throw std::invalid_argument("pauli_expectation: qubit count mismatch");
    }
    std::uint64_t xm = p.x_mask();
    cplx acc = 0;
    // tr(P rho) = sum_c P[c^x][c] rho[c][c^x]
    for (std::uint64_t c = 0; c < rho.dim(); c++) {
        acc += p.column_amplitude(c) * rho(c, c ^ xm);
    }
    return acc;
}

/// Re tr(M rho); throws if the imaginary part exceeds 1e-9.
inline double expectation(const DensityMatrix &rho, const ObservableSum &obs) {
    if (obs.num_qubits() != rho.num_qubits()) {
        throw std::invalid_argument("expectation: qubit count mismatch");
    }
    CMatrix m = matrix_representation(obs);
    if (!m.is_hermitian(1e-9)) {
        throw std::invalid_argument("expectation: observable is not Hermitian");
    }
    cplx tr = (m * rho.matrix()).trace();
    if (std::abs(tr.imag()) > 1e-9) {
        throw std::invalid_argument("expectation: complex expectation value");
    }
    return tr.real();
}

struct SampledValue {
    double mean = 0;
    double sigma = 0;
};

/// `shots` +-1 outcomes with P(+1) = (1 + e)/2; sigma is the standard error.
inline SampledValue sample_pauli(double expectation_value, std::uint64_t shots, Rng &rng) {
    double e = std::clamp(expectation_value, -1.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(shots, (1 + e) / 2);
    std::uint64_t plus = draw(rng);
    double n = double(shots);
    double mean = (2.0 * double(plus) - n) / n;
    double var = std::max(0.0, (1 - mean * mean) * n / (n - 1));
    return {mean, std::sqrt(var / n)};
}

/// Samples every Pauli term of obs with `shots` shots each and combines them
/// linearly; the identity term is known exactly.
inline SampledValue sample_observable(const DensityMatrix &rho, const ObservableSum &obs, std::uint64_t shots, Rng &rng) {
    if (shots < 2) {
        throw std::invalid_argument("sample_observable: need at least 2 shots");
    }
    if (obs.num_qubits() != rho.num_qubits()) {
        throw std::invalid_argument("sample_observable: qubit count mismatch");
    }
    double mean = 0;
    double var = 0;
    for (const auto &t : obs.terms()) {
        if (t.pauli.is_identity_letters()) {
            mean += t.weight;
            continue;
        }
        auto s = sample_pauli(pauli_expectation(rho, t.pauli).real(), shots, rng);
        mean += t.weight * s.mean;
        var += t.weight * t.weight * s.sigma * s.sigma;
    }
    return {mean, std::sqrt(var)};
}

struct BasisSample {
    std::vector<std::uint64_t> counts;
    ProbVector frequencies;
    std::vector<double> sigma;  // sqrt(f (1 - f) / shots) per bin
    std::uint64_t shots = 0;
};

/// Multinomial draw from probs via sequential conditional binomials.
inline std::vector<std::uint64_t> sample_multinomial(const std::vector<double> &probs, std::uint64_t shots, Rng &rng) {
    std::vector<std::uint64_t> counts(probs.size(), 0);
    std::uint64_t remaining = shots;
    double mass = 1.0;
    for (std::size_t i = 0; i < probs.size() && remaining > 0; i++) {
        if (i + 1 == probs.size()) {
            counts[i] = remaining;
            break;
        }
        double p = mass > 0 ? std::clamp(probs[i] / mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<std::uint64_t> draw(remaining, p);
        counts[i] = draw(rng);
        remaining -= counts[i];
        mass -= probs[i];
    }
    return counts;
}

inline BasisSample frequencies_from_counts(std::vector<std::uint64_t> counts) {
    std::uint64_t shots = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (shots == 0) {
        throw std::invalid_argument("frequencies_from_counts: no shots");
    }
    std::vector<double> f(counts.size());
    std::vector<double> sigma(counts.size());
    for (std::size_t i = 0; i < counts.size(); i++) {
        f[i] = double(counts[i]) / double(shots);
        sigma[i] = std::sqrt(f[i] * (1 - f[i]) / double(shots));
    }
    return {std::move(counts), ProbVector(std::move(f)), std::move(sigma), shots};
}

inline BasisSample sample_computational_basis(const DensityMatrix &rho, std::uint64_t shots, Rng &rng) {
    if (shots < 1) {
        throw std::invalid_argument("sample_computational_basis: need at least 1 shot");
    }
    auto d = diagonal_distribution(rho);
    return frequencies_from_counts(sample_multinomial(d.weights(), shots, rng));
}

}  // namespace cohbound
