#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohbound/linalg.hpp"

namespace cohbound {

inline constexpr std::size_t kMaxQubits = 6;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) {
    return "IXYZ"[static_cast<int>(p)];
}

/// A tensor product of single-qubit Paulis times a phase in {+1, +i, -1, -i}.
///
/// Qubit 0 is the leftmost letter and the most significant bit of a
/// computational-basis index, so "ZII" acts on |b0 b1 b2> through b0.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::size_t num_qubits) : letters_(num_qubits, Pauli::I) {
    }
    PauliString(std::vector<Pauli> letters, int phase_exponent = 0)
        : letters_(std::move(letters)), phase_(((phase_exponent % 4) + 4) % 4) {
    }

    /// Parses "XZI", "+XZI", "-YYX", "iXY", "-iXY". 'I' and '_' both mean identity.
    static PauliString parse(std::string_view text) {
        int phase = 0;
        std::size_t pos = 0;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (text[pos] == '-') {
                phase = 2;
            }
            pos++;
        }
        if (pos < text.size() && text[pos] == 'i') {
            phase += 1;
            pos++;
        }
        std::vector<Pauli> letters;
        for (; pos < text.size(); pos++) {
            switch (text[pos]) {
                case 'I':
                case '_':
                    letters.push_back(Pauli::I);
                    break;
                case 'X':
                    letters.push_back(Pauli::X);
                    break;
                case 'Y':
                    letters.push_back(Pauli::Y);
                    break;
                case 'Z':
                    letters.push_back(Pauli::Z);
                    break;
                default:
                    throw std::invalid_argument("unrecognized Pauli letter in '" + std::string(text) + "'");
            }
        }
        if (letters.empty()) {
            throw std::invalid_argument("empty Pauli string");
        }
        return PauliString(std::move(letters), phase);
    }

    static PauliString single(std::size_t num_qubits, std::size_t qubit, Pauli p) {
        PauliString out(num_qubits);
        out.letters_.at(qubit) = p;
        return out;
    }

    std::size_t num_qubits() const {
        return letters_.size();
    }
    Pauli letter(std::size_t qubit) const {
        return letters_[qubit];
    }
    const std::vector<Pauli> &letters() const {
        return letters_;
    }
    /// Phase is i^phase_exponent().
    int phase_exponent() const {
        return phase_;
    }
    cplx phase() const {
        static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return table[phase_];
    }
    bool is_hermitian() const {
        return phase_ % 2 == 0;
    }
    bool is_identity_letters() const {
        for (auto p : letters_) {
            if (p != Pauli::I) {
                return false;
            }
        }
        return true;
    }

    PauliString without_phase() const {
        return PauliString(letters_, 0);
    }

    /// Bits flipped by the operator (X or Y letters).
    std::uint64_t x_mask() const {
        std::uint64_t m = 0;
        for (std::size_t q = 0; q < letters_.size(); q++) {
            if (letters_[q] == Pauli::X || letters_[q] == Pauli::Y) {
                m |= std::uint64_t{1} << (letters_.size() - 1 - q);
            }
        }
        return m;
    }
    /// Bits that pick up a sign (Z or Y letters).
    std::uint64_t z_mask() const {
        std::uint64_t m = 0;
        for (std::size_t q = 0; q < letters_.size(); q++) {
            if (letters_[q] == Pauli::Z || letters_[q] == Pauli::Y) {
                m |= std::uint64_t{1} << (letters_.size() - 1 - q);
            }
        }
        return m;
    }
    int y_count() const {
        int k = 0;
        for (auto p : letters_) {
            k += p == Pauli::Y;
        }
        return k;
    }

    /// Amplitude a such that P|col> = a |col ^ x_mask()>.
    cplx column_amplitude(std::uint64_t col) const {
        int e = phase_ + y_count();
        if (std::popcount(col & z_mask()) % 2) {
            e += 2;
        }
        static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return table[e % 4];
    }

    std::string letters_str() const {
        std::string s;
        for (auto p : letters_) {
            s += pauli_char(p);
        }
        return s;
    }

    std::string str() const {
        static const char *prefix[4] = {"+", "+i", "-", "-i"};
        return prefix[phase_] + letters_str();
    }

    friend bool operator==(const PauliString &a, const PauliString &b) = default;

   private:
    std::vector<Pauli> letters_;
    int phase_ = 0;
};

/// Product a*b with exact phase tracking.
inline PauliString pauli_product(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("pauli_product: qubit counts differ");
    }
    std::vector<Pauli> letters(a.num_qubits());
    int phase = a.phase_exponent() + b.phase_exponent();
    for (std::size_t q = 0; q < a.num_qubits(); q++) {
        int x = static_cast<int>(a.letter(q));
        int y = static_cast<int>(b.letter(q));
        if (x == 0) {
            letters[q] = b.letter(q);
        } else if (y == 0) {
            letters[q] = a.letter(q);
        } else if (x == y) {
            letters[q] = Pauli::I;
        } else {
            letters[q] = static_cast<Pauli>(x ^ y);
            // XY = iZ, YZ = iX, ZX = iY; reversed order gives -i.
            phase += ((y - x + 3) % 3 == 1) ? 1 : 3;
        }
    }
    return PauliString(std::move(letters), phase);
}

inline CMatrix matrix_representation(const PauliString &p) {
    std::size_t dim = std::size_t{1} << p.num_qubits();
    CMatrix m(dim, dim);
    std::uint64_t xm = p.x_mask();
    for (std::uint64_t col = 0; col < dim; col++) {
        m(col ^ xm, col) = p.column_amplitude(col);
    }
    return m;
}

/// Real linear combination of Hermitian Pauli strings.
///
/// Terms are kept merged, sorted by their letters, with signs folded into the
/// weights so every stored PauliString has phase +1.
class ObservableSum {
   public:
    struct Term {
        double weight;
        PauliString pauli;
    };

    ObservableSum() = default;
    explicit ObservableSum(std::size_t num_qubits) : n_(num_qubits) {
    }

    static ObservableSum identity(std::size_t num_qubits) {
        ObservableSum out(num_qubits);
        out.terms_.push_back({1.0, PauliString(num_qubits)});
        return out;
    }

    static ObservableSum from_pauli(const PauliString &p, double weight = 1.0) {
        if (!p.is_hermitian()) {
            throw std::invalid_argument("ObservableSum term must have a real phase: " + p.str());
        }
        return from_terms(p.num_qubits(), {{weight, p}});
    }

    /// Builds from (weight, Pauli) pairs; like terms merge, near-zero weights drop.
    static ObservableSum from_terms(std::size_t num_qubits, const std::vector<std::pair<double, PauliString>> &terms) {
        std::map<std::vector<Pauli>, double> acc;
        for (const auto &[w, p] : terms) {
            if (p.num_qubits() != num_qubits) {
                throw std::invalid_argument("ObservableSum: term qubit count mismatch");
            }
            if (!p.is_hermitian()) {
                throw std::invalid_argument("ObservableSum term must have a real phase: " + p.str());
            }
            acc[p.letters()] += w * p.phase().real();
        }
        ObservableSum out(num_qubits);
        for (const auto &[letters, w] : acc) {
            if (std::abs(w) >= 1e-12) {
                out.terms_.push_back({w, PauliString(letters)});
            }
        }
        return out;
    }

    /// Convenience: from_text(3, {{1.0/3, "ZII"}, {2.0/3, "YYZ"}}).
    static ObservableSum from_text(std::size_t num_qubits, const std::vector<std::pair<double, std::string>> &terms) {
        std::vector<std::pair<double, PauliString>> parsed;
        for (const auto &[w, s] : terms) {
            parsed.emplace_back(w, PauliString::parse(s));
        }
        return from_terms(num_qubits, parsed);
    }

    std::size_t num_qubits() const {
        return n_;
    }
    const std::vector<Term> &terms() const {
        return terms_;
    }

    bool is_identity() const {
        return terms_.size() == 1 && terms_[0].pauli.is_identity_letters() && std::abs(terms_[0].weight - 1) < 1e-12;
    }

    /// Weight of the term with these letters, 0 if absent.
    double weight_of(std::string_view letters) const {
        auto p = PauliString::parse(letters);
        for (const auto &t : terms_) {
            if (t.pauli.letters() == p.letters()) {
                return t.weight;
            }
        }
        return 0;
    }

    /// Same term set with weights equal within tol.
    bool approx_equal(const ObservableSum &other, double tol) const {
        if (n_ != other.n_ || terms_.size() != other.terms_.size()) {
            return false;
        }
        for (std::size_t i = 0; i < terms_.size(); i++) {
            if (terms_[i].pauli != other.terms_[i].pauli || std::abs(terms_[i].weight - other.terms_[i].weight) > tol) {
                return false;
            }
        }
        return true;
    }

    std::string str() const {
        std::ostringstream out;
        for (std::size_t i = 0; i < terms_.size(); i++) {
            double w = terms_[i].weight;
            if (i) {
                out << (w < 0 ? " - " : " + ");
            } else if (w < 0) {
                out << "-";
            }
            if (std::abs(std::abs(w) - 1) > 1e-12) {
                out << std::abs(w) << "*";
            }
            out << terms_[i].pauli.letters_str();
        }
        return out.str();
    }

   private:
    std::size_t n_ = 0;
    std::vector<Term> terms_;
};

namespace detail {

inline std::map<std::vector<Pauli>, cplx> expand_product(const ObservableSum &a, const ObservableSum &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("observable_product: qubit counts differ");
    }
    std::map<std::vector<Pauli>, cplx> acc;
    for (const auto &ta : a.terms()) {
        for (const auto &tb : b.terms()) {
            PauliString p = pauli_product(ta.pauli, tb.pauli);
            acc[p.letters()] += ta.weight * tb.weight * p.phase();
        }
    }
    return acc;
}

}  // namespace detail

/// Term-by-term product. Throws when a surviving term carries an imaginary
/// weight, which happens for non-commuting or malformed factors.
inline ObservableSum observable_product(const ObservableSum &a, const ObservableSum &b) {
    auto acc = detail::expand_product(a, b);
    std::vector<std::pair<double, PauliString>> terms;
    for (const auto &[letters, w] : acc) {
        if (std::abs(w) < 1e-12) {
            continue;
        }
        if (std::abs(w.imag()) > 1e-9) {
            throw std::invalid_argument("observable_product: non-Hermitian product (" + a.str() + ") * (" + b.str() + ")");
        }
        terms.emplace_back(w.real(), PauliString(letters));
    }
    return ObservableSum::from_terms(a.num_qubits(), terms);
}

inline bool observables_commute(const ObservableSum &a, const ObservableSum &b) {
    auto ab = detail::expand_product(a, b);
    auto ba = detail::expand_product(b, a);
    for (const auto &[letters, w] : ab) {
        auto it = ba.find(letters);
        cplx other = it == ba.end() ? cplx{} : it->second;
        if (std::abs(w - other) > 1e-9) {
            return false;
        }
    }
    for (const auto &[letters, w] : ba) {
        if (!ab.count(letters) && std::abs(w) > 1e-9) {
            return false;
        }
    }
    return true;
}

inline CMatrix matrix_representation(const ObservableSum &obs) {
    std::size_t dim = std::size_t{1} << obs.num_qubits();
    CMatrix m(dim, dim);
    for (const auto &t : obs.terms()) {
        std::uint64_t xm = t.pauli.x_mask();
        for (std::uint64_t col = 0; col < dim; col++) {
            m(col ^ xm, col) += t.weight * t.pauli.column_amplitude(col);
        }
    }
    return m;
}

/// The 2^n-element abelian group generated by n commuting involutions.
///
/// element(T) is the product of the generators whose bits are set in T
/// (bit i <-> generator i), so element(0) is the identity.
class StabilizerSet {
   public:
    explicit StabilizerSet(std::vector<ObservableSum> generators) : generators_(std::move(generators)) {
        if (generators_.empty() || generators_.size() > kMaxQubits) {
            throw std::invalid_argument("StabilizerSet: need 1..6 generators");
        }
        n_ = generators_[0].num_qubits();
        if (generators_.size() != n_) {
            throw std::invalid_argument("StabilizerSet: generator count must equal qubit count");
        }
        for (std::size_t i = 0; i < n_; i++) {
            if (generators_[i].num_qubits() != n_) {
                throw std::invalid_argument("StabilizerSet: generator qubit count mismatch");
            }
            if (!observable_product(generators_[i], generators_[i]).approx_equal(ObservableSum::identity(n_), 1e-9)) {
                throw std::invalid_argument("StabilizerSet: generator does not square to identity: " + generators_[i].str());
            }
            for (std::size_t j = 0; j < i; j++) {
                if (!observables_commute(generators_[i], generators_[j])) {
                    throw std::invalid_argument("StabilizerSet: generators do not commute");
                }
            }
        }
        std::size_t size = std::size_t{1} << n_;
        elements_.resize(size);
        elements_[0] = ObservableSum::identity(n_);
        for (std::size_t t = 1; t < size; t++) {
            int low = std::countr_zero(t);
            elements_[t] = observable_product(generators_[low], elements_[t ^ (std::size_t{1} << low)]);
        }
    }

    std::size_t num_qubits() const {
        return n_;
    }
    std::size_t size() const {
        return elements_.size();
    }
    const std::vector<ObservableSum> &generators() const {
        return generators_;
    }
    const ObservableSum &generator(std::size_t i) const {
        return generators_.at(i);
    }
    const ObservableSum &element(std::size_t subset) const {
        return elements_.at(subset);
    }
    const std::vector<ObservableSum> &elements() const {
        return elements_;
    }

   private:
    std::size_t n_ = 0;
    std::vector<ObservableSum> generators_;
    std::vector<ObservableSum> elements_;
};

/// B[T][k] = (-1)^popcount(T & k): eigenvalue of element(T) on eigenbasis state k,
/// where bit i of k is set iff generator i has eigenvalue -1 on that state.
class EigenvalueMatrix {
   public:
    explicit EigenvalueMatrix(std::size_t num_qubits) : n_(num_qubits) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw std::invalid_argument("EigenvalueMatrix: qubit count must be in 1..6");
        }
    }
    std::size_t num_qubits() const {
        return n_;
    }
    std::size_t dim() const {
        return std::size_t{1} << n_;
    }
    int operator()(std::size_t subset, std::size_t label) const {
        return std::popcount(subset & label) % 2 ? -1 : 1;
    }
    std::vector<double> row(std::size_t subset) const {
        std::vector<double> r(dim());
        for (std::size_t k = 0; k < dim(); k++) {
            r[k] = (*this)(subset, k);
        }
        return r;
    }

   private:
    std::size_t n_;
};

inline EigenvalueMatrix eigenvalue_matrix(std::size_t num_qubits) {
    return EigenvalueMatrix(num_qubits);
}

/// Rank-1 projector onto eigenbasis state k: (1/2^n) sum_T B[T][k] element(T).
inline CMatrix eigenbasis_projector(const StabilizerSet &set, std::size_t label) {
    EigenvalueMatrix b(set.num_qubits());
    CMatrix acc(b.dim(), b.dim());
    for (std::size_t t = 0; t < set.size(); t++) {
        acc += matrix_representation(set.element(t)) * cplx(b(t, label) / double(b.dim()));
    }
    return acc;
}

namespace detail {

inline void require_qubits(std::size_t n, std::size_t lo, const char *what) {
    if (n < lo || n > kMaxQubits) {
        throw std::invalid_argument(std::string(what) + ": qubit count out of range");
    }
}

inline ObservableSum pauli_text(const std::string &text) {
    return ObservableSum::from_pauli(PauliString::parse(text));
}

}  // namespace detail

/// S_1 = X...X, S_i = Z_{i-1} Z_i.
inline StabilizerSet ghz_generators(std::size_t n) {
    detail::require_qubits(n, 2, "ghz_generators");
    std::vector<ObservableSum> gens;
    gens.push_back(detail::pauli_text(std::string(n, 'X')));
    for (std::size_t i = 1; i < n; i++) {
        std::string s(n, 'I');
        s[i - 1] = 'Z';
        s[i] = 'Z';
        gens.push_back(detail::pauli_text(s));
    }
    return StabilizerSet(std::move(gens));
}

/// Linear cluster: S_1 = X_1 Z_2, S_i = Z_{i-1} X_i Z_{i+1}, S_n = Z_{n-1} X_n.
inline StabilizerSet linear_cluster_generators(std::size_t n) {
    detail::require_qubits(n, 2, "linear_cluster_generators");
    std::vector<ObservableSum> gens;
    for (std::size_t i = 0; i < n; i++) {
        std::string s(n, 'I');
        s[i] = 'X';
        if (i > 0) {
            s[i - 1] = 'Z';
        }
        if (i + 1 < n) {
            s[i + 1] = 'Z';
        }
        gens.push_back(detail::pauli_text(s));
    }
    return StabilizerSet(std::move(gens));
}

/// Generators of (|0000> + |0011> + |1100> - |1111>)/2: the 4-qubit linear
/// cluster generators conjugated by H on qubits 1 and 4.
inline StabilizerSet cluster_c4_generators() {
    return StabilizerSet({
        detail::pauli_text("ZZII"),
        detail::pauli_text("XXZI"),
        detail::pauli_text("IZXX"),
        detail::pauli_text("IIZZ"),
    });
}

/// Pauli-basis decomposition of a Hermitian matrix: coefficient of P is tr(P M)/2^n.
inline ObservableSum pauli_decomposition(const CMatrix &m, std::size_t n) {
    std::size_t dim = std::size_t{1} << n;
    if (m.rows() != dim || m.cols() != dim) {
        throw std::invalid_argument("pauli_decomposition: matrix size does not match qubit count");
    }
    std::vector<std::pair<double, PauliString>> terms;
    std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < total; code++) {
        std::vector<Pauli> letters(n);
        for (std::size_t q = 0; q < n; q++) {
            letters[q] = static_cast<Pauli>((code >> (2 * (n - 1 - q))) & 3);
        }
        PauliString p(letters);
        std::uint64_t xm = p.x_mask();
        // tr(P M) = sum_col <col|P M|col> = sum_col P[col][col^x] M[col^x][col]
        cplx tr = 0;
        for (std::uint64_t col = 0; col < dim; col++) {
            std::uint64_t src = col ^ xm;
            tr += p.column_amplitude(src) * m(src, col);
        }
        cplx c = tr / double(dim);
        if (std::abs(c) < 1e-12) {
            continue;
        }
        if (std::abs(c.imag()) > 1e-9) {
            throw std::invalid_argument("pauli_decomposition: matrix is not Hermitian");
        }
        terms.emplace_back(c.real(), p);
    }
    return ObservableSum::from_terms(n, terms);
}

/// S_i = U Z_i U^dagger, i.e. the stabilizers of U|0...0>.
inline StabilizerSet conjugated_generators(const CMatrix &u, std::size_t n) {
    detail::require_qubits(n, 1, "conjugated_generators");
    std::size_t dim = std::size_t{1} << n;
    if (u.rows() != dim || u.cols() != dim) {
        throw std::invalid_argument("conjugated_generators: matrix size does not match qubit count");
    }
    if (!u.is_unitary(1e-9)) {
        throw std::invalid_argument("conjugated_generators: matrix is not unitary");
    }
    CMatrix u_dag = u.adjoint();
    std::vector<ObservableSum> gens;
    for (std::size_t i = 0; i < n; i++) {
        CMatrix z = matrix_representation(PauliString::single(n, i, Pauli::Z));
        gens.push_back(pauli_decomposition(u * z * u_dag, n));
    }
    return StabilizerSet(std::move(gens));
}

/// (XZI + IXZ + ZIX)/sqrt(3); maps |000> to |W3>.
inline CMatrix w3_unitary() {
    return matrix_representation(ObservableSum::from_text(3, {{1.0, "XZI"}, {1.0, "IXZ"}, {1.0, "ZIX"}})) *
           cplx(1 / std::sqrt(3.0));
}

/// (ZZZX + ZZXI + ZXII + XIII)/2; maps |0000> to |W4>.
inline CMatrix w4_unitary() {
    return matrix_representation(
        ObservableSum::from_text(4, {{0.5, "ZZZX"}, {0.5, "ZZXI"}, {0.5, "ZXII"}, {0.5, "XIII"}}));
}

inline StabilizerSet w3_generators() {
    return conjugated_generators(w3_unitary(), 3);
}

/// Generators listed last-qubit-first (S_1 = U Z_4 U^dagger, ..., S_4 = U Z_1 U^dagger),
/// the order in which the W4 group table is conventionally numbered.
inline StabilizerSet w4_generators() {
    auto natural = conjugated_generators(w4_unitary(), 4);
    std::vector<ObservableSum> gens(natural.generators().rbegin(), natural.generators().rend());
    return StabilizerSet(std::move(gens));
}

}  // namespace cohbound
