#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "switchsim/complex_matrix.hpp"

namespace switchsim {

/// Default tolerance for all state/channel invariant checks.
inline constexpr double kDefaultTol = 1e-10;

/// Unit-trace positive Hermitian operator. Invariants are checked on
/// construction: Hermiticity and trace to `tol`, smallest eigenvalue >= -tol.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m, double tol = kDefaultTol) : matrix_(std::move(m)) {
        if (!matrix_.is_square() || matrix_.rows() == 0)
            throw std::invalid_argument("DensityMatrix: matrix must be square and nonempty");
        if (!is_hermitian(matrix_, tol))
            throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
        if (std::abs(matrix_.trace() - Complex{1.0, 0.0}) > tol)
            throw std::invalid_argument("DensityMatrix: trace is not 1");
        const auto eigs = hermitian_eigenvalues(matrix_);
        if (eigs.front() < -tol)
            throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
    }

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    ComplexMatrix matrix_;
};

/// |i><i| in dimension d.
inline DensityMatrix basis_state(int d, int i) {
    if (d < 1 || i < 0 || i >= d) throw std::invalid_argument("basis_state: index out of range");
    ComplexMatrix m(d, d);
    m(i, i) = 1.0;
    return DensityMatrix(std::move(m));
}

/// |+><+| with amplitudes 1/sqrt(d): every entry 1/d.
inline DensityMatrix plus_state(int d) {
    if (d < 1) throw std::invalid_argument("plus_state: dimension must be >= 1");
    ComplexMatrix m(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = 1.0 / d;
    return DensityMatrix(std::move(m));
}

inline DensityMatrix maximally_mixed(int d) {
    if (d < 1) throw std::invalid_argument("maximally_mixed: dimension must be >= 1");
    ComplexMatrix m = ComplexMatrix::identity(d);
    m *= Complex{1.0 / d, 0.0};
    return DensityMatrix(std::move(m));
}

/// Channel as a list of d x d Kraus operators. Construction checks shapes
/// only; trace preservation is a separate query (validate_cptp) so that
/// deliberately incomplete operator sets can be represented and rejected.
class KrausChannel {
public:
    KrausChannel(int dim, std::vector<ComplexMatrix> ops)
        : dim_(dim), kraus_(std::move(ops)) {
        if (dim_ < 1) throw std::invalid_argument("KrausChannel: dimension must be >= 1");
        if (kraus_.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
        for (const auto& k : kraus_)
            if (k.rows() != static_cast<std::size_t>(dim_) ||
                k.cols() != static_cast<std::size_t>(dim_))
                throw std::invalid_argument("KrausChannel: operator shape mismatch");
    }

    int dim() const { return dim_; }
    const std::vector<ComplexMatrix>& kraus_ops() const { return kraus_; }
    std::size_t kraus_count() const { return kraus_.size(); }

private:
    int dim_;
    std::vector<ComplexMatrix> kraus_;
};

/// Completely depolarising channel: rho |-> I/d tr(rho). Kraus set
/// { |i><j| / sqrt(d) } ordered row-major in (i, j).
inline KrausChannel make_cdpc(int d) {
    if (d < 2) throw std::invalid_argument("make_cdpc: dimension must be >= 2");
    std::vector<ComplexMatrix> ops;
    ops.reserve(static_cast<std::size_t>(d) * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            ComplexMatrix k(d, d);
            k(i, j) = amp;
            ops.push_back(std::move(k));
        }
    }
    return KrausChannel(d, std::move(ops));
}

inline KrausChannel make_identity_channel(int d) {
    if (d < 1) throw std::invalid_argument("make_identity_channel: dimension must be >= 1");
    std::vector<ComplexMatrix> ops;
    ops.push_back(ComplexMatrix::identity(d));
    return KrausChannel(d, std::move(ops));
}

/// Sum_i K_i^dagger K_i == I within tol.
inline bool validate_cptp(const KrausChannel& ch, double tol = kDefaultTol) {
    const int d = ch.dim();
    ComplexMatrix sum(d, d);
    for (const auto& k : ch.kraus_ops()) {
        const ComplexMatrix kd = k.dagger();
        sum += kd * k;
    }
    return max_abs_diff(sum, ComplexMatrix::identity(d)) <= tol;
}

/// rho |-> Sum_i K_i rho K_i^dagger.
inline DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
    if (ch.dim() != rho.dim()) throw std::invalid_argument("apply: dimension mismatch");
    const int d = ch.dim();
    ComplexMatrix out(d, d);
    ComplexMatrix tmp;
    for (const auto& k : ch.kraus_ops()) {
        mul_into(tmp, k, rho.matrix());
        accumulate_ab_dagger(out, tmp, k);
    }
    return DensityMatrix(std::move(out));
}

/// Isometry V: C^d -> C^D with V^dagger V = I_d.
class Isometry {
public:
    Isometry(int input_dim, int output_dim, ComplexMatrix m, double tol = kDefaultTol)
        : input_dim_(input_dim), output_dim_(output_dim), matrix_(std::move(m)) {
        if (matrix_.rows() != static_cast<std::size_t>(output_dim_) ||
            matrix_.cols() != static_cast<std::size_t>(input_dim_))
            throw std::invalid_argument("Isometry: matrix shape mismatch");
        const ComplexMatrix gram = matrix_.dagger() * matrix_;
        if (max_abs_diff(gram, ComplexMatrix::identity(input_dim_)) > tol)
            throw std::invalid_argument("Isometry: V^dagger V != I");
    }

    int input_dim() const { return input_dim_; }
    int output_dim() const { return output_dim_; }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    int input_dim_;
    int output_dim_;
    ComplexMatrix matrix_;
};

/// V = Sum_i K_i (x) |i>_E, environment basis ordered by Kraus index.
/// Row layout is system-major: row (s, e) = s * k + e.
inline Isometry stinespring_dilation(const KrausChannel& ch) {
    const int d = ch.dim();
    const int k = static_cast<int>(ch.kraus_count());
    ComplexMatrix v(static_cast<std::size_t>(d) * k, d);
    for (int e = 0; e < k; ++e) {
        const ComplexMatrix& op = ch.kraus_ops()[e];
        for (int s = 0; s < d; ++s)
            for (int j = 0; j < d; ++j)
                v(static_cast<std::size_t>(s) * k + e, j) = op(s, j);
    }
    return Isometry(d, d * k, std::move(v));
}

/// Partial trace over the factors not listed in `keep`. The matrix acts on
/// the tensor product of `dims` (row-major composite index); kept factors
/// stay in their original order.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<int>& dims,
                                   const std::vector<int>& keep) {
    if (!m.is_square()) throw std::invalid_argument("partial_trace: matrix not square");
    long total = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("partial_trace: factor dimension must be >= 1");
        total *= d;
    }
    if (total != static_cast<long>(m.rows()))
        throw std::invalid_argument("partial_trace: factor dimensions do not match matrix");

    const int f = static_cast<int>(dims.size());
    std::vector<bool> kept(f, false);
    for (int idx : keep) {
        if (idx < 0 || idx >= f) throw std::invalid_argument("partial_trace: bad factor index");
        kept[idx] = true;
    }

    std::vector<long> stride(f, 1);
    for (int i = f - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

    long keep_total = 1, trace_total = 1;
    std::vector<int> keep_idx, trace_idx;
    for (int i = 0; i < f; ++i) {
        if (kept[i]) {
            keep_idx.push_back(i);
            keep_total *= dims[i];
        } else {
            trace_idx.push_back(i);
            trace_total *= dims[i];
        }
    }

    // Decompose a linear index over the kept (resp. traced) factors into its
    // contribution to the full composite index.
    auto offset = [&](const std::vector<int>& factors, long linear) {
        long off = 0;
        for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
            const int fi = factors[i];
            off += (linear % dims[fi]) * stride[fi];
            linear /= dims[fi];
        }
        return off;
    };

    ComplexMatrix out(keep_total, keep_total);
    for (long r = 0; r < keep_total; ++r) {
        const long ro = offset(keep_idx, r);
        for (long c = 0; c < keep_total; ++c) {
            const long co = offset(keep_idx, c);
            Complex acc{0.0, 0.0};
            for (long t = 0; t < trace_total; ++t) {
                const long to = offset(trace_idx, t);
                acc += m(ro + to, co + to);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

/// -Sum lambda log2 lambda in bits. Eigenvalues below -1e-10 are an error;
/// small negatives within tolerance are clamped to 0 and values are clamped
/// to [0, 1] before taking logs.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double lambda : hermitian_eigenvalues(rho.matrix())) {
        if (lambda < -1e-10)
            throw std::domain_error("von_neumann_entropy: negative eigenvalue beyond tolerance");
        lambda = std::min(1.0, std::max(0.0, lambda));
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    }
    return s;
}

/// Probabilistic mixture of same-dimension states.
class Ensemble {
public:
    using Entry = std::pair<double, DensityMatrix>;

    explicit Ensemble(std::vector<Entry> entries, double tol = kDefaultTol)
        : entries_(std::move(entries)) {
        if (entries_.empty()) throw std::invalid_argument("Ensemble: empty");
        double total = 0.0;
        for (const auto& [p, state] : entries_) {
            if (p < -tol || p > 1.0 + tol)
                throw std::invalid_argument("Ensemble: probability out of [0,1]");
            if (state.dim() != entries_.front().second.dim())
                throw std::invalid_argument("Ensemble: mixed dimensions");
            total += p;
        }
        if (std::abs(total - 1.0) > tol)
            throw std::invalid_argument("Ensemble: probabilities do not sum to 1");
    }

    const std::vector<Entry>& entries() const { return entries_; }
    int dim() const { return entries_.front().second.dim(); }

private:
    std::vector<Entry> entries_;
};

/// Equiprobable computational-basis encoding {1/d, |i><i|}.
inline Ensemble orthogonal_ensemble(int d) {
    std::vector<Ensemble::Entry> entries;
    entries.reserve(d);
    for (int i = 0; i < d; ++i) entries.emplace_back(1.0 / d, basis_state(d, i));
    return Ensemble(std::move(entries));
}

/// chi = S(Sum p_x rho_x) - Sum p_x S(rho_x), in bits.
inline double holevo_quantity(const Ensemble& e) {
    const int d = e.dim();
    ComplexMatrix avg(d, d);
    double conditional = 0.0;
    for (const auto& [p, state] : e.entries()) {
        ComplexMatrix weighted = state.matrix();
        weighted *= Complex{p, 0.0};
        avg += weighted;
        if (p > 0.0) conditional += p * von_neumann_entropy(state);
    }
    return von_neumann_entropy(DensityMatrix(std::move(avg))) - conditional;
}

/// Representation-independent test for the completely depolarising action:
/// checks the channel sends every matrix unit E_ab to delta_ab I/d.
inline bool is_cdpc(const KrausChannel& ch, double tol = kDefaultTol) {
    const int d = ch.dim();
    if (d < 2) return false;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            ComplexMatrix unit(d, d);
            unit(a, b) = 1.0;
            ComplexMatrix out(d, d);
            ComplexMatrix tmp;
            for (const auto& k : ch.kraus_ops()) {
                mul_into(tmp, k, unit);
                accumulate_ab_dagger(out, tmp, k);
            }
            ComplexMatrix expect(d, d);
            if (a == b)
                for (int i = 0; i < d; ++i) expect(i, i) = 1.0 / d;
            if (max_abs_diff(out, expect) > tol) return false;
        }
    }
    return true;
}

// ---- random inputs for property checks and the verification suite ----

inline DensityMatrix random_density_matrix(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) g(r, c) = Complex{gauss(rng), gauss(rng)};
    ComplexMatrix m(d, d);
    accumulate_ab_dagger(m, g, g);  // G G^dagger, positive semidefinite
    m *= Complex{1.0, 0.0} / m.trace();
    return DensityMatrix(std::move(m));
}

/// Random CPTP channel: Gaussian operator set renormalised through the
/// inverse square root of Sum G_i^dagger G_i.
inline KrausChannel random_cptp_channel(int d, int n_kraus, std::mt19937_64& rng) {
    if (n_kraus < 1) throw std::invalid_argument("random_cptp_channel: need >= 1 operator");
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<ComplexMatrix> gs;
    gs.reserve(n_kraus);
    ComplexMatrix gram(d, d);
    for (int i = 0; i < n_kraus; ++i) {
        ComplexMatrix g(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) g(r, c) = Complex{gauss(rng), gauss(rng)};
        gram += g.dagger() * g;
        gs.push_back(std::move(g));
    }
    const EigenSystem es = hermitian_eigensystem(gram);
    ComplexMatrix inv_sqrt(d, d);
    for (int i = 0; i < d; ++i) {
        const double scale = 1.0 / std::sqrt(es.values[i]);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                inv_sqrt(r, c) += scale * es.vectors(r, i) * std::conj(es.vectors(c, i));
    }
    std::vector<ComplexMatrix> ks;
    ks.reserve(n_kraus);
    for (const auto& g : gs) ks.push_back(g * inv_sqrt);
    return KrausChannel(d, std::move(ks));
}

}  // namespace switchsim
