#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace switchsim {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage. Small dimensions throughout
/// (system and control spaces), so no attempt at blocking or sparsity.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<Complex>& data() const { return data_; }

    ComplexMatrix dagger() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    Complex trace() const {
        if (!is_square()) throw std::invalid_argument("trace: matrix not square");
        Complex t{0.0, 0.0};
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : data_) m = std::max(m, std::abs(z));
        return m;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o, "+=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o, "-=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    ComplexMatrix& operator*=(Complex s) {
        for (auto& z : data_) z *= s;
        return *this;
    }

    void set_zero() {
        for (auto& z : data_) z = Complex{0.0, 0.0};
    }

private:
    void require_same_shape(const ComplexMatrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("ComplexMatrix: shape mismatch in ") + op);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
inline ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
inline ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= Complex{s, 0.0}; }
inline ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex{s, 0.0}; }

/// out = a * b, reusing out's storage. out must not alias a or b.
inline void mul_into(ComplexMatrix& out, const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("mul_into: inner dimensions do not match");
    if (out.rows() != a.rows() || out.cols() != b.cols()) out = ComplexMatrix(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    }
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out;
    mul_into(out, a, b);
    return out;
}

/// acc += a * b^dagger without materialising the adjoint.
inline void accumulate_ab_dagger(ComplexMatrix& acc, const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.cols())
        throw std::invalid_argument("accumulate_ab_dagger: inner dimensions do not match");
    if (acc.rows() != a.rows() || acc.cols() != b.rows())
        throw std::invalid_argument("accumulate_ab_dagger: accumulator has wrong shape");
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            Complex s{0.0, 0.0};
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * std::conj(b(j, k));
            acc(i, j) += s;
        }
    }
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (!m.is_square()) return false;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = r; c < m.cols(); ++c)
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
    return true;
}

/*
 * Hermitian eigensolver: cyclic Jacobi with complex rotations.
 *
 * Each sweep annihilates off-diagonal entries (p,q) with the unitary
 *   U = [[ c, -s e^{i phi} ], [ s e^{-i phi}, c ]]
 * acting on the (p,q) plane, where A(p,q) = m e^{i phi}, tau = (A_pp - A_qq)/(2m),
 * t = sign(tau)/(|tau| + sqrt(1 + tau^2)), c = 1/sqrt(1+t^2), s = t c.
 * Quadratic convergence; matrices here are tiny so a handful of sweeps suffice.
 */
struct EigenSystem {
    std::vector<double> values;   // ascending
    ComplexMatrix vectors;        // columns, paired with values
};

inline EigenSystem hermitian_eigensystem(const ComplexMatrix& matrix) {
    if (!matrix.is_square())
        throw std::invalid_argument("hermitian_eigensystem: matrix not square");
    const std::size_t n = matrix.rows();

    // Work on the symmetrised copy; inputs are Hermitian up to rounding.
    ComplexMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            a(r, c) = 0.5 * (matrix(r, c) + std::conj(matrix(c, r)));

    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = a.max_abs();
    if (scale == 0.0) scale = 1.0;
    const double stop = 1e-15 * scale;
    const int max_sweeps = 80;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= stop) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double m = std::abs(a(p, q));
                if (m <= stop) continue;
                const Complex phase = a(p, q) / m;
                const double tau = (a(p, p).real() - a(q, q).real()) / (2.0 * m);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex se_plus = s * phase;              // s e^{i phi}
                const Complex se_minus = s * std::conj(phase);  // s e^{-i phi}

                // A <- U^dagger A U: rows then columns of the (p,q) plane.
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex rp = a(p, j), rq = a(q, j);
                    a(p, j) = c * rp + se_plus * rq;
                    a(q, j) = -se_minus * rp + c * rq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex cp = a(i, p), cq = a(i, q);
                    a(i, p) = c * cp + se_minus * cq;
                    a(i, q) = -se_plus * cp + c * cq;
                    const Complex vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp + se_minus * vq;
                    v(i, q) = -se_plus * vp + c * vq;
                }
            }
        }
    }

    // Sort ascending by eigenvalue, carrying eigenvector columns along.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (a(order[j], order[j]).real() < a(order[i], order[i]).real())
                std::swap(order[i], order[j]);

    EigenSystem es;
    es.values.resize(n);
    es.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
    }
    return es;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& matrix) {
    return hermitian_eigensystem(matrix).values;
}

}  // namespace switchsim
