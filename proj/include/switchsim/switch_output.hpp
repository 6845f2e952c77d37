#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "switchsim/channels.hpp"
#include "switchsim/complex_matrix.hpp"
#include "switchsim/perm.hpp"

namespace switchsim {

/// Control state with amplitudes 1/sqrt(M) on every order: all entries 1/M.
inline DensityMatrix fourier_control(int m) { return plus_state(m); }

/// Output of an N-channel switch over the M x M control basis: block (i, j)
/// holds control[i,j] * N_{pi_i, pi_j}(rho). Blocks are the primary
/// representation; assemble() lays them out control-major, with control
/// block-row i occupying rows [i*d, (i+1)*d).
struct SwitchOutput {
    int d = 0;
    int control_dim = 0;
    std::vector<Permutation> perms;
    std::vector<ComplexMatrix> blocks;  // row-major M x M grid of d x d blocks

    SwitchOutput(int d_, std::vector<Permutation> perms_)
        : d(d_),
          control_dim(static_cast<int>(perms_.size())),
          perms(std::move(perms_)),
          blocks(static_cast<std::size_t>(control_dim) * control_dim, ComplexMatrix(d_, d_)) {}

    const ComplexMatrix& block(int i, int j) const {
        return blocks[static_cast<std::size_t>(i) * control_dim + j];
    }
    ComplexMatrix& block(int i, int j) {
        return blocks[static_cast<std::size_t>(i) * control_dim + j];
    }

    ComplexMatrix assemble() const {
        const int total = d * control_dim;
        ComplexMatrix out(total, total);
        for (int i = 0; i < control_dim; ++i)
            for (int j = 0; j < control_dim; ++j) {
                const ComplexMatrix& b = block(i, j);
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c)
                        out(static_cast<std::size_t>(i) * d + r,
                            static_cast<std::size_t>(j) * d + c) = b(r, c);
            }
        return out;
    }

    DensityMatrix assembled_state(double tol = kDefaultTol) const {
        return DensityMatrix(assemble(), tol);
    }

    /// Control traced out: sum of the diagonal blocks.
    ComplexMatrix system_marginal() const {
        ComplexMatrix out(d, d);
        for (int i = 0; i < control_dim; ++i) out += block(i, i);
        return out;
    }
};

struct ControlMeasurement {
    double probability;
    DensityMatrix state;  // conditional system state
};

/// Project the control with P (a projector: P^2 = P = P^dagger within tol),
/// returning the outcome probability and the conditional system state.
inline ControlMeasurement measure_control(const SwitchOutput& out, const ComplexMatrix& projector,
                                          double tol = kDefaultTol) {
    const int m = out.control_dim;
    if (!projector.is_square() || projector.rows() != static_cast<std::size_t>(m))
        throw std::invalid_argument("measure_control: projector must be M x M");
    if (!is_hermitian(projector, tol) ||
        max_abs_diff(projector * projector, projector) > tol)
        throw std::invalid_argument("measure_control: P is not a projector");

    // With the output written as Sum_ij B_ij (x) |i><j|, projecting the
    // control and tracing it leaves Sum_ij P[j,i] B_ij.
    ComplexMatrix conditional(out.d, out.d);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            ComplexMatrix term = out.block(i, j);
            term *= projector(j, i);
            conditional += term;
        }
    const double probability = conditional.trace().real();
    if (probability < 1e-12)
        throw std::runtime_error("measure_control: unreachable outcome (probability ~ 0)");
    conditional *= Complex{1.0 / probability, 0.0};
    return ControlMeasurement{probability, DensityMatrix(std::move(conditional), tol)};
}

}  // namespace switchsim
