#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "switchsim/channels.hpp"
#include "switchsim/complex_matrix.hpp"
#include "switchsim/perm.hpp"
#include "switchsim/switch_output.hpp"

namespace switchsim {

/*
 * Closed-form evaluator for switches of N completely depolarising channels.
 * No Kraus summation: each interference term N_{pi pi'} is classified by the
 * cycle decomposition of the pair permutation C = build_c_pair(pi, pi') and
 * evaluated as a pure power of d,
 *
 *   N_{pi pi'} = d^(c-1-N) * Identity        when 0 and pi(N) share a cycle of C
 *   N_{pi pi'} = d^(c-1-N) * Depolarise      otherwise,
 *
 * where c is the number of cycles and Depolarise(rho) = I tr(rho)/d. Note
 * that C maps pi(N) to pi'(N), so testing 0 against pi(N) or pi'(N) is
 * equivalent. The `switchsim verify` suite cross-checks this classification
 * against the Kraus-summation oracle and against the wiring-diagram oracle.
 */

enum class TermKind { IdentityProportional, DepolarisingProportional };

inline const char* to_string(TermKind kind) {
    return kind == TermKind::IdentityProportional ? "identity" : "depolarising";
}

/// Classification of one interference term: kind, cycle count c, and the
/// normalisation exponent c - 1 - N (kept as an integer until assembly).
struct TermClass {
    TermKind kind;
    int cycle_count;
    int coefficient_log_d;
    int num_channels;

    /// d^(c-1-N) as a double; exact for the small exponents that occur.
    double coefficient(int d) const {
        double w = 1.0;
        for (int i = 0; i < -coefficient_log_d; ++i) w /= d;
        for (int i = 0; i < coefficient_log_d; ++i) w *= d;
        return w;
    }
};

inline TermClass classify_term(const Permutation& pi, const Permutation& pi_prime) {
    if (pi.size() != pi_prime.size())
        throw std::invalid_argument("classify_term: size mismatch");
    const int n = pi.size();
    const CycleDecomposition dec = cycle_decomposition(build_c_pair(pi, pi_prime));
    const bool transmitting = dec.same_cycle(0, pi.image_of(n));
    return TermClass{
        transmitting ? TermKind::IdentityProportional : TermKind::DepolarisingProportional,
        dec.cycle_count(), dec.cycle_count() - 1 - n, n};
}

/// N_{pi pi'}(rho) for N completely depolarising channels of dimension d.
inline ComplexMatrix term_channel(const Permutation& pi, const Permutation& pi_prime, int d,
                                  const DensityMatrix& rho) {
    if (d < 2) throw std::invalid_argument("term_channel: dimension must be >= 2");
    if (rho.dim() != d) throw std::invalid_argument("term_channel: state dimension mismatch");
    const TermClass cls = classify_term(pi, pi_prime);
    const double w = cls.coefficient(d);
    if (cls.kind == TermKind::IdentityProportional) {
        ComplexMatrix out = rho.matrix();
        out *= Complex{w, 0.0};
        return out;
    }
    ComplexMatrix out = ComplexMatrix::identity(d);
    out *= rho.matrix().trace() * Complex{w / d, 0.0};
    return out;
}

/// Switch of all-depolarising channels: block (i, j) = control[i,j] *
/// N_{pi_i pi_j}(rho). Agrees with the Kraus-summation evaluator on
/// depolarising channels; that agreement is the library's central check.
inline SwitchOutput switch_output_fast(int d, const std::vector<Permutation>& perms,
                                       const DensityMatrix& control, const DensityMatrix& rho) {
    if (perms.empty()) throw std::invalid_argument("switch_output_fast: no orders");
    for (std::size_t i = 0; i < perms.size(); ++i) {
        if (perms[i].size() != perms.front().size())
            throw std::invalid_argument("switch_output_fast: order sizes differ");
        for (std::size_t j = i + 1; j < perms.size(); ++j)
            if (perms[i] == perms[j])
                throw std::invalid_argument("switch_output_fast: orders must be distinct");
    }
    if (control.dim() != static_cast<int>(perms.size()))
        throw std::invalid_argument("switch_output_fast: control dimension must equal order count");

    SwitchOutput out(d, perms);
    const int m = static_cast<int>(perms.size());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            ComplexMatrix term = term_channel(perms[i], perms[j], d, rho);
            term *= control.matrix()(i, j);
            out.block(i, j) = std::move(term);
        }
    return out;
}

}  // namespace switchsim
