#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "switchsim/channels.hpp"
#include "switchsim/complex_matrix.hpp"
#include "switchsim/perm.hpp"
#include "switchsim/switch_output.hpp"

namespace switchsim {

/*
 * Ground-truth switch evaluator by explicit summation over joint Kraus
 * indices.
 *
 * Ordering convention, fixed across the library: slot a of an order pi is
 * the a-th factor of the operator product counted from the output, so the
 * interference term for the ordered pair (pi, pi') is
 *
 *   N_{pi pi'}(rho) = Sum_j  K^{(pi(1))}_{j_{pi(1)}} ... K^{(pi(N))}_{j_{pi(N)}}
 *                     rho
 *                     K^{(pi'(N))dag}_{j_{pi'(N)}} ... K^{(pi'(1))dag}_{j_{pi'(1)}}
 *
 * with one index j_i per channel i, shared between the two sides. The channel
 * at slot N touches rho first; the channel at slot 1 acts last.
 *
 * The summation is deliberately a plain nested iteration over the joint
 * index, with no algebraic shortcuts: this module is the oracle the
 * closed-form evaluator is tested against. Cost is the product of the Kraus
 * counts, so keep d <= 3 and N <= 4.
 */

/// Full switch description: N channels of dimension d, M distinct orders,
/// and a control state on the M-dimensional order basis.
struct SwitchSpec {
    int d;
    std::vector<KrausChannel> channels;
    std::vector<Permutation> perms;
    DensityMatrix control;

    SwitchSpec(int d_, std::vector<KrausChannel> channels_, std::vector<Permutation> perms_,
               DensityMatrix control_)
        : d(d_),
          channels(std::move(channels_)),
          perms(std::move(perms_)),
          control(std::move(control_)) {
        if (channels.empty()) throw std::invalid_argument("SwitchSpec: no channels");
        for (const auto& ch : channels)
            if (ch.dim() != d) throw std::invalid_argument("SwitchSpec: channel dimension mismatch");
        if (perms.empty()) throw std::invalid_argument("SwitchSpec: no orders");
        const int n = static_cast<int>(channels.size());
        for (const auto& p : perms)
            if (p.size() != n)
                throw std::invalid_argument("SwitchSpec: order size does not match channel count");
        for (std::size_t i = 0; i < perms.size(); ++i)
            for (std::size_t j = i + 1; j < perms.size(); ++j)
                if (perms[i] == perms[j])
                    throw std::invalid_argument("SwitchSpec: orders must be distinct");
        if (control.dim() != static_cast<int>(perms.size()))
            throw std::invalid_argument("SwitchSpec: control dimension must equal order count");
    }

    int num_channels() const { return static_cast<int>(channels.size()); }
    int num_orders() const { return static_cast<int>(perms.size()); }
};

/// Evaluate N_{pi pi'} on a batch of inputs sharing one sweep over the joint
/// Kraus index.
inline std::vector<ComplexMatrix> interference_terms(const std::vector<KrausChannel>& channels,
                                                     const Permutation& pi,
                                                     const Permutation& pi_prime,
                                                     const std::vector<DensityMatrix>& rhos) {
    const int n = static_cast<int>(channels.size());
    if (pi.size() != n || pi_prime.size() != n)
        throw std::invalid_argument("interference_terms: order size != channel count");
    if (channels.empty()) throw std::invalid_argument("interference_terms: no channels");
    const int d = channels.front().dim();
    for (const auto& ch : channels)
        if (ch.dim() != d)
            throw std::invalid_argument("interference_terms: channel dimension mismatch");
    for (const auto& rho : rhos)
        if (rho.dim() != d)
            throw std::invalid_argument("interference_terms: state dimension mismatch");

    std::vector<ComplexMatrix> out(rhos.size(), ComplexMatrix(d, d));
    std::vector<std::size_t> joint(n, 0);

    ComplexMatrix left, right, scratch, sandwich;
    for (;;) {
        // Left product in pi order, right product in pi' order; the shared
        // joint index attaches to channels, not slots.
        left = channels[pi.image_of(1) - 1].kraus_ops()[joint[pi.image_of(1) - 1]];
        for (int a = 2; a <= n; ++a) {
            const int ch = pi.image_of(a) - 1;
            mul_into(scratch, left, channels[ch].kraus_ops()[joint[ch]]);
            std::swap(left, scratch);
        }
        right = channels[pi_prime.image_of(1) - 1].kraus_ops()[joint[pi_prime.image_of(1) - 1]];
        for (int a = 2; a <= n; ++a) {
            const int ch = pi_prime.image_of(a) - 1;
            mul_into(scratch, right, channels[ch].kraus_ops()[joint[ch]]);
            std::swap(right, scratch);
        }

        for (std::size_t r = 0; r < rhos.size(); ++r) {
            mul_into(sandwich, left, rhos[r].matrix());
            accumulate_ab_dagger(out[r], sandwich, right);  // += L rho R^dagger
        }

        // Advance the joint index odometer.
        int pos = n - 1;
        while (pos >= 0) {
            if (++joint[pos] < channels[pos].kraus_count()) break;
            joint[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

inline ComplexMatrix interference_term(const std::vector<KrausChannel>& channels,
                                       const Permutation& pi, const Permutation& pi_prime,
                                       const DensityMatrix& rho) {
    return interference_terms(channels, pi, pi_prime, {rho}).front();
}

/// Full switch output: block (i, j) = control[i,j] * N_{pi_i pi_j}(rho).
inline SwitchOutput switch_output(const SwitchSpec& spec, const DensityMatrix& rho) {
    if (rho.dim() != spec.d) throw std::invalid_argument("switch_output: state dimension mismatch");
    SwitchOutput out(spec.d, spec.perms);
    const int m = spec.num_orders();
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            ComplexMatrix term = interference_term(spec.channels, spec.perms[i], spec.perms[j], rho);
            term *= spec.control.matrix()(i, j);
            out.block(i, j) = std::move(term);
        }
    }
    return out;
}

namespace detail {

/// Reorder the row index of a matrix on C^{d} (x) C^{ke} (x) C^{kl} into
/// C^{d} (x) C^{kl} (x) C^{ke} (swap the two environment factors).
inline ComplexMatrix swap_trailing_factors(const ComplexMatrix& m, int d, int ke, int kl) {
    ComplexMatrix out(m.rows(), m.cols());
    for (int s = 0; s < d; ++s)
        for (int a = 0; a < ke; ++a)
            for (int b = 0; b < kl; ++b) {
                const std::size_t src = (static_cast<std::size_t>(s) * ke + a) * kl + b;
                const std::size_t dst = (static_cast<std::size_t>(s) * kl + b) * ke + a;
                for (std::size_t c = 0; c < m.cols(); ++c) out(dst, c) = m(src, c);
            }
    return out;
}

}  // namespace detail

/// Evaluate the two-channel interference term N_{(1,2),(2,1)} a second way:
/// compose the Stinespring dilations of f and g in each order, conjugate rho
/// at the isometry level, trace out both environments, and report the
/// deviation from the Kraus summation.
inline double dilated_interference_deviation(const KrausChannel& f, const KrausChannel& g,
                                             const DensityMatrix& rho) {
    if (f.dim() != g.dim() || f.dim() != rho.dim())
        throw std::invalid_argument("dilated_interference: dimension mismatch");
    const int d = f.dim();
    const int kf = static_cast<int>(f.kraus_count());
    const int kg = static_cast<int>(g.kraus_count());

    const Isometry vf = stinespring_dilation(f);
    const Isometry vg = stinespring_dilation(g);

    // Ket side applies g then f; environments ordered (E_f, E_g).
    const ComplexMatrix w_left = kron(vf.matrix(), ComplexMatrix::identity(kg)) * vg.matrix();
    // Bra side applies f then g; bring its environments into the same order.
    const ComplexMatrix w_right = detail::swap_trailing_factors(
        kron(vg.matrix(), ComplexMatrix::identity(kf)) * vf.matrix(), d, kg, kf);

    ComplexMatrix joint(static_cast<std::size_t>(d) * kf * kg,
                        static_cast<std::size_t>(d) * kf * kg);
    const ComplexMatrix lhs = w_left * rho.matrix();
    accumulate_ab_dagger(joint, lhs, w_right);

    const ComplexMatrix traced = partial_trace(joint, {d, kf, kg}, {0});
    const ComplexMatrix direct = interference_term(
        {f, g}, Permutation({1, 2}), Permutation({2, 1}), rho);
    return max_abs_diff(traced, direct);
}

inline bool dilated_interference_check(const KrausChannel& f, const KrausChannel& g,
                                       const DensityMatrix& rho, double tol = kDefaultTol) {
    return dilated_interference_deviation(f, g, rho) <= tol;
}

}  // namespace switchsim
