#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "switchsim/channels.hpp"
#include "switchsim/complex_matrix.hpp"
#include "switchsim/diagram.hpp"
#include "switchsim/optimizer.hpp"
#include "switchsim/perm.hpp"
#include "switchsim/switch_bruteforce.hpp"
#include "switchsim/switch_fast.hpp"
#include "switchsim/switch_output.hpp"

namespace switchsim {

/// One verification check: `worst` is the largest deviation observed (or the
/// quantity named in `detail`), compared against `bound` where applicable.
struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;
    double bound = 0.0;
    std::string detail;
};

namespace verify_detail {

inline Complex inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    Complex s{0.0, 0.0};
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) s += std::conj(a(r, c)) * b(r, c);
    return s;
}

struct TermFit {
    Complex alpha;  // coefficient on rho
    Complex beta;   // coefficient on I
    double residual;
};

/// Least-squares fit T ~= alpha * rho + beta * I over matrix entries.
inline TermFit fit_against_rho_and_identity(const ComplexMatrix& term, const ComplexMatrix& rho) {
    const ComplexMatrix eye = ComplexMatrix::identity(rho.rows());
    const Complex g00 = inner(rho, rho), g01 = inner(rho, eye);
    const Complex g10 = inner(eye, rho), g11 = inner(eye, eye);
    const Complex r0 = inner(rho, term), r1 = inner(eye, term);
    const Complex det = g00 * g11 - g01 * g10;
    const Complex alpha = (r0 * g11 - g01 * r1) / det;
    const Complex beta = (g00 * r1 - g10 * r0) / det;
    ComplexMatrix fit = rho;
    fit *= alpha;
    ComplexMatrix scaled_eye = eye;
    scaled_eye *= beta;
    fit += scaled_eye;
    double resid = 0.0;
    for (std::size_t r = 0; r < term.rows(); ++r)
        for (std::size_t c = 0; c < term.cols(); ++c)
            resid += std::norm(fit(r, c) - term(r, c));
    return TermFit{alpha, beta, std::sqrt(resid)};
}

}  // namespace verify_detail

/// Two depolarising channels, Fourier control, rho = |0><0|: diagonal blocks
/// must equal I/(2d) and off-diagonal blocks rho/(2 d^2).
inline CheckResult check_eq2_reproduction(int d, double tol = 1e-12) {
    CheckResult res;
    res.name = "two-channel depolarising blocks (d=" + std::to_string(d) + ")";
    res.bound = tol;
    const std::vector<Permutation> perms{Permutation({1, 2}), Permutation({2, 1})};
    const SwitchSpec spec(d, {make_cdpc(d), make_cdpc(d)}, perms, fourier_control(2));
    const DensityMatrix rho = basis_state(d, 0);
    const SwitchOutput out = switch_output(spec, rho);

    ComplexMatrix diag = ComplexMatrix::identity(d);
    diag *= Complex{1.0 / (2.0 * d), 0.0};
    ComplexMatrix offdiag = rho.matrix();
    offdiag *= Complex{1.0 / (2.0 * d * d), 0.0};

    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            worst = std::max(worst, max_abs_diff(out.block(i, j), i == j ? diag : offdiag));
    res.worst = worst;
    res.passed = worst < tol;
    return res;
}

/// Central property: the closed-form term equals the Kraus summation on
/// every ordered pair of S_N, on `rhos_per_pair` random states.
inline CheckResult check_oracle_equivalence(int n, int d, int rhos_per_pair, double tol,
                                            std::uint64_t seed) {
    CheckResult res;
    res.name = "closed form vs Kraus summation (N=" + std::to_string(n) +
               ", d=" + std::to_string(d) + ")";
    res.bound = tol;
    std::mt19937_64 rng(seed);
    std::vector<DensityMatrix> rhos;
    for (int i = 0; i < rhos_per_pair; ++i) rhos.push_back(random_density_matrix(d, rng));
    const std::vector<KrausChannel> channels(n, make_cdpc(d));
    const std::vector<Permutation> perms = all_permutations(n);

    double worst = 0.0;
    for (const auto& pi : perms) {
        for (const auto& pip : perms) {
            const std::vector<ComplexMatrix> brute = interference_terms(channels, pi, pip, rhos);
            for (std::size_t r = 0; r < rhos.size(); ++r) {
                const ComplexMatrix fast = term_channel(pi, pip, d, rhos[r]);
                worst = std::max(worst, max_abs_diff(fast, brute[r]));
            }
        }
    }
    res.worst = worst;
    res.passed = worst < tol;
    std::ostringstream os;
    os << perms.size() * perms.size() << " ordered pairs x " << rhos_per_pair << " states";
    res.detail = os.str();
    return res;
}

/// Fit every brute-force term against {rho, I} and compare the fitted kind
/// with the same-cycle predicate, tested on both 0-vs-pi(N) and 0-vs-pi'(N).
inline CheckResult check_classification_vs_fit(int n, int d, double residual_tol,
                                                 std::uint64_t seed) {
    CheckResult res;
    res.name = "cycle classification vs fitted kind (N=" + std::to_string(n) +
               ", d=" + std::to_string(d) + ")";
    res.bound = residual_tol;
    std::mt19937_64 rng(seed);
    const DensityMatrix rho = random_density_matrix(d, rng);
    const std::vector<KrausChannel> channels(n, make_cdpc(d));
    const std::vector<Permutation> perms = all_permutations(n);

    double worst_residual = 0.0;
    bool kinds_match = true;
    bool variants_agree = true;
    for (const auto& pi : perms) {
        for (const auto& pip : perms) {
            const ComplexMatrix term = interference_term(channels, pi, pip, rho);
            const auto fit = verify_detail::fit_against_rho_and_identity(term, rho.matrix());
            worst_residual = std::max(worst_residual, fit.residual);
            const bool fitted_identity = std::abs(fit.alpha) > 1e-6;

            const CycleDecomposition dec = cycle_decomposition(build_c_pair(pi, pip));
            const bool via_pi = dec.same_cycle(0, pi.image_of(n));
            const bool via_pip = dec.same_cycle(0, pip.image_of(n));
            if (via_pi != via_pip) variants_agree = false;
            if (via_pi != fitted_identity) kinds_match = false;
        }
    }
    res.worst = worst_residual;
    res.passed = kinds_match && variants_agree && worst_residual < residual_tol;
    res.detail = variants_agree
                     ? "0-vs-pi(N) and 0-vs-pi'(N) predicates agree on every pair"
                     : "0-vs-pi(N) and 0-vs-pi'(N) predicates DISAGREE";
    if (!kinds_match) res.detail += "; fitted kind mismatch";
    return res;
}

/// Loop accounting: the modified diagram has exactly
/// c_{pi pi'} loops, closing the legs adds 1 loop to identity-kind terms and
/// 2 to depolarising-kind ones, and connectivity matches the kind.
inline CheckResult check_loop_bridge(int max_n) {
    CheckResult res;
    res.name = "diagram loop counts vs cycle counts (N<=" + std::to_string(max_n) + ")";
    int mismatches = 0;
    long pairs = 0;
    for (int n = 2; n <= max_n; ++n) {
        const std::vector<Permutation> perms = all_permutations(n);
        for (const auto& pi : perms) {
            for (const auto& pip : perms) {
                ++pairs;
                const TermClass cls = classify_term(pi, pip);
                const WiringDiagram open_dg = build_diagram(pi, pip);
                const WiringDiagram closed_dg = modify_diagram(open_dg);
                const int open_loops = count_loops(open_dg);
                const int closed_loops = count_loops(closed_dg);
                const bool transmitting = is_information_transmitting(open_dg);
                const int expected_delta =
                    cls.kind == TermKind::IdentityProportional ? 1 : 2;
                if (closed_loops != cls.cycle_count ||
                    closed_loops - open_loops != expected_delta ||
                    transmitting != (cls.kind == TermKind::IdentityProportional))
                    ++mismatches;
            }
        }
    }
    res.worst = mismatches;
    res.passed = mismatches == 0;
    std::ostringstream os;
    os << pairs << " ordered pairs";
    res.detail = os.str();
    return res;
}

/// Cyclic protocol closed form: diagonal blocks I/(Nd), off-diagonal blocks
/// rho/(N d^2), from the fast evaluator.
inline CheckResult check_cyclic_closed_form(int n, int d, double tol, std::uint64_t seed) {
    CheckResult res;
    res.name = "cyclic protocol closed form (N=" + std::to_string(n) +
               ", d=" + std::to_string(d) + ")";
    res.bound = tol;
    std::mt19937_64 rng(seed);
    const DensityMatrix rho = random_density_matrix(d, rng);
    const std::vector<Permutation> perms = cyclic_permutations(n);
    const SwitchOutput out = switch_output_fast(d, perms, fourier_control(n), rho);

    ComplexMatrix diag = ComplexMatrix::identity(d);
    diag *= Complex{1.0 / (n * d), 0.0};
    ComplexMatrix offdiag = rho.matrix();
    offdiag *= Complex{1.0 / (n * d * d), 0.0};

    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            worst = std::max(worst, max_abs_diff(out.block(i, j), i == j ? diag : offdiag));
    res.worst = worst;
    res.passed = worst < tol;
    return res;
}

/// Cyclic protocol, fast evaluator vs Kraus summation.
inline CheckResult check_cyclic_vs_bruteforce(int n, int d, double tol, std::uint64_t seed) {
    CheckResult res;
    res.name = "cyclic protocol vs Kraus summation (N=" + std::to_string(n) +
               ", d=" + std::to_string(d) + ")";
    res.bound = tol;
    std::mt19937_64 rng(seed);
    const DensityMatrix rho = random_density_matrix(d, rng);
    const std::vector<Permutation> perms = cyclic_permutations(n);
    const SwitchSpec spec(d, std::vector<KrausChannel>(n, make_cdpc(d)), perms,
                          fourier_control(n));
    const SwitchOutput brute = switch_output(spec, rho);
    const SwitchOutput fast = switch_output_fast(d, perms, fourier_control(n), rho);
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            worst = std::max(worst, max_abs_diff(brute.block(i, j), fast.block(i, j)));
    res.worst = worst;
    res.passed = worst < tol;
    return res;
}

/// Exhaustive optimality: a subset of S_N attains the objective (M-1)/d^2
/// exactly iff it is pairwise mutually cyclic, and any other subset scores
/// strictly lower. Also cross-checks search_best's reported maximizers.
inline CheckResult check_search_optimality(int n, int m, int d) {
    CheckResult res;
    res.name = "search optimality (N=" + std::to_string(n) + ", M=" + std::to_string(m) +
               ", d=" + std::to_string(d) + ")";
    const std::vector<Permutation> all = all_permutations(n);
    const int total = static_cast<int>(all.size());

    // target objective (m-1)/d^2 as an exact fraction
    const std::int64_t target_num = m - 1;
    const std::int64_t target_den = static_cast<std::int64_t>(d) * d;

    long cyclic_subsets = 0;
    bool ok = true;
    std::vector<int> pick(m);
    for (int i = 0; i < m; ++i) pick[i] = i;
    for (;;) {
        std::vector<Permutation> subset;
        subset.reserve(m);
        for (int idx : pick) subset.push_back(all[idx]);
        bool pairwise = true;
        for (int i = 0; i < m && pairwise; ++i)
            for (int j = i + 1; j < m && pairwise; ++j)
                pairwise = is_mutually_cyclic(subset[i], subset[j]);
        const ProtocolScore ps = score(subset, d);
        const std::int64_t lhs = ps.objective_num * target_den;
        const std::int64_t rhs = target_num * ps.objective_den;
        if (pairwise) {
            ++cyclic_subsets;
            if (lhs != rhs) ok = false;  // must attain the target exactly
        } else if (lhs >= rhs) {
            ok = false;  // must score strictly lower
        }
        int i = m - 1;
        while (i >= 0 && pick[i] == total - m + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }

    const SearchResult sr = search_best(n, m, d);
    const bool search_consistent = static_cast<long>(sr.maximizers.size()) == cyclic_subsets;
    res.passed = ok && search_consistent;
    res.worst = sr.maximizers.empty() ? 0.0 : sr.maximizers.front().objective;
    std::ostringstream os;
    os << sr.subsets_scanned << " subsets, " << sr.maximizers.size()
       << " maximizers, objective " << res.worst;
    res.detail = os.str();
    return res;
}

/// Dilated two-order interference with all environments traced equals the
/// Kraus-summation off-diagonal term: for the depolarising pair and for
/// random CPTP channel pairs.
inline CheckResult check_stinespring_consistency(int d, int random_pairs, double tol,
                                                 std::uint64_t seed) {
    CheckResult res;
    res.name = "dilated interference vs Kraus summation (d=" + std::to_string(d) + ")";
    res.bound = tol;
    std::mt19937_64 rng(seed);

    double worst = 0.0;
    {
        const KrausChannel dp = make_cdpc(d);
        const DensityMatrix rho = basis_state(d, 0);
        worst = std::max(worst, dilated_interference_deviation(dp, dp, rho));
        // the depolarising pair must evaluate to rho/d^2 on both routes
        ComplexMatrix expect = rho.matrix();
        expect *= Complex{1.0 / (d * d), 0.0};
        const ComplexMatrix direct =
            interference_term({dp, dp}, Permutation({1, 2}), Permutation({2, 1}), rho);
        worst = std::max(worst, max_abs_diff(direct, expect));
    }
    std::uniform_int_distribution<int> kraus_count(2, d * d);
    for (int i = 0; i < random_pairs; ++i) {
        const KrausChannel f = random_cptp_channel(d, kraus_count(rng), rng);
        const KrausChannel g = random_cptp_channel(d, kraus_count(rng), rng);
        const DensityMatrix rho = random_density_matrix(d, rng);
        worst = std::max(worst, dilated_interference_deviation(f, g, rho));
    }
    res.worst = worst;
    res.passed = worst < tol;
    std::ostringstream os;
    os << random_pairs << " random channel pairs plus the depolarising pair";
    res.detail = os.str();
    return res;
}

/// Capacity activation dichotomy for the cyclic protocol with the orthogonal
/// basis encoding: chi > 0 with the control retained, chi = 0 (within tol)
/// with the control discarded.
inline CheckResult check_capacity_activation(int n, int d, double tol) {
    CheckResult res;
    res.name = "capacity activation dichotomy (N=" + std::to_string(n) +
               ", d=" + std::to_string(d) + ")";
    res.bound = tol;
    const std::vector<Permutation> perms = cyclic_permutations(n);
    const Ensemble encoding = orthogonal_ensemble(d);
    const DensityMatrix control = fourier_control(n);
    const double retained = holevo_of_protocol(perms, d, encoding, control);
    const double discarded = holevo_of_protocol_control_discarded(perms, d, encoding, control);
    res.worst = discarded;
    res.passed = retained > 1e-6 && std::abs(discarded) < tol;
    std::ostringstream os;
    os << "chi retained = " << retained << " bits, discarded = " << discarded;
    res.detail = os.str();
    return res;
}

struct VerifyOptions {
    double tolerance = 1e-10;
    bool quick = false;
    std::uint64_t seed = 20240817u;
};

/// The full cross-check battery. `quick` restricts to N <= 3 so the run
/// finishes in seconds; the default covers N <= 4, d <= 3.
inline std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
    std::vector<CheckResult> results;
    const int max_n = opt.quick ? 3 : 4;

    for (int d : {2, 3}) results.push_back(check_eq2_reproduction(d, 1e-12));
    for (int n = 2; n <= max_n; ++n)
        for (int d : {2, 3})
            results.push_back(
                check_oracle_equivalence(n, d, opt.quick ? 2 : 5, opt.tolerance, opt.seed + n));
    results.push_back(check_classification_vs_fit(opt.quick ? 3 : 4, 2,
                                                    std::max(opt.tolerance, 1e-9), opt.seed));
    results.push_back(check_loop_bridge(opt.quick ? 4 : 5));
    for (int n = 2; n <= (opt.quick ? 3 : 5); ++n)
        for (int d : {2, 3})
            results.push_back(check_cyclic_closed_form(n, d, 1e-12, opt.seed + 31 * n + d));
    for (int n = 2; n <= max_n; ++n)
        for (int d : {2, 3})
            results.push_back(check_cyclic_vs_bruteforce(n, d, opt.tolerance, opt.seed + n));
    {
        const std::vector<std::pair<int, int>> cases =
            opt.quick ? std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}}
                      : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3},
                                                         {4, 2}, {4, 3}, {4, 4}};
        for (const auto& [n, m] : cases)
            for (int d : {2, 3}) results.push_back(check_search_optimality(n, m, d));
    }
    for (int d : {2, 3})
        results.push_back(
            check_stinespring_consistency(d, opt.quick ? 5 : 20, opt.tolerance, opt.seed + d));
    for (int n : {2, 3}) results.push_back(check_capacity_activation(n, 2, opt.tolerance));
    return results;
}

}  // namespace switchsim
