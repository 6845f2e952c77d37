#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "switchsim/channels.hpp"
#include "switchsim/perm.hpp"
#include "switchsim/switch_fast.hpp"
#include "switchsim/switch_output.hpp"

namespace switchsim {

/// Heuristic figure of merit for a set of M orders of N depolarising
/// channels: objective = (n_id * E_id) / (n_dp * E_dp), where the counts and
/// mean weights run over all M^2 ordered pairs of the set, and a term's
/// weight is its normalisation w = d^(c-1-N). The objective is also carried
/// as an exact integer fraction (Sum_id d^(c-1)) / (Sum_dp d^(c-1)) so that
/// ties between candidate sets are detected exactly.
struct ProtocolScore {
    std::vector<Permutation> perm_set;
    int n_id = 0;
    int n_dp = 0;
    double e_id = 0.0;
    double e_dp = 0.0;
    double objective = 0.0;
    std::int64_t objective_num = 0;
    std::int64_t objective_den = 1;
};

namespace detail {
inline std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}
}  // namespace detail

inline ProtocolScore score(const std::vector<Permutation>& perm_set, int d) {
    if (perm_set.empty()) throw std::invalid_argument("score: empty order set");
    if (d < 2) throw std::invalid_argument("score: dimension must be >= 2");
    ProtocolScore ps;
    ps.perm_set = perm_set;
    std::int64_t id_sum = 0, dp_sum = 0;  // weights scaled by d^N
    double id_w = 0.0, dp_w = 0.0;
    for (const auto& pi : perm_set) {
        for (const auto& pip : perm_set) {
            const TermClass cls = classify_term(pi, pip);
            const std::int64_t scaled = detail::ipow(d, cls.cycle_count - 1);
            if (cls.kind == TermKind::IdentityProportional) {
                ++ps.n_id;
                id_sum += scaled;
                id_w += cls.coefficient(d);
            } else {
                ++ps.n_dp;
                dp_sum += scaled;
                dp_w += cls.coefficient(d);
            }
        }
    }
    ps.e_id = ps.n_id ? id_w / ps.n_id : 0.0;
    ps.e_dp = ps.n_dp ? dp_w / ps.n_dp : 0.0;
    if (ps.n_id == 0 || dp_sum == 0) {
        ps.objective = 0.0;
        ps.objective_num = 0;
        ps.objective_den = 1;
    } else {
        ps.objective = id_w / dp_w;
        ps.objective_num = id_sum;
        ps.objective_den = dp_sum;
    }
    return ps;
}

/// Exact comparison of two scores' objectives: negative/zero/positive as
/// a <,==,> b.
inline int compare_objectives(const ProtocolScore& a, const ProtocolScore& b) {
    const std::int64_t lhs = a.objective_num * b.objective_den;
    const std::int64_t rhs = b.objective_num * a.objective_den;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

struct SearchResult {
    int n = 0;
    int m = 0;
    int d = 0;
    std::vector<ProtocolScore> maximizers;  // all ties, lexicographic order
    std::uint64_t subsets_scanned = 0;
};

/// Exhaustive search over all M-subsets of S_N for the maximal objective.
/// Bounded at N <= 4 (C(24, M) subsets); beyond that use sampled_search.
inline SearchResult search_best(int n, int m, int d) {
    if (n < 1) throw std::invalid_argument("search_best: N must be >= 1");
    if (n > 4)
        throw std::invalid_argument(
            "search_best: exhaustive mode is limited to N <= 4; use sampled_search for larger N");
    const std::vector<Permutation> all = all_permutations(n);
    const int total = static_cast<int>(all.size());
    if (m < 1 || m > total)
        throw std::invalid_argument("search_best: M must be between 1 and N!");

    SearchResult result;
    result.n = n;
    result.m = m;
    result.d = d;

    std::vector<int> pick(m);
    for (int i = 0; i < m; ++i) pick[i] = i;
    for (;;) {
        ++result.subsets_scanned;
        std::vector<Permutation> subset;
        subset.reserve(m);
        for (int idx : pick) subset.push_back(all[idx]);
        ProtocolScore ps = score(subset, d);
        if (result.maximizers.empty()) {
            result.maximizers.push_back(std::move(ps));
        } else {
            const int cmp = compare_objectives(ps, result.maximizers.front());
            if (cmp > 0) {
                result.maximizers.clear();
                result.maximizers.push_back(std::move(ps));
            } else if (cmp == 0) {
                result.maximizers.push_back(std::move(ps));
            }
        }
        // next combination in lexicographic order
        int i = m - 1;
        while (i >= 0 && pick[i] == total - m + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
    return result;
}

/// Seeded uniform sampling of M-subsets of S_N; reports the best subsets
/// seen (duplicates collapsed). For exploring N = 5, 6 where the subset count
/// is out of reach.
inline SearchResult sampled_search(int n, int m, int d, std::uint64_t samples,
                                   std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sampled_search: N must be >= 1");
    if (samples < 1) throw std::invalid_argument("sampled_search: need at least one sample");
    const std::vector<Permutation> all = all_permutations(n);
    const int total = static_cast<int>(all.size());
    if (m < 1 || m > total)
        throw std::invalid_argument("sampled_search: M must be between 1 and N!");

    SearchResult result;
    result.n = n;
    result.m = m;
    result.d = d;

    std::mt19937_64 rng(seed);
    std::vector<int> indices(total);
    std::set<std::vector<int>> seen_best;
    for (std::uint64_t s = 0; s < samples; ++s) {
        ++result.subsets_scanned;
        for (int i = 0; i < total; ++i) indices[i] = i;
        for (int i = 0; i < m; ++i) {
            std::uniform_int_distribution<int> pick(i, total - 1);
            std::swap(indices[i], indices[pick(rng)]);
        }
        std::vector<int> chosen(indices.begin(), indices.begin() + m);
        std::sort(chosen.begin(), chosen.end());
        std::vector<Permutation> subset;
        subset.reserve(m);
        for (int idx : chosen) subset.push_back(all[idx]);
        ProtocolScore ps = score(subset, d);
        if (result.maximizers.empty()) {
            result.maximizers.push_back(std::move(ps));
            seen_best = {chosen};
            continue;
        }
        const int cmp = compare_objectives(ps, result.maximizers.front());
        if (cmp > 0) {
            result.maximizers.clear();
            result.maximizers.push_back(std::move(ps));
            seen_best = {chosen};
        } else if (cmp == 0 && seen_best.insert(chosen).second) {
            result.maximizers.push_back(std::move(ps));
        }
    }
    // seen_best is ordered; maximizers were appended in insertion order, so
    // rebuild in lexicographic order for determinism.
    std::vector<ProtocolScore> sorted;
    sorted.reserve(result.maximizers.size());
    for (const auto& chosen : seen_best) {
        std::vector<Permutation> subset;
        subset.reserve(m);
        for (int idx : chosen) subset.push_back(all[idx]);
        sorted.push_back(score(subset, d));
    }
    result.maximizers = std::move(sorted);
    return result;
}

/// Holevo quantity of the joint system-and-control output ensemble obtained
/// by pushing each ensemble member through the all-depolarising switch.
inline double holevo_of_protocol(const std::vector<Permutation>& perm_set, int d,
                                 const Ensemble& ensemble, const DensityMatrix& control) {
    if (ensemble.dim() != d)
        throw std::invalid_argument("holevo_of_protocol: ensemble dimension mismatch");
    std::vector<Ensemble::Entry> out;
    out.reserve(ensemble.entries().size());
    for (const auto& [p, rho] : ensemble.entries()) {
        const SwitchOutput so = switch_output_fast(d, perm_set, control, rho);
        out.emplace_back(p, so.assembled_state());
    }
    return holevo_quantity(Ensemble(std::move(out)));
}

/// Same protocol, but the control is traced out before scoring the ensemble.
inline double holevo_of_protocol_control_discarded(const std::vector<Permutation>& perm_set,
                                                   int d, const Ensemble& ensemble,
                                                   const DensityMatrix& control) {
    if (ensemble.dim() != d)
        throw std::invalid_argument("holevo_of_protocol: ensemble dimension mismatch");
    std::vector<Ensemble::Entry> out;
    out.reserve(ensemble.entries().size());
    for (const auto& [p, rho] : ensemble.entries()) {
        const SwitchOutput so = switch_output_fast(d, perm_set, control, rho);
        out.emplace_back(p, DensityMatrix(so.system_marginal()));
    }
    return holevo_quantity(Ensemble(std::move(out)));
}

}  // namespace switchsim
