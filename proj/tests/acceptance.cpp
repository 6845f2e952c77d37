// Acceptance suite: exercises every top-level guarantee of the library at
// its stated tolerance and prints one PASS/FAIL line per criterion. Exits
// with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "switchsim/switchsim.hpp"

using namespace switchsim;

namespace {

int failures = 0;

void report(int index, bool ok, const std::string& text) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", index, text.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

}  // namespace

int main() {
    const std::uint64_t seed = 20240817u;

    // 1. Two-channel depolarising switch blocks, d = 2 and 3, < 1e-12, < 1 s.
    {
        const auto start = std::chrono::steady_clock::now();
        double worst = 0.0;
        bool ok = true;
        for (int d : {2, 3}) {
            const CheckResult r = check_eq2_reproduction(d, 1e-12);
            worst = std::max(worst, r.worst);
            ok = ok && r.passed;
        }
        const double elapsed = seconds_since(start);
        ok = ok && elapsed < 1.0;
        report(1, ok,
               "two-channel blocks I/(2d) and rho/(2d^2) for d=2,3; worst error " + fmt(worst) +
                   " (bound 1e-12), " + fmt(elapsed) + " s (bound 1 s)");
    }

    // 2. Closed form vs Kraus summation on every ordered pair, 5 random
    //    states each, N in {2,3,4}, d in {2,3}, < 1e-10.
    {
        const auto start = std::chrono::steady_clock::now();
        double worst = 0.0;
        bool ok = true;
        long pairs = 0;
        for (int n : {2, 3, 4}) {
            long f = 1;
            for (int i = 2; i <= n; ++i) f *= i;
            pairs += 2 * f * f;
            for (int d : {2, 3}) {
                const CheckResult r = check_oracle_equivalence(n, d, 5, 1e-10, seed + n * 10 + d);
                worst = std::max(worst, r.worst);
                ok = ok && r.passed;
            }
        }
        report(2, ok,
               "closed form matches Kraus summation on " + std::to_string(pairs) +
                   " (pair, d) combinations x 5 states; worst deviation " + fmt(worst) +
                   " (bound 1e-10), " + fmt(seconds_since(start)) + " s");
    }

    // 3. Same-cycle classification matches a least-squares fit of the brute
    //    force term against {rho, I}, N <= 4, d = 2, residual < 1e-9; the
    //    0-vs-pi(N) / 0-vs-pi'(N) resolution is recorded.
    {
        double worst = 0.0;
        bool ok = true;
        bool variants = true;
        for (int n : {2, 3, 4}) {
            const CheckResult r = check_classification_vs_fit(n, 2, 1e-9, seed + n);
            worst = std::max(worst, r.worst);
            ok = ok && r.passed;
            variants = variants && r.detail.find("agree") != std::string::npos;
        }
        report(3, ok,
               std::string("cycle classification matches the fitted kind on all pairs, N <= 4; ") +
                   "predicate resolution: 0-vs-pi(N) and 0-vs-pi'(N) are equivalent (" +
                   (variants ? "confirmed" : "VIOLATED") + "); worst fit residual " + fmt(worst) +
                   " (bound 1e-9)");
    }

    // 4. Modified-diagram loop count equals the cycle count for all pairs
    //    N <= 5, and closing the legs adds exactly 1 (identity kind) or 2
    //    (depolarising kind) loops.
    {
        const auto start = std::chrono::steady_clock::now();
        const CheckResult r = check_loop_bridge(5);
        report(4, r.passed,
               "diagram loop counts equal cycle counts with closure deltas 1/2 by kind, N <= 5 (" +
                   r.detail + "), " + fmt(seconds_since(start)) + " s");
    }

    // 5. Cyclic protocol closed form: blocks I/(Nd) and rho/(N d^2) to 1e-12
    //    for N in {2..5}, d in {2,3}; matches the Kraus summation to 1e-10
    //    for N <= 4.
    {
        double worst_formula = 0.0, worst_brute = 0.0;
        bool ok = true;
        for (int n : {2, 3, 4, 5}) {
            for (int d : {2, 3}) {
                const CheckResult r = check_cyclic_closed_form(n, d, 1e-12, seed + 7 * n + d);
                worst_formula = std::max(worst_formula, r.worst);
                ok = ok && r.passed;
                if (n <= 4) {
                    const CheckResult b = check_cyclic_vs_bruteforce(n, d, 1e-10, seed + n + d);
                    worst_brute = std::max(worst_brute, b.worst);
                    ok = ok && b.passed;
                }
            }
        }
        report(5, ok,
               "cyclic protocol blocks I/(Nd), rho/(Nd^2): formula error " + fmt(worst_formula) +
                   " (bound 1e-12, N <= 5), Kraus-summation error " + fmt(worst_brute) +
                   " (bound 1e-10, N <= 4)");
    }

    // 6. Exhaustive optimality: for the six (N, M) cases and d in {2,3},
    //    maximizers are exactly the pairwise mutually cyclic sets at
    //    objective (M-1)/d^2, everything else strictly lower; < 5 min.
    {
        const auto start = std::chrono::steady_clock::now();
        bool ok = true;
        std::uint64_t scanned = 0;
        for (const auto& [n, m] : std::vector<std::pair<int, int>>{
                 {2, 2}, {3, 2}, {3, 3}, {4, 2}, {4, 3}, {4, 4}}) {
            for (int d : {2, 3}) {
                const CheckResult r = check_search_optimality(n, m, d);
                ok = ok && r.passed;
            }
            scanned += search_best(n, m, 2).subsets_scanned;
        }
        const double elapsed = seconds_since(start);
        ok = ok && elapsed < 300.0;
        report(6, ok,
               "maximizers of the objective are exactly the pairwise mutually cyclic sets at "
               "(M-1)/d^2 over " +
                   std::to_string(scanned) + " subsets per d; " + fmt(elapsed) +
                   " s (bound 300 s)");
    }

    // 7. Dilated interference with all environments traced equals the Kraus
    //    summation: depolarising pair (= rho/d^2) plus 20 random channel
    //    pairs at d=2 and 10 at d=3, < 1e-10.
    {
        double worst = 0.0;
        bool ok = true;
        const CheckResult r2 = check_stinespring_consistency(2, 20, 1e-10, seed + 2);
        const CheckResult r3 = check_stinespring_consistency(3, 10, 1e-10, seed + 3);
        worst = std::max(r2.worst, r3.worst);
        ok = r2.passed && r3.passed;
        report(7, ok,
               "dilated interference equals the Kraus summation (depolarising pair and 30 random "
               "pairs); worst deviation " +
                   fmt(worst) + " (bound 1e-10)");
    }

    // 8. Capacity activation dichotomy for the cyclic protocols N in {2,3},
    //    d = 2: positive Holevo quantity with the control retained, zero
    //    within 1e-10 with the control discarded; values pinned to the
    //    recorded constants.
    {
        bool ok = true;
        std::string values;
        const double expected[2] = {0.048794940695398, 0.081704165945511};
        for (int n : {2, 3}) {
            const CheckResult r = check_capacity_activation(n, 2, 1e-10);
            ok = ok && r.passed;
            const double chi = holevo_of_protocol(cyclic_permutations(n), 2,
                                                  orthogonal_ensemble(2), fourier_control(n));
            ok = ok && std::abs(chi - expected[n - 2]) < 1e-9;
            values += (n == 2 ? "chi(2) = " : ", chi(3) = ") + fmt(chi);
        }
        report(8, ok,
               "cyclic protocol activates capacity with the control retained and none without (" +
                   values + " bits, regression bound 1e-9; discarded bound 1e-10)");
    }

    std::printf("----\n%s: %d of 8 criteria failed\n", failures == 0 ? "OK" : "FAILED", failures);
    return failures;
}
