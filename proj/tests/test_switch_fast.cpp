#include <random>

#include "doctest.h"

#include "switchsim/switch_bruteforce.hpp"
#include "switchsim/switch_fast.hpp"

using namespace switchsim;

namespace {

ComplexMatrix scaled_identity(int d, double s) {
    ComplexMatrix m = ComplexMatrix::identity(d);
    m *= Complex{s, 0.0};
    return m;
}

}  // namespace

TEST_SUITE("fast") {

TEST_CASE("classify_term worked examples") {
    SUBCASE("two swapped orders transmit with weight 1/d^2") {
        const TermClass cls = classify_term(Permutation({1, 2}), Permutation({2, 1}));
        CHECK(cls.kind == TermKind::IdentityProportional);
        CHECK(cls.cycle_count == 1);
        CHECK(cls.coefficient_log_d == -2);
        CHECK(cls.coefficient(2) == doctest::Approx(0.25));
    }
    SUBCASE("diagonal pairs always depolarise with weight 1") {
        for (int n = 1; n <= 6; ++n) {
            for (const auto& p : all_permutations(n)) {
                const TermClass cls = classify_term(p, p);
                CHECK(cls.kind == TermKind::DepolarisingProportional);
                CHECK(cls.cycle_count == n + 1);
                CHECK(cls.coefficient_log_d == 0);
                CHECK(cls.coefficient(3) == doctest::Approx(1.0));
            }
        }
    }
    SUBCASE("three-channel cyclic pair") {
        const TermClass cls = classify_term(Permutation({1, 2, 3}), Permutation({2, 3, 1}));
        CHECK(cls.kind == TermKind::IdentityProportional);
        CHECK(cls.cycle_count == 2);
        CHECK(cls.coefficient_log_d == -2);
    }
    SUBCASE("four-channel half-rotation pair keeps the maximal weight") {
        const TermClass cls = classify_term(Permutation({1, 2, 3, 4}), Permutation({3, 4, 1, 2}));
        CHECK(cls.kind == TermKind::IdentityProportional);
        CHECK(cls.cycle_count == 3);
        CHECK(cls.coefficient_log_d == -2);
    }
    SUBCASE("a non-rotation 4-cycle difference transmits weakly") {
        const TermClass cls = classify_term(Permutation({1, 2, 3, 4}), Permutation({2, 4, 1, 3}));
        CHECK(cls.kind == TermKind::IdentityProportional);
        CHECK(cls.cycle_count == 1);
        CHECK(cls.coefficient_log_d == -4);
    }
    CHECK_THROWS_AS(classify_term(Permutation({1, 2}), Permutation({1, 2, 3})),
                    std::invalid_argument);
}

TEST_CASE("term_channel worked examples") {
    std::mt19937_64 rng(1);
    SUBCASE("off-diagonal two-channel term") {
        const DensityMatrix rho = basis_state(2, 0);
        ComplexMatrix expect = rho.matrix();
        expect *= 0.25;
        CHECK(max_abs_diff(term_channel(Permutation({1, 2}), Permutation({2, 1}), 2, rho),
                           expect) < 1e-15);
    }
    SUBCASE("diagonal term is the maximally mixed state") {
        const DensityMatrix rho = random_density_matrix(3, rng);
        CHECK(max_abs_diff(term_channel(Permutation({1, 2}), Permutation({1, 2}), 3, rho),
                           scaled_identity(3, 1.0 / 3.0)) < 1e-14);
    }
    SUBCASE("four-channel pair matches the Kraus summation") {
        const DensityMatrix rho = random_density_matrix(2, rng);
        const Permutation pi({1, 2, 3, 4});
        const Permutation pip({3, 4, 1, 2});
        const ComplexMatrix brute =
            interference_term(std::vector<KrausChannel>(4, make_cdpc(2)), pi, pip, rho);
        CHECK(max_abs_diff(term_channel(pi, pip, 2, rho), brute) < 1e-12);
    }
    CHECK_THROWS_AS(term_channel(Permutation({1, 2}), Permutation({2, 1}), 1, basis_state(1, 0)),
                    std::invalid_argument);
}

TEST_CASE("switch_output_fast closed forms") {
    SUBCASE("two channels reproduce the four-block output") {
        const DensityMatrix rho = basis_state(2, 0);
        const SwitchOutput out = switch_output_fast(
            2, {Permutation({1, 2}), Permutation({2, 1})}, fourier_control(2), rho);
        ComplexMatrix offdiag = rho.matrix();
        offdiag *= 0.125;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(max_abs_diff(out.block(i, j),
                                   i == j ? scaled_identity(2, 0.25) : offdiag) < 1e-15);
    }
    SUBCASE("N cyclic orders give I/(Nd) and rho/(N d^2) blocks") {
        std::mt19937_64 rng(2);
        for (int n : {2, 3, 4, 5}) {
            for (int d : {2, 3}) {
                const DensityMatrix rho = random_density_matrix(d, rng);
                const SwitchOutput out =
                    switch_output_fast(d, cyclic_permutations(n), fourier_control(n), rho);
                ComplexMatrix offdiag = rho.matrix();
                offdiag *= Complex{1.0 / (n * d * d), 0.0};
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        CHECK(max_abs_diff(out.block(i, j),
                                           i == j ? scaled_identity(d, 1.0 / (n * d)) : offdiag) <
                              1e-12);
            }
        }
    }
    SUBCASE("single order gives the maximally mixed block") {
        const SwitchOutput out =
            switch_output_fast(2, {Permutation({2, 1})},
                               DensityMatrix(ComplexMatrix::identity(1)), plus_state(2));
        CHECK(max_abs_diff(out.block(0, 0), scaled_identity(2, 0.5)) < 1e-15);
    }
    SUBCASE("duplicate orders are rejected") {
        CHECK_THROWS_AS(switch_output_fast(2, {Permutation({1, 2}), Permutation({1, 2})},
                                           fourier_control(2), basis_state(2, 0)),
                        std::invalid_argument);
    }
}

TEST_CASE("closed form equals the Kraus summation for every pair, N <= 3") {
    std::mt19937_64 rng(3);
    for (int n : {2, 3}) {
        const std::vector<KrausChannel> chs(n, make_cdpc(2));
        std::vector<DensityMatrix> rhos;
        for (int i = 0; i < 2; ++i) rhos.push_back(random_density_matrix(2, rng));
        const auto perms = all_permutations(n);
        for (const auto& pi : perms) {
            for (const auto& pip : perms) {
                const auto brute = interference_terms(chs, pi, pip, rhos);
                for (std::size_t r = 0; r < rhos.size(); ++r)
                    CHECK(max_abs_diff(term_channel(pi, pip, 2, rhos[r]), brute[r]) < 1e-12);
            }
        }
    }
}

TEST_CASE("classification invariants over all pairs") {
    SUBCASE("transmitting off-diagonal terms cap at weight 1/d^2") {
        for (int n = 2; n <= 5; ++n) {
            const auto perms = all_permutations(n);
            for (const auto& pi : perms) {
                for (const auto& pip : perms) {
                    if (pi == pip) continue;
                    const TermClass cls = classify_term(pi, pip);
                    if (cls.kind != TermKind::IdentityProportional) continue;
                    CHECK(cls.cycle_count <= n - 1);
                    CHECK(cls.coefficient_log_d <= -2);
                    if (cls.cycle_count == n - 1) CHECK(is_mutually_cyclic(pi, pip));
                }
            }
        }
    }
    SUBCASE("classification is symmetric in the pair") {
        for (int n = 2; n <= 5; ++n) {
            const auto perms = all_permutations(n);
            for (const auto& pi : perms) {
                for (const auto& pip : perms) {
                    const TermClass a = classify_term(pi, pip);
                    const TermClass b = classify_term(pip, pi);
                    CHECK(a.kind == b.kind);
                    CHECK(a.cycle_count == b.cycle_count);
                    CHECK(a.coefficient_log_d == b.coefficient_log_d);
                }
            }
        }
    }
}

}  // TEST_SUITE
