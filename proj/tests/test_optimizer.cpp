#include <algorithm>
#include <random>

#include "doctest.h"

#include "switchsim/optimizer.hpp"

using namespace switchsim;

TEST_SUITE("optimizer") {

TEST_CASE("score of cyclic order sets") {
    for (int n : {2, 3, 4}) {
        for (int d : {2, 3}) {
            const std::vector<Permutation> rotations = cyclic_permutations(n);
            for (int m = 2; m <= n; ++m) {
                const std::vector<Permutation> set(rotations.begin(), rotations.begin() + m);
                const ProtocolScore ps = score(set, d);
                CHECK(ps.n_id == m * (m - 1));
                CHECK(ps.n_dp == m);
                CHECK(ps.e_id == doctest::Approx(1.0 / (d * d)).epsilon(1e-12));
                CHECK(ps.e_dp == doctest::Approx(1.0).epsilon(1e-12));
                CHECK(ps.objective ==
                      doctest::Approx(static_cast<double>(m - 1) / (d * d)).epsilon(1e-12));
                CHECK(ps.n_id + ps.n_dp == m * m);
            }
        }
    }
}

TEST_CASE("a single order transmits nothing") {
    const ProtocolScore ps = score({Permutation({2, 1, 3})}, 2);
    CHECK(ps.n_id == 0);
    CHECK(ps.objective == 0.0);
    CHECK(ps.objective_num == 0);
}

TEST_CASE("a mixed set scores strictly below the cyclic triple") {
    for (int d : {2, 3}) {
        const ProtocolScore ps = score(
            {Permutation({1, 2, 3}), Permutation({2, 1, 3}), Permutation({1, 3, 2})}, d);
        CHECK(ps.n_id == 2);
        CHECK(ps.n_dp == 7);
        CHECK(ps.objective == doctest::Approx(2.0 / (3.0 * d * d + 4.0)).epsilon(1e-12));
        CHECK(ps.objective < 2.0 / (d * d));
    }
}

TEST_CASE("exhaustive search finds the cyclic sets") {
    SUBCASE("two channels have a single two-order set") {
        const SearchResult r = search_best(2, 2, 2);
        CHECK(r.subsets_scanned == 1);
        REQUIRE(r.maximizers.size() == 1);
        CHECK(r.maximizers[0].objective == doctest::Approx(0.25));
    }
    SUBCASE("three channels, three orders: both rotation cosets win") {
        const SearchResult r = search_best(3, 3, 2);
        CHECK(r.subsets_scanned == 20);
        REQUIRE(r.maximizers.size() == 2);
        CHECK(r.maximizers[0].objective == doctest::Approx(0.5).epsilon(1e-12));
        const std::vector<Permutation> rotations = cyclic_permutations(3);
        std::vector<Permutation> sorted_rot = rotations;
        std::sort(sorted_rot.begin(), sorted_rot.end());
        CHECK(r.maximizers[0].perm_set == sorted_rot);
        for (const auto& ps : r.maximizers)
            for (std::size_t i = 0; i < ps.perm_set.size(); ++i)
                for (std::size_t j = i + 1; j < ps.perm_set.size(); ++j)
                    CHECK(is_mutually_cyclic(ps.perm_set[i], ps.perm_set[j]));
    }
    SUBCASE("four channels, two orders") {
        const SearchResult r = search_best(4, 2, 2);
        CHECK(r.subsets_scanned == 276);
        CHECK(r.maximizers.size() == 36);
        CHECK(r.maximizers.front().objective == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(search_best(5, 2, 2), std::invalid_argument);
        CHECK_THROWS_AS(search_best(3, 7, 2), std::invalid_argument);
    }
}

TEST_CASE("sampled search is deterministic and bounded by the cyclic objective") {
    const SearchResult a = sampled_search(5, 2, 2, 400, 99u);
    const SearchResult b = sampled_search(5, 2, 2, 400, 99u);
    CHECK(a.subsets_scanned == 400);
    REQUIRE(a.maximizers.size() == b.maximizers.size());
    for (std::size_t i = 0; i < a.maximizers.size(); ++i)
        CHECK(a.maximizers[i].perm_set == b.maximizers[i].perm_set);
    for (const auto& ps : a.maximizers) CHECK(ps.objective <= 0.25 + 1e-12);
}

TEST_CASE("adding a mutually cyclic order never loses transmitting pairs") {
    std::mt19937_64 rng(123);
    for (int n : {3, 4, 5}) {
        const auto all = all_permutations(n);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Permutation> set;
            std::sample(all.begin(), all.end(), std::back_inserter(set), 3, rng);
            const int before = score(set, 2).n_id;
            // extend with a rotation of one member not already present
            for (int k = 1; k < n; ++k) {
                const Permutation candidate = compose(set[0], Permutation::rotation(n, k));
                if (std::find(set.begin(), set.end(), candidate) == set.end()) {
                    std::vector<Permutation> extended = set;
                    extended.push_back(candidate);
                    CHECK(score(extended, 2).n_id >= before);
                    break;
                }
            }
        }
    }
}

TEST_CASE("holevo of a protocol") {
    const std::vector<Permutation> cyc2 = cyclic_permutations(2);
    const Ensemble orth = orthogonal_ensemble(2);
    const DensityMatrix ctrl = fourier_control(2);

    SUBCASE("identical members carry nothing") {
        const Ensemble flat({{0.5, basis_state(2, 0)}, {0.5, basis_state(2, 0)}});
        CHECK(holevo_of_protocol(cyc2, 2, flat, ctrl) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("two-channel cyclic protocol activates a known amount") {
        CHECK(holevo_of_protocol(cyc2, 2, orth, ctrl) ==
              doctest::Approx(0.048794940695398).epsilon(1e-9));
    }
    SUBCASE("three-channel cyclic protocol activates a known amount") {
        CHECK(holevo_of_protocol(cyclic_permutations(3), 2, orth, fourier_control(3)) ==
              doctest::Approx(0.081704165945511).epsilon(1e-9));
    }
    SUBCASE("discarding the control kills the channel") {
        CHECK(std::abs(holevo_of_protocol_control_discarded(cyc2, 2, orth, ctrl)) < 1e-10);
        CHECK(std::abs(holevo_of_protocol_control_discarded(cyclic_permutations(3), 2, orth,
                                                            fourier_control(3))) < 1e-10);
    }
    SUBCASE("invariant under relabelling the channels") {
        const std::vector<Permutation> base{Permutation({1, 2, 3}), Permutation({3, 1, 2}),
                                            Permutation({2, 1, 3})};
        const double reference = holevo_of_protocol(base, 2, orth, fourier_control(3));
        for (const auto& sigma : all_permutations(3)) {
            std::vector<Permutation> relabelled;
            for (const auto& p : base) relabelled.push_back(compose(sigma, p));
            CHECK(holevo_of_protocol(relabelled, 2, orth, fourier_control(3)) ==
                  doctest::Approx(reference).epsilon(1e-10));
        }
    }
}

}  // TEST_SUITE
