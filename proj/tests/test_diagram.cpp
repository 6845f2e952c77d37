#include <random>
#include <set>
#include <utility>

#include "doctest.h"

#include "switchsim/diagram.hpp"
#include "switchsim/switch_bruteforce.hpp"
#include "switchsim/switch_fast.hpp"

using namespace switchsim;

namespace {

std::set<std::pair<int, int>> edge_ids(const WiringDiagram& dg) {
    std::set<std::pair<int, int>> out;
    for (const auto& [a, b] : dg.edges()) {
        int ia = dg.endpoint_id(a), ib = dg.endpoint_id(b);
        if (ia > ib) std::swap(ia, ib);
        out.emplace(ia, ib);
    }
    return out;
}

}  // namespace

TEST_SUITE("diagram") {

TEST_CASE("golden two-channel diagrams") {
    SUBCASE("swapped orders: connected, no loops") {
        const WiringDiagram dg = build_diagram(Permutation({1, 2}), Permutation({2, 1}));
        CHECK(count_loops(dg) == 0);
        CHECK(is_information_transmitting(dg));

        WiringDiagram expect(2, false);
        expect.add_edge({Side::Left, 1, Port::Top}, {Side::Right, 2, Port::Top});
        expect.add_edge({Side::Left, 1, Port::Bottom}, {Side::Right, 2, Port::Bottom});
        expect.add_edge({Side::Left, 2, Port::Top}, {Side::Right, 1, Port::Top});
        expect.add_edge({Side::Left, 2, Port::Bottom}, {Side::Right, 1, Port::Bottom});
        for (Side s : {Side::Left, Side::Right}) {
            expect.add_edge({s, 0, Port::Top}, {s, 1, Port::Top});
            expect.add_edge({s, 1, Port::Bottom}, {s, 2, Port::Top});
            expect.add_edge({s, 2, Port::Bottom}, {s, 0, Port::Bottom});
        }
        CHECK(edge_ids(dg) == edge_ids(expect));
    }
    SUBCASE("equal orders: one loop, disconnected") {
        const WiringDiagram dg = build_diagram(Permutation({1, 2}), Permutation({1, 2}));
        CHECK(count_loops(dg) == 1);
        CHECK_FALSE(is_information_transmitting(dg));
        CHECK(count_loops(modify_diagram(dg)) == 3);
    }
}

TEST_CASE("modification adds one loop to transmitting terms, two otherwise") {
    const WiringDiagram off = build_diagram(Permutation({1, 2}), Permutation({2, 1}));
    CHECK(count_loops(modify_diagram(off)) == 1);

    const WiringDiagram tri = build_diagram(Permutation({1, 2, 3}), Permutation({2, 3, 1}));
    CHECK(count_loops(tri) == 1);  // N-2 loops before closing
    CHECK(is_information_transmitting(tri));
    CHECK(count_loops(modify_diagram(tri)) == 2);
}

TEST_CASE("closed diagrams reject reuse") {
    const WiringDiagram closed = modify_diagram(build_diagram(Permutation({1, 2}),
                                                              Permutation({2, 1})));
    CHECK(closed.closed());
    CHECK_THROWS_AS(modify_diagram(closed), std::invalid_argument);
    CHECK_THROWS_AS(is_information_transmitting(closed), std::invalid_argument);
}

TEST_CASE("open endpoints have degree one, boxes degree two") {
    const WiringDiagram dg = build_diagram(Permutation({2, 3, 1}), Permutation({1, 3, 2}));
    for (Side s : {Side::Left, Side::Right})
        for (Port p : {Port::Top, Port::Bottom}) CHECK(dg.degree({s, 0, p}) == 1);
    for (int slot = 1; slot <= 3; ++slot)
        for (Side s : {Side::Left, Side::Right})
            for (Port p : {Port::Top, Port::Bottom}) CHECK(dg.degree({s, slot, p}) == 2);
}

TEST_CASE("loop counts match cycle counts over all pairs, N <= 5") {
    for (int n = 2; n <= 5; ++n) {
        const auto perms = all_permutations(n);
        for (const auto& pi : perms) {
            for (const auto& pip : perms) {
                const TermClass cls = classify_term(pi, pip);
                const WiringDiagram open_dg = build_diagram(pi, pip);
                const int open_loops = count_loops(open_dg);
                const int closed_loops = count_loops(modify_diagram(open_dg));
                CHECK(closed_loops == cls.cycle_count);
                CHECK(closed_loops - open_loops ==
                      (cls.kind == TermKind::IdentityProportional ? 1 : 2));
                CHECK(is_information_transmitting(open_dg) ==
                      (cls.kind == TermKind::IdentityProportional));
            }
        }
    }
}

TEST_CASE("connectivity agrees with the Kraus summation, N <= 3") {
    std::mt19937_64 rng(6);
    const DensityMatrix rho = random_density_matrix(2, rng);
    for (int n : {2, 3}) {
        const std::vector<KrausChannel> chs(n, make_cdpc(2));
        const auto perms = all_permutations(n);
        for (const auto& pi : perms) {
            for (const auto& pip : perms) {
                const ComplexMatrix term = interference_term(chs, pi, pip, rho);
                const bool transmitting = is_information_transmitting(build_diagram(pi, pip));
                // transmitting terms are multiples of rho; the rest are
                // multiples of the identity
                const ComplexMatrix base =
                    transmitting ? rho.matrix() : ComplexMatrix::identity(2);
                ComplexMatrix fitted = base;
                fitted *= term.trace() / base.trace();
                CHECK(max_abs_diff(fitted, term) < 1e-12);
            }
        }
    }
}

TEST_CASE("graphviz dump names endpoints by side, slot and port") {
    const WiringDiagram dg = build_diagram(Permutation({1, 2}), Permutation({2, 1}));
    const std::string dot = to_graphviz(dg);
    CHECK(dot.find("graph wiring {") != std::string::npos);
    CHECK(dot.find("\"L0T\"") != std::string::npos);
    CHECK(dot.find("\"R2B\"") != std::string::npos);
    CHECK(dot.find(" -- ") != std::string::npos);
}

}  // TEST_SUITE
