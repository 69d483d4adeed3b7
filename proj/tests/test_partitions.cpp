#include "doctest.h"

#include "gtc/partitions.hpp"

using namespace gtc;

TEST_CASE("build_partitions: entry counts and sign pattern") {
    Lattice lat2(LatticeSpec{2, 12});
    PartitionScheme p2 = build_partitions(lat2, 6, 1);
    REQUIRE(p2.entries.size() == 4);
    CHECK(p2.entries[0].sign == -1);
    CHECK(p2.entries[1].sign == +1);
    CHECK(p2.entries[2].sign == +1);
    CHECK(p2.entries[3].sign == -1);

    Lattice lat3(LatticeSpec{3, 9});
    CHECK(build_partitions(lat3, 3, 1).entries.size() == 8);
    Lattice lat4(LatticeSpec{4, 6});
    CHECK(build_partitions(lat4, 3, 2).entries.size() == 12);

    int plus = 0, minus = 0;
    for (const auto& e : build_partitions(lat3, 3, 2).entries)
        (e.sign > 0 ? plus : minus)++;
    CHECK(plus == minus);
}

TEST_CASE("build_partitions precondition violations name the constraint") {
    Lattice lat(LatticeSpec{2, 12});
    CHECK_THROWS_WITH_AS(build_partitions(lat, 4, 1),
                         doctest::Contains("multiple of 3"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_partitions(lat, 0, 1),
                         doctest::Contains("a >= 3"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_partitions(lat, 12, 1), doctest::Contains("L-3"),
                         std::invalid_argument);
    CHECK_THROWS_AS(build_partitions(lat, 6, 2), std::invalid_argument);
}

TEST_CASE("spinsC and spinsD partition the k-cells") {
    Lattice lat(LatticeSpec{3, 6});
    PartitionScheme p = build_partitions(lat, 3, 1);
    for (const auto& e : p.entries) {
        for (std::size_t c = 0; c < lat.cell_count(1); ++c)
            CHECK(e.spinsC.get(c) != e.spinsD.get(c));
    }
}

TEST_CASE("D=2 partition topology: annulus, horseshoes, two strips") {
    Lattice lat(LatticeSpec{2, 12});
    PartitionScheme p = build_partitions(lat, 6, 1);
    BettiVector b1 = reduced_betti(subcomplex(lat, p.entries[0].regionC));
    CHECK(b1.b[0] == 1);  // C_1: two components
    CHECK(b1.b[1] == 0);
    BettiVector b2 = reduced_betti(subcomplex(lat, p.entries[1].regionC));
    CHECK(b2.b == std::vector<int>{0, 0, 0});  // horseshoe is contractible
    BettiVector b3 = reduced_betti(subcomplex(lat, p.entries[2].regionC));
    CHECK(b3.b == std::vector<int>{0, 0, 0});
    BettiVector b4 = reduced_betti(subcomplex(lat, p.entries[3].regionC));
    CHECK(b4.b == std::vector<int>{0, 1, 0});  // annulus
}

TEST_CASE("D=3 new entries: shell b'_2 = 1, tube b'_1 = 1") {
    Lattice lat(LatticeSpec{3, 12});
    PartitionScheme p = build_partitions(lat, 6, 1);
    BettiVector shell = reduced_betti(subcomplex(lat, p.entries[7].regionC));
    CHECK(shell.b == std::vector<int>{0, 0, 1, 0});
    BettiVector tube = reduced_betti(subcomplex(lat, p.entries[4].regionC));
    CHECK(tube.b == std::vector<int>{0, 1, 0, 0});
    BettiVector strips = reduced_betti(subcomplex(lat, p.entries[0].regionC));
    CHECK(strips.b == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("Betti tables of the C_i hold for D=2 and D=3 at L=12, a=6") {
    // b'_i(C_{4j}) = b'_i(C_{4j+1}) = delta_{ij}; C_{4j+2}, C_{4j+3} trivial
    for (int D : {2, 3}) {
        Lattice lat(LatticeSpec{D, 12});
        PartitionScheme p = build_partitions(lat, 6, 1);
        for (const auto& e : p.entries) {
            BettiVector b = reduced_betti(subcomplex(lat, e.regionC));
            int i = e.index;
            std::vector<int> expect(D + 1, 0);
            if (i % 4 == 0) expect[i / 4] = 1;
            else if (i % 4 == 1) expect[i / 4] = 1;
            CHECK_MESSAGE(b.b == expect, "C_", i, " of D=", D);
        }
    }
}

TEST_CASE("for each d in 0..D-1 some C_i has nontrivial d-homology") {
    Lattice lat(LatticeSpec{3, 9});
    PartitionScheme p = build_partitions(lat, 3, 1);
    std::vector<bool> found(3, false);
    for (const auto& e : p.entries) {
        BettiVector b = reduced_betti(subcomplex(lat, e.regionC));
        for (int d = 0; d < 3; ++d)
            if (b.b[d] > 0) found[d] = true;
    }
    for (int d = 0; d < 3; ++d) CHECK(found[d]);
}

TEST_CASE("cancellation passes for D=2,3 at L=12, a=6 and fails when a sign flips") {
    for (int D : {2, 3}) {
        Lattice lat(LatticeSpec{D, 12});
        PartitionScheme p = build_partitions(lat, 6, 1);
        CheckReport rep = verify_cancellation(lat, p);
        CHECK_MESSAGE(rep.pass, rep.detail);

        PartitionScheme bad = p;
        bad.entries[0].sign = +1;
        CheckReport repBad = verify_cancellation(lat, bad);
        CHECK_FALSE(repBad.pass);
        CHECK(!repBad.detail.empty());
    }
}

TEST_CASE("cancellation at the smallest supported geometry a=3") {
    Lattice lat(LatticeSpec{2, 6});
    PartitionScheme p = build_partitions(lat, 3, 1);
    CheckReport rep = verify_cancellation(lat, p);
    CHECK_MESSAGE(rep.pass, rep.detail);
}

TEST_CASE("exchange symmetry holds for D=2,3 and fails with a missing entry") {
    for (int D : {2, 3}) {
        Lattice lat(LatticeSpec{D, 12});
        PartitionScheme p = build_partitions(lat, 6, 1);
        CheckReport rep = exchange_symmetry_check(lat, p);
        CHECK_MESSAGE(rep.pass, rep.detail);
    }
    Lattice lat(LatticeSpec{2, 12});
    PartitionScheme p = build_partitions(lat, 6, 1);
    p.entries.pop_back();
    CheckReport rep = exchange_symmetry_check(lat, p);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("micro scheme: spin cancellation and two-component C_1") {
    for (int L : {2, 3}) {
        Lattice lat(LatticeSpec{2, L});
        PartitionScheme p = build_micro_partitions(lat);
        REQUIRE(p.entries.size() == 4);
        CHECK(p.degenerate);
        CHECK(p.entries[0].spinsC.popcount() == 2);
        CHECK(p.entries[1].spinsC.popcount() == 3);
        CHECK(p.entries[2].spinsC.popcount() == 3);
        CHECK(p.entries[3].spinsC.popcount() == 4);
        CheckReport rep = verify_cancellation(lat, p);
        CHECK_MESSAGE(rep.pass, rep.detail);
    }
}
