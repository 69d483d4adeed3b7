#include "doctest.h"

#include <set>

#include "gtc/lattice.hpp"

using namespace gtc;

TEST_CASE("cell counts follow binomial(D,j) * L^D") {
    CHECK(Lattice(LatticeSpec{3, 4}).cell_count(1) == 192);
    CHECK(Lattice(LatticeSpec{2, 2}).cell_count(1) == 8);
    CHECK(Lattice(LatticeSpec{4, 3}).cell_count(2) == 486);
    CHECK_THROWS_AS((void)Lattice(LatticeSpec{2, 2}).cell_count(3),
                    std::invalid_argument);
}

TEST_CASE("L=1 is rejected") {
    CHECK_THROWS_AS(Lattice(LatticeSpec{2, 1}), std::invalid_argument);
}

TEST_CASE("index and cell are mutually inverse in stable order") {
    for (LatticeSpec spec : {LatticeSpec{2, 3}, LatticeSpec{3, 2}, LatticeSpec{4, 2}}) {
        Lattice lat(spec);
        Lattice lat2(spec);
        for (int j = 0; j <= spec.D; ++j) {
            for (std::size_t i = 0; i < lat.cell_count(j); ++i) {
                CellId c = lat.cell(j, i);
                CHECK(lat.index(c) == i);
                CHECK(lat2.cell(j, i) == c);  // deterministic across instances
            }
        }
    }
}

TEST_CASE("boundary cells: counts and membership") {
    Lattice lat2(LatticeSpec{2, 2});
    CellId edge{{0, 0}, 1u};  // spans axis 0
    auto faces = lat2.boundary_cells(edge);
    REQUIRE(faces.size() == 2);
    CHECK(faces[0] == CellId{{0, 0}, 0u});
    CHECK(faces[1] == CellId{{1, 0}, 0u});

    CellId plaq{{0, 0}, 3u};
    CHECK(lat2.boundary_cells(plaq).size() == 4);

    Lattice lat3(LatticeSpec{3, 3});
    CellId cube{{1, 2, 0}, 7u};
    CHECK(lat3.boundary_cells(cube).size() == 6);

    CHECK_THROWS_AS(lat2.boundary_cells(CellId{{0, 0}, 0u}), std::invalid_argument);
}

TEST_CASE("coboundary cells: counts and transpose relation") {
    Lattice lat2(LatticeSpec{2, 3});
    CHECK(lat2.coboundary_cells(CellId{{0, 0}, 0u}).size() == 4);

    Lattice lat3(LatticeSpec{3, 2});
    CellId e{{0, 1, 1}, 2u};
    CHECK(lat3.coboundary_cells(e).size() == 4);
    CHECK_THROWS_AS(lat3.coboundary_cells(CellId{{0, 0, 0}, 7u}),
                    std::invalid_argument);

    // membership symmetry: b in coboundary(a) <=> a in boundary(b)
    for (int j = 0; j < 3; ++j) {
        for (std::size_t i = 0; i < lat3.cell_count(j); ++i) {
            CellId a = lat3.cell(j, i);
            for (const CellId& b : lat3.coboundary_cells(a)) {
                auto bd = lat3.boundary_cells(b);
                CHECK(std::count(bd.begin(), bd.end(), a) == 1);
            }
        }
    }
}

TEST_CASE("boundary of boundary vanishes over GF(2)") {
    for (LatticeSpec spec :
         {LatticeSpec{2, 2}, LatticeSpec{2, 3}, LatticeSpec{3, 2}, LatticeSpec{4, 2}}) {
        Lattice lat(spec);
        for (int j = 2; j <= spec.D; ++j) {
            Gf2Matrix lower = lat.boundary_matrix(j - 1);
            Gf2Matrix upper = lat.boundary_matrix(j);
            for (std::size_t col = 0; col < upper.cols(); ++col) {
                BitVec chain(upper.cols());
                chain.set(col, true);
                CHECK(lower.apply(upper.apply(chain)).none());
            }
        }
    }
}

TEST_CASE("boundary matrix shapes and the known D=2 L=2 rank") {
    Lattice lat(LatticeSpec{3, 2});
    Gf2Matrix d2 = lat.boundary_matrix(2);
    CHECK(d2.rows() == 24);
    CHECK(d2.cols() == 24);
    CHECK(Lattice(LatticeSpec{2, 2}).boundary_matrix(1).rank() == 3);
    CHECK_THROWS_AS(lat.boundary_matrix(4), std::invalid_argument);
}

TEST_CASE("dual map: dimensions, involution, incidence reversal") {
    for (LatticeSpec spec : {LatticeSpec{2, 2}, LatticeSpec{2, 3}, LatticeSpec{3, 2},
                             LatticeSpec{3, 3}}) {
        Lattice lat(spec);
        for (int j = 0; j <= spec.D; ++j) {
            std::set<std::size_t> seen;
            for (std::size_t i = 0; i < lat.cell_count(j); ++i) {
                CellId c = lat.cell(j, i);
                DualCellId d = lat.dual_cell(c);
                CHECK(lat.dim(d.cell) == spec.D - j);
                CHECK(lat.dual_cell(d) == c);  // involution
                seen.insert(lat.index(d.cell));  // bijection
            }
            CHECK(seen.size() == lat.cell_count(j));
        }
        // incidence reversal, exhaustively: e in bd(f) <=> f* in bd(e*)
        for (int j = 1; j <= spec.D; ++j) {
            for (std::size_t i = 0; i < lat.cell_count(j); ++i) {
                CellId f = lat.cell(j, i);
                CellId fStar = lat.dual_cell(f).cell;
                for (const CellId& e : lat.boundary_cells(f)) {
                    CellId eStar = lat.dual_cell(e).cell;
                    auto bd = lat.boundary_cells(eStar);
                    CHECK(std::count(bd.begin(), bd.end(), fStar) == 1);
                }
            }
        }
    }
}

TEST_CASE("dual dimension count examples") {
    Lattice lat2(LatticeSpec{2, 3});
    CHECK(lat2.dim(lat2.dual_cell(CellId{{0, 0}, 1u}).cell) == 1);  // edge -> edge
    CHECK(lat2.dim(lat2.dual_cell(CellId{{0, 0}, 3u}).cell) == 0);  // plaquette -> vertex
    Lattice lat3(LatticeSpec{3, 2});
    CHECK(lat3.dim(lat3.dual_cell(CellId{{0, 0, 0}, 3u}).cell) == 1);  // plaquette -> edge
}
