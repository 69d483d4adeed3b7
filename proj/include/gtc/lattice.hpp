// D-dimensional periodic cubic lattice: cell enumeration, boundary and
// coboundary incidence, boundary matrices over GF(2), and the duality
// map onto the dual lattice.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gtc/gf2.hpp"

namespace gtc {

inline constexpr int kMaxDim = 6;

struct LatticeSpec {
    int D = 2;  // spatial dimension, 1 <= D <= kMaxDim
    int L = 2;  // linear size, L >= 2; periodic in all directions

    bool operator==(const LatticeSpec&) const = default;
};

using Coord = std::array<int, kMaxDim>;  // entries beyond D are zero

// A j-cell: minimal-corner vertex plus the set of spanned axes.
// dirs is a bitmask over axes 0..D-1; j = popcount(dirs).
struct CellId {
    Coord base{};
    unsigned dirs = 0;

    bool operator==(const CellId&) const = default;
};

// Same shape as CellId but lives on the dual lattice Lambda*.
struct DualCellId {
    CellId cell;

    bool operator==(const DualCellId&) const = default;
};

inline int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return (int)r;
}

class Lattice {
public:
    explicit Lattice(LatticeSpec spec);

    const LatticeSpec& spec() const { return spec_; }
    int D() const { return spec_.D; }
    int L() const { return spec_.L; }
    std::size_t vertex_count() const { return nVerts_; }

    // Number of j-cells: binomial(D, j) * L^D.
    std::size_t cell_count(int j) const;

    // Stable index <-> cell maps. Enumeration is lexicographic in
    // (dirs, base): direction sets ordered by bitmask within fixed j,
    // base coordinates with axis 0 most significant.
    std::size_t index(const CellId& c) const;
    CellId cell(int j, std::size_t idx) const;

    int dim(const CellId& c) const;

    // The 2j faces of a j-cell (j >= 1), deterministic order.
    std::vector<CellId> boundary_cells(const CellId& c) const;
    // The 2(D-j) cofaces of a j-cell (j <= D-1).
    std::vector<CellId> coboundary_cells(const CellId& c) const;

    // Duality bijection P_j(Lambda) -> P_{D-j}(Lambda*). The dual
    // lattice is shifted by +1/2 along every axis; the offset below is
    // the one that makes incidence reversal exact:
    //   e in boundary(f)  <=>  dual(f) in boundary(dual(e)).
    DualCellId dual_cell(const CellId& c) const;
    CellId dual_cell(const DualCellId& c) const;  // inverse map

    // Rows indexed by (j-1)-cells, columns by j-cells; entry 1 iff the
    // row cell is a face of the column cell. 1 <= j <= D.
    Gf2Matrix boundary_matrix(int j) const;

    std::size_t vertex_index(const Coord& c) const;
    Coord vertex_coord(std::size_t idx) const;

    // All 2^j vertices of a cell.
    std::vector<std::size_t> cell_vertices(const CellId& c) const;

    const std::vector<unsigned>& dir_masks(int j) const { return masks_[j]; }

private:
    LatticeSpec spec_;
    std::size_t nVerts_;
    std::vector<std::vector<unsigned>> masks_;   // per j, sorted bitmasks
    std::vector<std::vector<int>> maskRank_;     // per j, mask -> rank
};

}  // namespace gtc
