// Regions on the torus, subcomplex extraction and Z2 Betti numbers.
#pragma once

#include <optional>
#include <vector>

#include "gtc/gf2.hpp"
#include "gtc/lattice.hpp"

namespace gtc {

// Axis-aligned box of unit blocks (D-cells), identified by the minimal
// corner and the size per axis. Coordinates wrap mod L.
struct Cuboid {
    Coord lo{};
    Coord size{};
};

// Vertex region of the lattice. Two flavours:
//  - block-based: a union of cuboids of D-cells minus excluded cuboids;
//    the vertex set is the set of corners of included blocks, and the
//    induced subcomplex consists of all faces of included blocks.
//  - vertex-based: an explicit vertex bitmask; the induced subcomplex
//    takes every cell all of whose vertices lie in the mask.
// The two rules agree whenever holes are at least two blocks wide; the
// block rule alone keeps one-block holes open, which the partition
// construction requires at a = 3.
class Region {
public:
    static Region from_vertices(const Lattice& lat, BitVec vertexMask);
    static Region from_blocks(const Lattice& lat, BitVec blockMask);
    static Region from_cuboids(const Lattice& lat,
                               const std::vector<Cuboid>& include,
                               const std::vector<Cuboid>& exclude = {});

    bool block_based() const { return blocks_.has_value(); }
    const BitVec& vertices() const { return vertices_; }
    const BitVec& blocks() const { return *blocks_; }

    bool contains_vertex(std::size_t v) const { return vertices_.get(v); }
    std::size_t vertex_count() const { return vertices_.popcount(); }

    // Complement region: block-based regions complement their block
    // set; vertex-based regions flip the mask.
    Region complement(const Lattice& lat) const;

    // True iff the cell belongs to the induced subcomplex.
    bool contains_cell(const Lattice& lat, const CellId& c) const;

private:
    BitVec vertices_;
    std::optional<BitVec> blocks_;
};

// Cells of the induced subcomplex, per dimension, as sorted parent
// lattice indices. Closed under taking faces.
struct SubComplex {
    const Lattice* lat = nullptr;
    std::vector<std::vector<std::size_t>> cells;  // [j] -> indices

    std::size_t count(int j) const { return cells[j].size(); }
    bool empty() const;

    // Boundary matrix restricted to the subcomplex: rows are included
    // (j-1)-cells, columns included j-cells.
    Gf2Matrix boundary_matrix(int j) const;
};

SubComplex subcomplex(const Lattice& lat, const Region& r);

struct BettiVector {
    std::vector<int> b;  // b[0..D]

    bool operator==(const BettiVector&) const = default;
};

// b_j = dim ker d_j - rank d_{j+1} on the subcomplex.
BettiVector betti(const SubComplex& s);

// Reduced: b'_0 = b_0 - 1, others unchanged. Empty complex is an error.
BettiVector reduced_betti(const SubComplex& s);

}  // namespace gtc
