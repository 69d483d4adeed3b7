#include "gtc/lattice.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>
#include <string>

namespace gtc {

Lattice::Lattice(LatticeSpec spec) : spec_(spec) {
    if (spec.D < 1 || spec.D > kMaxDim)
        throw std::invalid_argument("Lattice: D must be in [1," +
                                    std::to_string(kMaxDim) + "]");
    if (spec.L < 2)
        throw std::invalid_argument("Lattice: L >= 2 required (L=1 degenerates)");
    nVerts_ = 1;
    for (int d = 0; d < spec.D; ++d) nVerts_ *= (std::size_t)spec.L;

    masks_.resize(spec.D + 1);
    maskRank_.resize(spec.D + 1);
    unsigned full = (1u << spec.D) - 1;
    for (int j = 0; j <= spec.D; ++j)
        maskRank_[j].assign(full + 1, -1);
    for (unsigned m = 0; m <= full; ++m) {
        int j = std::popcount(m);
        maskRank_[j][m] = (int)masks_[j].size();
        masks_[j].push_back(m);
    }
}

std::size_t Lattice::cell_count(int j) const {
    if (j < 0 || j > spec_.D)
        throw std::invalid_argument("cell_count: dimension out of range");
    return (std::size_t)binomial(spec_.D, j) * nVerts_;
}

std::size_t Lattice::vertex_index(const Coord& c) const {
    std::size_t idx = 0;
    for (int d = 0; d < spec_.D; ++d) idx = idx * spec_.L + (std::size_t)c[d];
    return idx;
}

Coord Lattice::vertex_coord(std::size_t idx) const {
    Coord c{};
    for (int d = spec_.D - 1; d >= 0; --d) {
        c[d] = (int)(idx % spec_.L);
        idx /= spec_.L;
    }
    return c;
}

int Lattice::dim(const CellId& c) const { return std::popcount(c.dirs); }

std::size_t Lattice::index(const CellId& c) const {
    int j = dim(c);
    int rank = maskRank_[j][c.dirs];
    assert(rank >= 0);
    return (std::size_t)rank * nVerts_ + vertex_index(c.base);
}

CellId Lattice::cell(int j, std::size_t idx) const {
    CellId c;
    c.dirs = masks_[j][idx / nVerts_];
    c.base = vertex_coord(idx % nVerts_);
    return c;
}

std::vector<CellId> Lattice::boundary_cells(const CellId& c) const {
    int j = dim(c);
    if (j < 1)
        throw std::invalid_argument("boundary_cells: 0-cell has no boundary");
    std::vector<CellId> faces;
    faces.reserve(2 * (std::size_t)j);
    for (int d = 0; d < spec_.D; ++d) {
        if (!(c.dirs & (1u << d))) continue;
        CellId lo = c;
        lo.dirs &= ~(1u << d);
        faces.push_back(lo);
        CellId hi = lo;
        hi.base[d] = (hi.base[d] + 1) % spec_.L;
        faces.push_back(hi);
    }
    return faces;
}

std::vector<CellId> Lattice::coboundary_cells(const CellId& c) const {
    int j = dim(c);
    if (j > spec_.D - 1)
        throw std::invalid_argument("coboundary_cells: top-cell has no coboundary");
    std::vector<CellId> cofaces;
    cofaces.reserve(2 * (std::size_t)(spec_.D - j));
    for (int d = 0; d < spec_.D; ++d) {
        if (c.dirs & (1u << d)) continue;
        CellId up = c;
        up.dirs |= 1u << d;
        cofaces.push_back(up);
        CellId down = up;
        down.base[d] = (down.base[d] + spec_.L - 1) % spec_.L;
        cofaces.push_back(down);
    }
    return cofaces;
}

DualCellId Lattice::dual_cell(const CellId& c) const {
    unsigned full = (1u << spec_.D) - 1;
    CellId d;
    d.dirs = full & ~c.dirs;
    d.base = c.base;
    // shift by -1 along every axis the dual cell spans
    for (int ax = 0; ax < spec_.D; ++ax)
        if (d.dirs & (1u << ax))
            d.base[ax] = (d.base[ax] + spec_.L - 1) % spec_.L;
    return DualCellId{d};
}

CellId Lattice::dual_cell(const DualCellId& c) const {
    unsigned full = (1u << spec_.D) - 1;
    CellId p;
    p.dirs = full & ~c.cell.dirs;
    p.base = c.cell.base;
    for (int ax = 0; ax < spec_.D; ++ax)
        if (c.cell.dirs & (1u << ax))
            p.base[ax] = (p.base[ax] + 1) % spec_.L;
    return p;
}

Gf2Matrix Lattice::boundary_matrix(int j) const {
    if (j < 1 || j > spec_.D)
        throw std::invalid_argument("boundary_matrix: j out of range");
    Gf2Matrix m(cell_count(j - 1), cell_count(j));
    for (std::size_t col = 0; col < cell_count(j); ++col) {
        CellId c = cell(j, col);
        for (const CellId& f : boundary_cells(c))
            m.set(index(f), col, true);
    }
    return m;
}

std::vector<std::size_t> Lattice::cell_vertices(const CellId& c) const {
    int j = dim(c);
    std::vector<std::size_t> verts;
    verts.reserve(std::size_t(1) << j);
    std::vector<int> axes;
    for (int d = 0; d < spec_.D; ++d)
        if (c.dirs & (1u << d)) axes.push_back(d);
    for (unsigned w = 0; w < (1u << j); ++w) {
        Coord v = c.base;
        for (int b = 0; b < j; ++b)
            if (w & (1u << b)) v[axes[b]] = (v[axes[b]] + 1) % spec_.L;
        verts.push_back(vertex_index(v));
    }
    return verts;
}

}  // namespace gtc
