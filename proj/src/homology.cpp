#include "gtc/homology.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_map>

namespace gtc {

Region Region::from_vertices(const Lattice& lat, BitVec vertexMask) {
    if (vertexMask.size() != lat.vertex_count())
        throw std::invalid_argument("Region: vertex mask size mismatch");
    Region r;
    r.vertices_ = std::move(vertexMask);
    return r;
}

Region Region::from_blocks(const Lattice& lat, BitVec blockMask) {
    if (blockMask.size() != lat.vertex_count())  // blocks indexed by base vertex
        throw std::invalid_argument("Region: block mask size mismatch");
    Region r;
    r.blocks_ = std::move(blockMask);
    r.vertices_ = BitVec(lat.vertex_count());
    unsigned full = (1u << lat.D()) - 1;
    for (std::size_t b = 0; b < lat.vertex_count(); ++b) {
        if (!r.blocks_->get(b)) continue;
        CellId block{lat.vertex_coord(b), full};
        for (auto v : lat.cell_vertices(block)) r.vertices_.set(v, true);
    }
    return r;
}

Region Region::from_cuboids(const Lattice& lat,
                            const std::vector<Cuboid>& include,
                            const std::vector<Cuboid>& exclude) {
    BitVec blocks(lat.vertex_count());
    auto mark = [&](const Cuboid& cu, bool on) {
        // iterate the cuboid's blocks with wrap
        std::size_t total = 1;
        for (int d = 0; d < lat.D(); ++d) {
            if (cu.size[d] < 0 || cu.size[d] > lat.L())
                throw std::invalid_argument("Region: cuboid size out of range");
            total *= (std::size_t)cu.size[d];
        }
        for (std::size_t it = 0; it < total; ++it) {
            std::size_t rest = it;
            Coord c{};
            for (int d = lat.D() - 1; d >= 0; --d) {
                int off = (int)(rest % (std::size_t)cu.size[d]);
                rest /= (std::size_t)cu.size[d];
                c[d] = (cu.lo[d] + off) % lat.L();
            }
            blocks.set(lat.vertex_index(c), on);
        }
    };
    for (const auto& cu : include) mark(cu, true);
    for (const auto& cu : exclude) mark(cu, false);
    return from_blocks(lat, std::move(blocks));
}

Region Region::complement(const Lattice& lat) const {
    Region r;
    if (blocks_) {
        BitVec inv(lat.vertex_count());
        for (std::size_t i = 0; i < inv.size(); ++i)
            inv.set(i, !blocks_->get(i));
        return from_blocks(lat, std::move(inv));
    }
    r.vertices_ = BitVec(lat.vertex_count());
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        r.vertices_.set(i, !vertices_.get(i));
    return r;
}

bool Region::contains_cell(const Lattice& lat, const CellId& c) const {
    if (blocks_) {
        // face of some included block: candidate blocks have base
        // b = c.base - w over w in {0,1}^(axes not spanned by c)
        int D = lat.D();
        std::vector<int> freeAxes;
        for (int d = 0; d < D; ++d)
            if (!(c.dirs & (1u << d))) freeAxes.push_back(d);
        for (unsigned w = 0; w < (1u << freeAxes.size()); ++w) {
            Coord b = c.base;
            for (std::size_t i = 0; i < freeAxes.size(); ++i)
                if (w & (1u << i))
                    b[freeAxes[i]] = (b[freeAxes[i]] + lat.L() - 1) % lat.L();
            if (blocks_->get(lat.vertex_index(b))) return true;
        }
        return false;
    }
    for (auto v : lat.cell_vertices(c))
        if (!vertices_.get(v)) return false;
    return true;
}

bool SubComplex::empty() const {
    for (const auto& v : cells)
        if (!v.empty()) return false;
    return true;
}

SubComplex subcomplex(const Lattice& lat, const Region& r) {
    SubComplex s;
    s.lat = &lat;
    s.cells.resize(lat.D() + 1);
    for (int j = 0; j <= lat.D(); ++j) {
        for (std::size_t i = 0; i < lat.cell_count(j); ++i)
            if (r.contains_cell(lat, lat.cell(j, i)))
                s.cells[j].push_back(i);
    }
    return s;
}

Gf2Matrix SubComplex::boundary_matrix(int j) const {
    assert(j >= 1 && j <= lat->D());
    std::unordered_map<std::size_t, std::size_t> rowOf;
    rowOf.reserve(cells[j - 1].size());
    for (std::size_t i = 0; i < cells[j - 1].size(); ++i)
        rowOf[cells[j - 1][i]] = i;
    Gf2Matrix m(cells[j - 1].size(), cells[j].size());
    for (std::size_t col = 0; col < cells[j].size(); ++col) {
        CellId c = lat->cell(j, cells[j][col]);
        for (const CellId& f : lat->boundary_cells(c)) {
            auto it = rowOf.find(lat->index(f));
            // face-closure: every face of an included cell is included
            assert(it != rowOf.end());
            m.set(it->second, col, true);
        }
    }
    return m;
}

BettiVector betti(const SubComplex& s) {
    int D = s.lat->D();
    BettiVector bv;
    bv.b.assign(D + 1, 0);
    std::vector<std::size_t> ranks(D + 2, 0);  // ranks[j] = rank d_j, d_{D+1}=0
    for (int j = 1; j <= D; ++j) {
        if (s.cells[j].empty()) { ranks[j] = 0; continue; }
        ranks[j] = s.boundary_matrix(j).rank();
    }
    for (int j = 0; j <= D; ++j) {
        std::size_t nj = s.cells[j].size();
        std::size_t kerDim = nj - ranks[j];  // rank d_0 = 0
        bv.b[j] = (int)kerDim - (int)ranks[j + 1];
    }
    return bv;
}

BettiVector reduced_betti(const SubComplex& s) {
    if (s.empty())
        throw std::invalid_argument("reduced_betti: empty complex");
    BettiVector bv = betti(s);
    bv.b[0] -= 1;
    return bv;
}

}  // namespace gtc
