#include "gtc/partitions.hpp"

#include <cassert>
#include <stdexcept>

namespace gtc {

namespace {

int sign_of(int i) { return (i % 4 == 2 || i % 4 == 3) ? +1 : -1; }

struct CuboidSet {
    std::vector<Cuboid> include;
    std::vector<Cuboid> exclude;
};

// Extrude every cuboid along the given new axis with the given range.
CuboidSet extrude(const CuboidSet& cs, int axis, int lo, int len) {
    CuboidSet out = cs;
    for (auto& cu : out.include) { cu.lo[axis] = lo; cu.size[axis] = len; }
    for (auto& cu : out.exclude) { cu.lo[axis] = lo; cu.size[axis] = len; }
    return out;
}

Cuboid box(int dims, int lo, int len) {
    Cuboid cu;
    for (int d = 0; d < dims; ++d) { cu.lo[d] = lo; cu.size[d] = len; }
    return cu;
}

// Cuboid descriptions of C_i in block coordinates, built inductively.
// The box has side A with the hole spanning [h, m) in every axis; the
// upper/lower pieces cut at m and h. The classic proportions are
// (A, h, m) = (a, a/3, 2a/3). At a = 3 the one-block hole encloses no
// interior cell star and the group-rank identities fail, so the
// smallest sound geometry (4, 1, 3) is used instead: hole two blocks
// wide, margins one block.
std::vector<CuboidSet> cuboid_scheme(int D, int a) {
    const int A = a == 3 ? 4 : a;
    const int h = a == 3 ? 1 : a / 3;
    const int m = a == 3 ? 3 : 2 * (a / 3);
    // base case D = 2; distinguished axis is the last one
    std::vector<CuboidSet> cs(4);
    Cuboid hole2{{h, h}, {m - h, m - h}};
    cs[0].include = {Cuboid{{0, h}, {A, m - h}}};   // C_1: overlap slab
    cs[1].include = {Cuboid{{0, 0}, {A, m}}};       // C_2: lower piece
    cs[2].include = {Cuboid{{0, h}, {A, A - h}}};   // C_3: upper piece
    cs[3].include = {Cuboid{{0, 0}, {A, A}}};       // C_4: full box
    for (auto& c : cs) c.exclude = {hole2};

    for (int dim = 3; dim <= D; ++dim) {
        int ax = dim - 1;
        for (auto& c : cs) c = extrude(c, ax, h, m - h);  // overlap slice
        CuboidSet shell, upper, lower, middle;
        Cuboid holeD = box(dim, h, m - h);
        Cuboid full = box(dim, 0, A);
        shell.include = {full};
        upper.include = {full};
        upper.include[0].lo[ax] = h; upper.include[0].size[ax] = A - h;
        lower.include = {full};
        lower.include[0].lo[ax] = 0; lower.include[0].size[ax] = m;
        middle.include = {full};
        middle.include[0].lo[ax] = h; middle.include[0].size[ax] = m - h;
        for (auto* c : {&shell, &upper, &lower, &middle}) c->exclude = {holeD};
        cs.push_back(middle);
        cs.push_back(lower);
        cs.push_back(upper);
        cs.push_back(shell);
    }
    return cs;
}

BitVec spins_of(const Lattice& lat, const Region& r, int k) {
    BitVec s(lat.cell_count(k));
    for (std::size_t i = 0; i < lat.cell_count(k); ++i)
        if (r.contains_cell(lat, lat.cell(k, i))) s.set(i, true);
    return s;
}

BitVec complement_bits(const BitVec& v) {
    BitVec c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c.set(i, !v.get(i));
    return c;
}

}  // namespace

PartitionScheme build_partitions(const Lattice& lat, int a, int k) {
    const int D = lat.D(), L = lat.L();
    if (D < 2) throw std::invalid_argument("build_partitions: D >= 2 required");
    if (k < 1 || k > D - 1)
        throw std::invalid_argument("build_partitions: k must be in [1, D-1]");
    if (a % 3 != 0)
        throw std::invalid_argument("build_partitions: a must be a multiple of 3");
    if (a < 3) throw std::invalid_argument("build_partitions: a >= 3 required");
    if (a == 3) {
        // minimal geometry occupies a box of side 4 plus a width-2 collar
        if (L < 6)
            throw std::invalid_argument(
                "build_partitions: a = 3 requires L >= 6 (separating shell)");
    } else if (a > L - 3) {
        throw std::invalid_argument(
            "build_partitions: a <= L-3 required (separating shell)");
    }

    auto cs = cuboid_scheme(D, a);
    PartitionScheme p;
    p.spec = lat.spec();
    p.a = a;
    p.k = k;
    p.entries.reserve(cs.size());
    for (std::size_t idx = 0; idx < cs.size(); ++idx) {
        PartitionEntry e;
        e.index = (int)idx + 1;
        e.sign = sign_of(e.index);
        e.regionC = Region::from_cuboids(lat, cs[idx].include, cs[idx].exclude);
        e.regionD = e.regionC.complement(lat);
        e.spinsC = spins_of(lat, e.regionC, k);
        e.spinsD = complement_bits(e.spinsC);
        p.entries.push_back(std::move(e));
    }
    return p;
}

PartitionScheme build_micro_partitions(const Lattice& lat) {
    const int D = lat.D(), L = lat.L();
    if (D != 2)
        throw std::invalid_argument("build_micro_partitions: D = 2 only");

    auto edge = [&](int x, int y, int axis) {
        CellId c;
        c.base[0] = x % L;
        c.base[1] = y % L;
        c.dirs = 1u << axis;
        return lat.index(c);
    };
    std::size_t bottom = edge(1, 1, 0);
    std::size_t top = edge(1, 2, 0);
    std::size_t left = edge(1, 1, 1);
    std::size_t right = edge(2, 1, 1);

    auto make = [&](std::vector<std::size_t> cells) {
        BitVec v(lat.cell_count(1));
        for (auto c : cells) v.set(c, true);
        return v;
    };
    std::vector<BitVec> spins = {
        make({left, right}),                // C_1
        make({bottom, left, right}),        // C_2
        make({top, left, right}),           // C_3
        make({bottom, top, left, right}),   // C_4
    };

    PartitionScheme p;
    p.spec = lat.spec();
    p.a = 0;
    p.k = 1;
    p.degenerate = true;
    for (int i = 0; i < 4; ++i) {
        PartitionEntry e;
        e.index = i + 1;
        e.sign = sign_of(e.index);
        e.spinsC = spins[i];
        e.spinsD = complement_bits(spins[i]);
        BitVec verts(lat.vertex_count());
        for (std::size_t c = 0; c < lat.cell_count(1); ++c)
            if (e.spinsC.get(c))
                for (auto v : lat.cell_vertices(lat.cell(1, c)))
                    verts.set(v, true);
        e.regionC = Region::from_vertices(lat, verts);
        e.regionD = e.regionC.complement(lat);
        p.entries.push_back(std::move(e));
    }
    return p;
}

CheckReport verify_cancellation(const Lattice& lat, const PartitionScheme& p) {
    CheckReport rep;
    // spin-level cancellation over P_k
    for (std::size_t c = 0; c < lat.cell_count(p.k); ++c) {
        int s = 0;
        for (const auto& e : p.entries)
            if (e.spinsC.get(c)) s += e.sign;
        if (s != 0) {
            rep.pass = false;
            rep.detail = "spin cancellation fails at k-cell " + std::to_string(c) +
                         " (signed count " + std::to_string(s) + ")";
            return rep;
        }
    }
    if (p.degenerate) {
        rep.detail = "spin cancellation ok; bulk/interface checks skipped "
                     "(degenerate scheme)";
        return rep;
    }

    // vertex closures of spinsD_i, for the interface test
    std::vector<BitVec> dVerts;
    dVerts.reserve(p.entries.size());
    for (const auto& e : p.entries) {
        BitVec verts(lat.vertex_count());
        for (std::size_t c = 0; c < lat.cell_count(p.k); ++c)
            if (e.spinsD.get(c))
                for (auto v : lat.cell_vertices(lat.cell(p.k, c)))
                    verts.set(v, true);
        dVerts.push_back(std::move(verts));
    }

    for (int j = 0; j <= lat.D(); ++j) {
        for (std::size_t c = 0; c < lat.cell_count(j); ++c) {
            CellId cell = lat.cell(j, c);
            int bulk = 0, iface = 0;
            for (std::size_t i = 0; i < p.entries.size(); ++i) {
                const auto& e = p.entries[i];
                if (!e.regionC.contains_cell(lat, cell)) continue;
                bulk += e.sign;
                for (auto v : lat.cell_vertices(cell))
                    if (dVerts[i].get(v)) { iface += e.sign; break; }
            }
            if (bulk != 0 || iface != 0) {
                rep.pass = false;
                rep.detail = std::string(bulk != 0 ? "bulk" : "interface") +
                             " cancellation fails at dim " + std::to_string(j) +
                             " cell " + std::to_string(c);
                return rep;
            }
        }
    }
    rep.detail = "all signed chains vanish";
    return rep;
}

CheckReport exchange_symmetry_check(const Lattice& lat, const PartitionScheme& p) {
    CheckReport rep;
    if (p.degenerate) {
        rep.detail = "skipped (degenerate scheme)";
        return rep;
    }
    const int D = lat.D();
    std::vector<long> cSum(D + 1, 0), dSum(D + 1, 0);
    for (const auto& e : p.entries) {
        BettiVector bc = reduced_betti(subcomplex(lat, e.regionC));
        BettiVector bd = reduced_betti(subcomplex(lat, e.regionD));
        for (int d = 0; d <= D; ++d) {
            cSum[d] += e.sign * bc.b[d];
            dSum[d] += e.sign * bd.b[d];
        }
    }
    for (int d = 0; d <= D; ++d) {
        if (cSum[d] != dSum[d]) {
            rep.pass = false;
            rep.detail = "signed Betti sums differ at dimension " +
                         std::to_string(d) + ": C-side " + std::to_string(cSum[d]) +
                         ", D-side " + std::to_string(dSum[d]);
            return rep;
        }
    }
    rep.detail = "signed Betti sums match in every dimension";
    return rep;
}

}  // namespace gtc
