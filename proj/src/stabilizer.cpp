#include "gtc/stabilizer.hpp"

#include <mutex>
#include <stdexcept>

#include "gtc/parallel.hpp"

namespace gtc {

void ModelSpec::validate() const {
    if (D < 2 || D > kMaxDim)
        throw std::invalid_argument("ModelSpec: D out of range");
    if (k < 1 || k > D - 1)
        throw std::invalid_argument("ModelSpec: k must satisfy 1 <= k <= D-1");
    if (L < 2) throw std::invalid_argument("ModelSpec: L >= 2 required");
    if (lambda <= 0 || mu <= 0)
        throw std::invalid_argument("ModelSpec: couplings must be positive");
}

StabilizerCode::StabilizerCode(ModelSpec m)
    : m_(m), lat_((m.validate(), LatticeSpec{m.D, m.L})) {
    star_ = lat_.boundary_matrix(m_.k);
    plaq_ = lat_.boundary_matrix(m_.k + 1).transposed();

    // Logical representatives: for each k-subset S of axes, the Z
    // representative is the wrapping plane of cells (b, S) with zero
    // transverse base, and the X representative the transverse brane
    // with zero in-plane base. Pairing is then diagonal.
    std::size_t nk = lat_.cell_count(m_.k);
    for (unsigned mask : lat_.dir_masks(m_.k)) {
        BitVec z(nk), x(nk);
        for (std::size_t i = 0; i < nk; ++i) {
            CellId c = lat_.cell(m_.k, i);
            if (c.dirs != mask) continue;
            bool inPlane = true, transverse = true;
            for (int d = 0; d < m_.D; ++d) {
                if (mask & (1u << d)) {
                    if (c.base[d] != 0) transverse = false;
                } else {
                    if (c.base[d] != 0) inPlane = false;
                }
            }
            if (inPlane) z.set(i, true);
            if (transverse) x.set(i, true);
        }
        zReps_.push_back(std::move(z));
        xReps_.push_back(std::move(x));
    }
}

int StabilizerCode::rank_star() const {
    if (rankStar_ < 0) rankStar_ = (int)star_.rank();
    return rankStar_;
}

int StabilizerCode::rank_plaq() const {
    if (rankPlaq_ < 0) rankPlaq_ = (int)plaq_.rank();
    return rankPlaq_;
}

int StabilizerCode::ground_degeneracy_log2() const {
    return (int)lat_.cell_count(m_.k) - rank_star() - rank_plaq();
}

GroupLogOrders StabilizerCode::group_log_orders_region(const BitVec& regionC) const {
    if (regionC.size() != lat_.cell_count(m_.k))
        throw std::invalid_argument("group_log_orders: region size mismatch");
    BitVec regionD(regionC.size());
    for (std::size_t i = 0; i < regionC.size(); ++i)
        regionD.set(i, !regionC.get(i));
    GroupLogOrders o;
    o.g = rank_star();
    o.gi = o.g - (int)star_.columns_masked(regionD).rank();
    o.hi = o.g - (int)star_.columns_masked(regionC).rank();
    return o;
}

GroupLogOrders StabilizerCode::group_log_orders(const PartitionScheme& p, int i) const {
    if (i < 1 || i > (int)p.entries.size())
        throw std::invalid_argument("group_log_orders: partition index out of range");
    return group_log_orders_region(p.entries[i - 1].spinsC);
}

int StabilizerCode::entropy_zero_T(const BitVec& region) const {
    if (region.size() != lat_.cell_count(m_.k))
        throw std::invalid_argument("entropy_zero_T: region size mismatch");
    if (region.none() || region.popcount() == region.size())
        throw std::invalid_argument("entropy_zero_T: region must be a proper nonempty subset");
    GroupLogOrders o = group_log_orders_region(region);
    return o.g - o.gi - o.hi;
}

int StabilizerCode::stop_zero_rank_path(const PartitionScheme& p) const {
    std::vector<int> contrib(p.entries.size(), 0);
    parallel_for(p.entries.size(), [&](std::size_t i) {
        GroupLogOrders o = group_log_orders_region(p.entries[i].spinsC);
        contrib[i] = p.entries[i].sign * (o.gi + o.hi);
    });
    int s = 0;
    for (int c : contrib) s += c;
    return -s;
}

int StabilizerCode::stop_zero_betti_path(const PartitionScheme& p) const {
    return stop_zero_betti_from(partition_bettis(lat_, p), p, m_.D, m_.k);
}

std::vector<std::pair<BettiVector, BettiVector>> StabilizerCode::partition_bettis(
    const Lattice& lat, const PartitionScheme& p) {
    std::vector<std::pair<BettiVector, BettiVector>> out(p.entries.size());
    parallel_for(p.entries.size(), [&](std::size_t i) {
        out[i] = {reduced_betti(subcomplex(lat, p.entries[i].regionC)),
                  reduced_betti(subcomplex(lat, p.entries[i].regionD))};
    });
    return out;
}

int StabilizerCode::stop_zero_betti_from(
    const std::vector<std::pair<BettiVector, BettiVector>>& bettis,
    const PartitionScheme& p, int D, int k) {
    int s = 0;
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
        const auto& [bc, bd] = bettis[i];
        int term = bd.b[k - 1] + bc.b[k - 1];
        int sgn = -1;
        for (int j = 1; j <= k; ++j, sgn = -sgn)
            term += sgn * (bc.b[D - (k - j)] + bd.b[D - (k - j)]);
        s += p.entries[i].sign * term;
    }
    return -s;
}

GisumParts StabilizerCode::gisum_split(const PartitionScheme& p) const {
    std::vector<GroupLogOrders> orders(p.entries.size());
    parallel_for(p.entries.size(), [&](std::size_t i) {
        orders[i] = group_log_orders_region(p.entries[i].spinsC);
    });
    GisumParts parts;
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
        parts.giPart -= p.entries[i].sign * orders[i].gi;
        parts.hiPart -= p.entries[i].sign * orders[i].hi;
    }
    return parts;
}

}  // namespace gtc
