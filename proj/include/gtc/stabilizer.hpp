// Star/plaquette generator matrices, logical operators, and the
// zero-temperature entanglement and topological entropy, computed both
// by group ranks and by the signed Betti combination.
#pragma once

#include <vector>

#include "gtc/gf2.hpp"
#include "gtc/lattice.hpp"
#include "gtc/partitions.hpp"

namespace gtc {

struct ModelSpec {
    int D = 2;
    int k = 1;           // 1 <= k <= D-1
    int L = 2;
    double lambda = 1.0;  // star coupling
    double mu = 1.0;      // plaquette coupling

    void validate() const;
    ModelSpec dual() const { return {D, D - k, L, mu, lambda}; }
};

struct GroupLogOrders {
    int g = 0;   // log2 |G|
    int gi = 0;  // log2 |G_i|, flips trivial on D_i
    int hi = 0;  // log2 |H_i|, flips trivial on C_i
};

struct GisumParts {
    int giPart = 0;  // -sum_i sigma(i) log2|G_i|
    int hiPart = 0;  // -sum_i sigma(i) log2|H_i|
};

class StabilizerCode {
public:
    explicit StabilizerCode(ModelSpec m);

    const ModelSpec& model() const { return m_; }
    const Lattice& lattice() const { return lat_; }

    // rows = (k-1)-cells, cols = k-cells; row a is the support of A_a
    const Gf2Matrix& star_matrix() const { return star_; }
    // rows = (k+1)-cells, cols = k-cells; row b is the support of B_b
    const Gf2Matrix& plaquette_matrix() const { return plaq_; }

    int rank_star() const;
    int rank_plaq() const;

    // binomial(D,k) homology representatives: flat wrapping planes.
    const std::vector<BitVec>& z_logicals() const { return zReps_; }
    const std::vector<BitVec>& x_logicals() const { return xReps_; }

    // |P_k| - rank(star) - rank(plaq); equals binomial(D, k).
    int ground_degeneracy_log2() const;

    // Group orders for an arbitrary spin region (bit vector over k-cells).
    GroupLogOrders group_log_orders_region(const BitVec& regionC) const;
    GroupLogOrders group_log_orders(const PartitionScheme& p, int i) const;

    // Ground-state entanglement entropy of a region, in log-2 units
    // (exact integer): log2|G| - log2|G_A| - log2|H_A|.
    int entropy_zero_T(const BitVec& region) const;

    // -sum_i sigma(i) (log2|G_i| + log2|H_i|); equals 2 for any valid scheme.
    int stop_zero_rank_path(const PartitionScheme& p) const;

    // Same quantity from the signed reduced-Betti combination of the
    // partition subcomplexes. Requires a block-based scheme.
    int stop_zero_betti_path(const PartitionScheme& p) const;

    // Reduced Betti vectors (C_i, D_i) per entry; reusable across k.
    static std::vector<std::pair<BettiVector, BettiVector>> partition_bettis(
        const Lattice& lat, const PartitionScheme& p);
    static int stop_zero_betti_from(
        const std::vector<std::pair<BettiVector, BettiVector>>& bettis,
        const PartitionScheme& p, int D, int k);

    GisumParts gisum_split(const PartitionScheme& p) const;

private:
    ModelSpec m_;
    Lattice lat_;
    Gf2Matrix star_, plaq_;
    mutable int rankStar_ = -1, rankPlaq_ = -1;
    std::vector<BitVec> zReps_, xReps_;
};

}  // namespace gtc
