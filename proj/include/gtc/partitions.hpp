// The 4(D-1) signed partitions C_i of the k-cell set, built by
// induction on D, plus the cancellation and exchange-symmetry checks
// that make the signed entropy combinations purely topological.
#pragma once

#include <string>
#include <vector>

#include "gtc/homology.hpp"
#include "gtc/lattice.hpp"

namespace gtc {

struct PartitionEntry {
    int index = 0;          // i in 1..4(D-1)
    int sign = 0;           // -1 for i = 0,1 mod 4, +1 for i = 2,3 mod 4
    Region regionC;         // geometric support of C_i
    Region regionD;         // complement region
    BitVec spinsC;          // k-cells of C_i
    BitVec spinsD;          // complement in P_k
};

struct PartitionScheme {
    LatticeSpec spec;
    int a = 0;              // outer cube side (blocks); 0 for micro schemes
    int k = 1;              // spin dimension
    bool degenerate = false;  // micro scheme or otherwise flagged geometry
    std::vector<PartitionEntry> entries;
};

// Standard construction. Preconditions: a = 0 mod 3, a >= 3, a <= L-3.
PartitionScheme build_partitions(const Lattice& lat, int a, int k);

// Degenerate micro scheme for D = 2, k = 1 on tiny tori (L in {2,3}):
// C_4 is the 4-edge boundary ring of one block, C_3/C_2 its upper/lower
// horseshoes, C_1 the two side edges. Reproduces the group identities
// of the standard construction at sizes where no box fits.
PartitionScheme build_micro_partitions(const Lattice& lat);

struct CheckReport {
    bool pass = true;
    std::string detail;     // first counterexample or summary
};

// Signed multiset cancellation of bulk subcomplex cells (every cell
// dimension) and of interface cells (cells of subcomplex(C_i) sharing
// a vertex with the vertex closure of spinsD_i), plus the spin-level
// cancellation over P_k. Failure is data, not an exception.
CheckReport verify_cancellation(const Lattice& lat, const PartitionScheme& p);

// Signed-sum comparison of reduced Betti vectors of {C_i} and {D_i}
// per homology dimension; i-independent torus contributions cancel.
CheckReport exchange_symmetry_check(const Lattice& lat, const PartitionScheme& p);

}  // namespace gtc
