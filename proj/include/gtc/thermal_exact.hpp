// Exact finite-temperature engine on micro lattices: gauge partition
// functions, the coset/entropy chain (Z, W, q_i, p_i, p~_i), Q_top by
// its two equivalent routes, the factorized full-code entropy, and the
// lambda<->mu duality check.
#pragma once

#include <cstdint>
#include <vector>

#include "gtc/gf2.hpp"
#include "gtc/partitions.hpp"
#include "gtc/stabilizer.hpp"

namespace gtc {

struct ThermalParams {
    double beta = 0.0;
    void validate() const;
};

struct CosetEntry {
    int index = 0, sign = 0;
    int log2Hi = 0;      // |H_i| in calligraphic sense: flips of GG trivial on C_i
    int log2Ki = 0;      // |K_i| = |GG| / |H_i|
    int log2GGi = 0;     // flips of GG trivial on D_i (kept for completeness)
    int dimFtildeI = 0;  // F_i / K_i
    int dimEtildeI = 0;  // E_i / H_i
};

struct CosetTables {
    int log2G = 0;       // star-generated flip group
    int log2GG = 0;      // G extended by the noncontractible flips
    int dimFtilde = 0;   // physically distinct gauge classes, = rank of defect map
    std::vector<CosetEntry> entries;
};

struct QtopResult {
    double routeA = 0.0;  // via per-partition class distributions p~_i
    double routeB = 0.0;  // via r(f) log(s+/s-) over global classes
};

// One gauge sector GT^(D,k); all thermal arguments are the
// dimensionless product beta*mu of that sector.
class GaugeSector {
public:
    explicit GaugeSector(ModelSpec m);

    const StabilizerCode& code() const { return code_; }
    const ModelSpec& model() const { return m_; }
    std::size_t spin_count() const { return n_; }
    std::size_t plaquette_count() const { return np_; }

    // counts of achievable defect patterns per Hamming weight
    const std::vector<long long>& defect_weight_enumerator() const;

    // Z = (1/|G|) sum_f exp(betaMu * M(f)), M(f) = Np - 2 Phi(f)
    double log_Z(double betaMu) const;
    double Z(double betaMu) const;

    // W = sum over gauge classes of x^Phi, x = exp(-2 betaMu)
    double W(double betaMu) const;
    double log_W(double betaMu) const;

    struct QDistEntry {
        std::uint64_t fBits = 0;  // f packed over the C_i coordinates
        double q = 0.0;
        double p = 0.0;
    };
    std::vector<QDistEntry> q_distribution(const PartitionScheme& p, int i,
                                           double betaMu) const;

    // Replica-formula entanglement entropy of a spin region, in nats.
    double entanglement_entropy(const BitVec& region, double betaMu) const;

    CosetTables coset_tables(const PartitionScheme& p) const;

    QtopResult qtop(const PartitionScheme& p, double betaMu) const;

private:
    struct EntrySpaces;  // coset transversals of one partition entry
    EntrySpaces entry_spaces(const PartitionEntry& e) const;

    ModelSpec m_;
    StabilizerCode code_;
    std::size_t n_, np_;
    std::vector<std::uint64_t> colSynd_;       // defect pattern of each unit flip
    std::vector<BitVec> ggBasis_;              // basis of G extended by logicals
    mutable std::vector<long long> wenum_;     // lazy weight enumerator
};

struct StopFiniteT {
    double qtopStar = 0.0;  // Q_top^(D,D-k)(T/lambda), nats
    double qtopPlaq = 0.0;  // Q_top^(D,k)(T/mu), nats
    double stopNats = 0.0;
    double stopLog2 = 0.0;
};

// S_top(T) = Q_top^(D,D-k)(beta*lambda) + Q_top^(D,k)(beta*mu).
StopFiniteT stop_finite_T(const GaugeSector& plaqSector,
                          const GaugeSector& starSector,
                          const PartitionScheme& plaqScheme,
                          const PartitionScheme& starScheme,
                          double beta, double lambda, double mu);

// Full-code partition function, assembled from the two independent
// syndrome groups with uniform ground multiplicity.
double full_code_log_Z(const ModelSpec& m, double beta);
double full_code_Z(const ModelSpec& m, double beta);

struct DualityReport {
    double zPrimal = 0.0;   // Z^(D,k)(beta; lambda, mu)
    double zDual = 0.0;     // Z^(D,D-k)(beta; mu, lambda)
    double relDiff = 0.0;
    bool pass = false;      // relDiff < 1e-12
};

DualityReport duality_check(const ModelSpec& m, const ThermalParams& t);

}  // namespace gtc
