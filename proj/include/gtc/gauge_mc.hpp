// Metropolis Monte Carlo for the gauge sectors GT^(D,k): energy and
// Wilson observables with binning errors, defect-chain diagnostics,
// and confinement-transition location.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gtc/gf2.hpp"
#include "gtc/lattice.hpp"
#include "gtc/partitions.hpp"
#include "gtc/rng.hpp"
#include "gtc/stabilizer.hpp"

namespace gtc {

struct MCParams {
    std::uint64_t seed = 1;
    int sweeps = 2000;           // measured sweeps after thermalization
    int thermalization = 500;
    int stride = 1;              // measure every stride sweeps
    int chains = 2;
    std::vector<double> betaMuGrid;
    void validate() const;
};

// Spin/plaquette adjacency of one gauge sector.
class GaugeModel {
public:
    explicit GaugeModel(ModelSpec m);

    const ModelSpec& model() const { return m_; }
    const Lattice& lattice() const { return lat_; }
    std::size_t spin_count() const { return n_; }
    std::size_t plaq_count() const { return np_; }
    int plaqs_per_cell() const { return coPer_; }

    const std::uint32_t* plaqs_of(std::size_t cell) const {
        return &cellPlaqs_[cell * coPer_];
    }

private:
    ModelSpec m_;
    Lattice lat_;
    std::size_t n_, np_;
    int coPer_;
    std::vector<std::uint32_t> cellPlaqs_;
};

// Spin configuration with cached defect pattern. bits = flipped cells
// relative to the all-up reference.
struct SpinConfig {
    BitVec bits;
    BitVec defects;
    long long phi = 0;  // number of flipped plaquettes

    static SpinConfig zero(const GaugeModel& gm);
};

void apply_flip(const GaugeModel& gm, SpinConfig& s, std::size_t cell);
long long magnetization(const GaugeModel& gm, const SpinConfig& s);  // Np - 2 Phi

// Acceptance probabilities indexed by the number of currently-flipped
// plaquettes adjacent to the proposed cell.
std::vector<double> acceptance_table(const GaugeModel& gm, double betaMu);

// Single Metropolis proposal at one cell; returns true when accepted.
bool metropolis_step(const GaugeModel& gm, SpinConfig& s, std::size_t cell,
                     const std::vector<double>& acc, SplitMix64& rng);

// One Metropolis pass: |P_k| random-site proposals with acceptance
// min(1, e^{betaMu dM}). Returns the number of accepted flips.
std::size_t mc_sweep(const GaugeModel& gm, SpinConfig& s, double betaMu,
                     SplitMix64& rng);

struct Binned {
    double mean = 0.0;
    double error = 0.0;   // from the coarsest stable binning level
    double tauInt = 0.0;  // integrated autocorrelation estimate
};
Binned binning_analysis(const std::vector<double>& series);

struct EnergyObservables {
    double betaMu = 0.0;
    int chain = 0;
    std::size_t samples = 0;
    double energyPerPlaquette = 0.0;  // -<M>/Np, in units of mu
    double energyError = 0.0;
    double specificHeat = 0.0;        // (betaMu)^2 var(M) / Np
    double specificHeatError = 0.0;
    double tauInt = 0.0;
};

// Magnetization series of one chain (deterministic in (params, chain, gridIdx)).
std::vector<long long> run_chain(const GaugeModel& gm, double betaMu,
                                 const MCParams& p, int gridIdx, int chain);

EnergyObservables energy_observables(const GaugeModel& gm,
                                     const std::vector<long long>& mSeries,
                                     double betaMu, int chain);

struct WilsonPoint {
    int R = 0;
    double mean = 0.0;
    double error = 0.0;
};
// <W(R x R)> for the boundary of an R^(k+1) brick, plus Creutz-style
// area coefficient chi(R) = -ln[W(R)W(R-2)/W(R-1)^2] per point where defined.
struct WilsonResult {
    std::vector<WilsonPoint> points;
    std::vector<double> creutz;  // aligned with points, NaN where undefined
};
WilsonResult wilson_estimator(const GaugeModel& gm, const MCParams& p,
                              double betaMu, const std::vector<int>& sizes);

// Flipped (k+1)-cells mapped to (D-k-1)-cells of the dual lattice.
// Output is closed over GF(2); indices follow the dual lattice order.
BitVec defect_chain(const GaugeModel& gm, const SpinConfig& s);

struct DefectFraction {
    bool defined = false;
    double fraction = 0.0;
    double error = 0.0;       // binomial standard error
    std::size_t admissible = 0, total = 0;
};

// Fraction of samples whose defect chain, restricted to D*_i, is not a
// boundary within D*_i. Samples whose restriction fails to be closed
// (possible for extended defects touching the interface) are excluded
// and reported via `admissible`.
DefectFraction topological_defect_fraction(const GaugeModel& gm,
                                           const PartitionScheme& p, int i,
                                           const MCParams& params,
                                           double betaMu);

struct TransitionEstimate {
    double peak = 0.0;   // betaMu at the specific-heat maximum
    double lo = 0.0, hi = 0.0;  // bracketing grid interval
    bool conclusive = false;    // false when the peak sits on the grid edge
    bool exactRule = false;     // k = D-1: transition at 0 with no MC
    std::vector<std::pair<double, double>> specificHeat;  // (betaMu, c)
};
TransitionEstimate locate_transition(const ModelSpec& m, const MCParams& p);

}  // namespace gtc
