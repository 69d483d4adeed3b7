// Thermal memory-lifetime estimation: local Metropolis error dynamics
// per defect sector, logical-flip detection at syndrome-free instants,
// and the qualitative quantum/classical/none classification.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gtc/gauge_mc.hpp"
#include "gtc/rng.hpp"
#include "gtc/stabilizer.hpp"

namespace gtc {

// BDefect: errors on the k-cells create plaquette defects; coupling mu.
// ADefect: simulated on the dual model via the lambda<->mu duality.
enum class Sector { BDefect, ADefect };

struct SectorSpec {
    Sector which = Sector::BDefect;
    double tOverCoupling = 0.5;  // T/mu or T/lambda
};

struct TrajectoryPoint {
    long long step = 0;    // attempted single-cell flips so far
    long long phi = 0;     // syndrome weight
    unsigned winding = 0;  // parity bitmask over logical reps; valid iff phi == 0
};

struct TrajectoryResult {
    std::optional<long long> firstFlipStep;  // attempted flips until first
                                             // syndrome-free nontrivial winding
    long long stepsRun = 0;
};

class SectorSim {
public:
    SectorSim(ModelSpec m, Sector s);

    const GaugeModel& gauge_model() const { return gm_; }
    const ModelSpec& sim_model() const { return gm_.model(); }

    // Runs from the zero-error configuration; stops at the first
    // syndrome-free instant with nontrivial winding parity, or at
    // maxSteps. The observer, when given, sees every step.
    TrajectoryResult trajectory(
        double tOverCoupling, long long maxSteps, SplitMix64& rng,
        const std::function<void(const TrajectoryPoint&)>& observer = {}) const;

    // Winding parity mask of an error configuration (any instant).
    unsigned winding_mask(const BitVec& errors) const;

private:
    GaugeModel gm_;
    std::vector<unsigned> logicalMask_;  // per cell, bit alpha set iff cell in zRep_alpha
};

struct LifetimeStats {
    int L = 0;
    int trials = 0;
    int events = 0;          // trials with an observed flip
    double meanSweeps = 0.0; // censored mean, per-cell time units
    double se = 0.0;
    bool allCensored = false;
};

enum class Trend { Increasing, Flat, Decreasing, Inconclusive };

struct LifetimeReport {
    std::vector<LifetimeStats> perL;
    std::vector<std::vector<double>> trialSweeps;  // per L, per trial (censored values)
    std::vector<std::vector<char>> trialCensored;
    Trend trend = Trend::Inconclusive;
};

LifetimeReport lifetime_estimate(const ModelSpec& base, Sector sector,
                                 double tOverCoupling,
                                 const std::vector<int>& sizes, int trials,
                                 long long maxSweeps, std::uint64_t seed);

enum class MemoryClass { Quantum, Classical, None, Inconclusive };

// Table-style classification from the two sector trends. tauQ/tauC
// estimators are the min/max sector censored means at the largest size.
MemoryClass memory_classification(Trend aSector, Trend bSector);

const char* to_string(Trend t);
const char* to_string(MemoryClass c);

}  // namespace gtc
