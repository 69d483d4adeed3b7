#include "gtc/gauge_mc.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gtc/parallel.hpp"

namespace gtc {

void MCParams::validate() const {
    if (sweeps <= 0) throw std::invalid_argument("MCParams: sweeps > 0 required");
    if (thermalization < 0)
        throw std::invalid_argument("MCParams: thermalization >= 0 required");
    if (stride <= 0) throw std::invalid_argument("MCParams: stride > 0 required");
    if (chains <= 0) throw std::invalid_argument("MCParams: chains > 0 required");
    for (std::size_t i = 1; i < betaMuGrid.size(); ++i)
        if (betaMuGrid[i] <= betaMuGrid[i - 1])
            throw std::invalid_argument("MCParams: grid must be strictly increasing");
}

GaugeModel::GaugeModel(ModelSpec m)
    : m_((m.validate(), m)), lat_(LatticeSpec{m.D, m.L}) {
    n_ = lat_.cell_count(m_.k);
    np_ = lat_.cell_count(m_.k + 1);
    coPer_ = 2 * (m_.D - m_.k);
    cellPlaqs_.resize(n_ * coPer_);
    for (std::size_t c = 0; c < n_; ++c) {
        auto cob = lat_.coboundary_cells(lat_.cell(m_.k, c));
        assert((int)cob.size() == coPer_);
        for (int j = 0; j < coPer_; ++j)
            cellPlaqs_[c * coPer_ + j] = (std::uint32_t)lat_.index(cob[j]);
    }
}

SpinConfig SpinConfig::zero(const GaugeModel& gm) {
    SpinConfig s;
    s.bits = BitVec(gm.spin_count());
    s.defects = BitVec(gm.plaq_count());
    s.phi = 0;
    return s;
}

void apply_flip(const GaugeModel& gm, SpinConfig& s, std::size_t cell) {
    s.bits.flip(cell);
    const std::uint32_t* ps = gm.plaqs_of(cell);
    for (int j = 0; j < gm.plaqs_per_cell(); ++j) {
        std::uint32_t b = ps[j];
        if (s.defects.get(b)) { s.defects.set(b, false); --s.phi; }
        else { s.defects.set(b, true); ++s.phi; }
    }
}

long long magnetization(const GaugeModel& gm, const SpinConfig& s) {
    return (long long)gm.plaq_count() - 2 * s.phi;
}

std::vector<double> acceptance_table(const GaugeModel& gm, double betaMu) {
    const int q = gm.plaqs_per_cell();
    // dM for flipping a cell with d currently-flipped adjacent plaquettes
    // is -2(q - 2d); acceptance min(1, exp(betaMu dM)).
    std::vector<double> acc(q + 1);
    for (int d = 0; d <= q; ++d)
        acc[d] = std::exp(betaMu * (double)(-2 * (q - 2 * d)));
    return acc;
}

bool metropolis_step(const GaugeModel& gm, SpinConfig& s, std::size_t cell,
                     const std::vector<double>& acc, SplitMix64& rng) {
    const std::uint32_t* ps = gm.plaqs_of(cell);
    int d = 0;
    for (int j = 0; j < gm.plaqs_per_cell(); ++j) d += s.defects.get(ps[j]);
    if (acc[d] >= 1.0 || rng.uniform() < acc[d]) {
        apply_flip(gm, s, cell);
        return true;
    }
    return false;
}

std::size_t mc_sweep(const GaugeModel& gm, SpinConfig& s, double betaMu,
                     SplitMix64& rng) {
    std::vector<double> acc = acceptance_table(gm, betaMu);
    std::size_t accepted = 0;
    const std::size_t n = gm.spin_count();
    // random-site proposals: a sequential scan is non-ergodic at
    // betaMu = 0, where every proposal is accepted
    for (std::size_t c = 0; c < n; ++c)
        if (metropolis_step(gm, s, (std::size_t)rng.below(n), acc, rng))
            ++accepted;
    return accepted;
}

Binned binning_analysis(const std::vector<double>& series) {
    Binned out;
    std::size_t n = series.size();
    if (n == 0) return out;
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= (double)n;
    out.mean = mean;
    if (n < 2) return out;

    auto errAtLevel = [&](const std::vector<double>& s) {
        double m = 0.0;
        for (double v : s) m += v;
        m /= (double)s.size();
        double var = 0.0;
        for (double v : s) var += (v - m) * (v - m);
        var /= (double)(s.size() - 1);
        return std::sqrt(var / (double)s.size());
    };

    std::vector<double> cur = series;
    double err0 = errAtLevel(cur);
    double errMax = err0;
    while (cur.size() >= 32) {
        std::vector<double> next(cur.size() / 2);
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i] = 0.5 * (cur[2 * i] + cur[2 * i + 1]);
        cur.swap(next);
        errMax = std::max(errMax, errAtLevel(cur));
    }
    out.error = errMax;
    out.tauInt = err0 > 0 ? 0.5 * (errMax * errMax) / (err0 * err0) : 0.0;
    return out;
}

std::vector<long long> run_chain(const GaugeModel& gm, double betaMu,
                                 const MCParams& p, int gridIdx, int chain) {
    SplitMix64 rng(p.seed, (std::uint64_t)gridIdx * 0x10001ull + (std::uint64_t)chain);
    SpinConfig s = SpinConfig::zero(gm);
    for (int t = 0; t < p.thermalization; ++t) mc_sweep(gm, s, betaMu, rng);
    std::vector<long long> series;
    series.reserve((std::size_t)p.sweeps / (std::size_t)p.stride + 1);
    for (int t = 0; t < p.sweeps; ++t) {
        mc_sweep(gm, s, betaMu, rng);
        if ((t + 1) % p.stride == 0) series.push_back(magnetization(gm, s));
    }
    return series;
}

EnergyObservables energy_observables(const GaugeModel& gm,
                                     const std::vector<long long>& mSeries,
                                     double betaMu, int chain) {
    if (mSeries.size() < 32)
        throw BudgetError("energy_observables: too few samples for binning");
    EnergyObservables o;
    o.betaMu = betaMu;
    o.chain = chain;
    o.samples = mSeries.size();
    const double np = (double)gm.plaq_count();

    std::vector<double> e(mSeries.size());
    for (std::size_t i = 0; i < mSeries.size(); ++i) e[i] = (double)mSeries[i];
    Binned bm = binning_analysis(e);
    o.energyPerPlaquette = -bm.mean / np;
    o.energyError = bm.error / np;
    o.tauInt = bm.tauInt;

    // specific heat from the variance; error via binning of (M - <M>)^2
    double mean = bm.mean;
    std::vector<double> sq(mSeries.size());
    for (std::size_t i = 0; i < mSeries.size(); ++i) {
        double d = (double)mSeries[i] - mean;
        sq[i] = d * d;
    }
    Binned bv = binning_analysis(sq);
    o.specificHeat = betaMu * betaMu * bv.mean / np;
    o.specificHeatError = betaMu * betaMu * bv.error / np;
    return o;
}

namespace {

// Support of the Wilson observable: boundary of an R^(k+1) brick.
BitVec wilson_support(const GaugeModel& gm, int R) {
    const Lattice& lat = gm.lattice();
    const int k = gm.model().k;
    if (R < 1 || R > gm.model().L / 2)
        throw std::invalid_argument("wilson_estimator: loop size out of range");
    unsigned brick = (1u << (k + 1)) - 1;  // first k+1 axes
    BitVec support(gm.spin_count());
    std::vector<int> idx(k + 1, 0);
    for (;;) {
        CellId c;
        c.dirs = brick;
        for (int d = 0; d <= k; ++d) c.base[d] = idx[d];
        for (const CellId& f : lat.boundary_cells(c))
            support.flip(lat.index(f));
        int d = 0;
        while (d <= k && ++idx[d] == R) idx[d++] = 0;
        if (d > k) break;
    }
    return support;
}

}  // namespace

WilsonResult wilson_estimator(const GaugeModel& gm, const MCParams& p,
                              double betaMu, const std::vector<int>& sizes) {
    WilsonResult res;
    std::vector<BitVec> supports;
    for (int R : sizes) supports.push_back(wilson_support(gm, R));

    std::vector<std::vector<double>> series(sizes.size());
    for (int chain = 0; chain < p.chains; ++chain) {
        SplitMix64 rng(p.seed, 0x5151ull + (std::uint64_t)chain);
        SpinConfig s = SpinConfig::zero(gm);
        for (int t = 0; t < p.thermalization; ++t) mc_sweep(gm, s, betaMu, rng);
        for (int t = 0; t < p.sweeps; ++t) {
            mc_sweep(gm, s, betaMu, rng);
            if ((t + 1) % p.stride == 0)
                for (std::size_t j = 0; j < sizes.size(); ++j)
                    series[j].push_back(s.bits.overlap_parity(supports[j]) ? -1.0 : 1.0);
        }
    }
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        Binned b = binning_analysis(series[j]);
        res.points.push_back(WilsonPoint{sizes[j], b.mean, b.error});
    }
    res.creutz.assign(sizes.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t j = 2; j < sizes.size(); ++j) {
        if (sizes[j] == sizes[j - 1] + 1 && sizes[j - 1] == sizes[j - 2] + 1) {
            double a = res.points[j].mean, b = res.points[j - 2].mean,
                   c = res.points[j - 1].mean;
            if (a > 0 && b > 0 && c > 0)
                res.creutz[j] = -std::log(a * b / (c * c));
        }
    }
    return res;
}

BitVec defect_chain(const GaugeModel& gm, const SpinConfig& s) {
    const Lattice& lat = gm.lattice();
    const int k = gm.model().k;
    BitVec dual(lat.cell_count(gm.model().D - k - 1));
    for (std::size_t b = 0; b < gm.plaq_count(); ++b) {
        if (!s.defects.get(b)) continue;
        DualCellId d = lat.dual_cell(lat.cell(k + 1, b));
        dual.set(lat.index(d.cell), true);
    }
    return dual;
}

DefectFraction topological_defect_fraction(const GaugeModel& gm,
                                           const PartitionScheme& p, int i,
                                           const MCParams& params,
                                           double betaMu) {
    params.validate();
    if (i < 1 || i > (int)p.entries.size())
        throw std::invalid_argument("topological_defect_fraction: index out of range");
    const auto& entry = p.entries[i - 1];
    const Lattice& lat = gm.lattice();
    const int k = gm.model().k;
    const int D = gm.model().D;

    // D*_i subcomplex: generated by the dual (D-k)-cells of spinsD_i.
    // Its (D-k-1)-cells are, in primal terms, the (k+1)-cells incident
    // to a spinsD_i k-cell.
    std::vector<std::size_t> dCells;  // spinsD_i k-cell indices
    for (std::size_t c = 0; c < gm.spin_count(); ++c)
        if (entry.spinsD.get(c)) dCells.push_back(c);

    std::vector<char> plaqIncluded(gm.plaq_count(), 0);
    for (auto c : dCells)
        for (int j = 0; j < gm.plaqs_per_cell(); ++j)
            plaqIncluded[gm.plaqs_of(c)[j]] = 1;
    std::vector<std::size_t> inclPlaqs;
    std::vector<std::size_t> rowOf(gm.plaq_count(), SIZE_MAX);
    for (std::size_t b = 0; b < gm.plaq_count(); ++b)
        if (plaqIncluded[b]) {
            rowOf[b] = inclPlaqs.size();
            inclPlaqs.push_back(b);
        }

    // Boundary matrix within D*_i: columns are the spinsD_i duals, rows
    // the included defect cells.
    Gf2Matrix bnd(inclPlaqs.size(), dCells.size());
    for (std::size_t col = 0; col < dCells.size(); ++col)
        for (int j = 0; j < gm.plaqs_per_cell(); ++j)
            bnd.set(rowOf[gm.plaqs_of(dCells[col])[j]], col, true);

    // Closedness of the restriction is checked against the (k+2)-cells.
    bool hasHigher = k + 2 <= D;
    Gf2Matrix co;  // rows = (k+2)-cells, cols = plaquettes
    if (hasHigher) co = lat.boundary_matrix(k + 2);

    std::size_t admissible = 0, total = 0, topological = 0;
    for (int chain = 0; chain < params.chains; ++chain) {
        SplitMix64 rng(params.seed, 7000 + (std::uint64_t)chain);
        SpinConfig s = SpinConfig::zero(gm);
        for (int t = 0; t < params.thermalization; ++t)
            mc_sweep(gm, s, betaMu, rng);
        for (int t = 0; t < params.sweeps; ++t) {
            mc_sweep(gm, s, betaMu, rng);
            if ((t + 1) % params.stride != 0) continue;
            ++total;
            // restriction to D*_i
            BitVec restricted(inclPlaqs.size());
            BitVec restrictedFull(gm.plaq_count());
            for (std::size_t r = 0; r < inclPlaqs.size(); ++r)
                if (s.defects.get(inclPlaqs[r])) {
                    restricted.set(r, true);
                    restrictedFull.set(inclPlaqs[r], true);
                }
            if (hasHigher && co.apply(restrictedFull).any()) continue;  // open chain
            ++admissible;
            if (!bnd.solve_in_span(restricted).has_value()) ++topological;
        }
    }

    DefectFraction out;
    out.total = total;
    out.admissible = admissible;
    if (admissible == 0) return out;
    out.defined = true;
    out.fraction = (double)topological / (double)admissible;
    out.error = std::sqrt(out.fraction * (1.0 - out.fraction) /
                          (double)admissible);
    return out;
}

TransitionEstimate locate_transition(const ModelSpec& m, const MCParams& p) {
    TransitionEstimate est;
    if (m.k == m.D - 1) {
        est.exactRule = true;
        est.conclusive = true;
        est.peak = est.lo = est.hi = 0.0;
        return est;
    }
    p.validate();
    if (p.betaMuGrid.size() < 3)
        throw std::invalid_argument("locate_transition: grid needs >= 3 points");

    GaugeModel gm(m);
    est.specificHeat.resize(p.betaMuGrid.size());
    parallel_for(p.betaMuGrid.size(), [&](std::size_t gi) {
        double c = 0.0;
        for (int chain = 0; chain < p.chains; ++chain) {
            auto series = run_chain(gm, p.betaMuGrid[gi], p, (int)gi, chain);
            c += energy_observables(gm, series, p.betaMuGrid[gi], chain).specificHeat;
        }
        est.specificHeat[gi] = {p.betaMuGrid[gi], c / p.chains};
    });

    std::size_t best = 0;
    for (std::size_t gi = 1; gi < est.specificHeat.size(); ++gi)
        if (est.specificHeat[gi].second > est.specificHeat[best].second) best = gi;
    est.peak = est.specificHeat[best].first;
    est.conclusive = best > 0 && best + 1 < est.specificHeat.size();
    est.lo = est.specificHeat[best > 0 ? best - 1 : best].first;
    est.hi = est.specificHeat[std::min(best + 1, est.specificHeat.size() - 1)].first;
    return est;
}

}  // namespace gtc
