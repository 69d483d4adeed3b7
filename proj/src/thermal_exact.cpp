#include "gtc/thermal_exact.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace gtc {

namespace {

constexpr double kLn2 = 0.6931471805599453;

std::vector<std::size_t> bits_of(const BitVec& v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i)) out.push_back(i);
    return out;
}

// ln sum_w cnt[w] * exp(-t * w), cnt indexed by weight
double log_sum_hist(const std::vector<long long>& cnt, double t) {
    int wmin = -1;
    for (std::size_t w = 0; w < cnt.size(); ++w)
        if (cnt[w] > 0) { wmin = (int)w; break; }
    assert(wmin >= 0);
    double s = 0.0;
    for (std::size_t w = wmin; w < cnt.size(); ++w)
        if (cnt[w] > 0) s += (double)cnt[w] * std::exp(-t * (double)(w - wmin));
    return -t * (double)wmin + std::log(s);
}

// Split a span into the part vanishing on the given coordinates and a
// basis of the restrictions to those coordinates.
struct SpanSplit {
    std::vector<BitVec> zeroPart;   // full-length vectors, zero on coords
    std::vector<BitVec> imagePart;  // restriction vectors over coords
};

SpanSplit split_span(const std::vector<BitVec>& basis,
                     const std::vector<std::size_t>& coords, std::size_t n) {
    std::vector<char> inMask(n, 0);
    for (auto c : coords) inMask[c] = 1;
    std::vector<std::size_t> perm = coords;  // mask coords first
    for (std::size_t i = 0; i < n; ++i)
        if (!inMask[i]) perm.push_back(i);

    Gf2Matrix m(basis.size(), n);
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (std::size_t j = 0; j < n; ++j)
            if (basis[r].get(perm[j])) m.set(r, j, true);
    auto pivots = m.eliminate();

    SpanSplit out;
    std::size_t nm = coords.size();
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] < nm) {
            BitVec rest(nm);
            for (std::size_t j = 0; j < nm; ++j)
                if (m.get(r, j)) rest.set(j, true);
            out.imagePart.push_back(std::move(rest));
        } else {
            BitVec full(n);
            for (std::size_t j = 0; j < n; ++j)
                if (m.get(r, j)) full.set(perm[j], true);
            out.zeroPart.push_back(std::move(full));
        }
    }
    return out;
}

// Free coordinates of a subspace of the coordinate space spanned by
// `coords`: the coords not hit by a pivot of the basis restrictions.
std::vector<std::size_t> free_coords(const std::vector<BitVec>& basisRestricted,
                                     const std::vector<std::size_t>& coords) {
    Gf2Matrix m(basisRestricted.size(), coords.size());
    for (std::size_t r = 0; r < basisRestricted.size(); ++r)
        for (std::size_t j = 0; j < coords.size(); ++j)
            if (basisRestricted[r].get(j)) m.set(r, j, true);
    auto pivots = m.eliminate();
    std::vector<char> isPivot(coords.size(), 0);
    for (auto p : pivots) isPivot[p] = 1;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < coords.size(); ++j)
        if (!isPivot[j]) free.push_back(coords[j]);
    return free;
}

// Gray-walk the span of the given packed syndromes.
std::vector<std::uint64_t> gray_syndromes(const std::vector<std::uint64_t>& gens,
                                          int budgetBits, const char* what) {
    if ((int)gens.size() > budgetBits)
        throw BudgetError(std::string(what) + ": dimension " +
                          std::to_string(gens.size()) + " exceeds 2^" +
                          std::to_string(budgetBits) + " budget");
    std::vector<std::uint64_t> out;
    out.reserve(std::size_t(1) << gens.size());
    std::uint64_t cur = 0;
    out.push_back(0);
    for (std::uint64_t g = 1; g < (std::uint64_t(1) << gens.size()); ++g) {
        cur ^= gens[std::countr_zero(g)];
        out.push_back(cur);
    }
    return out;
}

// ln sum_e exp(-t * popcount(s ^ e)) over a syndrome list
double log_q(std::uint64_t s, const std::vector<std::uint64_t>& eSynds, double t,
             std::vector<long long>& scratch) {
    std::fill(scratch.begin(), scratch.end(), 0);
    for (auto e : eSynds) ++scratch[std::popcount(s ^ e)];
    return log_sum_hist(scratch, t);
}

}  // namespace

void ThermalParams::validate() const {
    if (beta < 0) throw std::invalid_argument("ThermalParams: beta >= 0 required");
}

GaugeSector::GaugeSector(ModelSpec m) : m_(m), code_(m) {
    n_ = code_.lattice().cell_count(m_.k);
    np_ = code_.lattice().cell_count(m_.k + 1);
    if (np_ <= 64) {
        colSynd_.resize(n_);
        const Gf2Matrix& p = code_.plaquette_matrix();
        for (std::size_t c = 0; c < n_; ++c) {
            std::uint64_t s = 0;
            for (std::size_t r = 0; r < np_; ++r)
                if (p.get(r, c)) s |= std::uint64_t(1) << r;
            colSynd_[c] = s;
        }
    }
    std::vector<BitVec> gens;
    const Gf2Matrix& star = code_.star_matrix();
    for (std::size_t r = 0; r < star.rows(); ++r) gens.push_back(star.row(r));
    for (const auto& x : code_.x_logicals()) gens.push_back(x);
    ggBasis_ = reduce_to_basis(gens);
    // |GG| = |ker of the defect map|: closed flips = boundaries + homology
    assert((int)ggBasis_.size() == (int)n_ - code_.rank_plaq());
}

const std::vector<long long>& GaugeSector::defect_weight_enumerator() const {
    if (wenum_.empty()) {
        wenum_.assign(np_ + 1, 0);
        image_enumerate(code_.plaquette_matrix(),
                        [&](const BitVec&, std::size_t w) { ++wenum_[w]; });
    }
    return wenum_;
}

double GaugeSector::log_W(double betaMu) const {
    return log_sum_hist(defect_weight_enumerator(), 2.0 * betaMu);
}

double GaugeSector::W(double betaMu) const { return std::exp(log_W(betaMu)); }

double GaugeSector::log_Z(double betaMu) const {
    return code_.ground_degeneracy_log2() * kLn2 + betaMu * (double)np_ +
           log_W(betaMu);
}

double GaugeSector::Z(double betaMu) const { return std::exp(log_Z(betaMu)); }

struct GaugeSector::EntrySpaces {
    std::vector<std::size_t> coordsC, coordsD;
    int dimH = 0, dimK = 0, dimGGi = 0;
    std::vector<std::size_t> freeE;  // transversal coords of E_i / H_i
    std::vector<std::size_t> freeF;  // transversal coords of F_i / K_i
};

GaugeSector::EntrySpaces GaugeSector::entry_spaces(const PartitionEntry& e) const {
    EntrySpaces s;
    s.coordsC = bits_of(e.spinsC);
    s.coordsD = bits_of(e.spinsD);

    SpanSplit byC = split_span(ggBasis_, s.coordsC, n_);
    s.dimH = (int)byC.zeroPart.size();
    s.dimK = (int)byC.imagePart.size();
    SpanSplit byD = split_span(ggBasis_, s.coordsD, n_);
    s.dimGGi = (int)byD.zeroPart.size();

    // H_i lives inside E_i; restrict its basis to the D coordinates.
    std::vector<BitVec> hOnD;
    hOnD.reserve(byC.zeroPart.size());
    for (const auto& v : byC.zeroPart) {
        BitVec r(s.coordsD.size());
        for (std::size_t j = 0; j < s.coordsD.size(); ++j)
            if (v.get(s.coordsD[j])) r.set(j, true);
        hOnD.push_back(std::move(r));
    }
    s.freeE = free_coords(hOnD, s.coordsD);
    s.freeF = free_coords(byC.imagePart, s.coordsC);
    return s;
}

CosetTables GaugeSector::coset_tables(const PartitionScheme& p) const {
    CosetTables t;
    t.log2G = code_.rank_star();
    t.log2GG = (int)ggBasis_.size();
    t.dimFtilde = code_.rank_plaq();
    for (const auto& e : p.entries) {
        EntrySpaces s = entry_spaces(e);
        CosetEntry ce;
        ce.index = e.index;
        ce.sign = e.sign;
        ce.log2Hi = s.dimH;
        ce.log2Ki = s.dimK;
        ce.log2GGi = s.dimGGi;
        ce.dimFtildeI = (int)s.freeF.size();
        ce.dimEtildeI = (int)s.freeE.size();
        t.entries.push_back(ce);
    }
    return t;
}

std::vector<GaugeSector::QDistEntry> GaugeSector::q_distribution(
    const PartitionScheme& p, int i, double betaMu) const {
    if (i < 1 || i > (int)p.entries.size())
        throw std::invalid_argument("q_distribution: partition index out of range");
    if (colSynd_.empty())
        throw BudgetError("q_distribution: more than 64 plaquettes");
    const auto& e = p.entries[i - 1];
    auto coordsC = bits_of(e.spinsC);
    auto coordsD = bits_of(e.spinsD);
    if (coordsC.size() > 25)
        throw BudgetError("q_distribution: |C_i| over budget");
    if (coordsD.size() > 22)
        throw BudgetError("q_distribution: |D_i| over budget");

    std::vector<std::uint64_t> cGens, dGens;
    for (auto c : coordsC) cGens.push_back(colSynd_[c]);
    for (auto c : coordsD) dGens.push_back(colSynd_[c]);
    auto eSynds = gray_syndromes(dGens, 22, "q_distribution E_i");

    const double t = 2.0 * betaMu;
    const double lnNorm = (double)((int)n_ - code_.rank_plaq()) * kLn2 + log_W(betaMu);
    std::vector<long long> scratch(np_ + 1, 0);

    std::vector<QDistEntry> out;
    out.reserve(std::size_t(1) << coordsC.size());
    std::uint64_t sf = 0, fBits = 0;
    for (std::uint64_t g = 0;; ++g) {
        double lq = log_q(sf, eSynds, t, scratch);
        QDistEntry qe;
        qe.fBits = fBits;
        qe.q = std::exp(betaMu * (double)np_ + lq);
        qe.p = std::exp(lq - lnNorm);
        out.push_back(qe);
        if (g + 1 >= (std::uint64_t(1) << coordsC.size())) break;
        unsigned b = std::countr_zero(g + 1);
        sf ^= cGens[b];
        fBits ^= std::uint64_t(1) << b;
    }
    return out;
}

double GaugeSector::entanglement_entropy(const BitVec& region, double betaMu) const {
    if (region.size() != n_)
        throw std::invalid_argument("entanglement_entropy: region size mismatch");
    if (region.none() || region.popcount() == n_)
        throw std::invalid_argument("entanglement_entropy: region must be proper");
    if (colSynd_.empty())
        throw BudgetError("entanglement_entropy: more than 64 plaquettes");
    auto coordsC = bits_of(region);
    BitVec comp(n_);
    for (std::size_t j = 0; j < n_; ++j) comp.set(j, !region.get(j));
    auto coordsD = bits_of(comp);
    if (coordsC.size() > 22 || coordsD.size() > 22)
        throw BudgetError("entanglement_entropy: region over enumeration budget");

    std::vector<std::uint64_t> cGens, dGens;
    for (auto c : coordsC) cGens.push_back(colSynd_[c]);
    for (auto c : coordsD) dGens.push_back(colSynd_[c]);
    auto eSynds = gray_syndromes(dGens, 22, "entanglement_entropy E_i");

    const double t = 2.0 * betaMu;
    const double lnNorm = (double)((int)n_ - code_.rank_plaq()) * kLn2 + log_W(betaMu);
    std::vector<long long> scratch(np_ + 1, 0);

    double sum = 0.0;  // sum_f p(f) ln qs(f)
    std::uint64_t sf = 0;
    for (std::uint64_t g = 0;; ++g) {
        double lq = log_q(sf, eSynds, t, scratch);
        sum += std::exp(lq - lnNorm) * lq;
        if (g + 1 >= (std::uint64_t(1) << coordsC.size())) break;
        sf ^= cGens[std::countr_zero(g + 1)];
    }
    int gA = code_.group_log_orders_region(region).gi;
    return -(double)gA * kLn2 + lnNorm - sum;
}

QtopResult GaugeSector::qtop(const PartitionScheme& p, double betaMu) const {
    if (colSynd_.empty())
        throw BudgetError("qtop: more than 64 plaquettes");
    if (code_.rank_plaq() > 25)
        throw BudgetError("qtop: defect rank over budget");

    const double t = 2.0 * betaMu;
    const double lnW = log_W(betaMu);
    std::vector<long long> scratch(np_ + 1, 0);

    // Per-entry transversal syndromes.
    std::vector<std::vector<std::uint64_t>> eSyndsOf, fSyndsOf;
    std::size_t eTotal = 0;
    for (const auto& e : p.entries) {
        EntrySpaces s = entry_spaces(e);
        std::vector<std::uint64_t> eGens, fGens;
        for (auto c : s.freeE) eGens.push_back(colSynd_[c]);
        for (auto c : s.freeF) fGens.push_back(colSynd_[c]);
        eSyndsOf.push_back(gray_syndromes(eGens, 25, "qtop E~_i"));
        fSyndsOf.push_back(gray_syndromes(fGens, 25, "qtop F~_i"));
        eTotal += eSyndsOf.back().size();
    }

    // Route A: p~_i over F~_i per partition.
    double signedEntropy = 0.0;
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
        double acc = 0.0;
        for (auto sf : fSyndsOf[i]) {
            double lq = log_q(sf, eSyndsOf[i], t, scratch);
            double lp = lq - lnW;
            acc += std::exp(lp) * lp;
        }
        signedEntropy += (double)p.entries[i].sign * acc;
    }
    QtopResult r;
    r.routeA = kLn2 - signedEntropy;

    // Route B: global classes, all i-dependence inside the logarithm.
    if ((double)eTotal * std::ldexp(1.0, code_.rank_plaq()) > std::ldexp(1.0, 28))
        throw BudgetError("qtop: route B enumeration over budget");
    std::vector<std::uint64_t> globalGens;
    {
        auto basis = column_space_basis(code_.plaquette_matrix());
        for (const auto& b : basis) {
            std::uint64_t s = 0;
            for (std::size_t row = 0; row < np_; ++row)
                if (b.get(row)) s |= std::uint64_t(1) << row;
            globalGens.push_back(s);
        }
    }
    auto globalSynds = gray_syndromes(globalGens, 25, "qtop F~");
    double sumB = 0.0;
    for (auto s : globalSynds) {
        double lr = -t * (double)std::popcount(s) - lnW;
        double rf = std::exp(lr);
        if (rf == 0.0) continue;
        double lnPlus = 0.0, lnMinus = 0.0;
        for (std::size_t i = 0; i < p.entries.size(); ++i) {
            double lq = log_q(s, eSyndsOf[i], t, scratch);
            if (p.entries[i].sign > 0) lnPlus += lq; else lnMinus += lq;
        }
        sumB += rf * (lnPlus - lnMinus);
    }
    r.routeB = kLn2 - sumB;
    return r;
}

StopFiniteT stop_finite_T(const GaugeSector& plaqSector,
                          const GaugeSector& starSector,
                          const PartitionScheme& plaqScheme,
                          const PartitionScheme& starScheme,
                          double beta, double lambda, double mu) {
    StopFiniteT out;
    out.qtopPlaq = plaqSector.qtop(plaqScheme, beta * mu).routeA;
    out.qtopStar = starSector.qtop(starScheme, beta * lambda).routeA;
    out.stopNats = out.qtopPlaq + out.qtopStar;
    out.stopLog2 = out.stopNats / kLn2;
    return out;
}

namespace {

// ln sum over an image enumeration of exp(coupling * (N - 2w))
double log_syndrome_sum(const Gf2Matrix& m, double coupling) {
    std::vector<long long> cnt(m.rows() + 1, 0);
    image_enumerate(m, [&](const BitVec&, std::size_t w) { ++cnt[w]; });
    return coupling * (double)m.rows() + log_sum_hist(cnt, 2.0 * coupling);
}

}  // namespace

double full_code_log_Z(const ModelSpec& m, double beta) {
    StabilizerCode code(m);
    double lnSA = log_syndrome_sum(code.star_matrix(), beta * m.lambda);
    double lnSB = log_syndrome_sum(code.plaquette_matrix(), beta * m.mu);
    return code.ground_degeneracy_log2() * kLn2 + lnSA + lnSB;
}

double full_code_Z(const ModelSpec& m, double beta) {
    return std::exp(full_code_log_Z(m, beta));
}

DualityReport duality_check(const ModelSpec& m, const ThermalParams& t) {
    t.validate();
    DualityReport r;
    r.zPrimal = full_code_Z(m, t.beta);
    r.zDual = full_code_Z(m.dual(), t.beta);
    r.relDiff = std::abs(r.zPrimal - r.zDual) /
                std::max(std::abs(r.zPrimal), std::abs(r.zDual));
    r.pass = r.relDiff < 1e-12;
    return r;
}

}  // namespace gtc
