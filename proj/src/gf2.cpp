#include "gtc/gf2.hpp"

#include <algorithm>
#include <cassert>

namespace gtc {

Gf2Matrix Gf2Matrix::from_rows(const std::vector<BitVec>& rows, std::size_t cols) {
    Gf2Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
}

BitVec Gf2Matrix::row(std::size_t r) const {
    BitVec v(cols_);
    auto w = v.words();
    for (std::size_t i = 0; i < wpr_; ++i) w[i] = bits_[r * wpr_ + i];
    return v;
}

void Gf2Matrix::set_row(std::size_t r, const BitVec& v) {
    assert(v.size() == cols_);
    auto w = v.words();
    for (std::size_t i = 0; i < wpr_; ++i) bits_[r * wpr_ + i] = w[i];
}

void Gf2Matrix::xor_row_into(std::size_t src, std::size_t dst) {
    std::uint64_t* d = &bits_[dst * wpr_];
    const std::uint64_t* s = &bits_[src * wpr_];
    for (std::size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
}

Gf2Matrix Gf2Matrix::transposed() const {
    Gf2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const std::uint64_t* w = &bits_[r * wpr_];
        for (std::size_t wi = 0; wi < wpr_; ++wi) {
            std::uint64_t x = w[wi];
            while (x) {
                unsigned b = std::countr_zero(x);
                x &= x - 1;
                t.set(wi * 64 + b, r, true);
            }
        }
    }
    return t;
}

Gf2Matrix Gf2Matrix::columns(const std::vector<std::size_t>& keep) const {
    Gf2Matrix m(rows_, keep.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < keep.size(); ++j)
            if (get(r, keep[j])) m.set(r, j, true);
    return m;
}

Gf2Matrix Gf2Matrix::columns_masked(const BitVec& mask) const {
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < cols_; ++c)
        if (mask.get(c)) keep.push_back(c);
    return columns(keep);
}

Gf2Matrix Gf2Matrix::stacked(const Gf2Matrix& below) const {
    assert(cols_ == below.cols_);
    Gf2Matrix m(rows_ + below.rows_, cols_);
    std::copy(bits_.begin(), bits_.end(), m.bits_.begin());
    std::copy(below.bits_.begin(), below.bits_.end(), m.bits_.begin() + rows_ * wpr_);
    return m;
}

BitVec Gf2Matrix::apply(const BitVec& x) const {
    assert(x.size() == cols_);
    BitVec y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        const std::uint64_t* w = &bits_[r * wpr_];
        auto xw = x.words();
        for (std::size_t i = 0; i < wpr_; ++i) acc ^= w[i] & xw[i];
        if (std::popcount(acc) & 1u) y.set(r, true);
    }
    return y;
}

std::vector<std::size_t> Gf2Matrix::eliminate() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && !get(p, c)) ++p;
        if (p == rows_) continue;
        if (p != r)
            for (std::size_t i = 0; i < wpr_; ++i)
                std::swap(bits_[p * wpr_ + i], bits_[r * wpr_ + i]);
        for (std::size_t q = 0; q < rows_; ++q)
            if (q != r && get(q, c)) xor_row_into(r, q);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t Gf2Matrix::rank() const {
    Gf2Matrix m = *this;
    return m.eliminate().size();
}

std::vector<BitVec> Gf2Matrix::kernel_basis() const {
    Gf2Matrix m = *this;
    auto pivots = m.eliminate();
    std::vector<bool> isPivot(cols_, false);
    for (auto c : pivots) isPivot[c] = true;

    std::vector<BitVec> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (isPivot[f]) continue;
        BitVec v(cols_);
        v.set(f, true);
        // pivot row i has its pivot at pivots[i]; fill back-substitution
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (m.get(i, f)) v.set(pivots[i], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<BitVec> Gf2Matrix::solve_in_span(const BitVec& b) const {
    if (b.size() != rows_)
        throw std::invalid_argument("solve_in_span: dimension mismatch");
    // Augmented elimination [M | b].
    Gf2Matrix aug(rows_, cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t wi = 0; wi < wpr_; ++wi) {
            std::uint64_t x = bits_[r * wpr_ + wi];
            while (x) {
                unsigned bit = std::countr_zero(x);
                x &= x - 1;
                aug.set(r, wi * 64 + bit, true);
            }
        }
        if (b.get(r)) aug.set(r, cols_, true);
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && !aug.get(p, c)) ++p;
        if (p == rows_) continue;
        if (p != r)
            for (std::size_t i = 0; i < aug.wpr_; ++i)
                std::swap(aug.bits_[p * aug.wpr_ + i], aug.bits_[r * aug.wpr_ + i]);
        for (std::size_t q = 0; q < rows_; ++q)
            if (q != r && aug.get(q, c)) aug.xor_row_into(r, q);
        pivots.push_back(c);
        ++r;
    }
    // Inconsistent iff some remaining row is [0...0 | 1].
    for (std::size_t q = r; q < rows_; ++q)
        if (aug.get(q, cols_)) return std::nullopt;

    BitVec x(cols_);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (aug.get(i, cols_)) x.set(pivots[i], true);
    return x;
}

std::vector<BitVec> column_space_basis(const Gf2Matrix& m) {
    Gf2Matrix work = m;
    auto pivots = work.eliminate();
    std::vector<BitVec> basis;
    basis.reserve(pivots.size());
    for (auto c : pivots) {
        BitVec col(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (m.get(r, c)) col.set(r, true);
        basis.push_back(std::move(col));
    }
    return basis;
}

std::vector<BitVec> reduce_to_basis(const std::vector<BitVec>& vecs) {
    if (vecs.empty()) return {};
    std::size_t n = vecs[0].size();
    Gf2Matrix m = Gf2Matrix::from_rows(vecs, n);
    std::size_t r = m.eliminate().size();
    std::vector<BitVec> basis;
    basis.reserve(r);
    for (std::size_t i = 0; i < r; ++i) basis.push_back(m.row(i));
    return basis;
}

void image_enumerate(const Gf2Matrix& m,
                     const std::function<void(const BitVec&, std::size_t)>& visit,
                     int maxRank) {
    auto basis = column_space_basis(m);
    if ((int)basis.size() > maxRank)
        throw BudgetError("image_enumerate: rank " + std::to_string(basis.size()) +
                          " exceeds budget " + std::to_string(maxRank));
    std::size_t r = basis.size();
    BitVec cur(m.rows());
    visit(cur, 0);
    // Gray-code walk: step g flips basis vector countr_zero(g).
    for (std::uint64_t g = 1; g < (std::uint64_t(1) << r); ++g) {
        cur ^= basis[std::countr_zero(g)];
        visit(cur, cur.popcount());
    }
}

}  // namespace gtc
