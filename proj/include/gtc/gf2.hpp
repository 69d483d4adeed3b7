// Bit-packed linear algebra over GF(2): rank, kernel, solve, image
// enumeration. Computational kernel for homology, group orders and
// defect-class membership tests.
#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gtc {

// Thrown when an enumeration would exceed its stated budget.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Packed bit vector, value semantics.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    // Parity of the AND with another vector (symplectic-style overlap).
    bool overlap_parity(const BitVec& o) const {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return std::popcount(acc) & 1u;
    }

    std::span<const std::uint64_t> words() const { return w_; }
    std::span<std::uint64_t> words() { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Dense binary matrix, row-major packed bits.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

    static Gf2Matrix from_rows(const std::vector<BitVec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (bits_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t m = std::uint64_t(1) << (c & 63);
        auto& w = bits_[r * wpr_ + (c >> 6)];
        if (v) w |= m; else w &= ~m;
    }

    BitVec row(std::size_t r) const;
    void set_row(std::size_t r, const BitVec& v);
    void xor_row_into(std::size_t src, std::size_t dst);

    Gf2Matrix transposed() const;
    // Keep only the listed columns, in the given order.
    Gf2Matrix columns(const std::vector<std::size_t>& keep) const;
    // Keep columns selected by mask (ascending index order).
    Gf2Matrix columns_masked(const BitVec& mask) const;
    // Rows of this stacked on rows of other (same column count).
    Gf2Matrix stacked(const Gf2Matrix& below) const;

    // y = M * x  (x indexed by columns, y by rows).
    BitVec apply(const BitVec& x) const;

    std::size_t rank() const;                          // on a private copy
    std::vector<BitVec> kernel_basis() const;          // cols - rank vectors
    std::optional<BitVec> solve_in_span(const BitVec& b) const;

    // Row-reduce in place; returns pivot column indices in order.
    std::vector<std::size_t> eliminate();

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Visits all 2^rank distinct vectors of the column space of M exactly
// once, each with its Hamming weight. Enumeration order is a Gray walk
// over a pivot-column basis and is deterministic.
// Budget: rank(M) <= maxRank (default 25), else BudgetError.
void image_enumerate(const Gf2Matrix& m,
                     const std::function<void(const BitVec&, std::size_t)>& visit,
                     int maxRank = 25);

// Basis of the column space (original pivot columns of M).
std::vector<BitVec> column_space_basis(const Gf2Matrix& m);

// Reduced row-echelon basis of the span of the given vectors.
std::vector<BitVec> reduce_to_basis(const std::vector<BitVec>& vecs);

}  // namespace gtc
