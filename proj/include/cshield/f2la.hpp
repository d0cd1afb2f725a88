#pragma once

// Exact linear algebra over GF(2): bit-packed vectors and matrices,
// row reduction, kernels/duals, span membership, codeword and coset
// enumeration. Everything is a value type; operations are pure.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cshield/errors.hpp"

namespace cshield {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 28;

// Global enumeration cap, overridable through COHERENT_SHIELD_CAP.
inline std::uint64_t default_enumeration_cap() {
    static const std::uint64_t cap = [] {
        if (const char* env = std::getenv("COHERENT_SHIELD_CAP")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) return static_cast<std::uint64_t>(v);
        }
        return kDefaultEnumerationCap;
    }();
    return cap;
}

class BinaryVector {
  public:
    BinaryVector() = default;

    explicit BinaryVector(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BinaryVector zeros(std::size_t n) { return BinaryVector(n); }

    static BinaryVector ones(std::size_t n) {
        BinaryVector v(n);
        for (std::size_t i = 0; i < v.w_.size(); ++i) v.w_[i] = ~std::uint64_t{0};
        v.trim();
        return v;
    }

    static BinaryVector unit(std::size_t n, std::size_t i) {
        BinaryVector v(n);
        v.set(i, true);
        return v;
    }

    static BinaryVector from_string(std::string_view bits) {
        BinaryVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1')
                v.set(i, true);
            else if (bits[i] != '0')
                throw Error("bad bit character '" + std::string(1, bits[i]) + "'");
        }
        return v;
    }

    std::size_t size() const { return n_; }

    bool bit(std::size_t i) const {
        check_index(i);
        return (w_[i >> 6] >> (i & 63)) & 1;
    }

    void set(std::size_t i, bool value) {
        check_index(i);
        if (value)
            w_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else
            w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    void flip(std::size_t i) { set(i, !bit(i)); }

    std::size_t weight() const {
        std::size_t w = 0;
        for (std::uint64_t word : w_) w += static_cast<std::size_t>(std::popcount(word));
        return w;
    }

    bool is_zero() const {
        for (std::uint64_t word : w_)
            if (word) return false;
        return true;
    }

    // Index of the first set bit, or size() if none.
    std::size_t leading_bit() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
        return n_;
    }

    BinaryVector& operator^=(const BinaryVector& other) {
        check_same(other);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= other.w_[i];
        return *this;
    }

    friend BinaryVector operator^(BinaryVector a, const BinaryVector& b) { return a ^= b; }

    // GF(2) inner product.
    bool dot(const BinaryVector& other) const {
        check_same(other);
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & other.w_[i];
        return std::popcount(acc) & 1;
    }

    // Number of positions where both vectors are 1 (integer, not mod 2).
    std::size_t and_weight(const BinaryVector& other) const {
        check_same(other);
        std::size_t w = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            w += static_cast<std::size_t>(std::popcount(w_[i] & other.w_[i]));
        return w;
    }

    // supp(this) subset of supp(mask)?
    bool covered_by(const BinaryVector& mask) const {
        check_same(mask);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~mask.w_[i]) return false;
        return true;
    }

    // Gather the bits at the positions of supp(mask) into a vector of
    // length weight(mask), preserving coordinate order.
    BinaryVector restrict_to(const BinaryVector& mask) const {
        check_same(mask);
        BinaryVector out(mask.weight());
        std::size_t j = 0;
        for (std::size_t i = 0; i < n_; ++i)
            if (mask.bit(i)) out.set(j++, bit(i));
        return out;
    }

    // Inverse of restrict_to: scatter this vector's bits into the
    // positions of supp(mask) inside a zero vector of mask's length.
    BinaryVector embed_into(const BinaryVector& mask) const {
        if (n_ != mask.weight()) throw LengthMismatch("embed_into: length != weight of mask");
        BinaryVector out(mask.size());
        std::size_t j = 0;
        for (std::size_t i = 0; i < mask.size(); ++i)
            if (mask.bit(i)) out.set(i, bit(j++));
        return out;
    }

    bool operator==(const BinaryVector& other) const { return n_ == other.n_ && w_ == other.w_; }
    bool operator!=(const BinaryVector& other) const { return !(*this == other); }

    // Lexicographic order on the coordinate string (coordinate 0 first).
    bool operator<(const BinaryVector& other) const {
        check_same(other);
        for (std::size_t i = 0; i < w_.size(); ++i) {
            const std::uint64_t diff = w_[i] ^ other.w_[i];
            if (diff) {
                const int b = std::countr_zero(diff);
                return !((w_[i] >> b) & 1);
            }
        }
        return false;
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (bit(i)) s[i] = '1';
        return s;
    }

    // Low word, valid when size() <= 64. Used by dense-state code.
    std::uint64_t low_word() const { return w_.empty() ? 0 : w_[0]; }

  private:
    void check_index(std::size_t i) const {
        if (i >= n_) throw Error("index " + std::to_string(i) + " out of range for length " + std::to_string(n_));
    }
    void check_same(const BinaryVector& other) const {
        if (n_ != other.n_)
            throw LengthMismatch("length mismatch: " + std::to_string(n_) + " vs " + std::to_string(other.n_));
    }
    void trim() {
        if (n_ % 64 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

class BinaryMatrix {
  public:
    BinaryMatrix() = default;
    explicit BinaryMatrix(std::size_t cols) : cols_(cols) {}
    BinaryMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BinaryVector(cols)) {}

    static BinaryMatrix identity(std::size_t n) {
        BinaryMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.rows_[i].set(i, true);
        return m;
    }

    static BinaryMatrix from_strings(std::initializer_list<std::string_view> rows) {
        std::vector<BinaryVector> rv;
        for (auto s : rows) rv.push_back(BinaryVector::from_string(s));
        if (rv.empty()) throw Error("from_strings: need at least one row (use BinaryMatrix(cols) for empty)");
        BinaryMatrix m(rv.front().size());
        for (auto& r : rv) m.append_row(std::move(r));
        return m;
    }

    std::size_t row_count() const { return rows_.size(); }
    std::size_t col_count() const { return cols_; }

    const BinaryVector& row(std::size_t i) const { return rows_.at(i); }
    BinaryVector& row(std::size_t i) { return rows_.at(i); }
    const std::vector<BinaryVector>& rows() const { return rows_; }

    void append_row(BinaryVector r) {
        if (r.size() != cols_) throw LengthMismatch("append_row: row length != col_count");
        rows_.push_back(std::move(r));
    }

    bool operator==(const BinaryMatrix& other) const { return cols_ == other.cols_ && rows_ == other.rows_; }

    BinaryMatrix transpose() const {
        BinaryMatrix t(cols_, rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (rows_[i].bit(j)) t.rows_[j].set(i, true);
        return t;
    }

  private:
    std::size_t cols_ = 0;
    std::vector<BinaryVector> rows_;
};

// Reduced row echelon form with the deterministic pivot rule: scan
// columns left to right, pick the lowest-index remaining row with a 1.
// Zero rows are dropped. pivots[i] is the pivot column of row i.
struct Rref {
    BinaryMatrix mat;
    std::vector<std::size_t> pivots;

    std::size_t rank() const { return pivots.size(); }

    // Reduce v against the echelon rows; the remainder is zero iff v
    // lies in the row space.
    BinaryVector reduce(BinaryVector v) const {
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (v.bit(pivots[i])) v ^= mat.row(i);
        return v;
    }

    bool contains(const BinaryVector& v) const { return reduce(v).is_zero(); }
};

inline Rref rref(const BinaryMatrix& m) {
    Rref out;
    out.mat = BinaryMatrix(m.col_count());
    std::vector<BinaryVector> work(m.rows().begin(), m.rows().end());
    std::size_t next = 0;
    for (std::size_t col = 0; col < m.col_count() && next < work.size(); ++col) {
        std::size_t pivot = next;
        while (pivot < work.size() && !work[pivot].bit(col)) ++pivot;
        if (pivot == work.size()) continue;
        std::swap(work[next], work[pivot]);
        for (std::size_t r = 0; r < work.size(); ++r)
            if (r != next && work[r].bit(col)) work[r] ^= work[next];
        out.pivots.push_back(col);
        ++next;
    }
    work.resize(next);
    for (auto& r : work) out.mat.append_row(std::move(r));
    return out;
}

inline std::size_t rank(const BinaryMatrix& m) { return rref(m).rank(); }

inline bool in_row_space(const BinaryMatrix& m, const BinaryVector& v) { return rref(m).contains(v); }

// Basis of {x : M x^T = 0}, i.e. the dual code of the row space.
// row_count of the result is col_count(M) - rank(M); rows come out in
// free-column order, so the result is deterministic.
inline BinaryMatrix dual_basis(const BinaryMatrix& m) {
    const std::size_t n = m.col_count();
    const Rref r = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : r.pivots) is_pivot[p] = true;
    BinaryMatrix out(n);
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        BinaryVector v(n);
        v.set(f, true);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            if (r.mat.row(i).bit(f)) v.set(r.pivots[i], true);
        out.append_row(std::move(v));
    }
    return out;
}

// Deterministic solution of y M^T = b, i.e. y . row_i = b_i for every
// row of M, with free variables set to zero. Returns nullopt when the
// system is inconsistent.
inline std::optional<BinaryVector> solve_transposed(const BinaryMatrix& m, const std::vector<bool>& b) {
    if (b.size() != m.row_count()) throw LengthMismatch("solve_transposed: rhs size != row_count");
    const std::size_t n = m.col_count();
    // Augmented system over the columns: unknowns y_0..y_{n-1}.
    BinaryMatrix aug(m.row_count(), n + 1);
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.row(i).set(j, m.row(i).bit(j));
        aug.row(i).set(n, b[i]);
    }
    const Rref r = rref(aug);
    BinaryVector y(n);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        if (r.pivots[i] == n) return std::nullopt;  // row (0 ... 0 | 1)
        y.set(r.pivots[i], r.mat.row(i).bit(n));
    }
    return y;
}

namespace detail {
inline void check_cap(std::uint64_t count, std::uint64_t cap, const char* what) {
    if (count > cap)
        throw CapExceeded(std::string(what) + ": " + std::to_string(count) + " elements exceeds cap " +
                          std::to_string(cap));
}
}  // namespace detail

// Streams all 2^rank codewords of a row space exactly once, in Gray-code
// order over a reduced (independent) basis. Single consumer.
class CodewordStream {
  public:
    explicit CodewordStream(const BinaryMatrix& basis, std::uint64_t cap = default_enumeration_cap())
        : basis_(rref(basis).mat), current_(basis.col_count()) {
        if (basis_.row_count() >= 63) throw CapExceeded("enumerate_code: rank >= 63 unsupported");
        total_ = std::uint64_t{1} << basis_.row_count();
        detail::check_cap(total_, cap, "enumerate_code");
    }

    std::uint64_t count() const { return total_; }

    // Returns false when exhausted; otherwise writes the next codeword.
    bool next(BinaryVector& out) {
        if (index_ == total_) return false;
        if (index_ > 0) current_ ^= basis_.row(static_cast<std::size_t>(std::countr_zero(index_)));
        out = current_;
        ++index_;
        return true;
    }

  private:
    BinaryMatrix basis_;
    BinaryVector current_;
    std::uint64_t total_ = 0;
    std::uint64_t index_ = 0;
};

inline std::vector<BinaryVector> enumerate_code(const BinaryMatrix& basis,
                                                std::uint64_t cap = default_enumeration_cap()) {
    CodewordStream stream(basis, cap);
    std::vector<BinaryVector> out;
    out.reserve(static_cast<std::size_t>(stream.count()));
    BinaryVector v;
    while (stream.next(v)) out.push_back(v);
    return out;
}

template <typename Fn>
void for_each_codeword(const BinaryMatrix& basis, Fn&& fn, std::uint64_t cap = default_enumeration_cap()) {
    CodewordStream stream(basis, cap);
    BinaryVector v;
    while (stream.next(v)) fn(static_cast<const BinaryVector&>(v));
}

// Streams one representative per coset of the row space of `sub` inside
// F_2^ambient_dim, starting with 0. Representatives are supported on the
// free (non-pivot) columns of the reduced subspace basis, so they are
// pairwise inequivalent.
class CosetStream {
  public:
    CosetStream(const BinaryMatrix& sub, std::size_t ambient_dim, std::uint64_t cap = default_enumeration_cap())
        : current_(ambient_dim) {
        if (sub.col_count() != ambient_dim) throw LengthMismatch("coset_representatives: ambient dim mismatch");
        const Rref r = rref(sub);
        std::vector<bool> is_pivot(ambient_dim, false);
        for (std::size_t p : r.pivots) is_pivot[p] = true;
        for (std::size_t c = 0; c < ambient_dim; ++c)
            if (!is_pivot[c]) free_cols_.push_back(c);
        if (free_cols_.size() >= 63) throw CapExceeded("coset_representatives: quotient dim >= 63 unsupported");
        total_ = std::uint64_t{1} << free_cols_.size();
        detail::check_cap(total_, cap, "coset_representatives");
    }

    std::uint64_t count() const { return total_; }

    bool next(BinaryVector& out) {
        if (index_ == total_) return false;
        if (index_ > 0) current_.flip(free_cols_[static_cast<std::size_t>(std::countr_zero(index_))]);
        out = current_;
        ++index_;
        return true;
    }

  private:
    BinaryVector current_;
    std::vector<std::size_t> free_cols_;
    std::uint64_t total_ = 0;
    std::uint64_t index_ = 0;
};

inline std::vector<BinaryVector> coset_representatives(const BinaryMatrix& sub, std::size_t ambient_dim,
                                                       std::uint64_t cap = default_enumeration_cap()) {
    CosetStream stream(sub, ambient_dim, cap);
    std::vector<BinaryVector> out;
    out.reserve(static_cast<std::size_t>(stream.count()));
    BinaryVector v;
    while (stream.next(v)) out.push_back(v);
    return out;
}

}  // namespace cshield
