#pragma once

// Arithmetic and dense matrix algebra over the prime fields GF(2), GF(3),
// GF(5) and GF(7).

#include "grasslab/error.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace grasslab {

using Residue = std::uint8_t;

class Field {
public:
    explicit Field(int p) : p_(static_cast<Residue>(p))
    {
        if (p != 2 && p != 3 && p != 5 && p != 7)
            fail(ErrorKind::UnsupportedField, "p = " + std::to_string(p) + " (supported: 2, 3, 5, 7)");
        for (int a = 1; a < p; ++a)
            for (int b = 1; b < p; ++b)
                if ((a * b) % p == 1) inverse_[a] = static_cast<Residue>(b);
    }

    [[nodiscard]] int p() const noexcept { return p_; }
    [[nodiscard]] int size() const noexcept { return p_; }

    [[nodiscard]] Residue reduce(long long v) const noexcept
    {
        long long r = v % p_;
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    [[nodiscard]] Residue add(Residue a, Residue b) const noexcept
    {
        unsigned s = unsigned(a) + b;
        return static_cast<Residue>(s >= p_ ? s - p_ : s);
    }
    [[nodiscard]] Residue neg(Residue a) const noexcept { return a == 0 ? 0 : static_cast<Residue>(p_ - a); }
    [[nodiscard]] Residue sub(Residue a, Residue b) const noexcept { return add(a, neg(b)); }
    [[nodiscard]] Residue mul(Residue a, Residue b) const noexcept
    {
        return static_cast<Residue>((unsigned(a) * b) % p_);
    }
    /// Multiplicative inverse; a must be nonzero.
    [[nodiscard]] Residue inv(Residue a) const
    {
        if (a == 0) fail(ErrorKind::Singular, "inverse of zero in GF(" + std::to_string(p()) + ")");
        return inverse_[a];
    }

    friend bool operator==(const Field& a, const Field& b) noexcept { return a.p_ == b.p_; }

private:
    Residue p_;
    std::array<Residue, 8> inverse_{};
};

/// Dense row-major matrix over GF(p). Every stored entry is a residue in [0, p).
class Matrix {
public:
    Matrix(Field field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0)
    {
    }

    static Matrix identity(Field field, std::size_t size)
    {
        Matrix m(field, size, size);
        for (std::size_t i = 0; i < size; ++i) m.entries_[i * size + i] = 1;
        return m;
    }

    static Matrix from_rows(Field field, std::initializer_list<std::initializer_list<int>> rows)
    {
        std::vector<std::vector<int>> v;
        for (auto r : rows) v.emplace_back(r);
        return from_rows(field, v, v.empty() ? 0 : v.front().size());
    }

    static Matrix from_rows(Field field, const std::vector<std::vector<int>>& rows, std::size_t cols)
    {
        Matrix m(field, rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols)
                fail(ErrorKind::DimensionMismatch, "ragged row " + std::to_string(r));
            for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
        }
        return m;
    }

    /// Rows written as digit strings, e.g. {"1100", "1010"}.
    static Matrix from_strings(Field field, std::size_t cols, std::span<const std::string_view> rows)
    {
        Matrix m(field, rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols)
                fail(ErrorKind::DimensionMismatch,
                     "row '" + std::string(rows[r]) + "' has length " + std::to_string(rows[r].size()) +
                         ", expected " + std::to_string(cols));
            for (std::size_t c = 0; c < cols; ++c) {
                char ch = rows[r][c];
                if (ch < '0' || ch > '9') fail(ErrorKind::BadArgument, "non-digit in row '" + std::string(rows[r]) + "'");
                if (ch - '0' >= field.p())
                    fail(ErrorKind::BadArgument, "digit out of range in row '" + std::string(rows[r]) + "'");
                m.entries_[r * cols + c] = static_cast<Residue>(ch - '0');
            }
        }
        return m;
    }
    static Matrix from_strings(Field field, std::size_t cols, std::initializer_list<std::string_view> rows)
    {
        return from_strings(field, cols, std::span<const std::string_view>(rows.begin(), rows.size()));
    }

    [[nodiscard]] Field field() const noexcept { return field_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    [[nodiscard]] Residue operator()(std::size_t r, std::size_t c) const noexcept { return entries_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, long long v) noexcept { entries_[r * cols_ + c] = field_.reduce(v); }

    [[nodiscard]] std::span<const Residue> row(std::size_t r) const noexcept
    {
        return {entries_.data() + r * cols_, cols_};
    }
    [[nodiscard]] std::span<const Residue> entries() const noexcept { return entries_; }

    [[nodiscard]] bool is_zero() const noexcept
    {
        return std::all_of(entries_.begin(), entries_.end(), [](Residue x) { return x == 0; });
    }

    [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const
    {
        if (r0 + nrows > rows_ || c0 + ncols > cols_) fail(ErrorKind::DimensionMismatch, "block out of range");
        Matrix m(field_, nrows, ncols);
        for (std::size_t r = 0; r < nrows; ++r)
            std::copy_n(entries_.begin() + (r0 + r) * cols_ + c0, ncols, m.entries_.begin() + r * ncols);
        return m;
    }

    [[nodiscard]] Matrix top_rows(std::size_t count) const { return block(0, 0, count, cols_); }

    [[nodiscard]] Matrix transpose() const
    {
        Matrix t(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.entries_[c * rows_ + r] = (*this)(r, c);
        return t;
    }

    static Matrix vstack(const Matrix& a, const Matrix& b)
    {
        check_same_field(a, b);
        if (a.cols_ != b.cols_) fail(ErrorKind::DimensionMismatch, "vstack column counts differ");
        Matrix m(a.field_, a.rows_ + b.rows_, a.cols_);
        std::copy(a.entries_.begin(), a.entries_.end(), m.entries_.begin());
        std::copy(b.entries_.begin(), b.entries_.end(), m.entries_.begin() + a.entries_.size());
        return m;
    }

    static Matrix hstack(const Matrix& a, const Matrix& b)
    {
        check_same_field(a, b);
        if (a.rows_ != b.rows_) fail(ErrorKind::DimensionMismatch, "hstack row counts differ");
        Matrix m(a.field_, a.rows_, a.cols_ + b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            std::copy_n(a.entries_.begin() + r * a.cols_, a.cols_, m.entries_.begin() + r * m.cols_);
            std::copy_n(b.entries_.begin() + r * b.cols_, b.cols_, m.entries_.begin() + r * m.cols_ + a.cols_);
        }
        return m;
    }

    /// Rows as digit strings.
    [[nodiscard]] std::vector<std::string> row_strings() const
    {
        std::vector<std::string> out;
        for (std::size_t r = 0; r < rows_; ++r) {
            std::string s;
            for (Residue x : row(r)) s.push_back(static_cast<char>('0' + x));
            out.push_back(std::move(s));
        }
        return out;
    }

    [[nodiscard]] std::string to_string() const
    {
        std::string s = "{";
        auto rs = row_strings();
        for (std::size_t i = 0; i < rs.size(); ++i) s += (i ? "," : "") + rs[i];
        return s + "}";
    }

    friend bool operator==(const Matrix& a, const Matrix& b) noexcept
    {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }
    friend std::strong_ordering operator<=>(const Matrix& a, const Matrix& b) noexcept
    {
        if (auto c = a.field_.p() <=> b.field_.p(); c != 0) return c;
        if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
        if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
        return a.entries_ <=> b.entries_;
    }

    static void check_same_field(const Matrix& a, const Matrix& b)
    {
        if (!(a.field_ == b.field_))
            fail(ErrorKind::DimensionMismatch,
                 "fields differ: GF(" + std::to_string(a.field_.p()) + ") vs GF(" + std::to_string(b.field_.p()) + ")");
    }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Residue> entries_;

public:
    // Mutable access for in-place elimination routines.
    [[nodiscard]] Residue* data() noexcept { return entries_.data(); }
};

namespace detail {

// Gauss-Jordan elimination on a raw row-major buffer. Returns the rank and,
// if requested, records the pivot columns. The buffer ends up in RREF.
inline std::size_t eliminate(const Field& f, Residue* a, std::size_t rows, std::size_t cols,
                             std::vector<std::size_t>* pivots = nullptr)
{
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pr = rank;
        while (pr < rows && a[pr * cols + c] == 0) ++pr;
        if (pr == rows) continue;
        if (pr != rank)
            std::swap_ranges(a + pr * cols, a + pr * cols + cols, a + rank * cols);
        Residue* prow = a + rank * cols;
        Residue s = f.inv(prow[c]);
        if (s != 1)
            for (std::size_t k = c; k < cols; ++k) prow[k] = f.mul(prow[k], s);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            Residue* row = a + r * cols;
            Residue factor = row[c];
            if (factor == 0) continue;
            Residue nf = f.neg(factor);
            for (std::size_t k = c; k < cols; ++k)
                if (prow[k]) row[k] = f.add(row[k], f.mul(nf, prow[k]));
        }
        if (pivots) pivots->push_back(c);
        ++rank;
    }
    return rank;
}

} // namespace detail

struct RrefResult {
    Matrix form; ///< full-height RREF; zero rows at the bottom
    std::size_t rank;
    std::vector<std::size_t> pivot_cols;

    /// The RREF with zero rows removed.
    [[nodiscard]] Matrix trimmed() const { return form.top_rows(rank); }
};

/// Reduced row echelon form: pivots are 1, pivot columns are otherwise zero,
/// pivot columns strictly increase down the rows.
inline RrefResult rref(const Matrix& m)
{
    Matrix form = m;
    std::vector<std::size_t> pivots;
    std::size_t rank = detail::eliminate(m.field(), form.data(), m.rows(), m.cols(), &pivots);
    return {std::move(form), rank, std::move(pivots)};
}

inline std::size_t rank(const Matrix& m)
{
    constexpr std::size_t kStack = 256;
    auto src = m.entries();
    if (src.size() <= kStack) {
        std::array<Residue, kStack> buf;
        std::copy(src.begin(), src.end(), buf.begin());
        return detail::eliminate(m.field(), buf.data(), m.rows(), m.cols());
    }
    std::vector<Residue> buf(src.begin(), src.end());
    return detail::eliminate(m.field(), buf.data(), m.rows(), m.cols());
}

/// Rank of the rows of a stacked on top of the rows of b, without
/// materialising the stacked matrix.
inline std::size_t stacked_rank(const Matrix& a, const Matrix& b)
{
    Matrix::check_same_field(a, b);
    if (a.cols() != b.cols()) fail(ErrorKind::DimensionMismatch, "stacked_rank column counts differ");
    constexpr std::size_t kStack = 256;
    std::size_t total = a.entries().size() + b.entries().size();
    auto run = [&](Residue* buf) {
        std::copy(a.entries().begin(), a.entries().end(), buf);
        std::copy(b.entries().begin(), b.entries().end(), buf + a.entries().size());
        return detail::eliminate(a.field(), buf, a.rows() + b.rows(), a.cols());
    };
    if (total <= kStack) {
        std::array<Residue, kStack> buf;
        return run(buf.data());
    }
    std::vector<Residue> buf(total);
    return run(buf.data());
}

inline Matrix matmul(const Matrix& a, const Matrix& b)
{
    Matrix::check_same_field(a, b);
    if (a.cols() != b.rows())
        fail(ErrorKind::DimensionMismatch, "matmul " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                               " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    const Field f = a.field();
    Matrix c(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            unsigned acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += unsigned(a(i, k)) * b(k, j);
            c.set(i, j, acc);
        }
    return c;
}

inline Matrix add(const Matrix& a, const Matrix& b)
{
    Matrix::check_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorKind::DimensionMismatch, "add shapes differ");
    Matrix c(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, int(a(i, j)) + b(i, j));
    return c;
}

inline Matrix scale(const Matrix& a, Residue s)
{
    Matrix c(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, int(a(i, j)) * s);
    return c;
}

/// Inverse of a square matrix; throws Singular when rank < size.
inline Matrix invert(const Matrix& m)
{
    if (!m.is_square()) fail(ErrorKind::DimensionMismatch, "invert needs a square matrix");
    const std::size_t n = m.rows();
    auto r = rref(Matrix::hstack(m, Matrix::identity(m.field(), n)));
    if (r.rank < n || (n > 0 && r.pivot_cols[n - 1] != n - 1))
        fail(ErrorKind::Singular, "matrix " + m.to_string() + " has rank < " + std::to_string(n));
    return r.form.block(0, n, n, n);
}

inline bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

/// Basis (as rows, in RREF) of {y : m * y^T = 0}.
inline Matrix nullspace(const Matrix& m)
{
    auto r = rref(m);
    const Field f = m.field();
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : r.pivot_cols) is_pivot[c] = true;
    Matrix ker(f, cols - r.rank, cols);
    std::size_t k = 0;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        ker.set(k, free, 1);
        for (std::size_t i = 0; i < r.rank; ++i) ker.set(k, r.pivot_cols[i], f.neg(r.form(i, free)));
        ++k;
    }
    return rref(ker).trimmed();
}

/// Uniform matrix from a 64-bit engine. Entries use rng() % p so that the
/// stream is identical across standard libraries.
template <class Engine>
Matrix random_matrix(Field field, std::size_t rows, std::size_t cols, Engine& rng)
{
    Matrix m(field, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, static_cast<long long>(rng() % field.p()));
    return m;
}

template <class Engine>
Matrix random_invertible(Field field, std::size_t size, Engine& rng)
{
    for (;;) {
        Matrix m = random_matrix(field, size, size, rng);
        if (is_invertible(m)) return m;
    }
}

/// Calls fn(m) for every invertible size x size matrix, in lexicographic
/// order of entries. Refuses when p^(size^2) exceeds 2^20.
template <class Fn>
void for_each_invertible(Field field, std::size_t size, Fn&& fn)
{
    const std::size_t cells = size * size;
    unsigned long long total = 1;
    for (std::size_t i = 0; i < cells; ++i) {
        total *= static_cast<unsigned long long>(field.p());
        if (total > (1ull << 20))
            fail(ErrorKind::ResourceLimit, "too many " + std::to_string(size) + "x" + std::to_string(size) +
                                               " matrices over GF(" + std::to_string(field.p()) + ") to enumerate");
    }
    Matrix m(field, size, size);
    Residue* e = m.data();
    for (unsigned long long code = 0; code < total; ++code) {
        unsigned long long x = code;
        for (std::size_t i = cells; i-- > 0;) {
            e[i] = static_cast<Residue>(x % field.p());
            x /= field.p();
        }
        if (is_invertible(m)) fn(static_cast<const Matrix&>(m));
    }
}

} // namespace grasslab
