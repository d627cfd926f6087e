#pragma once

// Subspaces of GF(p)^d in canonical form, the lattice operations on them,
// and exhaustive enumeration of all k-subspaces.

#include "grasslab/gf.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace grasslab {

using Vector = std::vector<Residue>;

/// A subspace of GF(p)^ambient, held as its trimmed RREF basis. Two values
/// are equal exactly when they describe the same subspace.
class Subspace {
public:
    /// The zero subspace.
    Subspace(Field field, std::size_t ambient) : basis_(field, 0, ambient) {}

    /// Row space of the given matrix.
    explicit Subspace(const Matrix& rows) : basis_(rref(rows).trimmed()) {}

    [[nodiscard]] Field field() const noexcept { return basis_.field(); }
    [[nodiscard]] std::size_t ambient() const noexcept { return basis_.cols(); }
    [[nodiscard]] std::size_t dim() const noexcept { return basis_.rows(); }
    [[nodiscard]] const Matrix& basis() const noexcept { return basis_; }
    [[nodiscard]] bool is_zero() const noexcept { return dim() == 0; }

    /// "<1000,0100>"; the zero subspace prints as "<>".
    [[nodiscard]] std::string to_string() const
    {
        std::string s = "<";
        auto rows = basis_.row_strings();
        for (std::size_t i = 0; i < rows.size(); ++i) s += (i ? "," : "") + rows[i];
        return s + ">";
    }

    /// Injective 64-bit packing of the basis (3 bits per entry). Only
    /// defined while dim * ambient <= 21.
    [[nodiscard]] std::uint64_t key() const
    {
        auto e = basis_.entries();
        if (e.size() > 21) fail(ErrorKind::ResourceLimit, "subspace too large for packed key");
        std::uint64_t k = dim();
        for (Residue x : e) k = (k << 3) | x;
        return k;
    }

    friend bool operator==(const Subspace&, const Subspace&) = default;
    friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) { return a.basis_ <=> b.basis_; }

private:
    Matrix basis_;
};

inline void check_compatible(const Subspace& a, const Subspace& b)
{
    if (!(a.field() == b.field()) || a.ambient() != b.ambient())
        fail(ErrorKind::AmbientMismatch, a.to_string() + " vs " + b.to_string());
}

inline Subspace span(const Matrix& rows) { return Subspace(rows); }

inline Subspace span(Field field, std::size_t ambient, const std::vector<Vector>& vectors)
{
    Matrix m(field, vectors.size(), ambient);
    for (std::size_t r = 0; r < vectors.size(); ++r) {
        if (vectors[r].size() != ambient)
            fail(ErrorKind::DimensionMismatch, "vector of length " + std::to_string(vectors[r].size()) +
                                                   " in ambient dimension " + std::to_string(ambient));
        for (std::size_t c = 0; c < ambient; ++c) m.set(r, c, vectors[r][c]);
    }
    return Subspace(m);
}

/// Span of digit-string rows, e.g. span_of(f, 4, {"1000", "0100"}).
inline Subspace span_of(Field field, std::size_t ambient, std::initializer_list<std::string_view> rows)
{
    return Subspace(Matrix::from_strings(field, ambient, rows));
}

inline Subspace full_space(Field field, std::size_t ambient) { return Subspace(Matrix::identity(field, ambient)); }

inline std::size_t sum_dim(const Subspace& a, const Subspace& b)
{
    check_compatible(a, b);
    return stacked_rank(a.basis(), b.basis());
}

inline Subspace sum(const Subspace& a, const Subspace& b)
{
    check_compatible(a, b);
    return Subspace(Matrix::vstack(a.basis(), b.basis()));
}

/// X^perp with respect to the standard dot product.
inline Subspace annihilator(const Subspace& a) { return Subspace(nullspace(a.basis())); }

inline Subspace intersect(const Subspace& a, const Subspace& b)
{
    check_compatible(a, b);
    return annihilator(sum(annihilator(a), annihilator(b)));
}

inline std::size_t intersection_dim(const Subspace& a, const Subspace& b)
{
    return a.dim() + b.dim() - sum_dim(a, b);
}

/// True iff b <= a.
inline bool contains(const Subspace& a, const Subspace& b) { return sum_dim(a, b) == a.dim(); }

/// True iff a and b share a point.
inline bool meets(const Subspace& a, const Subspace& b) { return sum_dim(a, b) < a.dim() + b.dim(); }

inline bool contains_vector(const Subspace& a, std::span<const Residue> v)
{
    Matrix row(a.field(), 1, a.ambient());
    for (std::size_t c = 0; c < v.size(); ++c) row.set(0, c, v[c]);
    return stacked_rank(a.basis(), row) == a.dim();
}

/// Image of a subspace under the linear map x -> x * g (row vectors).
inline Subspace image(const Subspace& a, const Matrix& g)
{
    if (a.is_zero()) return a;
    return Subspace(matmul(a.basis(), g));
}

/// Calls fn(v) for every vector of a, in lexicographic order of coefficients.
template <class Fn>
void for_each_vector(const Subspace& a, Fn&& fn)
{
    const Field f = a.field();
    const std::size_t k = a.dim(), d = a.ambient();
    std::vector<Residue> coeff(k, 0);
    Vector v(d, 0);
    for (;;) {
        std::fill(v.begin(), v.end(), Residue{0});
        for (std::size_t i = 0; i < k; ++i)
            if (coeff[i])
                for (std::size_t c = 0; c < d; ++c) v[c] = f.add(v[c], f.mul(coeff[i], a.basis()(i, c)));
        fn(static_cast<const Vector&>(v));
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++coeff[i] < f.p()) break;
            coeff[i] = 0;
            if (i == 0) return;
        }
        if (k == 0) return;
    }
}

/// All one-dimensional subspaces of a, sorted canonically.
inline std::vector<Subspace> points(const Subspace& a)
{
    std::vector<Subspace> out;
    const Field f = a.field();
    for_each_vector(a, [&](const Vector& v) {
        auto lead = std::find_if(v.begin(), v.end(), [](Residue x) { return x != 0; });
        if (lead != v.end() && *lead == 1) {
            Matrix m(f, 1, v.size());
            for (std::size_t c = 0; c < v.size(); ++c) m.set(0, c, v[c]);
            out.emplace_back(m);
        }
    });
    std::sort(out.begin(), out.end());
    return out;
}

/// Number of k-subspaces of a d-space over GF(q).
inline unsigned long long gaussian_binomial(int q, int d, int k)
{
    if (k < 0 || k > d) return 0;
    unsigned long long num = 1, den = 1;
    auto qpow = [q](int e) {
        unsigned long long r = 1;
        for (int i = 0; i < e; ++i) r *= static_cast<unsigned long long>(q);
        return r;
    };
    for (int i = 0; i < k; ++i) {
        num *= qpow(d - i) - 1;
        den *= qpow(i + 1) - 1;
    }
    return num / den;
}

/// Every k-subspace of GF(p)^d exactly once, sorted lexicographically by
/// RREF basis. Walks pivot-column profiles and fills the free entries, so
/// each subspace is produced once by construction.
inline std::vector<Subspace> enumerate_subspaces(Field field, std::size_t d, std::size_t k)
{
    if (k > d) fail(ErrorKind::DimensionMismatch, "k = " + std::to_string(k) + " exceeds d = " + std::to_string(d));
    std::vector<Subspace> out;
    if (k == 0) {
        out.emplace_back(field, d);
        return out;
    }
    out.reserve(static_cast<std::size_t>(gaussian_binomial(field.p(), int(d), int(k))));

    std::vector<std::size_t> pivots(k);
    for (std::size_t i = 0; i < k; ++i) pivots[i] = i;
    for (;;) {
        std::vector<bool> is_pivot(d, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::pair<std::size_t, std::size_t>> free;
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = pivots[r] + 1; c < d; ++c)
                if (!is_pivot[c]) free.emplace_back(r, c);

        Matrix m(field, k, d);
        for (std::size_t r = 0; r < k; ++r) m.set(r, pivots[r], 1);
        std::vector<Residue> values(free.size(), 0);
        for (;;) {
            for (std::size_t i = 0; i < free.size(); ++i) m.set(free[i].first, free[i].second, values[i]);
            out.emplace_back(m);
            std::size_t i = free.size();
            bool done = true;
            while (i > 0) {
                --i;
                if (++values[i] < field.p()) {
                    done = false;
                    break;
                }
                values[i] = 0;
            }
            if (done) break;
        }

        // next combination of pivot columns
        std::size_t i = k;
        while (i > 0 && pivots[i - 1] == d - k + (i - 1)) --i;
        if (i == 0) break;
        ++pivots[i - 1];
        for (std::size_t j = i; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- text format ----------------------------------------------------------
//
//   p d
//   <basis row as d digits>
//   ...
//   <blank line between subspaces>

inline std::string format_subspaces(Field field, std::size_t ambient, const std::vector<Subspace>& subspaces)
{
    std::ostringstream os;
    os << field.p() << ' ' << ambient << '\n';
    for (std::size_t i = 0; i < subspaces.size(); ++i) {
        if (i) os << '\n';
        for (const auto& r : subspaces[i].basis().row_strings()) os << r << '\n';
    }
    return os.str();
}

struct SubspaceDocument {
    Field field;
    std::size_t ambient;
    std::vector<Subspace> subspaces;
};

inline SubspaceDocument parse_subspaces(std::string_view text)
{
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char ch : text) {
            if (ch == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else if (ch != '\r') {
                cur.push_back(ch);
            }
        }
        if (!cur.empty()) lines.push_back(cur);
    }
    if (lines.empty()) fail(ErrorKind::BadArgument, "missing 'p d' header");
    int p = 0;
    long long d = -1;
    {
        std::istringstream hs(lines[0]);
        std::string extra;
        if (!(hs >> p >> d) || (hs >> extra) || d < 0) fail(ErrorKind::BadArgument, "bad header '" + lines[0] + "'");
    }
    Field field(p);
    const auto ambient = static_cast<std::size_t>(d);
    SubspaceDocument doc{field, ambient, {}};
    if (lines.size() == 1) return doc;

    std::vector<std::string_view> block;
    auto flush = [&] {
        doc.subspaces.emplace_back(
            Matrix::from_strings(field, ambient, std::span<const std::string_view>(block.data(), block.size())));
        block.clear();
    };
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty())
            flush();
        else
            block.push_back(lines[i]);
    }
    flush();
    return doc;
}

} // namespace grasslab
