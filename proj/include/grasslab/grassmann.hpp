#pragma once

// The Grassmannian of n-subspaces of GF(p)^{2n}: enumeration with integer
// handles, the adjacency (Grassmann) and distant relations as bit rows,
// stars, tops, pencils, graph metrics and induced permutations.

#include "grasslab/bitrow.hpp"
#include "grasslab/cliques.hpp"
#include "grasslab/subspace.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace grasslab {

enum class Relation { adjacency, distant };

constexpr std::string_view to_string(Relation r) noexcept
{
    return r == Relation::adjacency ? "adjacency" : "distant";
}

/// |G| above which an index is refused.
inline constexpr unsigned long long kMaxGrassmannianSize = 100000;

/// The enumerated Grassmannian G(p, n). Immutable after construction.
class GrassmannianIndex {
public:
    static GrassmannianIndex build(Field field, int n)
    {
        check_limits(field, n);
        return GrassmannianIndex(field, n, enumerate_subspaces(field, 2 * std::size_t(n), std::size_t(n)));
    }

    /// Rebuilds an index from an externally supplied element list, which must
    /// be exactly the canonical enumeration.
    static GrassmannianIndex from_elements(Field field, int n, std::vector<Subspace> elements)
    {
        check_limits(field, n);
        const auto expected = gaussian_binomial(field.p(), 2 * n, n);
        if (elements.size() != expected)
            fail(ErrorKind::CorruptCache,
                 "expected " + std::to_string(expected) + " elements, got " + std::to_string(elements.size()));
        for (std::size_t i = 0; i < elements.size(); ++i) {
            const auto& e = elements[i];
            if (!(e.field() == field) || e.ambient() != 2 * std::size_t(n) || e.dim() != std::size_t(n))
                fail(ErrorKind::CorruptCache, "element " + std::to_string(i) + " " + e.to_string() + " is not in G");
            if (i > 0 && !(elements[i - 1] < e))
                fail(ErrorKind::CorruptCache, "element " + std::to_string(i) + " out of canonical order");
        }
        return GrassmannianIndex(field, n, std::move(elements));
    }

    [[nodiscard]] Field field() const noexcept { return field_; }
    [[nodiscard]] int p() const noexcept { return field_.p(); }
    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] std::size_t ambient() const noexcept { return 2 * std::size_t(n_); }
    [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }

    [[nodiscard]] const Subspace& element(Handle h) const { return elements_.at(h); }
    [[nodiscard]] const std::vector<Subspace>& elements() const noexcept { return elements_; }

    [[nodiscard]] std::optional<Handle> find(const Subspace& s) const
    {
        if (!(s.field() == field_) || s.ambient() != ambient() || s.dim() != std::size_t(n_)) return std::nullopt;
        auto it = lookup_.find(s.key());
        if (it == lookup_.end()) return std::nullopt;
        return it->second;
    }

    [[nodiscard]] Handle handle_of(const Subspace& s) const
    {
        auto h = find(s);
        if (!h)
            fail(ErrorKind::NotInGrassmannian, s.to_string() + " is not an element of G(" + std::to_string(p()) + "," +
                                                   std::to_string(n_) + ")");
        return *h;
    }

    [[nodiscard]] const BitRow& row(Relation r, Handle h) const
    {
        return r == Relation::adjacency ? adjacency_.at(h) : distant_.at(h);
    }
    [[nodiscard]] std::span<const BitRow> rows(Relation r) const
    {
        return r == Relation::adjacency ? std::span<const BitRow>(adjacency_) : std::span<const BitRow>(distant_);
    }
    [[nodiscard]] bool adjacent(Handle a, Handle b) const { return adjacency_.at(a).test(b); }
    [[nodiscard]] bool distant(Handle a, Handle b) const { return distant_.at(a).test(b); }

    friend bool operator==(const GrassmannianIndex& a, const GrassmannianIndex& b)
    {
        return a.field_ == b.field_ && a.n_ == b.n_ && a.elements_ == b.elements_ && a.adjacency_ == b.adjacency_ &&
               a.distant_ == b.distant_;
    }

private:
    GrassmannianIndex(Field field, int n, std::vector<Subspace> elements)
        : field_(field), n_(n), elements_(std::move(elements))
    {
        const std::size_t count = elements_.size();
        lookup_.reserve(count);
        for (std::size_t i = 0; i < count; ++i) lookup_.emplace(elements_[i].key(), static_cast<Handle>(i));
        adjacency_.assign(count, BitRow(count));
        distant_.assign(count, BitRow(count));
        const std::size_t full = ambient();
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i + 1; j < count; ++j) {
                // dim(X+Y) = n+1 <=> adjacent; = 2n <=> complementary
                const std::size_t s = stacked_rank(elements_[i].basis(), elements_[j].basis());
                if (s == std::size_t(n_) + 1) {
                    adjacency_[i].set(j);
                    adjacency_[j].set(i);
                }
                if (s == full) {
                    distant_[i].set(j);
                    distant_[j].set(i);
                }
            }
    }

    static void check_limits(Field field, int n)
    {
        if (n < 1) fail(ErrorKind::BadArgument, "n must be at least 1");
        if (n > 3 || gaussian_binomial(field.p(), 2 * n, n) > kMaxGrassmannianSize)
            fail(ErrorKind::ResourceLimit, "G(" + std::to_string(field.p()) + "," + std::to_string(n) +
                                               ") exceeds the resource guard (n <= 3, |G| <= " +
                                               std::to_string(kMaxGrassmannianSize) + ")");
    }

    Field field_;
    int n_;
    std::vector<Subspace> elements_;
    std::unordered_map<std::uint64_t, Handle> lookup_;
    std::vector<BitRow> adjacency_;
    std::vector<BitRow> distant_;
};

inline GrassmannianIndex build_index(int p, int n) { return GrassmannianIndex::build(Field(p), n); }

// --- relations on subspaces ------------------------------------------------

inline void check_in_grassmannian(const Subspace& x, const Subspace& y)
{
    check_compatible(x, y);
    if (x.ambient() % 2 || x.dim() * 2 != x.ambient() || y.dim() * 2 != y.ambient())
        fail(ErrorKind::NotInGrassmannian, x.to_string() + ", " + y.to_string() + " are not both half-dimensional");
}

/// dim X/(X n Y) = dim Y/(X n Y) = 1.
inline bool is_adjacent(const Subspace& x, const Subspace& y)
{
    check_in_grassmannian(x, y);
    const std::size_t meet = intersect(x, y).dim();
    return x.dim() - meet == 1 && y.dim() - meet == 1;
}

/// X + Y = V and X n Y = 0.
inline bool is_distant(const Subspace& x, const Subspace& y)
{
    check_in_grassmannian(x, y);
    return intersect(x, y).is_zero() && sum(x, y).dim() == x.ambient();
}

// --- stars, tops, pencils ---------------------------------------------------

enum class CliqueKind { star, top };

constexpr std::string_view to_string(CliqueKind k) noexcept { return k == CliqueKind::star ? "star" : "top"; }

/// A star (all E > M with dim E = dim M + 1) or a top (all E < N with
/// dim E = dim N - 1), with members as sorted handles.
struct CliqueLabel {
    CliqueKind kind;
    Subspace carrier;
    std::vector<Handle> members;

    friend bool operator==(const CliqueLabel&, const CliqueLabel&) = default;
};

inline CliqueLabel star(const GrassmannianIndex& index, const Subspace& centre)
{
    if (!(centre.field() == index.field()) || centre.ambient() != index.ambient() ||
        centre.dim() + 1 != std::size_t(index.n()))
        fail(ErrorKind::BadCentreDimension, "star centre " + centre.to_string() + " must have dimension n-1 = " +
                                                std::to_string(index.n() - 1));
    CliqueLabel label{CliqueKind::star, centre, {}};
    for (std::size_t h = 0; h < index.size(); ++h)
        if (contains(index.element(Handle(h)), centre)) label.members.push_back(Handle(h));
    return label;
}

inline CliqueLabel top(const GrassmannianIndex& index, const Subspace& carrier)
{
    if (!(carrier.field() == index.field()) || carrier.ambient() != index.ambient() ||
        carrier.dim() != std::size_t(index.n()) + 1)
        fail(ErrorKind::BadCarrierDimension, "top carrier " + carrier.to_string() + " must have dimension n+1 = " +
                                                 std::to_string(index.n() + 1));
    CliqueLabel label{CliqueKind::top, carrier, {}};
    for (std::size_t h = 0; h < index.size(); ++h)
        if (contains(carrier, index.element(Handle(h)))) label.members.push_back(Handle(h));
    return label;
}

/// (p^{n+1} - 1) / (p - 1): size of every star and every top.
inline std::size_t clique_size(int p, int n)
{
    return static_cast<std::size_t>(gaussian_binomial(p, n + 1, 1));
}

/// All stars (one per (n-1)-subspace) followed by all tops (one per
/// (n+1)-subspace), each group in canonical order of its carrier.
inline std::vector<CliqueLabel> maximal_adjacency_cliques(const GrassmannianIndex& index)
{
    std::vector<CliqueLabel> out;
    const auto n = std::size_t(index.n());
    for (const auto& m : enumerate_subspaces(index.field(), index.ambient(), n - 1)) out.push_back(star(index, m));
    for (const auto& c : enumerate_subspaces(index.field(), index.ambient(), n + 1)) out.push_back(top(index, c));
    return out;
}

/// G[M,N]: the p+1 elements strictly between M (dim n-1) and N (dim n+1).
struct Pencil {
    Subspace lower;
    Subspace upper;
    std::vector<Handle> members;

    friend bool operator==(const Pencil&, const Pencil&) = default;
};

inline Pencil pencil(const GrassmannianIndex& index, const Subspace& lower, const Subspace& upper)
{
    const auto n = std::size_t(index.n());
    if (!(lower.field() == index.field()) || !(upper.field() == index.field()) ||
        lower.ambient() != index.ambient() || upper.ambient() != index.ambient() || lower.dim() + 1 != n ||
        upper.dim() != n + 1 || !contains(upper, lower))
        fail(ErrorKind::BadFlag, "(" + lower.to_string() + ", " + upper.to_string() +
                                     ") is not a flag M < N with dim M = n-1, dim N = n+1");
    Pencil out{lower, upper, {}};
    for (std::size_t h = 0; h < index.size(); ++h) {
        const auto& x = index.element(Handle(h));
        if (contains(x, lower) && contains(upper, x)) out.members.push_back(Handle(h));
    }
    return out;
}

/// Every pencil, built from the flags M < N directly; sorted by members.
inline std::vector<Pencil> pencils_from_flags(const GrassmannianIndex& index)
{
    const auto n = std::size_t(index.n());
    auto lows = enumerate_subspaces(index.field(), index.ambient(), n - 1);
    auto highs = enumerate_subspaces(index.field(), index.ambient(), n + 1);
    std::vector<Pencil> out;
    for (const auto& m : lows)
        for (const auto& c : highs)
            if (contains(c, m)) out.push_back(pencil(index, m, c));
    std::sort(out.begin(), out.end(), [](const Pencil& a, const Pencil& b) { return a.members < b.members; });
    return out;
}

/// Sets with at least two elements that are intersections of two distinct
/// maximal adjacency cliques, returned as pencils with M = X n Y and
/// N = X + Y recovered from any two members. Sorted by members, deduplicated.
inline std::vector<Pencil> pencils_from_cliques(const GrassmannianIndex& index,
                                                const std::vector<std::vector<Handle>>& cliques)
{
    std::set<std::vector<Handle>> seen;
    for (std::size_t i = 0; i < cliques.size(); ++i)
        for (std::size_t j = i + 1; j < cliques.size(); ++j) {
            std::vector<Handle> common;
            std::set_intersection(cliques[i].begin(), cliques[i].end(), cliques[j].begin(), cliques[j].end(),
                                  std::back_inserter(common));
            if (common.size() >= 2) seen.insert(std::move(common));
        }
    std::vector<Pencil> out;
    for (const auto& members : seen) {
        const auto& x = index.element(members[0]);
        const auto& y = index.element(members[1]);
        out.push_back(Pencil{intersect(x, y), sum(x, y), members});
    }
    return out;
}

// --- adjacency from the distant relation -------------------------------------

/// True iff every X distant from c is distant from a or from b. Reads only
/// the distant relation.
inline bool is_adjacency_witness(std::span<const BitRow> distant, Handle a, Handle b, Handle c)
{
    if (c == a || c == b) return false;
    return distant[c].is_subset_of(distant[a] | distant[b]);
}

inline bool is_adjacency_witness(const GrassmannianIndex& index, Handle a, Handle b, Handle c)
{
    return is_adjacency_witness(index.rows(Relation::distant), a, b, c);
}

/// Smallest-handle C != A, B witnessing adjacency of A and B through the
/// distant relation alone, if any.
inline std::optional<Handle> adjacency_witness(std::span<const BitRow> distant, Handle a, Handle b)
{
    if (a == b) return std::nullopt;
    const BitRow either = distant[a] | distant[b];
    for (std::size_t c = 0; c < distant.size(); ++c) {
        if (c == a || c == b) continue;
        if (distant[c].is_subset_of(either)) return Handle(c);
    }
    return std::nullopt;
}

inline std::optional<Handle> adjacency_witness(const GrassmannianIndex& index, Handle a, Handle b)
{
    return adjacency_witness(index.rows(Relation::distant), a, b);
}

/// Adjacency decided from the distant graph alone. Two equal handles are
/// never adjacent.
inline bool adjacent_via_distant(const GrassmannianIndex& index, Handle a, Handle b)
{
    return adjacency_witness(index, a, b).has_value();
}

/// Adjacency row of a, recomputed from the distant relation alone.
inline BitRow adjacency_row_via_distant(std::span<const BitRow> distant, Handle a)
{
    BitRow row(distant.size());
    for (std::size_t b = 0; b < distant.size(); ++b)
        if (adjacency_witness(distant, a, Handle(b))) row.set(b);
    return row;
}

// --- metrics ------------------------------------------------------------------

/// BFS distances from source; -1 marks unreachable vertices.
inline std::vector<int> distances_from(std::span<const BitRow> rows, Handle source)
{
    const std::size_t count = rows.size();
    std::vector<int> dist(count, -1);
    BitRow visited(count), frontier(count);
    visited.set(source);
    frontier.set(source);
    dist[source] = 0;
    for (int level = 1; frontier.any(); ++level) {
        BitRow next(count);
        frontier.for_each([&](std::size_t v) { next |= rows[v]; });
        next.subtract(visited);
        next.for_each([&](std::size_t v) { dist[v] = level; });
        visited |= next;
        frontier = std::move(next);
    }
    return dist;
}

inline std::vector<int> distances_from(const GrassmannianIndex& index, Relation rel, Handle source)
{
    return distances_from(index.rows(rel), source);
}

struct GraphMetrics {
    bool connected;
    int diameter; ///< -1 when disconnected
    std::vector<int> eccentricity;
};

inline GraphMetrics graph_metrics(const GrassmannianIndex& index, Relation rel)
{
    GraphMetrics m{true, 0, std::vector<int>(index.size(), 0)};
    for (std::size_t s = 0; s < index.size(); ++s) {
        auto d = distances_from(index, rel, Handle(s));
        int ecc = 0;
        for (int x : d) ecc = (x < 0 || ecc < 0) ? -1 : std::max(ecc, x);
        m.eccentricity[s] = ecc;
        if (ecc < 0) m.connected = false;
        m.diameter = std::max(m.diameter, ecc);
    }
    if (!m.connected) m.diameter = -1;
    return m;
}

/// Distant iff the Grassmann-graph distance equals n.
inline bool distant_via_grassmann_distance(const GrassmannianIndex& index, Handle x, Handle y)
{
    return distances_from(index, Relation::adjacency, x).at(y) == index.n();
}

// --- induced permutations -------------------------------------------------------

using Permutation = std::vector<Handle>;

/// X -> X g for an invertible 2n x 2n matrix g (row vectors).
inline Permutation induced_permutation(const GrassmannianIndex& index, const Matrix& g)
{
    if (!(g.field() == index.field()) || g.rows() != index.ambient() || g.cols() != index.ambient())
        fail(ErrorKind::DimensionMismatch, "map must be " + std::to_string(index.ambient()) + "x" +
                                               std::to_string(index.ambient()) + " over GF(" +
                                               std::to_string(index.p()) + ")");
    if (!is_invertible(g)) fail(ErrorKind::Singular, "map " + g.to_string() + " is not invertible");
    Permutation perm(index.size());
    for (std::size_t h = 0; h < index.size(); ++h) perm[h] = index.handle_of(image(index.element(Handle(h)), g));
    return perm;
}

/// X -> X^perp under the standard dot product.
inline Permutation duality_permutation(const GrassmannianIndex& index)
{
    Permutation perm(index.size());
    for (std::size_t h = 0; h < index.size(); ++h) perm[h] = index.handle_of(annihilator(index.element(Handle(h))));
    return perm;
}

inline bool is_permutation(const Permutation& perm)
{
    std::vector<bool> hit(perm.size(), false);
    for (auto h : perm) {
        if (h >= perm.size() || hit[h]) return false;
        hit[h] = true;
    }
    return true;
}

/// First pair (a, b) whose relation status changes under perm, if any.
inline std::optional<std::pair<Handle, Handle>> relation_violation(const GrassmannianIndex& index,
                                                                    const Permutation& perm, Relation rel)
{
    for (std::size_t a = 0; a < index.size(); ++a)
        for (std::size_t b = a + 1; b < index.size(); ++b) {
            const bool before = index.row(rel, Handle(a)).test(b);
            const bool after = index.row(rel, perm[a]).test(perm[b]);
            if (before != after) return std::pair{Handle(a), Handle(b)};
        }
    return std::nullopt;
}

inline std::vector<Handle> apply(const Permutation& perm, std::span<const Handle> members)
{
    std::vector<Handle> out;
    out.reserve(members.size());
    for (auto h : members) out.push_back(perm[h]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace grasslab
