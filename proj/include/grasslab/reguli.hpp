#pragma once

// Z-reguli of the Grassmannian: the two line families of a frame, reguli
// through three mutually distant elements, directrices, the partial-regulus
// and regulus predicates, and the characterisation that uses the distant
// relation only.

#include "grasslab/grassmann.hpp"
#include "grasslab/ringline.hpp"

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace grasslab {

using SegreFrame = Frame;

/// A set of mutually distant elements of G (sorted) together with the lines
/// meeting every one of them (sorted).
struct Regulus {
    std::vector<Subspace> members;
    std::vector<Subspace> directrices;

    friend bool operator==(const Regulus&, const Regulus&) = default;
};

namespace detail {

inline Matrix row_matrix(Field f, std::span<const Residue> v)
{
    Matrix m(f, 1, v.size());
    for (std::size_t c = 0; c < v.size(); ++c) m.set(0, c, v[c]);
    return m;
}

inline void check_distant_clique(const std::vector<Subspace>& members)
{
    if (members.size() < 3)
        fail(ErrorKind::TooFewMembers, "need at least three members, got " + std::to_string(members.size()));
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (!is_distant(members[i], members[j]))
                fail(ErrorKind::NotDistantClique,
                     members[i].to_string() + " and " + members[j].to_string() + " are not distant");
}

} // namespace detail

/// u^lambda for a vector u of U.
inline Vector apply_lambda(const Frame& frame, std::span<const Residue> u)
{
    const Matrix& bu = frame.u.basis();
    // canonical basis is in RREF, so the coordinates sit at the pivot columns
    Matrix coords(bu.field(), 1, bu.rows());
    for (std::size_t i = 0; i < bu.rows(); ++i) {
        std::size_t pivot = 0;
        while (bu(i, pivot) == 0) ++pivot;
        coords.set(0, i, u[pivot]);
    }
    if (!(matmul(coords, bu) == detail::row_matrix(bu.field(), u)))
        fail(ErrorKind::BadArgument, "vector is not in U = " + frame.u.to_string());
    Matrix img = matmul(matmul(coords, frame.lambda), frame.u_prime.basis());
    return {img.row(0).begin(), img.row(0).end()};
}

/// L_u = { r u + s u^lambda }.
inline Subspace first_kind_line(const Frame& frame, std::span<const Residue> u)
{
    validate(frame);
    if (u.size() != frame.u.ambient()) fail(ErrorKind::DimensionMismatch, "vector length differs from ambient");
    if (std::all_of(u.begin(), u.end(), [](Residue x) { return x == 0; }))
        fail(ErrorKind::ZeroVector, "u must be nonzero");
    Vector ul = apply_lambda(frame, u);
    const Field f = frame.u.field();
    return Subspace(Matrix::vstack(detail::row_matrix(f, u), detail::row_matrix(f, ul)));
}

/// One first-kind line per point of U, sorted.
inline std::vector<Subspace> first_kind_lines(const Frame& frame)
{
    std::vector<Subspace> out;
    for (const auto& pt : points(frame.u)) out.push_back(first_kind_line(frame, pt.basis().row(0)));
    std::sort(out.begin(), out.end());
    return out;
}

/// T^(x,y) = { x u + y u^lambda } for one representative (x, y).
inline Subspace second_kind_member(const Frame& frame, Residue x, Residue y)
{
    const Matrix& bu = frame.u.basis();
    Matrix lam = matmul(frame.lambda, frame.u_prime.basis());
    return Subspace(add(scale(bu, x), scale(lam, y)));
}

/// Transversal of two complementary subspaces through a point on neither:
/// the unique line through pt meeting both.
inline Subspace transversal(const Subspace& pt, const Subspace& e1, const Subspace& e2)
{
    const Matrix basis = Matrix::vstack(e1.basis(), e2.basis());
    if (!is_invertible(basis)) fail(ErrorKind::NotMutuallyDistant, "transversal needs complementary subspaces");
    const Matrix coords = matmul(pt.basis(), invert(basis));
    const std::size_t k = e1.dim();
    Matrix c1(pt.field(), 1, basis.rows()), c2(pt.field(), 1, basis.rows());
    for (std::size_t i = 0; i < basis.rows(); ++i) (i < k ? c1 : c2).set(0, i, coords(0, i));
    Subspace line(Matrix::vstack(matmul(c1, basis), matmul(c2, basis)));
    if (line.dim() != 2) fail(ErrorKind::BadArgument, pt.to_string() + " lies on one of the two subspaces");
    return line;
}

/// Lines meeting every member, built from the points of the first member
/// and the transversals of the second and third.
inline std::vector<Subspace> directrices(const std::vector<Subspace>& members)
{
    detail::check_distant_clique(members);
    std::vector<Subspace> out;
    for (const auto& pt : points(members[0])) {
        Subspace line = transversal(pt, members[1], members[2]);
        bool all = std::all_of(members.begin(), members.end(), [&](const Subspace& e) { return meets(line, e); });
        if (all) out.push_back(std::move(line));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The p + 1 subspaces of second kind of a frame, with their directrices.
inline Regulus second_kind_family(const Frame& frame)
{
    validate(frame);
    const Field f = frame.u.field();
    Regulus r;
    r.members.push_back(second_kind_member(frame, 1, 0));
    r.members.push_back(second_kind_member(frame, 0, 1));
    for (int y = 1; y < f.p(); ++y) r.members.push_back(second_kind_member(frame, 1, static_cast<Residue>(y)));
    std::sort(r.members.begin(), r.members.end());
    r.directrices = directrices(r.members);
    return r;
}

/// Frame (E0, E1, lambda) in which E2 is the graph of lambda.
inline Frame frame_through(const Subspace& e0, const Subspace& e1, const Subspace& e2)
{
    check_in_grassmannian(e0, e1);
    check_in_grassmannian(e0, e2);
    if (!is_distant(e0, e1) || !is_distant(e0, e2) || !is_distant(e1, e2))
        fail(ErrorKind::NotMutuallyDistant,
             e0.to_string() + ", " + e1.to_string() + ", " + e2.to_string() + " are not mutually distant");
    auto [pm, qm] = graph_coordinates(e0.basis(), e1.basis(), e2.basis());
    return {e0, e1, matmul(invert(pm), qm)};
}

/// The unique regulus containing three mutually distant elements.
inline Regulus regulus_through(const Subspace& e0, const Subspace& e1, const Subspace& e2)
{
    return second_kind_family(frame_through(e0, e1, e2));
}

/// R1 (distant clique, at least three members) and R2 (a line meeting three
/// members meets all).
inline bool is_partial_regulus(const std::vector<Subspace>& s)
{
    if (s.size() < 3) return false;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!is_distant(s[i], s[j])) return false;
    // Every line meeting three mutually distant members passes through a
    // point of the first and is the transversal of the other two there.
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b)
            for (std::size_t c = b + 1; c < s.size(); ++c)
                for (const auto& pt : points(s[a])) {
                    Subspace line = transversal(pt, s[b], s[c]);
                    for (const auto& e : s)
                        if (!meets(line, e)) return false;
                }
    return true;
}

/// R1-R3. Maximality is decided by comparing with the regulus through the
/// first three members.
inline bool is_regulus(const std::vector<Subspace>& s)
{
    if (!is_partial_regulus(s)) return false;
    auto sorted = s;
    std::sort(sorted.begin(), sorted.end());
    return regulus_through(s[0], s[1], s[2]).members == sorted;
}

/// Elements X of G outside s for which s u {X} is still a partial regulus.
inline std::vector<Handle> regulus_extensions(const GrassmannianIndex& index, const std::vector<Subspace>& s)
{
    std::vector<Handle> out;
    for (std::size_t h = 0; h < index.size(); ++h) {
        const auto& x = index.element(Handle(h));
        if (std::find(s.begin(), s.end(), x) != s.end()) continue;
        auto bigger = s;
        bigger.push_back(x);
        if (is_partial_regulus(bigger)) out.push_back(Handle(h));
    }
    return out;
}

/// Brute-force R3: a partial regulus that no element of G extends.
inline bool is_regulus_by_extension(const GrassmannianIndex& index, const std::vector<Subspace>& s)
{
    return is_partial_regulus(s) && regulus_extensions(index, s).empty();
}

/// Points of a directrix lying on some member, in member order.
inline std::vector<Subspace> subline_coverage(const Regulus& r, const Subspace& line)
{
    if (line.dim() != 2) fail(ErrorKind::NotADirectrix, line.to_string() + " is not a line");
    std::vector<Subspace> out;
    for (const auto& e : r.members) {
        Subspace meet = intersect(line, e);
        if (meet.dim() != 1)
            fail(ErrorKind::NotADirectrix, line.to_string() + " does not meet " + e.to_string() + " in a point");
        out.push_back(std::move(meet));
    }
    return out;
}

inline std::vector<Handle> handles_of(const GrassmannianIndex& index, const std::vector<Subspace>& s)
{
    std::vector<Handle> out;
    for (const auto& x : s) out.push_back(index.handle_of(x));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Subspace> subspaces_of(const GrassmannianIndex& index, std::span<const Handle> hs)
{
    std::vector<Subspace> out;
    for (auto h : hs) out.push_back(index.element(h));
    return out;
}

// --- characterisation through the distant graph ------------------------------

/// Decides the regulus conditions from the distant relation alone; the
/// adjacency it needs is reconstructed from distant rows on demand.
class DistantCharacterization {
public:
    explicit DistantCharacterization(const GrassmannianIndex& index)
        : distant_(index.rows(Relation::distant).begin(), index.rows(Relation::distant).end()),
          adjacency_(distant_.size())
    {
    }

    /// Distant clique with at least three members.
    [[nodiscard]] bool condition1(std::span<const Handle> s) const
    {
        if (s.size() < 3) return false;
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                if (!distant_[s[i]].test(s[j])) return false;
        return true;
    }

    /// For distinct E0, E1, E2 in s and W ~ E0 not distant to E1, E2,
    /// W is distant to no member of s.
    [[nodiscard]] bool condition2(std::span<const Handle> s) const
    {
        BitRow any_member(distant_.size());
        for (auto e : s) any_member |= distant_[e];
        for (auto e0 : s) {
            const BitRow& adj = adjacency(e0);
            for (std::size_t i = 0; i < s.size(); ++i)
                for (std::size_t j = i + 1; j < s.size(); ++j) {
                    if (s[i] == e0 || s[j] == e0) continue;
                    BitRow w = adj;
                    w.subtract(distant_[s[i]]);
                    w.subtract(distant_[s[j]]);
                    if (w.intersects(any_member)) return false;
                }
        }
        return true;
    }

    [[nodiscard]] bool partial(std::span<const Handle> s) const { return condition1(s) && condition2(s); }

    /// Elements X outside s with s u {X} satisfying conditions 1 and 2.
    [[nodiscard]] std::vector<Handle> extensions(std::span<const Handle> s) const
    {
        std::vector<Handle> out;
        if (s.empty()) return out;
        BitRow candidates = distant_[s[0]];
        for (auto e : s) candidates &= distant_[e];
        std::vector<Handle> bigger(s.begin(), s.end());
        bigger.push_back(0);
        candidates.for_each([&](std::size_t x) {
            bigger.back() = Handle(x);
            if (condition2(bigger)) out.push_back(Handle(x));
        });
        return out;
    }

    /// Conditions 1-3. Conditions 1 and 2 pass to subsets, so maximality
    /// only needs single-element extensions.
    [[nodiscard]] bool satisfies(std::span<const Handle> s) const { return partial(s) && extensions(s).empty(); }

    [[nodiscard]] const BitRow& adjacency(Handle a) const
    {
        if (!adjacency_[a]) adjacency_[a] = adjacency_row_via_distant(distant_, a);
        return *adjacency_[a];
    }

private:
    std::vector<BitRow> distant_;
    mutable std::vector<std::optional<BitRow>> adjacency_;
};

inline bool satisfies_distant_conditions(const GrassmannianIndex& index, std::span<const Handle> s)
{
    return DistantCharacterization(index).satisfies(s);
}

// --- lemma sweeps -------------------------------------------------------------------

struct SweepReport {
    std::size_t instances = 0;
    std::size_t violations = 0;
    std::string witness; ///< first violation, empty if none
};

/// For W ~ E0, E distant E0, W not distant E: W n E is a point.
inline SweepReport check_lemma_z1(const GrassmannianIndex& index)
{
    SweepReport r;
    for (std::size_t e0 = 0; e0 < index.size(); ++e0) {
        const BitRow& far0 = index.row(Relation::distant, Handle(e0));
        index.row(Relation::adjacency, Handle(e0)).for_each([&](std::size_t w) {
            BitRow es = far0;
            es.subtract(index.row(Relation::distant, Handle(w)));
            es.for_each([&](std::size_t e) {
                ++r.instances;
                const auto d = intersection_dim(index.element(Handle(w)), index.element(Handle(e)));
                if (d != 1) {
                    if (r.violations++ == 0)
                        r.witness = "W=" + index.element(Handle(w)).to_string() +
                                    " E0=" + index.element(Handle(e0)).to_string() +
                                    " E=" + index.element(Handle(e)).to_string() + " meet in dim " + std::to_string(d);
                }
            });
        });
    }
    return r;
}

/// For mutually distant E0, E1, E2 and W ~ E0 not distant E1, E2, the line
/// through p1 = E1 n W and p2 = E2 n W meets E0.
inline SweepReport check_lemma_z2(const GrassmannianIndex& index)
{
    SweepReport r;
    auto record = [&](std::size_t e0, std::size_t e1, std::size_t e2, std::size_t w, const std::string& why) {
        if (r.violations++ == 0)
            r.witness = "E0=" + index.element(Handle(e0)).to_string() + " E1=" + index.element(Handle(e1)).to_string() +
                        " E2=" + index.element(Handle(e2)).to_string() + " W=" + index.element(Handle(w)).to_string() +
                        ": " + why;
    };
    for (std::size_t e0 = 0; e0 < index.size(); ++e0) {
        const BitRow& far0 = index.row(Relation::distant, Handle(e0));
        far0.for_each([&](std::size_t e1) {
            BitRow far01 = far0 & index.row(Relation::distant, Handle(e1));
            far01.for_each([&](std::size_t e2) {
                if (e2 <= e1) return;
                BitRow ws = index.row(Relation::adjacency, Handle(e0));
                ws.subtract(index.row(Relation::distant, Handle(e1)));
                ws.subtract(index.row(Relation::distant, Handle(e2)));
                ws.for_each([&](std::size_t w) {
                    ++r.instances;
                    const auto& wsp = index.element(Handle(w));
                    Subspace p1 = intersect(index.element(Handle(e1)), wsp);
                    Subspace p2 = intersect(index.element(Handle(e2)), wsp);
                    if (p1.dim() != 1 || p2.dim() != 1) return record(e0, e1, e2, w, "intersections not points");
                    Subspace line = sum(p1, p2);
                    if (line.dim() != 2) return record(e0, e1, e2, w, "p1 = p2");
                    if (!meets(line, index.element(Handle(e0)))) record(e0, e1, e2, w, "line misses E0");
                });
            });
        });
    }
    return r;
}

} // namespace grasslab
