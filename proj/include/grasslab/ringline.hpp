#pragma once

// The projective line over R = M_n(GF(p)), its bijection onto the
// Grassmannian, the GL(2,R) action and the chains through the embedded
// projective line over the prime field.
//
// Conventions: vectors are rows and maps act on the right, so a point with
// block row (alpha | beta) is sent by psi = [[a, b], [c, d]] to
// (alpha a + beta c | alpha b + beta d). Hence act(psi1 * psi2, x) equals
// act(psi2, act(psi1, x)).

#include "grasslab/grassmann.hpp"

#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace grasslab {

/// A point R(alpha, beta) of P(R), stored as the RREF of the n x 2n block
/// row (alpha | beta). Left-equivalent pairs give equal values.
class RingPoint {
public:
    RingPoint(const Matrix& alpha, const Matrix& beta) : RingPoint(Matrix::hstack(alpha, beta), 0)
    {
        if (!alpha.is_square() || !beta.is_square() || alpha.rows() != beta.rows())
            fail(ErrorKind::DimensionMismatch, "alpha and beta must both be n x n");
    }

    /// From an n x 2n block row of rank n.
    static RingPoint from_block_row(const Matrix& row)
    {
        if (row.cols() != 2 * row.rows()) fail(ErrorKind::DimensionMismatch, "block row must be n x 2n");
        return RingPoint(row, 0);
    }

    [[nodiscard]] Field field() const noexcept { return row_.field(); }
    [[nodiscard]] std::size_t n() const noexcept { return row_.rows(); }
    [[nodiscard]] const Matrix& block_row() const noexcept { return row_; }
    [[nodiscard]] Matrix alpha() const { return row_.block(0, 0, n(), n()); }
    [[nodiscard]] Matrix beta() const { return row_.block(0, n(), n(), n()); }

    [[nodiscard]] std::string to_string() const { return "R" + row_.to_string(); }

    friend bool operator==(const RingPoint&, const RingPoint&) = default;
    friend std::strong_ordering operator<=>(const RingPoint& a, const RingPoint& b) { return a.row_ <=> b.row_; }

private:
    RingPoint(const Matrix& row, int) : row_(rref(row).form)
    {
        if (rank(row_) != row_.rows())
            fail(ErrorKind::NotAdmissible, "block row " + row.to_string() + " has rank < " + std::to_string(row.rows()));
    }

    Matrix row_;
};

inline RingPoint make_point(const Matrix& alpha, const Matrix& beta) { return RingPoint(alpha, beta); }

/// Two points are distant iff the stacked 2n x 2n matrix is invertible.
inline bool ring_distant(const RingPoint& a, const RingPoint& b)
{
    return is_invertible(Matrix::vstack(a.block_row(), b.block_row()));
}

/// An element of GL(2, M_n(GF(p))), kept as the assembled 2n x 2n matrix.
class GL2RElement {
public:
    GL2RElement(const Matrix& alpha, const Matrix& beta, const Matrix& gamma, const Matrix& delta)
        : GL2RElement(Matrix::vstack(Matrix::hstack(alpha, beta), Matrix::hstack(gamma, delta)))
    {
    }

    explicit GL2RElement(const Matrix& assembled) : m_(assembled)
    {
        if (!m_.is_square() || m_.rows() % 2) fail(ErrorKind::DimensionMismatch, "GL(2,R) element must be 2n x 2n");
        if (!is_invertible(m_)) fail(ErrorKind::Singular, "matrix " + m_.to_string() + " is not invertible");
    }

    static GL2RElement identity(Field field, std::size_t n) { return GL2RElement(Matrix::identity(field, 2 * n)); }

    template <class Engine>
    static GL2RElement random(Field field, std::size_t n, Engine& rng)
    {
        return GL2RElement(random_invertible(field, 2 * n, rng));
    }

    [[nodiscard]] std::size_t n() const noexcept { return m_.rows() / 2; }
    [[nodiscard]] const Matrix& matrix() const noexcept { return m_; }
    [[nodiscard]] Matrix alpha() const { return m_.block(0, 0, n(), n()); }
    [[nodiscard]] Matrix beta() const { return m_.block(0, n(), n(), n()); }
    [[nodiscard]] Matrix gamma() const { return m_.block(n(), 0, n(), n()); }
    [[nodiscard]] Matrix delta() const { return m_.block(n(), n(), n(), n()); }

    [[nodiscard]] GL2RElement inverse() const { return GL2RElement(invert(m_)); }

    friend GL2RElement operator*(const GL2RElement& a, const GL2RElement& b)
    {
        return GL2RElement(matmul(a.m_, b.m_));
    }
    friend bool operator==(const GL2RElement&, const GL2RElement&) = default;

private:
    Matrix m_;
};

inline RingPoint act(const GL2RElement& psi, const RingPoint& pt)
{
    if (psi.n() != pt.n()) fail(ErrorKind::DimensionMismatch, "psi and point have different n");
    return RingPoint::from_block_row(matmul(pt.block_row(), psi.matrix()));
}

// --- frames and the map onto G ------------------------------------------------

/// (U, U', lambda): two distant elements of G and an isomorphism U -> U',
/// written as the n x n matrix taking the canonical basis rows of U to
/// combinations of the canonical basis rows of U'.
struct Frame {
    Subspace u;
    Subspace u_prime;
    Matrix lambda;
};

inline Frame standard_frame(Field field, std::size_t n)
{
    Matrix first(field, n, 2 * n), last(field, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        first.set(i, i, 1);
        last.set(i, n + i, 1);
    }
    return {Subspace(first), Subspace(last), Matrix::identity(field, n)};
}

inline void validate(const Frame& f)
{
    const std::size_t n = f.lambda.rows();
    if (!f.lambda.is_square() || !(f.u.field() == f.lambda.field()))
        fail(ErrorKind::BadFrame, "lambda must be a square matrix over the frame's field");
    if (f.u.dim() != n || f.u_prime.dim() != n || f.u.ambient() != 2 * n || f.u_prime.ambient() != 2 * n)
        fail(ErrorKind::BadFrame, "U and U' must be n-subspaces of a 2n-space");
    if (!is_distant(f.u, f.u_prime)) fail(ErrorKind::BadFrame, "U and U' are not distant");
    if (!is_invertible(f.lambda)) fail(ErrorKind::BadFrame, "lambda " + f.lambda.to_string() + " is singular");
}

/// The 2n x 2n matrix whose rows are u_1..u_n followed by u_1^lambda..u_n^lambda;
/// it sends coordinates (u0 | u1) to the vector u0 + u1^lambda of V.
inline Matrix frame_basis(const Frame& f)
{
    validate(f);
    return Matrix::vstack(f.u.basis(), matmul(f.lambda, f.u_prime.basis()));
}

/// U^(alpha, beta) = { u^alpha + u^(beta lambda) }.
inline Subspace phi(const RingPoint& pt, const Frame& frame)
{
    if (pt.n() != frame.lambda.rows()) fail(ErrorKind::DimensionMismatch, "point and frame have different n");
    return Subspace(matmul(pt.block_row(), frame_basis(frame)));
}

/// With the standard frame phi is the row space of (alpha | beta).
inline Subspace phi(const RingPoint& pt) { return Subspace(pt.block_row()); }

/// psi-hat: the linear map of V induced by psi, as a matrix acting on row
/// vectors of V in standard coordinates.
inline Matrix hat(const GL2RElement& psi, const Frame& frame)
{
    const Matrix c = frame_basis(frame);
    return matmul(matmul(invert(c), psi.matrix()), c);
}

inline Matrix hat(const GL2RElement& psi) { return psi.matrix(); }

/// Linear automorphism of V carrying phi_from(x) to phi_to(x) for every
/// point x (same coordinate matrices on both sides).
inline Matrix frame_transition(const Frame& from, const Frame& to)
{
    return matmul(invert(frame_basis(from)), frame_basis(to));
}

/// Group element taking (R(I,0), R(0,I)) to (a, b); exists iff a, b distant.
inline std::optional<GL2RElement> distant_witness(const RingPoint& a, const RingPoint& b)
{
    Matrix m = Matrix::vstack(a.block_row(), b.block_row());
    if (!is_invertible(m)) return std::nullopt;
    return GL2RElement(m);
}

/// Given bases (as rows) of mutually complementary e0, e1, e2, returns
/// (P, Q) with e2 = rows of P * e0 + Q * e1. Both are invertible.
inline std::pair<Matrix, Matrix> graph_coordinates(const Matrix& e0, const Matrix& e1, const Matrix& e2)
{
    const std::size_t n = e0.rows();
    Matrix coords = matmul(e2, invert(Matrix::vstack(e0, e1)));
    Matrix pm = coords.block(0, 0, n, n), qm = coords.block(0, n, n, n);
    if (!is_invertible(pm) || !is_invertible(qm))
        fail(ErrorKind::NotMutuallyDistant, "third subspace is not complementary to both others");
    return {pm, qm};
}

/// Group element taking R(I,0), R(0,I), R(I,I) to the mutually distant
/// points a, b, c respectively.
inline GL2RElement triple_witness(const RingPoint& a, const RingPoint& b, const RingPoint& c)
{
    if (!ring_distant(a, b) || !ring_distant(a, c) || !ring_distant(b, c))
        fail(ErrorKind::NotMutuallyDistant, "points are not mutually distant");
    auto [pm, qm] = graph_coordinates(a.block_row(), b.block_row(), c.block_row());
    return GL2RElement(Matrix::vstack(matmul(pm, a.block_row()), matmul(qm, b.block_row())));
}

// --- enumeration and chains -------------------------------------------------------

/// P(R) by brute force over all pairs (alpha, beta); independent of the
/// subspace enumeration. Refuses when p^(2n^2) > 2^23.
inline std::vector<RingPoint> enumerate_ring_points(Field field, std::size_t n)
{
    const std::size_t cells = 2 * n * n;
    unsigned long long total = 1;
    for (std::size_t i = 0; i < cells; ++i) {
        total *= static_cast<unsigned long long>(field.p());
        if (total > (1ull << 23)) fail(ErrorKind::ResourceLimit, "too many pairs (alpha, beta) to enumerate");
    }
    std::set<RingPoint> seen;
    Matrix row(field, n, 2 * n);
    Residue* e = row.data();
    for (unsigned long long code = 0; code < total; ++code) {
        unsigned long long x = code;
        for (std::size_t i = cells; i-- > 0;) {
            e[i] = static_cast<Residue>(x % field.p());
            x /= field.p();
        }
        if (rank(row) == n) seen.insert(RingPoint::from_block_row(row));
    }
    return {seen.begin(), seen.end()};
}

struct PhiReport {
    std::size_t ring_points = 0;
    std::size_t grassmannian = 0;
    bool injective = false;
    bool surjective = false;
    std::size_t ring_distant_pairs = 0;
    std::size_t grassmann_distant_pairs = 0;
    std::size_t distant_disagreements = 0;
    std::string witness; ///< first failure, empty when all pass

    [[nodiscard]] bool ok() const
    {
        return ring_points == grassmannian && injective && surjective && distant_disagreements == 0;
    }
};

/// Checks that phi (standard frame) is a bijection P(R) -> G that carries
/// ring-distance to complementarity.
inline PhiReport phi_is_bijective(const GrassmannianIndex& index)
{
    PhiReport r;
    const auto pts = enumerate_ring_points(index.field(), std::size_t(index.n()));
    r.ring_points = pts.size();
    r.grassmannian = index.size();
    std::vector<std::optional<Handle>> images;
    std::vector<bool> hit(index.size(), false);
    r.injective = true;
    for (const auto& pt : pts) {
        auto h = index.find(phi(pt));
        images.push_back(h);
        if (!h) {
            if (r.witness.empty()) r.witness = "phi(" + pt.to_string() + ") not in G";
            r.injective = false;
            continue;
        }
        if (hit[*h]) {
            r.injective = false;
            if (r.witness.empty()) r.witness = "phi not injective at " + pt.to_string();
        }
        hit[*h] = true;
    }
    r.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    if (!r.surjective && r.witness.empty()) r.witness = "phi misses an element of G";
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const bool rd = ring_distant(pts[i], pts[j]);
            const bool gd = images[i] && images[j] && index.distant(*images[i], *images[j]);
            r.ring_distant_pairs += rd;
            r.grassmann_distant_pairs += gd;
            if (rd != gd) {
                ++r.distant_disagreements;
                if (r.witness.empty()) r.witness = pts[i].to_string() + " vs " + pts[j].to_string();
            }
        }
    return r;
}

/// The points R(x I, y I), (x, y) running over the projective line over
/// GF(p): (1,0), (0,1), (1,1), ..., (1,p-1).
inline std::vector<RingPoint> standard_z_chain(Field field, std::size_t n)
{
    std::vector<RingPoint> out;
    const Matrix id = Matrix::identity(field, n), zero(field, n, n);
    out.emplace_back(id, zero);
    out.emplace_back(zero, id);
    for (int y = 1; y < field.p(); ++y) out.emplace_back(id, scale(id, static_cast<Residue>(y)));
    return out;
}

/// Sorted handles of the phi-images (standard frame) of a set of points.
inline std::vector<Handle> image_handles(const GrassmannianIndex& index, const std::vector<RingPoint>& pts)
{
    std::vector<Handle> out;
    for (const auto& pt : pts) out.push_back(index.handle_of(phi(pt)));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<RingPoint> act(const GL2RElement& psi, const std::vector<RingPoint>& pts)
{
    std::vector<RingPoint> out;
    out.reserve(pts.size());
    for (const auto& pt : pts) out.push_back(act(psi, pt));
    return out;
}

/// phi-images of the chains standard_z_chain^psi for every psi in the
/// sample, as a deduplicated set of sorted handle lists.
template <class Range>
std::set<std::vector<Handle>> z_chain_images(const GrassmannianIndex& index, const Range& psis)
{
    const auto base = standard_z_chain(index.field(), std::size_t(index.n()));
    std::set<std::vector<Handle>> out;
    for (const GL2RElement& psi : psis) out.insert(image_handles(index, act(psi, base)));
    return out;
}

/// The full orbit of the standard chain under GL(2n, p) (only when that
/// group is small enough to enumerate).
inline std::set<std::vector<Handle>> z_chain_orbit(const GrassmannianIndex& index)
{
    const auto base = standard_z_chain(index.field(), std::size_t(index.n()));
    std::set<std::vector<Handle>> out;
    for_each_invertible(index.field(), index.ambient(), [&](const Matrix& m) {
        out.insert(image_handles(index, act(GL2RElement(m), base)));
    });
    return out;
}

} // namespace grasslab
