#include "grasslab/ringline.hpp"

#include "support.hpp"

using namespace grasslab;

namespace {

const Field F2(2);
const Field F3(3);

Matrix I2(Field f = F2) { return Matrix::identity(f, 2); }
Matrix Z2(Field f = F2) { return Matrix(f, 2, 2); }

Subspace s2(std::initializer_list<std::string_view> rows) { return span_of(F2, 4, rows); }

const GrassmannianIndex& g22()
{
    static const GrassmannianIndex index = build_index(2, 2);
    return index;
}

// A random frame: U, U' from the rows of a random invertible matrix.
template <class Engine>
Frame random_frame(Field f, std::size_t n, Engine& gen)
{
    Matrix c = random_invertible(f, 2 * n, gen);
    return {Subspace(c.top_rows(n)), Subspace(c.block(n, 0, n, 2 * n)), random_invertible(f, n, gen)};
}

template <class Engine>
RingPoint random_point(Field f, std::size_t n, Engine& gen)
{
    for (;;) {
        Matrix m = random_matrix(f, n, 2 * n, gen);
        if (rank(m) == n) return RingPoint::from_block_row(m);
    }
}

} // namespace

TEST(MakePoint, Examples)
{
    auto p = make_point(I2(), Z2());
    EXPECT_EQ(p.block_row(), Matrix::from_strings(F2, 4, {"1000", "0100"}));
    EXPECT_ERROR(make_point(Z2(), Z2()), NotAdmissible);
    EXPECT_EQ(make_point(I2(), I2()).block_row(), Matrix::from_strings(F2, 4, {"1010", "0101"}));
    EXPECT_ERROR(make_point(I2(), Matrix(F2, 3, 3)), DimensionMismatch);
}

TEST(MakePoint, CanonicalUnderLeftUnits)
{
    auto gen = test_support::seeded(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Field f = trial % 2 ? F3 : F2;
        auto pt = random_point(f, 2, gen);
        auto u = random_invertible(f, 2, gen);
        auto moved = RingPoint::from_block_row(matmul(u, pt.block_row()));
        EXPECT_EQ(moved, pt);
        EXPECT_EQ(phi(moved), phi(pt));
    }
}

TEST(Phi, StandardFrameExamples)
{
    auto frame = standard_frame(F2, 2);
    EXPECT_EQ(phi(make_point(I2(), Z2()), frame), s2({"1000", "0100"}));
    EXPECT_EQ(phi(make_point(Z2(), I2()), frame), s2({"0010", "0001"}));
    EXPECT_EQ(phi(make_point(I2(), I2()), frame), s2({"1010", "0101"}));
}

TEST(Phi, FrameValidation)
{
    auto frame = standard_frame(F2, 2);
    frame.u_prime = frame.u;
    EXPECT_ERROR(validate(frame), BadFrame);
    frame = standard_frame(F2, 2);
    frame.lambda = Z2();
    EXPECT_ERROR(validate(frame), BadFrame);
}

TEST(Phi, BijectiveAndCarriesDistance)
{
    for (auto [p, pairs] : {std::pair{2, 280u}, std::pair{3, 5265u}}) {
        auto g = build_index(p, 2);
        auto r = phi_is_bijective(g);
        EXPECT_TRUE(r.ok()) << r.witness;
        EXPECT_EQ(r.ring_points, g.size());
        // independent count: |G| * p^(n^2) / 2 unordered distant pairs
        EXPECT_EQ(r.ring_distant_pairs, pairs);
        EXPECT_EQ(r.grassmann_distant_pairs, pairs);
    }
}

TEST(Phi, RingPointCountMatchesGaussianBinomial)
{
    EXPECT_EQ(enumerate_ring_points(F2, 1).size(), 3u);
    EXPECT_EQ(enumerate_ring_points(F2, 2).size(), gaussian_binomial(2, 4, 2));
    EXPECT_ERROR(enumerate_ring_points(F3, 3), ResourceLimit);
}

TEST(Action, IdentityAndBlockSwap)
{
    auto id = GL2RElement::identity(F2, 2);
    auto swap = GL2RElement(Z2(), I2(), I2(), Z2());
    auto first = make_point(I2(), Z2()), second = make_point(Z2(), I2());
    EXPECT_EQ(act(id, first), first);
    EXPECT_EQ(hat(id), Matrix::identity(F2, 4));
    EXPECT_EQ(act(swap, first), second);
    EXPECT_EQ(act(swap, second), first);
    EXPECT_EQ(image(s2({"1000", "0100"}), hat(swap)), s2({"0010", "0001"}));
    EXPECT_ERROR(GL2RElement(I2(), I2(), I2(), I2()), Singular);
}

TEST(Action, BlockFormula)
{
    // (alpha, beta) -> (alpha a' + beta g', alpha b' + beta d'), written out by blocks
    auto gen = test_support::seeded(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto psi = GL2RElement::random(F3, 2, gen);
        auto pt = random_point(F3, 2, gen);
        auto a = add(matmul(pt.alpha(), psi.alpha()), matmul(pt.beta(), psi.gamma()));
        auto b = add(matmul(pt.alpha(), psi.beta()), matmul(pt.beta(), psi.delta()));
        EXPECT_EQ(act(psi, pt), make_point(a, b));
    }
}

TEST(Action, RightActionLaw)
{
    auto gen = test_support::seeded(12);
    for (int trial = 0; trial < 100; ++trial) {
        const Field f = trial % 2 ? F3 : F2;
        auto a = GL2RElement::random(f, 2, gen), b = GL2RElement::random(f, 2, gen);
        auto pt = random_point(f, 2, gen);
        EXPECT_EQ(act(a * b, pt), act(b, act(a, pt)));
        EXPECT_EQ(act(a.inverse(), act(a, pt)), pt);
    }
}

TEST(Action, HatIsHomomorphism)
{
    auto gen = test_support::seeded(13);
    for (int trial = 0; trial < 50; ++trial) {
        auto frame = random_frame(F3, 2, gen);
        auto a = GL2RElement::random(F3, 2, gen), b = GL2RElement::random(F3, 2, gen);
        EXPECT_EQ(hat(a * b, frame), matmul(hat(a, frame), hat(b, frame)));
        EXPECT_TRUE(is_invertible(hat(a, frame)));
    }
}

TEST(Action, EquivarianceStandardFrame)
{
    auto gen = test_support::seeded(14);
    for (int trial = 0; trial < 100; ++trial) {
        auto psi = GL2RElement::random(F2, 2, gen);
        for (const auto& pt : enumerate_ring_points(F2, 2))
            ASSERT_EQ(phi(act(psi, pt)), image(phi(pt), hat(psi)));
    }
}

TEST(Action, EquivarianceArbitraryFrame)
{
    auto gen = test_support::seeded(15);
    for (int trial = 0; trial < 100; ++trial) {
        const Field f = trial % 2 ? F3 : F2;
        auto frame = random_frame(f, 2, gen);
        auto psi = GL2RElement::random(f, 2, gen);
        auto pt = random_point(f, 2, gen);
        EXPECT_EQ(phi(act(psi, pt), frame), image(phi(pt, frame), hat(psi, frame)));
    }
}

TEST(Frames, ChoiceIsImmaterial)
{
    auto gen = test_support::seeded(16);
    const auto pts = enumerate_ring_points(F2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_frame(F2, 2, gen), b = random_frame(F2, 2, gen);
        auto t = frame_transition(a, b);
        ASSERT_TRUE(is_invertible(t));
        std::set<Subspace> images;
        for (const auto& pt : pts) {
            ASSERT_EQ(image(phi(pt, a), t), phi(pt, b));
            images.insert(phi(pt, a));
        }
        EXPECT_EQ(images.size(), 35u); // every frame gives a bijection
    }
}

TEST(Distance, WitnessForEveryDistantPair)
{
    const auto pts = enumerate_ring_points(F2, 2);
    auto first = make_point(I2(), Z2()), second = make_point(Z2(), I2());
    std::size_t distant = 0;
    for (const auto& a : pts)
        for (const auto& b : pts) {
            auto w = distant_witness(a, b);
            ASSERT_EQ(w.has_value(), ring_distant(a, b));
            ASSERT_EQ(ring_distant(a, b), is_distant(phi(a), phi(b)));
            if (!w) continue;
            ++distant;
            ASSERT_EQ(act(*w, first), a);
            ASSERT_EQ(act(*w, second), b);
        }
    EXPECT_EQ(distant, 35u * 16u);
}

TEST(Distance, TripleTransitivity)
{
    const auto pts = enumerate_ring_points(F2, 2);
    const auto chain = standard_z_chain(F2, 2);
    std::size_t triples = 0;
    for (const auto& a : pts)
        for (const auto& b : pts) {
            if (!ring_distant(a, b)) continue;
            for (const auto& c : pts) {
                if (!ring_distant(a, c) || !ring_distant(b, c)) continue;
                ++triples;
                auto w = triple_witness(a, b, c);
                ASSERT_EQ(act(w, chain[0]), a);
                ASSERT_EQ(act(w, chain[1]), b);
                ASSERT_EQ(act(w, chain[2]), c);
            }
        }
    EXPECT_EQ(triples, 35u * 16u * 6u);
    EXPECT_ERROR(triple_witness(chain[0], chain[0], chain[1]), NotMutuallyDistant);
}

TEST(Distance, TripleTransitivityOverGF3)
{
    auto gen = test_support::seeded(17);
    const auto chain = standard_z_chain(F3, 2);
    int found = 0;
    while (found < 200) {
        auto a = random_point(F3, 2, gen), b = random_point(F3, 2, gen), c = random_point(F3, 2, gen);
        if (!ring_distant(a, b) || !ring_distant(a, c) || !ring_distant(b, c)) continue;
        ++found;
        auto w = triple_witness(a, b, c);
        EXPECT_EQ(act(w, chain[0]), a);
        EXPECT_EQ(act(w, chain[1]), b);
        EXPECT_EQ(act(w, chain[2]), c);
    }
}

TEST(ZChain, Standard)
{
    auto chain = standard_z_chain(F2, 2);
    ASSERT_EQ(chain.size(), 3u);
    std::set<Subspace> images;
    for (const auto& pt : chain) images.insert(phi(pt));
    EXPECT_EQ(images, (std::set<Subspace>{s2({"1000", "0100"}), s2({"0010", "0001"}), s2({"1010", "0101"})}));

    auto chain3 = standard_z_chain(F3, 2);
    ASSERT_EQ(chain3.size(), 4u);
    for (std::size_t i = 0; i < chain3.size(); ++i)
        for (std::size_t j = i + 1; j < chain3.size(); ++j) EXPECT_TRUE(ring_distant(chain3[i], chain3[j]));
}

TEST(ZChain, SampledImagesArePairwiseDistant)
{
    auto gen = test_support::seeded(18);
    auto g = build_index(3, 2);
    std::vector<GL2RElement> psis;
    psis.push_back(GL2RElement::identity(F3, 2));
    for (int i = 0; i < 200; ++i) psis.push_back(GL2RElement::random(F3, 2, gen));
    auto chains = z_chain_images(g, psis);
    EXPECT_TRUE(chains.count(image_handles(g, standard_z_chain(F3, 2))));
    for (const auto& c : chains) {
        ASSERT_EQ(c.size(), 4u);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j) EXPECT_TRUE(g.distant(c[i], c[j]));
    }
}

TEST(ZChain, FullOrbitOnG22)
{
    auto orbit = z_chain_orbit(g22());
    // ordered mutually distant triples / orderings of a 3-chain
    EXPECT_EQ(orbit.size(), 35u * 16u * 6u / 6u);
    for (const auto& c : orbit) EXPECT_EQ(c.size(), 3u);
}
