#include "grasslab/reguli.hpp"

#include "support.hpp"

#include <map>

using namespace grasslab;

namespace {

const Field F2(2);
const Field F3(3);

Subspace s2(std::initializer_list<std::string_view> rows) { return span_of(F2, 4, rows); }

const GrassmannianIndex& g22()
{
    static const GrassmannianIndex index = build_index(2, 2);
    return index;
}

const GrassmannianIndex& g32()
{
    static const GrassmannianIndex index = build_index(3, 2);
    return index;
}

template <class Engine>
Frame random_frame(Field f, std::size_t n, Engine& gen)
{
    Matrix c = random_invertible(f, 2 * n, gen);
    return {Subspace(c.top_rows(n)), Subspace(c.block(n, 0, n, 2 * n)), random_invertible(f, n, gen)};
}

// R2 straight from its definition: every line of V meeting three members
// meets all of them.
bool r2_by_lines(const std::vector<Subspace>& s)
{
    static std::map<int, std::vector<Subspace>> lines;
    const Field f = s.front().field();
    auto& all = lines[f.p()];
    if (all.empty()) all = enumerate_subspaces(f, 4, 2);
    for (const auto& line : all) {
        std::size_t hits = 0;
        for (const auto& e : s) hits += meets(line, e);
        if (hits >= 3 && hits != s.size()) return false;
    }
    return true;
}

bool pairwise_distant(const std::vector<Subspace>& s)
{
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!is_distant(s[i], s[j])) return false;
    return true;
}

// all reguli of an index, from every unordered mutually distant triple
std::set<std::vector<Handle>> reguli_from_triples(const GrassmannianIndex& g, std::size_t* triples = nullptr)
{
    std::set<std::vector<Handle>> out;
    std::size_t count = 0;
    for (std::size_t a = 0; a < g.size(); ++a) {
        const BitRow& fa = g.row(Relation::distant, Handle(a));
        fa.for_each([&](std::size_t b) {
            if (b <= a) return;
            (fa & g.row(Relation::distant, Handle(b))).for_each([&](std::size_t c) {
                if (c <= b) return;
                ++count;
                out.insert(handles_of(g, regulus_through(g.element(Handle(a)), g.element(Handle(b)),
                                                         g.element(Handle(c)))
                                             .members));
            });
        });
    }
    if (triples) *triples = count;
    return out;
}

} // namespace

TEST(FirstKindLine, Examples)
{
    auto frame = standard_frame(F2, 2);
    Vector u1{1, 0, 0, 0}, u2{0, 1, 0, 0}, u3{1, 1, 0, 0};
    EXPECT_EQ(first_kind_line(frame, u1), s2({"1000", "0010"}));
    EXPECT_EQ(first_kind_line(frame, u2), s2({"0100", "0001"}));
    EXPECT_EQ(first_kind_line(frame, u3), s2({"1100", "0011"}));
    EXPECT_ERROR(first_kind_line(frame, Vector{0, 0, 0, 0}), ZeroVector);
    EXPECT_ERROR(first_kind_line(frame, Vector{0, 0, 1, 0}), BadArgument);
}

std::vector<Subspace> sorted(std::vector<Subspace> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

TEST(SecondKindFamily, StandardFrame)
{
    auto frame = standard_frame(F2, 2);
    auto r = second_kind_family(frame);
    EXPECT_EQ(r.members, sorted({s2({"1000", "0100"}), s2({"0010", "0001"}), s2({"1010", "0101"})}));
    EXPECT_EQ(r.directrices, first_kind_lines(frame));
    EXPECT_EQ(r.directrices.size(), 3u);
    for (const auto& l : first_kind_lines(frame))
        for (const auto& t : r.members) EXPECT_EQ(intersection_dim(l, t), 1u);
}

TEST(SecondKindFamily, EqualsPhiImageOfStandardChain)
{
    auto gen = test_support::seeded(21);
    for (int trial = 0; trial < 50; ++trial) {
        const Field f = trial % 2 ? F3 : F2;
        auto frame = random_frame(f, 2, gen);
        std::vector<Subspace> images;
        for (const auto& pt : standard_z_chain(f, 2)) images.push_back(phi(pt, frame));
        auto r = second_kind_family(frame);
        EXPECT_EQ(r.members, sorted(images));
        EXPECT_EQ(r.members.size(), std::size_t(f.p()) + 1);
        EXPECT_TRUE(pairwise_distant(r.members));
        EXPECT_EQ(r.directrices, first_kind_lines(frame));
    }
}

TEST(SecondKindFamily, BadFrame)
{
    auto frame = standard_frame(F2, 2);
    frame.lambda = Matrix(F2, 2, 2);
    EXPECT_ERROR(second_kind_family(frame), BadFrame);
}

TEST(Segre, SecondKindArePreciselyTheTransversals)
{
    // every subspace T of V for which L -> L n T is a bijection from the
    // first-kind lines onto the points of T
    for (const Field f : {F2, F3}) {
        auto frame = standard_frame(f, 2);
        const auto lines = first_kind_lines(frame);
        std::vector<Subspace> transversals;
        for (std::size_t k = 1; k <= 4; ++k)
            for (const auto& t : enumerate_subspaces(f, 4, k)) {
                auto pts = points(t);
                if (pts.size() != lines.size()) continue;
                std::set<Subspace> hit;
                bool ok = true;
                for (const auto& l : lines) {
                    auto m = intersect(l, t);
                    if (m.dim() != 1) ok = false;
                    else hit.insert(m);
                }
                if (ok && hit.size() == pts.size()) transversals.push_back(t);
            }
        EXPECT_EQ(sorted(transversals), second_kind_family(frame).members);
    }
}

TEST(Segre, LinesInsideQ)
{
    for (const Field f : {F2, F3}) {
        auto frame = standard_frame(f, 2);
        const auto first = first_kind_lines(frame);
        const auto second = second_kind_family(frame).members;
        std::set<Vector> q;
        for (const auto& l : first) for_each_vector(l, [&](const Vector& v) { q.insert(v); });
        std::size_t inside = 0;
        for (const auto& line : enumerate_subspaces(f, 4, 2)) {
            bool in_q = true;
            for_each_vector(line, [&](const Vector& v) { in_q = in_q && q.count(v); });
            if (!in_q) continue;
            ++inside;
            bool first_kind = std::find(first.begin(), first.end(), line) != first.end();
            bool in_second = std::any_of(second.begin(), second.end(), [&](const Subspace& t) { return contains(t, line); });
            EXPECT_TRUE(first_kind || in_second) << line.to_string();
        }
        EXPECT_GT(inside, first.size());
    }
}

TEST(RegulusThrough, StandardTriple)
{
    auto u = s2({"1000", "0100"}), up = s2({"0010", "0001"});
    EXPECT_EQ(regulus_through(u, up, s2({"1010", "0101"})), second_kind_family(standard_frame(F2, 2)));
    auto e2 = s2({"1011", "0110"});
    auto r = regulus_through(u, up, e2);
    EXPECT_EQ(r.members, sorted({u, up, e2}));
    EXPECT_EQ(r.directrices.size(), 3u);
    EXPECT_ERROR(regulus_through(u, up, s2({"1000", "0010"})), NotMutuallyDistant);
}

TEST(RegulusThrough, TripleLiesOnItsGraphFrame)
{
    auto gen = test_support::seeded(22);
    const auto& g = g32();
    int found = 0;
    while (found < 100) {
        std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
        auto a = g.element(Handle(pick(gen))), b = g.element(Handle(pick(gen))), c = g.element(Handle(pick(gen)));
        if (!pairwise_distant({a, b, c})) continue;
        ++found;
        auto frame = frame_through(a, b, c);
        EXPECT_EQ(second_kind_member(frame, 1, 1), c);
        auto r = regulus_through(a, b, c);
        EXPECT_EQ(r.members.size(), 4u);
        EXPECT_EQ(r.directrices.size(), 4u);
        for (const auto& x : {a, b, c}) EXPECT_NE(std::find(r.members.begin(), r.members.end(), x), r.members.end());
    }
}

TEST(RegulusThrough, PermutationInvariantOnG22)
{
    const auto& g = g22();
    for (std::size_t a = 0; a < g.size(); ++a)
        g.row(Relation::distant, Handle(a)).for_each([&](std::size_t b) {
            (g.row(Relation::distant, Handle(a)) & g.row(Relation::distant, Handle(b))).for_each([&](std::size_t c) {
                const auto &x = g.element(Handle(a)), &y = g.element(Handle(b)), &z = g.element(Handle(c));
                auto r = regulus_through(x, y, z);
                ASSERT_EQ(regulus_through(y, z, x), r);
                ASSERT_EQ(regulus_through(z, x, y), r);
                ASSERT_EQ(regulus_through(y, x, z), r);
            });
        });
}

TEST(Directrices, Properties)
{
    auto gen = test_support::seeded(23);
    for (int trial = 0; trial < 50; ++trial) {
        const Field f = trial % 2 ? F3 : F2;
        auto r = second_kind_family(random_frame(f, 2, gen));
        ASSERT_EQ(r.directrices.size(), gaussian_binomial(f.p(), 2, 1));
        std::set<Subspace> covered;
        for (const auto& l : r.directrices) {
            EXPECT_EQ(l.dim(), 2u);
            for (const auto& e : r.members) EXPECT_EQ(intersection_dim(l, e), 1u);
            covered.insert(intersect(l, r.members.front()));
        }
        // each point of a member is on exactly one directrix
        EXPECT_EQ(covered.size(), points(r.members.front()).size());
    }
}

TEST(Directrices, Errors)
{
    auto u = s2({"1000", "0100"}), up = s2({"0010", "0001"});
    EXPECT_ERROR(directrices({u, up}), TooFewMembers);
    EXPECT_ERROR(directrices({u, up, s2({"1000", "0010"})}), NotDistantClique);
}

TEST(PartialRegulus, Examples)
{
    auto r = second_kind_family(standard_frame(F2, 2));
    EXPECT_TRUE(is_partial_regulus(r.members));
    auto r3 = second_kind_family(standard_frame(F3, 2));
    ASSERT_EQ(r3.members.size(), 4u);
    for (std::size_t skip = 0; skip < 4; ++skip) {
        auto sub = r3.members;
        sub.erase(sub.begin() + std::ptrdiff_t(skip));
        EXPECT_TRUE(is_partial_regulus(sub));
        EXPECT_FALSE(is_regulus(sub));
        EXPECT_FALSE(is_regulus_by_extension(g32(), sub));
        EXPECT_EQ(subspaces_of(g32(), regulus_extensions(g32(), sub)),
                  std::vector<Subspace>{r3.members[skip]});
    }
    EXPECT_FALSE(is_partial_regulus({r.members[0], r.members[1]}));
    EXPECT_FALSE(is_partial_regulus({s2({"1000", "0100"}), s2({"1000", "0010"}), s2({"0010", "0001"})}));
}

TEST(PartialRegulus, FourCliqueOffTheRegulusFails)
{
    const auto& g = g32();
    auto r = second_kind_family(standard_frame(F3, 2));
    auto hs = handles_of(g, r.members);
    BitRow common = g.row(Relation::distant, hs[0]) & g.row(Relation::distant, hs[1]) & g.row(Relation::distant, hs[2]);
    std::size_t tried = 0;
    common.for_each([&](std::size_t x) {
        if (std::find(hs.begin(), hs.end(), Handle(x)) != hs.end()) return;
        ++tried;
        std::vector<Subspace> s{r.members[0], r.members[1], r.members[2], g.element(Handle(x))};
        EXPECT_FALSE(is_partial_regulus(s));
        EXPECT_FALSE(r2_by_lines(s));
    });
    EXPECT_GT(tried, 0u);
}

TEST(PartialRegulus, MatchesLineOracle)
{
    auto gen = test_support::seeded(24);
    for (const auto* g : {&g22(), &g32()}) {
        std::uniform_int_distribution<std::size_t> pick(0, g->size() - 1);
        int checked = 0, positive = 0;
        while (checked < 300) {
            std::vector<Subspace> s;
            const std::size_t size = 3 + std::size_t(checked % 3);
            while (s.size() < size) {
                auto x = g->element(Handle(pick(gen)));
                if (std::find(s.begin(), s.end(), x) == s.end()) s.push_back(x);
            }
            if (!pairwise_distant(s)) continue;
            ++checked;
            const bool expect = r2_by_lines(s);
            positive += expect;
            ASSERT_EQ(is_partial_regulus(s), expect);
        }
        EXPECT_GT(positive, 0);
    }
}

TEST(IsRegulus, Examples)
{
    EXPECT_TRUE(is_regulus(second_kind_family(standard_frame(F2, 2)).members));
    EXPECT_TRUE(is_regulus(second_kind_family(standard_frame(F3, 2)).members));
    EXPECT_FALSE(is_regulus({s2({"1000", "0100"}), s2({"1000", "0010"}), s2({"0010", "0001"})}));
}

TEST(IsRegulus, ClosureMatchesExtensionOracleOnG22)
{
    const auto& g = g22();
    std::size_t cliques = 0, reguli = 0;
    for_each_clique(g.rows(Relation::distant), 3, [&](const std::vector<Handle>& c) {
        ++cliques;
        auto s = subspaces_of(g, c);
        const bool closure = is_regulus(s);
        reguli += closure;
        ASSERT_EQ(closure, is_regulus_by_extension(g, s));
    });
    EXPECT_EQ(reguli, 560u);
    EXPECT_GT(cliques, reguli);
}

TEST(Reguli, CountsAndUniqueness)
{
    std::size_t triples = 0;
    auto r22 = reguli_from_triples(g22(), &triples);
    EXPECT_EQ(triples, 560u);
    EXPECT_EQ(r22.size(), 560u);
    EXPECT_EQ(r22, z_chain_orbit(g22()));

    auto r32 = reguli_from_triples(g32(), &triples);
    EXPECT_EQ(triples, 84240u); // 130 * 81 * 48 / 6
    EXPECT_EQ(r32.size(), 21060u);
    // each regulus holds 4 triples; disjoint triple sets cover every triple once
    std::set<std::array<Handle, 3>> seen;
    for (const auto& r : r32) {
        ASSERT_EQ(r.size(), 4u);
        for (std::size_t skip = 0; skip < 4; ++skip) {
            std::array<Handle, 3> t{};
            std::size_t k = 0;
            for (std::size_t i = 0; i < 4; ++i)
                if (i != skip) t[k++] = r[i];
            EXPECT_TRUE(seen.insert(t).second);
        }
    }
    EXPECT_EQ(seen.size(), triples);
}

TEST(Reguli, OrbitUnderLinearMaps)
{
    const auto& g = g22();
    auto all = reguli_from_triples(g);
    auto gen = test_support::seeded(25);
    for (int trial = 0; trial < 100; ++trial) {
        auto perm = induced_permutation(g, random_invertible(F2, 4, gen));
        for (const auto& r : all) ASSERT_TRUE(all.count(grasslab::apply(perm, r)));
    }
    auto dual = duality_permutation(g);
    for (const auto& r : all) EXPECT_TRUE(all.count(grasslab::apply(dual, r)));
}

TEST(DistantCharacterization, StandardFamilyAndPencil)
{
    const auto& g = g22();
    DistantCharacterization dc(g);
    auto r = handles_of(g, second_kind_family(standard_frame(F2, 2)).members);
    EXPECT_TRUE(dc.satisfies(r));
    auto pen = pencil(g, s2({"1000"}), s2({"1000", "0100", "0010"}));
    EXPECT_FALSE(dc.condition1(pen.members));
    EXPECT_FALSE(dc.satisfies(pen.members));
    for (std::size_t h = 0; h < g.size(); ++h) EXPECT_EQ(dc.adjacency(Handle(h)), g.row(Relation::adjacency, Handle(h)));
}

TEST(DistantCharacterization, AgreesOnEveryDistantCliqueOfG22)
{
    const auto& g = g22();
    DistantCharacterization dc(g);
    std::set<std::vector<Handle>> passers;
    for_each_clique(g.rows(Relation::distant), 3, [&](const std::vector<Handle>& c) {
        const bool regulus = is_regulus(subspaces_of(g, c));
        ASSERT_EQ(dc.satisfies(c), regulus);
        ASSERT_EQ(dc.partial(c), is_partial_regulus(subspaces_of(g, c)));
        if (regulus) passers.insert(c);
    });
    EXPECT_EQ(passers, z_chain_orbit(g));
}

TEST(DistantCharacterization, AgreesOnSampledCliquesOfG32)
{
    const auto& g = g32();
    DistantCharacterization dc(g);
    auto gen = test_support::seeded(26);
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    int checked = 0, partial_only = 0;
    while (checked < 1000) {
        // grow a random distant clique of size 3..5
        std::vector<Handle> c{Handle(pick(gen))};
        const std::size_t want = 3 + std::size_t(checked % 3);
        BitRow cand = g.row(Relation::distant, c[0]);
        while (c.size() < want && cand.any()) {
            auto idx = cand.indices();
            Handle x = Handle(idx[std::uniform_int_distribution<std::size_t>(0, idx.size() - 1)(gen)]);
            c.push_back(x);
            cand &= g.row(Relation::distant, x);
        }
        if (c.size() < 3) continue;
        std::sort(c.begin(), c.end());
        ++checked;
        auto s = subspaces_of(g, c);
        const bool regulus = is_regulus(s);
        partial_only += !regulus && is_partial_regulus(s);
        ASSERT_EQ(dc.satisfies(c), regulus);
        ASSERT_EQ(dc.partial(c), is_partial_regulus(s));
    }
    EXPECT_GT(partial_only, 0);
    // every regulus is hit too: check the standard one and a few transported ones
    EXPECT_TRUE(dc.satisfies(handles_of(g, second_kind_family(standard_frame(F3, 2)).members)));
    for (int i = 0; i < 20; ++i)
        EXPECT_TRUE(dc.satisfies(handles_of(g, second_kind_family(random_frame(F3, 2, gen)).members)));
}

TEST(LemmaZ1, Example)
{
    auto w = s2({"1000", "0010"}), e0 = s2({"1000", "0100"}), e = s2({"0010", "0001"});
    ASSERT_TRUE(is_adjacent(w, e0));
    ASSERT_TRUE(is_distant(e, e0));
    ASSERT_FALSE(is_distant(w, e));
    EXPECT_EQ(intersect(w, e), s2({"0010"}));
}

TEST(LemmaZ1, Sweeps)
{
    for (const auto* g : {&g22(), &g32()}) {
        auto r = check_lemma_z1(*g);
        EXPECT_EQ(r.violations, 0u) << r.witness;
        EXPECT_GT(r.instances, 0u);
    }
}

TEST(LemmaZ2, Example)
{
    const auto& g = g22();
    auto w = s2({"1010", "0100"}), e0 = s2({"1000", "0100"});
    ASSERT_TRUE(is_adjacent(w, e0));
    std::size_t found = 0;
    for (const auto& e1 : g.elements())
        for (const auto& e2 : g.elements()) {
            if (!(e1 < e2) || !pairwise_distant({e0, e1, e2}) || is_distant(w, e1) || is_distant(w, e2)) continue;
            ++found;
            auto p1 = intersect(e1, w), p2 = intersect(e2, w);
            ASSERT_EQ(p1.dim(), 1u);
            ASSERT_EQ(p2.dim(), 1u);
            ASSERT_NE(p1, p2);
            EXPECT_TRUE(meets(sum(p1, p2), e0));
        }
    EXPECT_GT(found, 0u);
}

TEST(LemmaZ2, Sweeps)
{
    for (const auto* g : {&g22(), &g32()}) {
        auto r = check_lemma_z2(*g);
        EXPECT_EQ(r.violations, 0u) << r.witness;
        EXPECT_GT(r.instances, 0u);
    }
}

TEST(Subline, StandardFamily)
{
    auto r = second_kind_family(standard_frame(F2, 2));
    auto cov = subline_coverage(r, s2({"1000", "0010"}));
    EXPECT_EQ(std::set<Subspace>(cov.begin(), cov.end()),
              (std::set<Subspace>{s2({"1000"}), s2({"0010"}), s2({"1010"})}));
    EXPECT_ERROR(subline_coverage(r, s2({"1000", "0100"})), NotADirectrix);
    EXPECT_ERROR(subline_coverage(r, s2({"1000"})), NotADirectrix);
}

TEST(Subline, EveryDirectrixIsFullyCovered)
{
    auto gen = test_support::seeded(27);
    for (int trial = 0; trial < 30; ++trial) {
        const Field f = trial % 2 ? F3 : F2;
        auto r = second_kind_family(random_frame(f, 2, gen));
        for (const auto& l : r.directrices) {
            auto cov = subline_coverage(r, l);
            std::set<Subspace> distinct(cov.begin(), cov.end());
            EXPECT_EQ(distinct.size(), r.members.size());
            auto line_points = points(l);
            EXPECT_EQ(distinct, std::set<Subspace>(line_points.begin(), line_points.end()));
        }
    }
}

TEST(Transversal, BijectionOntoEachMember)
{
    auto gen = test_support::seeded(28);
    for (int trial = 0; trial < 30; ++trial) {
        const Field f = trial % 2 ? F3 : F2;
        auto frame = random_frame(f, 2, gen);
        auto lines = first_kind_lines(frame);
        for (const auto& t : second_kind_family(frame).members) {
            std::set<Subspace> pts;
            for (const auto& l : lines) pts.insert(intersect(l, t));
            auto all = points(t);
            EXPECT_EQ(pts, std::set<Subspace>(all.begin(), all.end()));
        }
    }
}
